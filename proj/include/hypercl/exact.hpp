/// @file exact.hpp
/// @brief Closed-form and characteristic-based reference solutions: scalar
///        rarefaction fans and periodic profiles, passive transport along
///        characteristics, backward reconstruction from terminal data with
///        Holder/one-sided certificates, self-similar elasticity fans, and
///        planar lifting of 1-D solutions to several space dimensions.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "catalog.hpp"
#include "field.hpp"
#include "report.hpp"
#include "system.hpp"

namespace hypercl {

/// Solve f'(u) = y by bisection on an automatically expanded bracket.
/// Converges to |f'(u) - y| <= 1e-12 in at most 200 iterations.
double invert_fprime(const Flux1D& f, double y);

/// A rarefaction fan opening at x0 between u_L < u_R, optionally closed into
/// periodic data by a decreasing ramp from u_R at y0 back to u_L at y1.
struct RarefactionSpec {
  Flux1D f;
  double u_L = 0.0, u_R = 1.0;
  double x0 = 0.0;
  bool periodic = false;
  double y0 = 0.0, y1 = 0.0;
  double T_max = 1.0;

  /// Ramp persistence: T_max must stay 10% below the gradient blow-up time
  /// (y1-y0)/((u_R-u_L) sup f'').
  void validate() const;
};

/// Three-branch fan evaluation (left state / fan / right state).
double rarefaction(const RarefactionSpec& spec, double x, double t);

/// Five-branch periodic evaluation (left state / fan / plateau / decreasing
/// ramp / left state).  The ramp value solves z + t f'(ramp(z)) = x, closed
/// form when f' is affine, bisection otherwise.
double periodic_profile(const RarefactionSpec& spec, double x, double t);

/// Profile sampled onto a uniform grid (closure form stays exact).
Field profile_field(const RarefactionSpec& spec, double t, int n, double lo, double hi);

/// Largest ramp slope magnitude over a time ladder in [0, T] and a spatial
/// grid of grid_n quotients per slice.
double lipschitz_B0(const RarefactionSpec& spec, double T, int grid_n);

/// Passive field transported by the profile: solves dv/dt + d/dx(g(u) v) = 0
/// with backward characteristics (classical 4-stage Runge-Kutta, fixed step
/// 0.5 dx / max|g|).  d/dx(g(u)) uses the analytic branch structure, one-sided
/// quotients within 2 dx of branch seams.  Characteristics wrap periodically
/// on [lo, hi]; NaN along a path raises CharacteristicLeavesDomain.
/// times must be increasing; v0 applies at times.front().
SpaceTimeField triangular_v(const RarefactionSpec& spec,
                            const std::function<double(double)>& g,
                            const std::function<double(double)>& gp,
                            const std::function<double(double)>& v0,
                            const std::vector<double>& times, double lo, double hi,
                            int n, int workers = 1);

/// Terminal snapshot u(.,T) with the regularity data of its certificate.
struct TerminalData {
  Field u_T;          ///< 1-D profile at time T
  double T = 1.0;
  double beta = 1.0;  ///< Holder exponent of f'(u_T), in (0,1]
  double C0 = 0.0;    ///< Holder seminorm of f'(u_T)
  double M = 1.0;     ///< window half-width
};

/// Reconstruct u(., t) for 0 < t <= T by following backward characteristics
/// y = x - (T-t) f'(u_T(x)); the map must be strictly increasing.  The result
/// is resampled onto a uniform grid over the image interval by monotone
/// linear interpolation.
Field backward_reconstruct(const TerminalData& td, const Flux1D& f, double t);

/// Grid Holder seminorm of f'(u) against the reachability bound
/// 1.05 * max{C0, (2M)^(1-beta)/t}; pair set subsampled beyond 10^6 pairs.
Report holder_certificate(const Field& u, const Flux1D& f, double beta, double M,
                          double C0, double t);

/// Minimum forward difference quotient and the implied one-sided rate
/// B1 = max(0, -min_quotient).  The wrap seam is excluded by default because
/// reconstructed windows are not periodic.
struct OnesidedCertificate {
  double min_quotient = 0.0;
  double B1 = 0.0;
};
OnesidedCertificate onesided_certificate(const Field& u, bool include_wrap = false);

/// Self-similar fan of 1-D convex elasticity: strain from the fan relation
/// zeta^2 = Sigma'(S(zeta)) on the increasing branch, velocity by trapezoid
/// quadrature of V' = -zeta S', and the residual of zeta V' + Sigma'(S) S' = 0
/// from central differences of the sampled profiles.
struct SelfSimilarFan {
  std::vector<double> zeta;  ///< nodes, increasing
  std::vector<double> F;     ///< strain profile
  std::vector<double> V;     ///< velocity profile, V(zeta.front()) = 0
  double residual = 0.0;     ///< max interior residual of the rate equation
};
SelfSimilarFan elasticity_self_similar(const ElasticityParams& ep, double z_lo,
                                       double z_hi, int n);

/// State partition U = (w, z): w components carry a 1-D solution, z stays 0.
/// Valid when the z-rows of A, G, and the x1-flux all vanish at z = 0.
struct PlanarSplit {
  SystemDef full;           ///< the d-D system, d >= 2
  std::vector<int> w_idx;   ///< components carried by the 1-D profile
  std::vector<int> z_idx;   ///< components pinned to zero

  Vec embed(const Vec& w) const;  ///< w -> full state with z = 0
};

PlanarSplit euler_planar_split(EulerParams p = {});
PlanarSplit swmhd_planar_split(const SwmhdParams& p = {});
PlanarSplit triangular_planar_split(TriangularParams p = multid_default());

/// Samples w over its box and checks the z-rows of A, G, F_1 vanish to 1e-12.
Report planar_condition_check(const PlanarSplit& split, int n_samples,
                              std::uint64_t seed = 20240301u);

/// Lift a 1-D space-time solution of the w-subsystem to d dimensions:
/// U(x1, .., xd, t) = embed(w1d(x1, t)), constant along transverse axes
/// (n2 cells on [lo2, hi2] each).  Throws PlanarConditionViolated when the
/// split fails its condition check.
SpaceTimeField planar_extend(const PlanarSplit& split, const SpaceTimeField& w1d,
                             int n2, double lo2, double hi2);

}  // namespace hypercl
