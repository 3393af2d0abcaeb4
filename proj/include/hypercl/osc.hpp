/// @file osc.hpp
/// @brief Numerical audits of one-sided bounds on entropy production: the
///        pointwise margin ∂ₖG(Ū)·Fₖ(ξ|ξ̄) + b(t)·H(ξ|ξ̄), its mollified
///        counterpart, and per-slice one-sided derivative estimates.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "field.hpp"
#include "report.hpp"
#include "system.hpp"

namespace hypercl {

/// Piecewise-constant nonnegative rate b(t).  values[i] applies on
/// [edges[i], edges[i+1]); eval clamps outside the covered range so a bound
/// fitted on snapshot times extends to the full window.
struct OscBound {
  std::vector<double> edges;   ///< strictly increasing, size values.size()+1
  std::vector<double> values;  ///< nonnegative, 1/time units
  std::string provenance = "user";  ///< "user" | "fitted"

  static OscBound constant(double b, double t0 = 0.0, double t1 = 1.0);
  void validate() const;
  double eval(double t) const;
  double integral(double a, double b) const;
};

/// Outcome of a margin audit: the most negative margin found, where, and for
/// which state pair.  pass iff worst_margin >= -tol with tol scaled to the
/// largest relative entropy seen.
struct OscReport {
  double worst_margin = 0.0;
  double worst_t = 0.0;
  Vec worst_x;
  Vec worst_xi, worst_xibar;
  double tol = 0.0;
  bool pass = false;
  Report table;  ///< per-slice rows: t, worst_margin, location, b, b_fit
};

/// Minimum of ∂ₖG(Ū)·Fₖ(ξ|ξ̄) + b(t)·H(ξ|ξ̄) over grid points, time slices,
/// and a pair sample (box corners + Latin hypercube + near-coincident probes
/// anchored at the local field value).  ∂ₖ uses periodic central differences.
OscReport osc_margin_pointwise(const SystemDef& sys, const SpaceTimeField& Ubar,
                               const OscBound& b, int n_pairs, int workers = 1,
                               std::uint64_t seed = 20240301u);

/// Same margin with ∂ₖ applied to the spatial mollification of G(Ū) at every
/// scale in eps_ladder; pass requires every scale to pass.
OscReport osc_distributional(const SystemDef& sys, const SpaceTimeField& Ubar,
                             const std::vector<double>& eps_ladder, const OscBound& b,
                             int n_pairs = 256, int workers = 1,
                             std::uint64_t seed = 20240301u);

/// Smallest piecewise-constant b making the pointwise margin nonnegative on
/// the sampled pairs: per slice, max over cells and pairs of (-∂ₖG·Fₖ/H)₊.
OscBound fit_osc_bound(const SystemDef& sys, const SpaceTimeField& Ubar, int n_pairs,
                       int workers = 1, std::uint64_t seed = 20240301u);

/// Per-slice minima of a one-sided quantity, convertible to a rate bound.
struct OnesidedSeries {
  std::vector<double> times;
  std::vector<double> minima;

  /// b(t) = factor * max(0, -minima) on the slice intervals, tagged "fitted".
  OscBound to_bound(double factor = 1.0) const;
};

/// D(t) = min over x of the smallest eigenvalue of the symmetrized velocity
/// gradient, per time slice (central differences, d components on a d-D grid).
OnesidedSeries euler_velocity_onesided(const SpaceTimeField& v);

/// Minimum forward difference quotient of a scalar 1-D field; the negative
/// part is the empirical one-sided Lipschitz rate.  include_wrap=false skips
/// the periodic seam for data that only fills a window of the container.
double scalar_onesided(const Field& u, bool include_wrap = true);

}  // namespace hypercl
