#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypercl/types.hpp"
#include "hypercl/util.hpp"

namespace hypercl {

using ScalarFn = std::function<double(const Vec&)>;
using VecFn = std::function<Vec(const Vec&)>;
using MatFn = std::function<Mat(const Vec&)>;
using PredFn = std::function<bool(const Vec&)>;

// Growth/integrability metadata attached to a system: the exponent p of the
// entropy growth window, the flux-growth exponents (l, L), the index set of
// entropy-gradient components that are genuinely nonlinear, and the resulting
// Lebesgue exponent the weak-strong framework asks of the strong field.
// p == 0 marks systems analysed in the bounded (L-infinity) setting.
struct GrowthMeta {
  double p = 0.0;
  double l = 0.0;
  double L = 0.0;
  std::vector<int> nonlinear_G;
  bool relflux_vanishes_on_nonlinear_G = true;
  double q_required = 0.0;
};

// ---------------------------------------------------------------------------
// SystemDef: one hyperbolic system d_t A(U) + div_x F(U) = 0 with entropy
// structure (H, G, optionally Q).  Closures take the state vector xi (the
// variable the entropy pair is expressed in) of size m.  Analytic derivative
// closures are optional; absent ones fall back to central differences.
// ---------------------------------------------------------------------------
struct SystemDef {
  std::string name;
  int d = 1;  // space dimension
  int m = 1;  // state components

  VecFn A;                   // conserved quantity, m -> m
  std::vector<VecFn> F;      // fluxes per direction, d entries
  ScalarFn H;                // entropy
  VecFn G;                   // entropy gradient in the A variable: DH = G . DA
  std::vector<ScalarFn> Q;   // entropy fluxes per direction; empty if unstated

  PredFn admissible;          // open admissible set O
  PredFn admissible_closure;  // closure of O; defaults to `admissible`
  Box sample_box;             // audit/sampling domain, subset of O
  GrowthMeta growth;

  // Optional analytic derivatives.
  MatFn DA;                  // (DA)_ij = d A_i / d xi_j
  std::vector<MatFn> DF;     // per direction
  MatFn DG;
  MatFn D2H;
  std::function<std::vector<Mat>(const Vec&)> D2A;  // Hessian of each A_i

  VecFn A_inverse;           // optional closed-form inverse of A (FV recovery)

  bool in_admissible(const Vec& xi) const { return admissible ? admissible(xi) : true; }
  bool in_closure(const Vec& xi) const {
    if (admissible_closure) return admissible_closure(xi);
    return in_admissible(xi);
  }
  bool has_Q() const { return !Q.empty(); }
  bool has_analytic_jacobians() const { return static_cast<bool>(DA) && !DF.empty(); }
};

enum class DerivMode { Auto, Analytic, FiniteDifference };

// First and second derivative data of a system at one state.
struct DerivativeBundle {
  Mat DA;                 // m x m
  std::vector<Mat> DF;    // d entries, m x m
  Mat DG;                 // m x m
  Mat D2H;                // m x m
  std::vector<Mat> D2A;   // m entries, m x m (Hessian of each A_i)
  double det_DA = 0.0;
};

// --- finite differences -----------------------------------------------------
// First derivatives: central differences with per-coordinate step
// 1e-6 * max(1, |xi_i|).  Second derivatives use a wider step,
// 1e-4 * max(1, |xi_i|), which balances truncation against rounding for the
// 4-point cross stencil.
Mat fd_jacobian(const VecFn& f, const Vec& xi);
Mat fd_hessian(const ScalarFn& f, const Vec& xi);

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

// Assemble all derivative data at xi.  mode Auto prefers analytic closures per
// entry and falls back to finite differences.  Throws NonAdmissibleState when
// xi is outside the admissible set and SingularDA when |det DA| < 1e-12.
DerivativeBundle jacobians(const SystemDef& sys, const Vec& xi,
                           DerivMode mode = DerivMode::Auto);

// Maximum relative mismatch between analytic and finite-difference first
// derivatives (DA, DF, DG) at xi.  Requires analytic closures.
double derivative_consistency(const SystemDef& sys, const Vec& xi);

// Symmetrizer D2H(xi) - sum_i G_i(xi) * D2A_i(xi), averaged with its
// transpose.  If the raw asymmetry exceeds `asym_tol` the input derivative
// data is considered wrong and AsymmetricInput is thrown rather than silently
// symmetrized.  The measured asymmetry is reported through `asymmetry_out`.
Mat symmetrizer(const SystemDef& sys, const Vec& xi,
                DerivMode mode = DerivMode::Auto, double* asymmetry_out = nullptr,
                double asym_tol = 1e-10);

struct SpdResult {
  double min_eigenvalue = 0.0;
  bool pass = false;
};

// Smallest eigenvalue of a symmetric matrix (self-adjoint solve).  Input must
// be symmetric within 1e-10 relative to its norm, else AsymmetricInput.
SpdResult check_spd(const Mat& M);

// Residual of the entropy/flux compatibility relation DQ_k = G . DF_k,
// maximized over directions and coordinates at one state.  Throws
// MissingEntropyFlux when the system ships no Q.
double entropy_flux_compatibility(const SystemDef& sys, const Vec& xi,
                                  DerivMode mode = DerivMode::Auto);

// Reconstruct Q_k(target) - Q_k(base) by integrating G . DF_k along the
// straight segment from base to target (composite Gauss-Legendre).  Every
// quadrature node must stay admissible, else PathLeavesAdmissibleSet.
std::vector<double> entropy_flux_reconstruct(const SystemDef& sys, const Vec& base,
                                             const Vec& target, int panels = 64);

// Same line integral along an explicit polyline (used by the
// path-independence audit).
std::vector<double> entropy_flux_line_integral(const SystemDef& sys,
                                               const std::vector<Vec>& polyline,
                                               int panels = 64);

// Draw n Latin-hypercube samples from the system's sample box.
std::vector<Vec> sample_states(const SystemDef& sys, int n, Rng& rng);

}  // namespace hypercl
