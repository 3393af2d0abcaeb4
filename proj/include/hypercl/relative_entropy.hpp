#pragma once

#include "hypercl/field.hpp"
#include "hypercl/report.hpp"
#include "hypercl/system.hpp"

namespace hypercl {

// H(xi|xibar) = H(xi) - H(xibar) - G(xibar) . (A(xi) - A(xibar)).
// xibar must be admissible (derivatives are taken there); xi may live in the
// closure of the admissible set.
double relative_entropy(const SystemDef& sys, const Vec& xi, const Vec& xibar);

// F_k(xi|xibar) = F_k(xi) - F_k(xibar) - DF_k(xibar) DA(xibar)^{-1} (A(xi)-A(xibar)).
// The DA application is a linear solve, never an explicit inverse.
Vec relative_flux(const SystemDef& sys, int k, const Vec& xi, const Vec& xibar);

// All directions at once (one Jacobian assembly / LU factorization).
std::vector<Vec> relative_flux_all(const SystemDef& sys, const Vec& xi, const Vec& xibar);

// integral over the torus of H(U|Ubar) dx  (midpoint rule, pairwise summed).
double relative_entropy_integral(const SystemDef& sys, const Field& U, const Field& Ubar);

// Sampled audit of the quadratic structure: positivity of H(xi|xibar) for
// xi != xibar, vanishing at xi = xibar, quadratic smallness under Richardson
// shrinking, and the flux-domination ratio max_k |F_k(xi|xibar)| / H(xi|xibar).
// Emits one CSV row per sample: sample_id, xi..., xibar..., H_rel, ratio1
// (|A(xi)-A(xibar)|^2 / H_rel), ratio2 (max_k |F_k| / H_rel).
Report quadratic_bounds_audit(const SystemDef& sys, int n_pairs, Rng& rng,
                              int workers = 1);

}  // namespace hypercl
