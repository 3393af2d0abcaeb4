#pragma once

#include <functional>
#include <vector>

#include "hypercl/field.hpp"
#include "hypercl/report.hpp"

namespace hypercl {

// (alpha, q) indices of the translation-difference seminorm: fields whose Lq
// shift differences scale like |shift|^alpha.  alpha > 1/2 is the threshold
// the uniqueness theorem cares about ("theorem grade").
struct BesovIndex {
  double alpha = 0.5;
  double q = 2.0;

  bool theorem_grade() const { return alpha > 0.5; }
};

// Compactly supported smoothing kernel at scale eps.  The d-dimensional
// kernel is the tensor product over axes of profile(x/eps); each axis factor
// is discretely normalized to unit mass, so convolution preserves the mean
// exactly.  Default profile: the standard smooth bump exp(-1/(1-s^2)).
struct MollifierKernel {
  double eps = 0.1;
  std::function<double(double)> profile;  // support in (-1, 1)

  static MollifierKernel bump(double eps);
};

// sup over axis-aligned grid shifts (every cell count 1..64, then dyadic up
// to half the axis) of ||g(.+h) - g||_Lq / |h|^alpha, with discrete Lq norms
// (Euclidean magnitude across components).
double besov_seminorm(const Field& g, const BesovIndex& idx, int workers = 1);

// Discrete periodic convolution with the tensor-product kernel.
// Requires eps >= 2 dx on every axis (EpsilonBelowGrid) and kernel support
// within half the domain (EpsilonExceedsDomain).
Field mollify(const Field& g, const MollifierKernel& kern);

// Discrete Lq norm over cells: (sum |state|_2^q * cell measure)^(1/q).
double lq_norm(const Field& g, double q);

// Central-difference gradient; output has m*dim components laid out with the
// axis index slowest (comp = axis*m + c).
Field gradient_central(const Field& g);

// Rates of ||g_eps - g||_q (target slope >= alpha - 0.1) and ||grad g_eps||_q
// (target >= alpha - 1 - 0.1) over a dyadic ladder of >= 5 scales with
// eps >= 4 dx; also reports max ||g_eps - g||_q / (seminorm * eps^alpha),
// which must stay <= 1.1.  The two extreme rungs are excluded from fits.
Report mollification_rate_audit(const Field& g, const BesovIndex& idx,
                                const std::vector<double>& eps_ladder,
                                int workers = 1);

// ||grad(B(w) conv zeta_eps) - grad(B(w conv zeta_eps))||_{q/2} per rung and
// its fitted slope; pass iff slope >= 2 alpha - 1 - 0.1.  Bmap acts cellwise
// with out_m output components; q >= 2 required.  Norms uniformly below
// 1e-14 (linear maps) short-circuit to pass.
Report commutator_rate(const std::function<Vec(const Vec&)>& Bmap, int out_m,
                       const Field& w, const BesovIndex& idx,
                       const std::vector<double>& eps_ladder, int workers = 1);

}  // namespace hypercl
