/// @file monitor.hpp
/// @brief The uniqueness experiment: relative-entropy gap between a
///        dissipative numerical solution and a characteristic-based exact
///        solution, checked against the integral growth bound.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "catalog.hpp"
#include "exact.hpp"
#include "field.hpp"
#include "fv.hpp"
#include "osc.hpp"
#include "report.hpp"

namespace hypercl {

/// Relative-entropy gap series r(tau) = int H(U|Ubar) dx with the bound
/// r(0) exp(int_0^tau b).
struct GronwallSeries {
  std::vector<double> times;
  std::vector<double> r;
  OscBound b;
  double tol = 0.5;   ///< discretization headroom on the bound
  bool pass = false;  ///< r(tau) <= bound(tau) * (1 + tol) at every snapshot

  double bound(double tau) const;
  Report to_report(const std::string& name) const;
};

/// Gap per snapshot between two runs on matching grids and times.
/// Throws GridMismatch on layout or time disagreement and
/// FieldLeavesSampleBox when the reference leaves the audit box.
GronwallSeries gronwall_series(const SystemDef& sys, const SpaceTimeField& U,
                               const SpaceTimeField& Ubar, const OscBound& b,
                               double tol = 0.5);

/// End-to-end refinement experiment on the passively-coupled system: exact
/// reference (profile u, characteristic v), finite-volume candidate from the
/// same initial data, rate bound fitted on the coarsest rung unless supplied.
struct UniquenessConfig {
  TriangularParams params;   ///< system parameters
  RarefactionSpec profile;   ///< scalar profile driving the transport
  double t0 = 0.25;          ///< profile time offset at experiment time 0
  double T = 0.5;
  double lo = -1.0, hi = 3.0;
  std::function<double(double)> v0;  ///< transported component at time 0
  std::vector<int> ladder = {256, 512, 1024, 2048};
  int n_snaps = 16;
  double cfl = 0.5;
  double delta = 0.0;  ///< L2 size of the extra perturbed run (finest rung)
  OscBound b;          ///< used when user_b is set; fitted otherwise
  bool user_b = false;
  int workers = 1;
  std::uint64_t seed = 20240301u;

  void validate() const;

  /// The shipped scenario: q=1, m=1, lambda=0.2, M1=1.1, v_max=1.2; profile
  /// (0,1) fan at 0 with ramp on [1,3], offset 0.25; v0 = 0.5 + unit hat on
  /// [0.5, 2.5]; torus [-1,3], T = 0.5.
  static UniquenessConfig triangular_default();
};

/// Exact reference at resolution N: u from the profile, v transported from v0
/// along characteristics; snapshot j at experiment time j T / n_snaps.
SpaceTimeField exact_reference(const UniquenessConfig& cfg, int N);

/// Runs the ladder (plus one perturbed run when delta > 0) and verdicts:
/// refinement drives r(T) down monotonically with end-to-end ratio <= 0.25,
/// and the perturbed gap stays within r(0) exp(int b) * 1.5.
Report uniqueness_experiment(const UniquenessConfig& cfg);

}  // namespace hypercl
