#include "hypercl/relative_entropy.hpp"

#include <cmath>

namespace hypercl {

double relative_entropy(const SystemDef& sys, const Vec& xi, const Vec& xibar) {
  if (!sys.in_admissible(xibar))
    throw NonAdmissibleState("relative_entropy: xibar outside admissible set");
  if (!sys.in_closure(xi))
    throw NonAdmissibleState("relative_entropy: xi outside closure of admissible set");
  return sys.H(xi) - sys.H(xibar) - sys.G(xibar).dot(sys.A(xi) - sys.A(xibar));
}

std::vector<Vec> relative_flux_all(const SystemDef& sys, const Vec& xi, const Vec& xibar) {
  if (!sys.in_closure(xi))
    throw NonAdmissibleState("relative_flux: xi outside closure of admissible set");
  const DerivativeBundle der = jacobians(sys, xibar);
  const Eigen::PartialPivLU<Mat> lu(der.DA);
  const Vec w = lu.solve(sys.A(xi) - sys.A(xibar));
  std::vector<Vec> out(sys.d);
  for (int k = 0; k < sys.d; ++k)
    out[k] = sys.F[k](xi) - sys.F[k](xibar) - der.DF[k] * w;
  return out;
}

Vec relative_flux(const SystemDef& sys, int k, const Vec& xi, const Vec& xibar) {
  if (k < 0 || k >= sys.d) throw InvalidParams("relative_flux: direction out of range");
  return relative_flux_all(sys, xi, xibar)[k];
}

double relative_entropy_integral(const SystemDef& sys, const Field& U, const Field& Ubar) {
  if (!U.same_layout(Ubar))
    throw GridMismatch("relative_entropy_integral: field layouts differ");
  if (U.m != sys.m)
    throw GridMismatch("relative_entropy_integral: component count does not match system");
  const long n = U.ncells();
  std::vector<double> vals(n);
  for (long c = 0; c < n; ++c)
    vals[c] = relative_entropy(sys, U.state(c), Ubar.state(c));
  return pairwise_sum(vals) * U.cell_measure();
}

Report quadratic_bounds_audit(const SystemDef& sys, int n_pairs, Rng& rng, int workers) {
  Report rep;
  rep.name = "quadratic_bounds/" + sys.name;
  rep.columns = {"sample_id"};
  for (int i = 0; i < sys.m; ++i) rep.columns.push_back("xi_" + std::to_string(i));
  for (int i = 0; i < sys.m; ++i) rep.columns.push_back("xibar_" + std::to_string(i));
  rep.columns.insert(rep.columns.end(), {"H_rel", "ratio1", "ratio2"});

  auto xis = sample_states(sys, n_pairs, rng);
  auto xibars = sample_states(sys, n_pairs, rng);

  struct Row {
    double H = 0, ratio1 = 0, ratio2 = 0;
    bool finite = true, positive = true, quadratic = true;
  };
  std::vector<Row> out(n_pairs);

  parallel_for(n_pairs, workers, [&](std::size_t i) {
    const Vec &xi = xis[i], &xb = xibars[i];
    Row& r = out[i];
    r.H = relative_entropy(sys, xi, xb);
    const double anorm2 = (sys.A(xi) - sys.A(xb)).squaredNorm();
    double fmax = 0;
    for (const Vec& fk : relative_flux_all(sys, xi, xb))
      fmax = std::max(fmax, fk.cwiseAbs().maxCoeff());
    r.finite = std::isfinite(r.H) && std::isfinite(fmax);
    r.positive = r.H > 0.0;
    r.ratio1 = anorm2 / r.H;
    r.ratio2 = fmax / r.H;

    // Richardson shrink towards xibar: H must decay quadratically, i.e.
    // shrinking the offset by 2 divides H by ~4.
    const Vec dxi = 0.125 * (xi - xb);
    const double h1 = relative_entropy(sys, xb + dxi, xb);
    const double h2 = relative_entropy(sys, xb + 0.5 * dxi, xb);
    if (h1 > 1e-14) {
      const double factor = h1 / std::max(h2, 1e-300);
      r.quadratic = factor > 2.5 && factor < 6.0;
    }
  });

  double worstH = 1e300, maxratio1 = 0, maxratio2 = 0;
  bool all_finite = true, all_positive = true, all_quadratic = true;
  for (int i = 0; i < n_pairs; ++i) {
    const Row& r = out[i];
    std::vector<double> row{static_cast<double>(i)};
    for (int c = 0; c < sys.m; ++c) row.push_back(xis[i][c]);
    for (int c = 0; c < sys.m; ++c) row.push_back(xibars[i][c]);
    row.insert(row.end(), {r.H, r.ratio1, r.ratio2});
    rep.rows.push_back(std::move(row));
    worstH = std::min(worstH, r.H);
    maxratio1 = std::max(maxratio1, r.ratio1);
    maxratio2 = std::max(maxratio2, r.ratio2);
    all_finite = all_finite && r.finite;
    all_positive = all_positive && r.positive;
    all_quadratic = all_quadratic && r.quadratic;
  }

  // coincidence check: identical states must give exactly zero up to rounding
  double coincidence = 0.0;
  for (int i = 0; i < std::min(n_pairs, 64); ++i)
    coincidence = std::max(coincidence, std::abs(relative_entropy(sys, xibars[i], xibars[i])));

  rep.metric("n_pairs", n_pairs);
  rep.metric("min_H_rel", worstH);
  rep.metric("max_ratio1", maxratio1);
  rep.metric("max_ratio2", maxratio2);
  rep.metric("coincidence_max", coincidence);
  rep.pass = all_finite && all_positive && all_quadratic && coincidence <= 1e-12;
  if (!all_positive) rep.note("relative entropy non-positive at a sampled pair");
  if (!all_quadratic) rep.note("quadratic shrink factor outside [2.5, 6]");
  if (!all_finite) rep.note("non-finite value encountered");
  return rep;
}

}  // namespace hypercl
