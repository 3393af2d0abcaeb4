/// @file monitor.cpp

#include "hypercl/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hypercl/besov.hpp"
#include "hypercl/errors.hpp"
#include "hypercl/relative_entropy.hpp"

namespace hypercl {

namespace {

bool times_match(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_same_layout(const Field& a, const Field& b) {
  bool ok = a.n == b.n && a.m == b.m && a.lo.size() == b.lo.size();
  for (std::size_t k = 0; ok && k < a.lo.size(); ++k) {
    const double scale = std::max({1.0, std::abs(a.lo[k]), std::abs(a.hi[k])});
    ok = std::abs(a.lo[k] - b.lo[k]) <= 1e-12 * scale &&
         std::abs(a.hi[k] - b.hi[k]) <= 1e-12 * scale;
  }
  if (!ok) throw GridMismatch("gronwall_series: snapshot layouts differ");
}

void require_in_box(const SystemDef& sys, const SpaceTimeField& Ubar) {
  const Box& box = sys.sample_box;
  double slack = 0.0;
  for (int i = 0; i < box.dim(); ++i) slack = std::max(slack, 1e-9 * (box.hi[i] - box.lo[i]));
  Vec xi(sys.m);
  for (const Field& f : Ubar.snaps) {
    const long nc = static_cast<long>(f.data.size()) / f.m;
    for (long cell = 0; cell < nc; ++cell) {
      for (int c = 0; c < f.m; ++c) xi[c] = f.at(cell, c);
      if (!box.contains(xi, slack))
        throw FieldLeavesSampleBox("gronwall_series: reference state outside sample box");
    }
  }
}

// Bound comparison with r interpolated linearly between snapshots.
struct SeriesVerdict {
  bool pass = true;
  std::string why;
};

SeriesVerdict check_series(const GronwallSeries& s) {
  SeriesVerdict v;
  for (double ri : s.r)
    if (ri < -1e-12) {
      v.pass = false;
      v.why = "violated: relative entropy gap must be nonnegative";
      return v;
    }
  const int sub = 16;
  for (std::size_t j = 0; j + 1 < s.times.size(); ++j) {
    for (int q = 0; q <= sub; ++q) {
      const double th = static_cast<double>(q) / sub;
      const double t = s.times[j] + th * (s.times[j + 1] - s.times[j]);
      const double rl = s.r[j] + th * (s.r[j + 1] - s.r[j]);
      if (rl > s.bound(t) * (1.0 + s.tol) + 1e-300) {
        v.pass = false;
        v.why = "violated: gap must stay within r(0) exp(int b) x (1 + tol)";
        return v;
      }
    }
  }
  if (s.times.size() == 1 && !s.r.empty() && s.r[0] > s.bound(s.times[0]) * (1.0 + s.tol)) {
    v.pass = false;
    v.why = "violated: gap must stay within r(0) exp(int b) x (1 + tol)";
  }
  return v;
}

}  // namespace

double GronwallSeries::bound(double tau) const {
  if (times.empty() || r.empty()) return 0.0;
  if (b.edges.empty()) return r.front();
  return r.front() * std::exp(b.integral(times.front(), tau));
}

Report GronwallSeries::to_report(const std::string& name) const {
  Report rep;
  rep.name = name;
  rep.pass = pass;
  rep.columns = {"t", "r", "bound"};
  for (std::size_t j = 0; j < times.size(); ++j)
    rep.rows.push_back({times[j], r[j], bound(times[j])});
  rep.metric("r0", r.empty() ? 0.0 : r.front());
  rep.metric("r_final", r.empty() ? 0.0 : r.back());
  rep.metric("sup_r", r.empty() ? 0.0 : *std::max_element(r.begin(), r.end()));
  rep.metric("tol", tol);
  if (!times.empty()) rep.metric("b_integral", b.integral(times.front(), times.back()));
  const SeriesVerdict v = check_series(*this);
  if (!v.pass) rep.note(v.why);
  return rep;
}

GronwallSeries gronwall_series(const SystemDef& sys, const SpaceTimeField& U,
                               const SpaceTimeField& Ubar, const OscBound& b, double tol) {
  if (tol < 0.0) throw InvalidParams("gronwall_series: tol must be >= 0");
  b.validate();
  U.check_consistent();
  Ubar.check_consistent();
  if (U.size() < 1) throw InvalidParams("gronwall_series: need at least one snapshot");
  if (U.size() != Ubar.size()) throw GridMismatch("gronwall_series: snapshot counts differ");
  for (int j = 0; j < U.size(); ++j)
    if (!times_match(U.times[j], Ubar.times[j]))
      throw GridMismatch("gronwall_series: snapshot times differ");
  require_same_layout(U.snaps.front(), Ubar.snaps.front());
  if (U.snaps.front().m != sys.m)
    throw GridMismatch("gronwall_series: component count does not match the system");
  require_in_box(sys, Ubar);

  GronwallSeries s;
  s.times = U.times;
  s.b = b;
  s.tol = tol;
  s.r.reserve(U.size());
  for (int j = 0; j < U.size(); ++j)
    s.r.push_back(relative_entropy_integral(sys, U.snaps[j], Ubar.snaps[j]));
  s.pass = check_series(s).pass;
  return s;
}

// ---------------------------------------------------------------------------
// Uniqueness experiment
// ---------------------------------------------------------------------------

void UniquenessConfig::validate() const {
  profile.validate();
  if (!profile.periodic) throw InvalidParams("uniqueness: profile must be periodic");
  if (params.d != 1 || params.n_v != 1)
    throw InvalidParams("uniqueness: scenario needs d = 1 with one transported component");
  if (!(T > 0.0) || t0 < 0.0) throw InvalidParams("uniqueness: need T > 0 and t0 >= 0");
  if (t0 + T > profile.T_max * (1.0 + 1e-12))
    throw InvalidParams("uniqueness: t0 + T exceeds profile persistence window");
  if (!(hi > lo)) throw InvalidParams("uniqueness: empty domain");
  if (!v0) throw InvalidParams("uniqueness: v0 closure required");
  if (ladder.empty()) throw InvalidParams("uniqueness: empty ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 8) throw InvalidParams("uniqueness: ladder resolutions must be >= 8");
    if (i > 0 && ladder[i] <= ladder[i - 1])
      throw InvalidParams("uniqueness: ladder must be strictly increasing");
  }
  if (n_snaps < 1) throw InvalidParams("uniqueness: need at least one snapshot interval");
  if (!(cfl > 0.0 && cfl < 1.0)) throw InvalidParams("uniqueness: cfl must lie in (0,1)");
  if (delta < 0.0) throw InvalidParams("uniqueness: delta must be >= 0");
  if (workers < 1) throw InvalidParams("uniqueness: workers must be >= 1");
  if (std::max(std::abs(profile.u_L), std::abs(profile.u_R)) > params.M1)
    throw InvalidParams("uniqueness: profile range exceeds the u sample box");
  if (user_b) b.validate();
}

UniquenessConfig UniquenessConfig::triangular_default() {
  UniquenessConfig c;
  c.params.q = 1.0;
  c.params.m = 1;
  c.params.lambda = 0.2;
  c.params.M1 = 1.1;
  c.params.v_max = 1.2;
  c.profile.f = burgers_flux();
  c.profile.u_L = 0.0;
  c.profile.u_R = 1.0;
  c.profile.x0 = 0.0;
  c.profile.periodic = true;
  c.profile.y0 = 1.0;
  c.profile.y1 = 3.0;
  c.profile.T_max = 1.5;
  c.v0 = [](double x) { return 0.5 + 0.7 * std::max(0.0, 1.0 - std::abs(x - 1.5)); };
  return c;
}

SpaceTimeField exact_reference(const UniquenessConfig& cfg, int N) {
  cfg.validate();
  if (N < 8) throw InvalidParams("exact_reference: N must be >= 8");
  std::vector<double> taus(cfg.n_snaps + 1), ptimes(cfg.n_snaps + 1);
  for (int j = 0; j <= cfg.n_snaps; ++j) {
    taus[j] = cfg.T * j / cfg.n_snaps;
    ptimes[j] = cfg.t0 + taus[j];
  }
  const TriangularParams p = cfg.params;
  auto g = [p](double u) { return triangular_g(p, u); };
  auto gp = [p](double u) { return triangular_gp(p, u); };
  SpaceTimeField v =
      triangular_v(cfg.profile, g, gp, cfg.v0, ptimes, cfg.lo, cfg.hi, N, cfg.workers);
  SpaceTimeField out;
  for (int j = 0; j <= cfg.n_snaps; ++j) {
    Field u = profile_field(cfg.profile, ptimes[j], N, cfg.lo, cfg.hi);
    Field s({N}, 2, {cfg.lo}, {cfg.hi});
    for (long i = 0; i < N; ++i) {
      s.at(i, 0) = u.at(i, 0);
      s.at(i, 1) = v.snaps[j].at(i, 0);
    }
    out.push(taus[j], std::move(s));
  }
  return out;
}

namespace {

SpaceTimeField fv_candidate(const UniquenessConfig& cfg, const SystemDef& sys, const Field& U0,
                            const std::vector<double>& taus) {
  GridSpec grid;
  grid.d = 1;
  grid.N = U0.n[0];
  grid.cfl = cfg.cfl;
  grid.T = cfg.T;
  grid.times = taus;
  grid.workers = cfg.workers;
  return solve(sys, U0, grid);
}

// Component perturbations a sin / a cos with a = delta / sqrt(|domain|), so the
// state-vector L2 size is exactly delta.
Field perturbed_data(const Field& U0, double delta) {
  Field out = U0;
  const double L = U0.hi[0] - U0.lo[0];
  const double a = delta / std::sqrt(L);
  const double dx = L / U0.n[0];
  for (long i = 0; i < U0.n[0]; ++i) {
    const double s = 2.0 * M_PI * (i + 0.5) * dx / L;
    out.at(i, 0) += a * std::sin(s);
    out.at(i, 1) += a * std::cos(s);
  }
  return out;
}

Field component(const Field& f, int c) {
  Field out(f.n, 1, f.lo, f.hi);
  const long nc = static_cast<long>(f.data.size()) / f.m;
  for (long i = 0; i < nc; ++i) out.at(i, 0) = f.at(i, c);
  return out;
}

}  // namespace

Report uniqueness_experiment(const UniquenessConfig& cfg) {
  cfg.validate();
  const SystemDef sys = make_triangular(cfg.params);
  std::vector<double> taus(cfg.n_snaps + 1);
  for (int j = 0; j <= cfg.n_snaps; ++j) taus[j] = cfg.T * j / cfg.n_snaps;

  Report rep;
  rep.name = "uniqueness_experiment";
  rep.columns = {"N", "tau", "r", "bound"};
  rep.metric("T", cfg.T);
  rep.metric("delta", cfg.delta);
  rep.metric("n_rungs", static_cast<double>(cfg.ladder.size()));

  std::vector<SpaceTimeField> refs;
  refs.reserve(cfg.ladder.size());
  for (int N : cfg.ladder) refs.push_back(exact_reference(cfg, N));

  // Rate bound: user-supplied, else fitted on the coarsest reference; either
  // way it must keep the pointwise margin nonnegative on the audited samples.
  OscBound b = cfg.user_b ? cfg.b : fit_osc_bound(sys, refs.front(), 256, cfg.workers, cfg.seed);
  b.validate();
  const OscReport margin = osc_margin_pointwise(sys, refs.front(), b, 256, cfg.workers, cfg.seed);
  rep.metric("osc_margin_worst", margin.worst_margin);
  rep.metric("b_integral", b.integral(0.0, cfg.T));

  // Refinement ladder from identical data.
  std::vector<GronwallSeries> ladder_series;
  for (std::size_t k = 0; k < cfg.ladder.size(); ++k) {
    SpaceTimeField U = fv_candidate(cfg, sys, refs[k].snaps.front(), taus);
    ladder_series.push_back(gronwall_series(sys, U, refs[k], b));
    const GronwallSeries& s = ladder_series.back();
    for (std::size_t j = 0; j < s.times.size(); ++j)
      rep.rows.push_back(
          {static_cast<double>(cfg.ladder[k]), s.times[j], s.r[j], s.bound(s.times[j])});
    rep.metric("r_final_N" + std::to_string(cfg.ladder[k]), s.r.back());
  }

  bool strict = true;
  for (std::size_t k = 0; k + 1 < ladder_series.size(); ++k)
    strict = strict && ladder_series[k + 1].r.back() < ladder_series[k].r.back();
  const double r_first = ladder_series.front().r.back();
  const double r_last = ladder_series.back().r.back();
  const double ratio = r_last / std::max(r_first, 1e-300);
  rep.metric("rT_ratio", ratio);
  rep.metric("rT_strict_decrease", strict ? 1.0 : 0.0);

  // tau-wise monotonicity across rungs, 5% slack allowed at one rung.
  int slack_rungs = 0;
  bool tauwise = true;
  for (std::size_t k = 0; k + 1 < ladder_series.size(); ++k) {
    double worst = 0.0;
    for (int j = 1; j <= cfg.n_snaps; ++j) {
      const double rc = ladder_series[k].r[j], rf = ladder_series[k + 1].r[j];
      if (rf <= 1e-16) continue;
      worst = std::max(worst, rf / std::max(rc, 1e-300));
    }
    if (worst > 1.05)
      tauwise = false;
    else if (worst > 1.0)
      ++slack_rungs;
  }
  tauwise = tauwise && slack_rungs <= 1;
  rep.metric("tauwise_monotone", tauwise ? 1.0 : 0.0);
  rep.metric("tauwise_slack_rungs", static_cast<double>(slack_rungs));
  const bool refine_pass = strict && ratio <= 0.25 && tauwise;

  // Perturbed run on the finest rung.
  bool pert_pass = true;
  if (cfg.delta > 0.0) {
    const SpaceTimeField& ref = refs.back();
    SpaceTimeField U = fv_candidate(cfg, sys, perturbed_data(ref.snaps.front(), cfg.delta), taus);
    const GronwallSeries ps = gronwall_series(sys, U, ref, b);
    const double r0 = ps.r.front();
    const double sup = *std::max_element(ps.r.begin(), ps.r.end());
    const double cap = r0 * std::exp(b.integral(0.0, cfg.T)) * 1.5;
    pert_pass = r0 > 0.0 && sup <= cap;
    rep.metric("perturbed_r0", r0);
    rep.metric("perturbed_sup", sup);
    rep.metric("perturbed_cap", cap);
  }

  // Regularity certificates for the reference: ramp Lipschitz bound and Besov
  // seminorms of both components on the finest final snapshot.
  rep.metric("cert_B0", lipschitz_B0(cfg.profile, cfg.t0 + cfg.T, 64));
  const Field& fin = refs.back().snaps.back();
  const BesovIndex idx{0.75, 2.0};
  rep.metric("cert_besov_u", besov_seminorm(component(fin, 0), idx, cfg.workers));
  rep.metric("cert_besov_v", besov_seminorm(component(fin, 1), idx, cfg.workers));
  rep.note(idx.theorem_grade() ? "besov certificate at alpha = 0.75 > 1/2 (theorem grade)"
                               : "besov certificate below theorem grade");

  rep.pass = refine_pass && pert_pass && margin.pass;
  if (!margin.pass) rep.note("violated: reported b must keep the OSC margin nonnegative");
  if (!strict) rep.note("violated: r(T) must strictly decrease along the refinement ladder");
  if (ratio > 0.25) rep.note("violated: r(T) at the finest rung must be <= 0.25 x coarsest");
  if (!tauwise)
    rep.note("violated: r(tau) must be nonincreasing across rungs (5% slack at one rung)");
  if (!pert_pass) rep.note("violated: perturbed gap must satisfy sup r <= r(0) exp(int b) x 1.5");
  return rep;
}

}  // namespace hypercl
