/// @file hypercl_main.cpp
/// @brief Command-line front end: scenario configs in, JSON reports and
///        plot-ready CSV out.  Exit 0 = all checked properties pass,
///        1 = a property failed (violated invariant named in the JSON),
///        2 = invalid config or usage.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hypercl/besov.hpp"
#include "hypercl/catalog.hpp"
#include "hypercl/errors.hpp"
#include "hypercl/exact.hpp"
#include "hypercl/field.hpp"
#include "hypercl/fv.hpp"
#include "hypercl/monitor.hpp"
#include "hypercl/osc.hpp"
#include "hypercl/relative_entropy.hpp"
#include "hypercl/report.hpp"
#include "hypercl/system.hpp"
#include "hypercl/util.hpp"

namespace {

using hypercl::Report;
using json = nlohmann::json;

// Config/usage problems exit 2, with a schema hint on stderr.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ctx {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 20240301u;
  int workers = 0;  // 0 = HYPERCL_WORKERS env, else logical cores
  double tol_scale = 1.0;
  json cfg = json::object();

  int resolved_workers() const { return hypercl::resolve_workers(workers); }
};

void load_config(Ctx& ctx) {
  if (ctx.config_path.empty()) return;
  std::ifstream in(ctx.config_path);
  if (!in) throw UsageError("config: cannot read '" + ctx.config_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    ctx.cfg = json::parse(ss.str());
  } catch (const std::exception& e) {
    throw UsageError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!ctx.cfg.is_object()) throw UsageError("config: top level must be a JSON object");
}

void check_keys(const json& cfg, const std::set<std::string>& allowed) {
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (allowed.count(it.key())) continue;
    std::string hint = "config: unknown key '" + it.key() + "'; allowed:";
    for (const auto& k : allowed) hint += " " + k;
    throw UsageError(hint);
  }
}

double num_or(const json& cfg, const std::string& key, double dflt) {
  if (!cfg.contains(key)) return dflt;
  if (!cfg.at(key).is_number()) throw UsageError("config: '" + key + "' must be a number");
  return cfg.at(key).get<double>();
}

int int_or(const json& cfg, const std::string& key, int dflt) {
  if (!cfg.contains(key)) return dflt;
  if (!cfg.at(key).is_number_integer()) throw UsageError("config: '" + key + "' must be an integer");
  return cfg.at(key).get<int>();
}

bool bool_or(const json& cfg, const std::string& key, bool dflt) {
  if (!cfg.contains(key)) return dflt;
  if (!cfg.at(key).is_boolean()) throw UsageError("config: '" + key + "' must be a boolean");
  return cfg.at(key).get<bool>();
}

std::string str_or(const json& cfg, const std::string& key, const std::string& dflt) {
  if (!cfg.contains(key)) return dflt;
  if (!cfg.at(key).is_string()) throw UsageError("config: '" + key + "' must be a string");
  return cfg.at(key).get<std::string>();
}

std::vector<double> vec_or(const json& cfg, const std::string& key, std::vector<double> dflt) {
  if (!cfg.contains(key)) return dflt;
  if (!cfg.at(key).is_array()) throw UsageError("config: '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : cfg.at(key)) {
    if (!v.is_number()) throw UsageError("config: '" + key + "' must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> ivec_or(const json& cfg, const std::string& key, std::vector<int> dflt) {
  if (!cfg.contains(key)) return dflt;
  if (!cfg.at(key).is_array()) throw UsageError("config: '" + key + "' must be an array of integers");
  std::vector<int> out;
  for (const auto& v : cfg.at(key)) {
    if (!v.is_number_integer()) throw UsageError("config: '" + key + "' must be an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

// Writes {sub}_report.json plus one CSV per tabular report; 0 iff all pass.
int emit(const Ctx& ctx, const std::string& sub, const std::vector<Report>& reps) {
  hypercl::write_file(ctx.out_dir + "/" + sub + "_report.json", hypercl::to_json(reps));
  for (const Report& r : reps)
    if (!r.columns.empty())
      hypercl::write_file(ctx.out_dir + "/" + sub + "_" + sanitize(r.name) + ".csv",
                          hypercl::to_csv(r.columns, r.rows));
  for (const Report& r : reps)
    if (!r.pass) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// systems
// ---------------------------------------------------------------------------

int run_systems(const std::string& action) {
  if (action != "list") throw UsageError("systems: the only supported action is 'list'");
  for (const std::string& n : hypercl::catalog_names()) std::printf("%s\n", n.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

hypercl::SystemDef build_system(const std::string& name, const json& cfg) {
  using namespace hypercl;
  if (name == "euler") {
    EulerParams p;
    p.gamma = num_or(cfg, "gamma", p.gamma);
    p.d = int_or(cfg, "d", p.d);
    return make_isentropic_euler(p);
  }
  if (name == "swmhd") {
    SwmhdParams p;
    p.gravity = num_or(cfg, "gravity", p.gravity);
    return make_swmhd(p);
  }
  if (name == "elastic1d") return make_convex_elasticity_1d();
  if (name == "scalar") {
    ScalarParams p;
    p.u_lo = num_or(cfg, "u_lo", p.u_lo);
    p.u_hi = num_or(cfg, "u_hi", p.u_hi);
    return make_scalar(p);
  }
  if (name == "triangular" || name == "triangular-md") {
    TriangularParams p = (name == "triangular") ? TriangularParams{} : multid_default();
    p.q = num_or(cfg, "q", p.q);
    p.m = int_or(cfg, "m", p.m);
    p.lambda = num_or(cfg, "lambda", p.lambda);
    p.M1 = num_or(cfg, "M1", p.M1);
    p.v_max = num_or(cfg, "v_max", p.v_max);
    if (name == "triangular-md") {
      p.d = int_or(cfg, "d", p.d);
      return make_multid_triangular(p);
    }
    return make_triangular(p);
  }
  throw UsageError("unknown system '" + name + "'; run `hypercl systems list`");
}

int run_audit(const Ctx& ctx, const std::string& system_flag) {
  using namespace hypercl;
  check_keys(ctx.cfg, {"system", "gamma", "gravity", "d", "q", "m", "lambda", "M1", "v_max",
                       "u_lo", "u_hi", "n_pairs", "n_samples"});
  const std::string name = !system_flag.empty() ? system_flag : str_or(ctx.cfg, "system", "");
  if (name.empty()) throw UsageError("audit: --system NAME (or config key \"system\") required");
  SystemDef sys = build_system(name, ctx.cfg);
  const int n_samples = int_or(ctx.cfg, "n_samples", 256);
  const int n_pairs = int_or(ctx.cfg, "n_pairs", 2000);
  Rng rng(ctx.seed);

  Report deriv;
  deriv.name = "derivative_consistency";
  Report spd;
  spd.name = "symmetrizer_spd";
  double worst = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& u : latin_hypercube(n_samples, sys.m, rng)) {
    const Vec xi = sys.sample_box.map_unit(u);
    worst = std::max(worst, derivative_consistency(sys, xi));
    min_eig = std::min(min_eig, check_spd(symmetrizer(sys, xi)).min_eigenvalue);
  }
  const double dtol = 1e-4 * ctx.tol_scale;
  deriv.metric("worst_mismatch", worst);
  deriv.metric("tol", dtol);
  deriv.pass = worst <= dtol;
  if (!deriv.pass) deriv.note("violated: analytic and finite-difference derivatives must agree");
  spd.metric("min_eigenvalue", min_eig);
  spd.metric("n_samples", n_samples);
  spd.pass = min_eig > 0.0;
  if (!spd.pass) spd.note("violated: symmetrizer must be positive definite on the sample box");

  const Report quad = quadratic_bounds_audit(sys, n_pairs, rng, ctx.resolved_workers());
  return emit(ctx, "audit", {deriv, spd, quad});
}

// ---------------------------------------------------------------------------
// osc
// ---------------------------------------------------------------------------

int run_osc(const Ctx& ctx) {
  using namespace hypercl;
  check_keys(ctx.cfg, {"N", "n_snaps", "T", "t0", "n_pairs", "b", "eps_ladder"});
  UniquenessConfig ucfg = UniquenessConfig::triangular_default();
  ucfg.T = num_or(ctx.cfg, "T", ucfg.T);
  ucfg.t0 = num_or(ctx.cfg, "t0", ucfg.t0);
  ucfg.n_snaps = int_or(ctx.cfg, "n_snaps", 8);
  ucfg.workers = ctx.resolved_workers();
  ucfg.seed = ctx.seed;
  const int N = int_or(ctx.cfg, "N", 128);
  const int n_pairs = int_or(ctx.cfg, "n_pairs", 256);
  const SystemDef sys = make_triangular(ucfg.params);
  const SpaceTimeField ref = exact_reference(ucfg, N);

  const OscBound b = ctx.cfg.contains("b")
                         ? OscBound::constant(num_or(ctx.cfg, "b", 0.0), 0.0, ucfg.T)
                         : fit_osc_bound(sys, ref, n_pairs, ucfg.workers, ctx.seed);
  Report fit;
  fit.name = "osc_bound";
  fit.metric("b_integral", b.integral(0.0, ucfg.T));
  fit.metric("fitted", b.provenance == "fitted" ? 1.0 : 0.0);
  fit.columns = {"t_left", "t_right", "b"};
  for (std::size_t i = 0; i < b.values.size(); ++i)
    fit.rows.push_back({b.edges[i], b.edges[i + 1], b.values[i]});

  const OscReport margin = osc_margin_pointwise(sys, ref, b, n_pairs, ucfg.workers, ctx.seed);
  const double dx = (ucfg.hi - ucfg.lo) / N;
  const std::vector<double> eps = vec_or(ctx.cfg, "eps_ladder", {16 * dx, 8 * dx, 4 * dx});
  const OscReport dist = osc_distributional(sys, ref, eps, b, n_pairs, ucfg.workers, ctx.seed);
  return emit(ctx, "osc", {fit, margin.table, dist.table});
}

// ---------------------------------------------------------------------------
// besov / commutator
// ---------------------------------------------------------------------------

hypercl::Field kink_field(const Ctx& ctx, int N, double beta) {
  (void)ctx;
  return hypercl::Field::sample1d(
      N, 0.0, 1.0, [beta](double x) { return std::pow(std::abs(2.0 * x - 1.0), beta); });
}

std::vector<double> dyadic_ladder(const Ctx& ctx, int hi_pow, int lo_pow) {
  std::vector<double> eps;
  for (int p = hi_pow; p <= lo_pow; ++p) eps.push_back(std::ldexp(1.0, -p));
  return vec_or(ctx.cfg, "eps_ladder", eps);
}

int run_besov(const Ctx& ctx) {
  using namespace hypercl;
  check_keys(ctx.cfg, {"N", "alpha", "q", "beta", "eps_ladder"});
  const int N = int_or(ctx.cfg, "N", 4096);
  const double beta = num_or(ctx.cfg, "beta", 0.6);
  const BesovIndex idx{num_or(ctx.cfg, "alpha", 0.6), num_or(ctx.cfg, "q", 4.0)};
  const Field w = kink_field(ctx, N, beta);

  Report semi;
  semi.name = "besov_seminorm";
  const double s = besov_seminorm(w, idx, ctx.resolved_workers());
  semi.metric("seminorm", s);
  semi.metric("alpha", idx.alpha);
  semi.metric("q", idx.q);
  semi.metric("theorem_grade", idx.theorem_grade() ? 1.0 : 0.0);
  semi.pass = std::isfinite(s) && s > 0.0;
  if (!semi.pass) semi.note("violated: seminorm must be finite and positive");

  const Report rates =
      mollification_rate_audit(w, idx, dyadic_ladder(ctx, 4, 8), ctx.resolved_workers());
  return emit(ctx, "besov", {semi, rates});
}

int run_commutator(const Ctx& ctx) {
  using namespace hypercl;
  check_keys(ctx.cfg, {"N", "alpha", "q", "beta", "eps_ladder"});
  const int N = int_or(ctx.cfg, "N", 4096);
  const double beta = num_or(ctx.cfg, "beta", 0.6);
  const BesovIndex idx{num_or(ctx.cfg, "alpha", 0.6), num_or(ctx.cfg, "q", 4.0)};
  const Field w = kink_field(ctx, N, beta);
  auto square = [](const Vec& v) {
    Vec o(1);
    o[0] = v[0] * v[0];
    return o;
  };
  const Report rate =
      commutator_rate(square, 1, w, idx, dyadic_ladder(ctx, 4, 8), ctx.resolved_workers());
  return emit(ctx, "commutator", {rate});
}

// ---------------------------------------------------------------------------
// exact
// ---------------------------------------------------------------------------

int run_exact(const Ctx& ctx) {
  using namespace hypercl;
  check_keys(ctx.cfg, {"N", "t"});
  const int N = int_or(ctx.cfg, "N", 1024);
  const double t = num_or(ctx.cfg, "t", 1.0);
  const UniquenessConfig ucfg = UniquenessConfig::triangular_default();
  const RarefactionSpec& spec = ucfg.profile;
  if (!(t > 0.0) || t > spec.T_max) throw UsageError("exact: t must lie in (0, T_max]");

  const Field u = profile_field(spec, t, N, ucfg.lo, ucfg.hi);
  write_file(ctx.out_dir + "/exact_profile.csv", snapshot_csv(u));

  const double B0 = lipschitz_B0(spec, t, 64);
  const double M = 0.5 * (ucfg.hi - ucfg.lo);
  Report hold = holder_certificate(u, spec.f, 1.0, M, B0, t);

  const OnesidedCertificate oc = onesided_certificate(u, true);
  Report one;
  one.name = "onesided_certificate";
  one.metric("min_quotient", oc.min_quotient);
  one.metric("B1", oc.B1);
  one.metric("B0", B0);
  one.pass = oc.B1 <= B0 * (1.0 + 1e-6 * ctx.tol_scale);
  if (!one.pass) one.note("violated: one-sided rate must not exceed the ramp Lipschitz bound");
  return emit(ctx, "exact", {hold, one});
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int run_solve(const Ctx& ctx) {
  using namespace hypercl;
  check_keys(ctx.cfg, {"system", "N", "T", "t0", "cfl", "n_snaps", "godunov"});
  const std::string name = str_or(ctx.cfg, "system", "scalar");
  const int N = int_or(ctx.cfg, "N", 512);
  const double T = num_or(ctx.cfg, "T", 0.5);
  const double t0 = num_or(ctx.cfg, "t0", 0.25);
  GridSpec grid =
      GridSpec::uniform(1, N, num_or(ctx.cfg, "cfl", 0.5), T, int_or(ctx.cfg, "n_snaps", 8));
  grid.godunov = bool_or(ctx.cfg, "godunov", false);
  grid.workers = ctx.resolved_workers();

  UniquenessConfig ucfg = UniquenessConfig::triangular_default();
  ucfg.t0 = t0;
  SystemDef sys;
  Field U0;
  if (name == "scalar") {
    sys = make_scalar({});
    U0 = profile_field(ucfg.profile, t0, N, ucfg.lo, ucfg.hi);
  } else if (name == "triangular") {
    sys = make_triangular(ucfg.params);
    ucfg.n_snaps = 1;
    ucfg.T = std::min(T, ucfg.profile.T_max - t0);
    U0 = exact_reference(ucfg, N).snaps.front();
  } else {
    throw UsageError("solve: system must be 'scalar' or 'triangular'");
  }

  SolveTrace trace;
  const SpaceTimeField run = solve(sys, U0, grid, &trace);
  write_file(ctx.out_dir + "/solve_manifest.json", run_manifest_json(sys, grid, trace));
  write_file(ctx.out_dir + "/solve_final.csv", snapshot_csv(run.snaps.back()));
  const Report budget = entropy_budget(sys, run);
  const Report cons = conservation_audit(sys, run, 1e-12 * ctx.tol_scale);
  return emit(ctx, "solve", {budget, cons});
}

// ---------------------------------------------------------------------------
// monitor
// ---------------------------------------------------------------------------

int run_monitor(const Ctx& ctx) {
  using namespace hypercl;
  check_keys(ctx.cfg,
             {"ladder", "n_snaps", "delta", "T", "t0", "cfl", "q", "m", "lambda", "M1", "v_max"});
  UniquenessConfig cfg = UniquenessConfig::triangular_default();
  cfg.ladder = ivec_or(ctx.cfg, "ladder", cfg.ladder);
  cfg.n_snaps = int_or(ctx.cfg, "n_snaps", cfg.n_snaps);
  cfg.delta = num_or(ctx.cfg, "delta", 1e-2);
  cfg.T = num_or(ctx.cfg, "T", cfg.T);
  cfg.t0 = num_or(ctx.cfg, "t0", cfg.t0);
  cfg.cfl = num_or(ctx.cfg, "cfl", cfg.cfl);
  cfg.params.q = num_or(ctx.cfg, "q", cfg.params.q);
  cfg.params.m = int_or(ctx.cfg, "m", cfg.params.m);
  cfg.params.lambda = num_or(ctx.cfg, "lambda", cfg.params.lambda);
  cfg.params.M1 = num_or(ctx.cfg, "M1", cfg.params.M1);
  cfg.params.v_max = num_or(ctx.cfg, "v_max", cfg.params.v_max);
  cfg.workers = ctx.resolved_workers();
  cfg.seed = ctx.seed;

  const Report rep = uniqueness_experiment(cfg);
  for (const int N : cfg.ladder) {
    std::vector<std::vector<double>> rows;
    for (const auto& row : rep.rows)
      if (row[0] == static_cast<double>(N)) rows.push_back(row);
    write_file(ctx.out_dir + "/monitor_rung_N" + std::to_string(N) + ".csv",
               to_csv(rep.columns, rows));
  }
  return emit(ctx, "monitor", {rep});
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  CLI::App app{"verification toolkit for hyperbolic conservation laws with entropy structure"};
  app.require_subcommand(1);
  app.add_option("--config", ctx.config_path, "JSON config file");
  app.add_option("--out", ctx.out_dir, "output directory (default: out)");
  app.add_option("--seed", ctx.seed, "RNG seed");
  app.add_option("--workers", ctx.workers, "worker threads (0 = HYPERCL_WORKERS env or cores)");
  app.add_option("--tol-scale", ctx.tol_scale, "tolerance multiplier");

  std::string systems_action, audit_system;
  CLI::App* sc_systems = app.add_subcommand("systems", "catalog queries ('systems list')");
  sc_systems->add_option("action", systems_action, "query; only 'list'")->required();
  CLI::App* sc_audit = app.add_subcommand("audit", "entropy-structure audits for one system");
  sc_audit->add_option("--system", audit_system, "catalog system name");
  CLI::App* sc_osc = app.add_subcommand("osc", "one-sided margin audits on the shipped reference");
  CLI::App* sc_besov = app.add_subcommand("besov", "seminorm and mollification-rate audits");
  CLI::App* sc_comm = app.add_subcommand("commutator", "commutator decay-rate audit");
  CLI::App* sc_exact = app.add_subcommand("exact", "profile construction and certificates");
  CLI::App* sc_solve = app.add_subcommand("solve", "finite-volume run with budget audits");
  CLI::App* sc_monitor = app.add_subcommand("monitor", "uniqueness experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    load_config(ctx);
    if (sc_systems->parsed()) return run_systems(systems_action);
    if (sc_audit->parsed()) return run_audit(ctx, audit_system);
    if (sc_osc->parsed()) return run_osc(ctx);
    if (sc_besov->parsed()) return run_besov(ctx);
    if (sc_comm->parsed()) return run_commutator(ctx);
    if (sc_exact->parsed()) return run_exact(ctx);
    if (sc_solve->parsed()) return run_solve(ctx);
    if (sc_monitor->parsed()) return run_monitor(ctx);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const hypercl::InvalidParams& e) {
    std::fprintf(stderr, "invalid config: %s\n", e.what());
    return 2;
  } catch (const hypercl::Error& e) {
    Report fail;
    fail.name = "run_failure";
    fail.pass = false;
    fail.note(std::string("violated: ") + e.what());
    hypercl::write_file(ctx.out_dir + "/failure_report.json", hypercl::to_json({fail}));
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 2;
}
