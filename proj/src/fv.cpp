#include "hypercl/fv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include <Eigen/LU>

#include "hypercl/errors.hpp"
#include "hypercl/util.hpp"

namespace hypercl {

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

void GridSpec::validate() const {
  if (d < 1) throw InvalidParams("grid: d must be >= 1");
  if (N < 8) throw InvalidParams("grid: need at least 8 cells per axis");
  if (!(cfl > 0.0 && cfl <= 0.9)) throw InvalidParams("grid: CFL must lie in (0, 0.9]");
  if (!(T > 0.0)) throw InvalidParams("grid: T must be positive");
  double prev = -1.0;
  for (double t : times) {
    if (!(t >= 0.0 && t <= T * (1 + 1e-12)))
      throw InvalidParams("grid: snapshot times must lie in [0, T]");
    if (!(t > prev)) throw InvalidParams("grid: snapshot times must increase");
    prev = t;
  }
}

std::vector<double> GridSpec::snapshot_times() const {
  if (!times.empty()) return times;
  return {0.0, T};
}

GridSpec GridSpec::uniform(int d, int N, double cfl, double T, int n_snaps) {
  GridSpec g;
  g.d = d;
  g.N = N;
  g.cfl = cfl;
  g.T = T;
  for (int j = 0; j <= n_snaps; ++j) g.times.push_back(T * j / n_snaps);
  return g;
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

namespace {

struct CellGeom {
  std::vector<long> nbr;  // +1 neighbor along each axis, cell-major [k][cell]
  std::vector<long> prv;  // -1 neighbor
  long ncells = 0;
  int d = 0;

  long at(int k, long cell, bool plus) const {
    return (plus ? nbr : prv)[static_cast<std::size_t>(k) * ncells + cell];
  }
};

CellGeom build_geom(const Field& f) {
  CellGeom g;
  g.ncells = f.ncells();
  g.d = f.dim();
  g.nbr.resize(static_cast<std::size_t>(g.d) * g.ncells);
  g.prv.resize(static_cast<std::size_t>(g.d) * g.ncells);
  std::vector<int> idx(g.d, 0);
  for (long c = 0; c < g.ncells; ++c) {
    for (int k = 0; k < g.d; ++k) {
      const int nk = f.n[k];
      idx[k] = (idx[k] + 1) % nk;  // probe +1
      g.nbr[static_cast<std::size_t>(k) * g.ncells + c] = f.flat(idx);
      idx[k] = (idx[k] + nk - 2) % nk;  // probe -1
      g.prv[static_cast<std::size_t>(k) * g.ncells + c] = f.flat(idx);
      idx[k] = (idx[k] + 1) % nk;  // restore
    }
    // odometer advance (last axis fastest)
    for (int k = g.d - 1; k >= 0; --k) {
      if (++idx[k] < f.n[k]) break;
      idx[k] = 0;
    }
  }
  return g;
}

// Newton recovery of U from V = A(U); returns false when it fails.
bool recover_newton(const SystemDef& sys, const Vec& v, Vec& u) {
  for (int it = 0; it < 50; ++it) {
    const Vec r = sys.A(u) - v;
    if (r.cwiseAbs().maxCoeff() <= 1e-12) return true;
    const Mat J = sys.DA ? sys.DA(u) : fd_jacobian(sys.A, u);
    Eigen::PartialPivLU<Mat> lu(J);
    if (std::abs(lu.determinant()) < 1e-14) return false;
    const Vec step = lu.solve(r);
    double lambda = 1.0;
    const double r0 = r.cwiseAbs().maxCoeff();
    for (int damp = 0; damp < 20; ++damp) {
      const Vec trial = u - lambda * step;
      if ((sys.A(trial) - v).cwiseAbs().maxCoeff() < r0) {
        u = trial;
        break;
      }
      lambda *= 0.5;
      if (damp == 19) u -= lambda * step;  // last resort: tiny step anyway
    }
  }
  return (sys.A(u) - v).cwiseAbs().maxCoeff() <= 1e-12;
}

// Scalar monotone fallback when Newton stalls.
bool recover_bisect(const SystemDef& sys, double v, double& u) {
  auto a = [&](double x) { return sys.A((Vec(1) << x).finished())[0]; };
  double lo = u - 1.0, hi = u + 1.0;
  int guard = 0;
  while (a(lo) > v && ++guard < 120) lo -= (hi - lo);
  while (a(hi) < v && ++guard < 240) hi += (hi - lo);
  if (a(lo) > v || a(hi) < v) return false;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double am = a(mid);
    if (std::abs(am - v) <= 1e-12) {
      u = mid;
      return true;
    }
    (am < v ? lo : hi) = mid;
  }
  u = 0.5 * (lo + hi);
  return std::abs(a(u) - v) <= 1e-11;
}

// Godunov flux for a scalar convex law: exact Riemann solution.
double godunov_flux(const SystemDef& sys, double uL, double uR) {
  auto f = [&](double x) { return sys.F[0]((Vec(1) << x).finished())[0]; };
  auto fp = [&](double x) {
    if (!sys.DF.empty() && sys.DF[0]) return sys.DF[0]((Vec(1) << x).finished())(0, 0);
    return fd_jacobian(sys.F[0], (Vec(1) << x).finished())(0, 0);
  };
  if (uL <= uR) {
    if (fp(uL) >= 0.0) return f(uL);
    if (fp(uR) <= 0.0) return f(uR);
    double lo = uL, hi = uR;  // sonic point: f' crosses zero
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fp(mid) < 0.0 ? lo : hi) = mid;
    }
    return f(0.5 * (lo + hi));
  }
  return std::max(f(uL), f(uR));
}

}  // namespace

SpaceTimeField solve(const SystemDef& sys, const Field& U0, const GridSpec& grid,
                     SolveTrace* trace) {
  grid.validate();
  if (U0.dim() != grid.d || U0.dim() != sys.d || U0.m != sys.m)
    throw GridMismatch("initial data does not match system/grid layout");
  for (int a = 0; a < grid.d; ++a)
    if (U0.n[a] != grid.N) throw GridMismatch("initial data resolution != grid N");
  if (grid.godunov && sys.m != 1)
    throw InvalidParams("Godunov flux is implemented for scalar laws only");

  const long nc = U0.ncells();
  const int m = sys.m, d = sys.d;
  const CellGeom geom = build_geom(U0);
  const bool analytic = sys.has_analytic_jacobians();

  std::vector<double> dx(d), inv_dx(d);
  for (int k = 0; k < d; ++k) {
    dx[k] = U0.dx(k);
    inv_dx[k] = 1.0 / dx[k];
  }

  // state arrays, cell-major
  std::vector<double> U = U0.data, V(nc * m), Fv(static_cast<std::size_t>(d) * nc * m),
      speed(static_cast<std::size_t>(d) * nc), face(static_cast<std::size_t>(d) * nc * m);
  std::vector<unsigned char> status(nc, 0);

  const int workers = grid.workers;
  auto for_cells = [&](const std::function<void(std::size_t)>& fn) {
    parallel_for(static_cast<std::size_t>(nc), workers, fn);
  };

  // initial admissibility + conserved variable
  for_cells([&](std::size_t c) {
    Vec xi(m);
    for (int i = 0; i < m; ++i) xi[i] = U[c * m + i];
    if (!sys.in_admissible(xi)) {
      status[c] = 2;
      return;
    }
    const Vec a = sys.A(xi);
    for (int i = 0; i < m; ++i) V[c * m + i] = a[i];
  });
  for (long c = 0; c < nc; ++c)
    if (status[c]) throw StateLeftAdmissibleSet("initial state at cell " +
                                                std::to_string(c) + " is not admissible");

  // per-cell fluxes and wave speeds from current U
  auto refresh_cells = [&]() {
    for_cells([&](std::size_t c) {
      Vec xi(m);
      for (int i = 0; i < m; ++i) xi[i] = U[c * m + i];
      const Mat DA = analytic ? sys.DA(xi) : fd_jacobian(sys.A, xi);
      Eigen::PartialPivLU<Mat> lu(DA.transpose());
      if (std::abs(lu.determinant()) < 1e-14) {
        status[c] = 1;
        return;
      }
      for (int k = 0; k < d; ++k) {
        const Vec fk = sys.F[k](xi);
        for (int i = 0; i < m; ++i) Fv[(static_cast<std::size_t>(k) * nc + c) * m + i] = fk[i];
        const Mat DFk = analytic ? sys.DF[k](xi) : fd_jacobian(sys.F[k], xi);
        const Mat M = lu.solve(DFk.transpose()).transpose();
        speed[static_cast<std::size_t>(k) * nc + c] =
            M.cwiseAbs().rowwise().sum().maxCoeff();
      }
    });
    for (long c = 0; c < nc; ++c)
      if (status[c] == 1)
        throw NonInvertibleA("DA is singular at cell " + std::to_string(c));
  };

  const std::vector<double> snap_times = grid.snapshot_times();
  SpaceTimeField out;
  auto store = [&](double t) {
    Field f(U0.n, m, U0.lo, U0.hi);
    f.data = U;
    out.push(t, std::move(f));
  };

  double t = 0.0;
  std::size_t next_snap = 0;
  if (snap_times[0] <= 1e-14 * std::max(1.0, grid.T)) {
    store(0.0);
    next_snap = 1;
  }

  while (next_snap < snap_times.size()) {
    const double target = snap_times[next_snap];
    while (t < target - 1e-14 * std::max(1.0, grid.T)) {
      refresh_cells();

      double rate = 0.0, vmax = 0.0;
      for (int k = 0; k < d; ++k) {
        double sk = 0.0;
        for (long c = 0; c < nc; ++c)
          sk = std::max(sk, speed[static_cast<std::size_t>(k) * nc + c]);
        rate += sk * inv_dx[k];
        vmax = std::max(vmax, sk);
      }
      double dt = rate > 1e-14 ? grid.cfl / rate : target - t;
      dt = std::min(dt, target - t);

      // face fluxes: face k at cell c couples c and its +k neighbor
      for_cells([&](std::size_t c) {
        for (int k = 0; k < d; ++k) {
          const long nb = geom.at(k, static_cast<long>(c), true);
          const std::size_t fc = (static_cast<std::size_t>(k) * nc + c) * m;
          const std::size_t fn = (static_cast<std::size_t>(k) * nc + nb) * m;
          if (grid.godunov) {
            face[fc] = godunov_flux(sys, U[c * m], U[nb * m]);
            continue;
          }
          const double a = std::max(speed[static_cast<std::size_t>(k) * nc + c],
                                    speed[static_cast<std::size_t>(k) * nc + nb]);
          for (int i = 0; i < m; ++i)
            face[fc + i] = 0.5 * (Fv[fc + i] + Fv[fn + i]) -
                           0.5 * a * (V[nb * m + i] - V[c * m + i]);
        }
      });

      // conservative update + recovery, one writer per cell
      for_cells([&](std::size_t c) {
        for (int k = 0; k < d; ++k) {
          const long pv = geom.at(k, static_cast<long>(c), false);
          const std::size_t fc = (static_cast<std::size_t>(k) * nc + c) * m;
          const std::size_t fp = (static_cast<std::size_t>(k) * nc + pv) * m;
          for (int i = 0; i < m; ++i)
            V[c * m + i] -= dt * inv_dx[k] * (face[fc + i] - face[fp + i]);
        }
        Vec v(m), u(m);
        for (int i = 0; i < m; ++i) {
          v[i] = V[c * m + i];
          u[i] = U[c * m + i];
        }
        if (sys.A_inverse) {
          try {
            u = sys.A_inverse(v);
          } catch (const Error&) {
            status[c] = 1;
            return;
          }
        } else if (!recover_newton(sys, v, u)) {
          if (!(m == 1 && recover_bisect(sys, v[0], u[0]))) {
            status[c] = 1;
            return;
          }
        }
        if (!sys.in_admissible(u)) {
          status[c] = 2;
          return;
        }
        for (int i = 0; i < m; ++i) U[c * m + i] = u[i];
      });
      for (long c = 0; c < nc; ++c) {
        if (status[c] == 1) throw NonInvertibleA("A-recovery failed at cell " +
                                                 std::to_string(c));
        if (status[c] == 2)
          throw StateLeftAdmissibleSet("state left the admissible set at cell " +
                                       std::to_string(c) + ", t = " + format_double(t));
      }

      t = (target - t <= dt * (1 + 1e-12)) ? target : t + dt;
      if (trace) {
        ++trace->steps;
        trace->dts.push_back(dt);
        trace->speeds.push_back(vmax);
      }
    }
    t = target;
    store(t);
    ++next_snap;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

std::vector<double> entropy_series(const SystemDef& sys, const SpaceTimeField& field) {
  field.check_consistent();
  std::vector<double> series;
  std::vector<double> hv;
  for (const Field& f : field.snaps) {
    const long nc = f.ncells();
    hv.resize(nc);
    Vec xi(f.m);
    for (long c = 0; c < nc; ++c) {
      for (int i = 0; i < f.m; ++i) xi[i] = f.at(c, i);
      hv[c] = sys.H(xi);
    }
    series.push_back(pairwise_sum(hv) * f.cell_measure());
  }
  return series;
}

Report entropy_budget(const SystemDef& sys, const SpaceTimeField& field) {
  const std::vector<double> series = entropy_series(sys, field);
  Report rep;
  rep.name = "entropy_budget";
  if (series.empty()) {
    rep.pass = false;
    rep.note("violated: no snapshots to audit");
    return rep;
  }
  const double slack = 1e-3 * std::abs(series.front()) * field.snaps.front().dx(0);
  double worst = 0.0;
  for (std::size_t j = 1; j < series.size(); ++j)
    worst = std::max(worst, series[j] - series[j - 1]);
  rep.metric("initial", series.front());
  rep.metric("final", series.back());
  rep.metric("worst_increase", worst);
  rep.metric("slack", slack);
  rep.pass = worst <= slack;
  if (!rep.pass) rep.note("violated: entropy integral must be nonincreasing");
  rep.columns = {"t", "entropy"};
  for (std::size_t j = 0; j < series.size(); ++j)
    rep.rows.push_back({field.times[j], series[j]});
  return rep;
}

Report conservation_audit(const SystemDef& sys, const SpaceTimeField& field,
                          double tol) {
  field.check_consistent();
  Report rep;
  rep.name = "conservation";
  if (field.snaps.empty()) {
    rep.pass = false;
    rep.note("violated: no snapshots to audit");
    return rep;
  }
  const int m = field.snaps.front().m;
  std::vector<double> first(m), av;
  double drift = 0.0;
  for (std::size_t j = 0; j < field.snaps.size(); ++j) {
    const Field& f = field.snaps[j];
    const long nc = f.ncells();
    av.resize(nc);
    Vec xi(m);
    for (int i = 0; i < m; ++i) {
      for (long c = 0; c < nc; ++c) {
        for (int k = 0; k < m; ++k) xi[k] = f.at(c, k);
        av[c] = sys.A(xi)[i];
      }
      const double total = pairwise_sum(av) * f.cell_measure();
      if (j == 0)
        first[i] = total;
      else
        drift = std::max(drift, std::abs(total - first[i]));
    }
  }
  rep.metric("max_drift", drift);
  rep.metric("tol", tol);
  rep.pass = drift <= tol;
  if (!rep.pass) rep.note("violated: conserved integrals must stay constant");
  return rep;
}

// ---------------------------------------------------------------------------
// Weak residual
// ---------------------------------------------------------------------------

namespace {

// C^1 time windows over [ta, tb] with closed-form moments: value w, primitive
// W = int w dt, and first moment Wt = int t w dt.  Exact moments let the
// piecewise-linear-in-time quadrature cancel exactly on exact solutions.
struct Window {
  int kind;
  double ta, tb, c;

  double w(double t) const {
    const double s = t - ta;
    if (kind == 0) return 1.0;
    if (kind == 1) return std::cos(c * s);
    const double sn = std::sin(c * s);
    return sn * sn;
  }
  double W(double t) const {
    const double s = t - ta;
    if (kind == 0) return t;
    if (kind == 1) return std::sin(c * s) / c;
    return 0.5 * s - std::sin(2 * c * s) / (4 * c);
  }
  double Wt(double t) const {
    const double s = t - ta;
    if (kind == 0) return 0.5 * t * t;
    if (kind == 1) return t * std::sin(c * s) / c + std::cos(c * s) / (c * c);
    return ta * W(t) + 0.25 * s * s - std::cos(2 * c * s) / (8 * c * c) -
           s * std::sin(2 * c * s) / (4 * c);
  }
};

Window make_window(int kind, double ta, double tb) {
  Window w;
  w.kind = kind;
  w.ta = ta;
  w.tb = tb;
  w.c = M_PI / (tb - ta);
  return w;
}

// Spatial pairing sum_cells vals[cell*m+comp] * psi(cell) * measure with the
// transverse axes (1..d-1) reduced first, then axis 0 — the fixed reduction
// order that makes planar extensions reproduce 1-D sums bitwise.
double paired_integral(const std::vector<double>& vals, int m, int comp,
                       const Field& geom,
                       const std::vector<std::vector<double>>& tab) {
  const int d = geom.dim();
  const int n0 = geom.n[0];
  long block = 1;
  for (int a = 1; a < d; ++a) block *= geom.n[a];
  double tmeas = 1.0;
  for (int a = 1; a < d; ++a) tmeas *= geom.dx(a);

  std::vector<double> buf(block), per0(n0);
  std::vector<int> idx(d, 0);
  for (int i0 = 0; i0 < n0; ++i0) {
    for (long b = 0; b < block; ++b) {
      long rem = b;
      double psi = tab[0][i0];
      for (int a = d - 1; a >= 1; --a) {
        idx[a] = static_cast<int>(rem % geom.n[a]);
        rem /= geom.n[a];
      }
      for (int a = 1; a < d; ++a) psi *= tab[a][idx[a]];
      buf[b] = vals[(static_cast<long>(i0) * block + b) * m + comp] * psi;
    }
    per0[i0] = pairwise_sum(buf) * tmeas;
  }
  return pairwise_sum(per0) * geom.dx(0);
}

}  // namespace

TestSet TestSet::standard(int d, int m) {
  TestSet ts;
  const int patterns[4][2] = {{0, 0}, {1, 1}, {1, 0}, {2, 1}};  // {mode, trig}
  for (int comp = 0; comp < m; ++comp)
    for (int win = 0; win < 3; ++win)
      for (const auto& p : patterns) {
        Entry e;
        e.comp = comp;
        e.modes.assign(d, 0);
        e.trig.assign(d, 0);
        e.modes[0] = p[0];
        e.trig[0] = p[1];
        e.window = win;
        ts.entries.push_back(std::move(e));
      }
  return ts;
}

TestSet TestSet::planar_matched(const TestSet& line, const std::vector<int>& w_idx,
                                int d) {
  TestSet ts;
  for (const Entry& le : line.entries) {
    if (le.comp < 0 || le.comp >= static_cast<int>(w_idx.size()))
      throw InvalidParams("planar_matched: component outside the carried set");
    Entry e;
    e.comp = w_idx[le.comp];
    e.modes.assign(d, 0);
    e.trig.assign(d, 0);
    e.modes[0] = le.modes.at(0);
    e.trig[0] = le.trig.at(0);
    e.window = le.window;
    ts.entries.push_back(std::move(e));
  }
  return ts;
}

double weak_residual(const SystemDef& sys, const SpaceTimeField& field,
                     const TestSet& tests) {
  field.check_consistent();
  if (field.snaps.size() < 2)
    throw InvalidParams("weak residual needs at least two snapshots");
  const Field& g0 = field.snaps.front();
  const int d = g0.dim(), m = g0.m;
  if (d != sys.d || m != sys.m) throw GridMismatch("field does not match the system");
  const long nc = g0.ncells();
  const std::size_t ns = field.snaps.size(), ne = tests.entries.size();
  const double ta = field.times.front(), tb = field.times.back();

  for (const TestSet::Entry& e : tests.entries) {
    if (e.comp < 0 || e.comp >= m || static_cast<int>(e.modes.size()) != d ||
        static_cast<int>(e.trig.size()) != d || e.window < 0 || e.window > 2)
      throw InvalidParams("malformed test-function entry");
  }

  // per-entry sinusoid tables, one per axis: value and derivative
  std::vector<std::vector<std::vector<double>>> vtab(ne), dtab(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    vtab[e].resize(d);
    dtab[e].resize(d);
    for (int a = 0; a < d; ++a) {
      const int n = g0.n[a];
      vtab[e][a].resize(n);
      dtab[e][a].resize(n);
      const double L = g0.length(a);
      const double k = 2.0 * M_PI * tests.entries[e].modes[a] / L;
      for (int i = 0; i < n; ++i) {
        const double s = k * (g0.center(a, i) - g0.lo[a]);
        if (tests.entries[e].trig[a] == 0) {
          vtab[e][a][i] = std::cos(s);
          dtab[e][a][i] = -k * std::sin(s);
        } else {
          vtab[e][a][i] = std::sin(s);
          dtab[e][a][i] = k * std::cos(s);
        }
      }
    }
  }

  // S[e][j] = int A_comp psi dx at snapshot j; X[e][j] = int F_k,comp dk psi dx
  std::vector<std::vector<double>> S(ne, std::vector<double>(ns)),
      X(ne, std::vector<double>(ns, 0.0));
  std::vector<double> Avals(nc * m), Fvals(static_cast<std::size_t>(d) * nc * m);

  for (std::size_t j = 0; j < ns; ++j) {
    const Field& f = field.snaps[j];
    Vec xi(m);
    for (long c = 0; c < nc; ++c) {
      for (int i = 0; i < m; ++i) xi[i] = f.at(c, i);
      const Vec a = sys.A(xi);
      for (int i = 0; i < m; ++i) Avals[c * m + i] = a[i];
      for (int k = 0; k < d; ++k) {
        const Vec fk = sys.F[k](xi);
        for (int i = 0; i < m; ++i)
          Fvals[(static_cast<std::size_t>(k) * nc + c) * m + i] = fk[i];
      }
    }
    for (std::size_t e = 0; e < ne; ++e) {
      S[e][j] = paired_integral(Avals, m, tests.entries[e].comp, f, vtab[e]);
      for (int k = 0; k < d; ++k) {
        if (tests.entries[e].modes[k] == 0) continue;  // d_k psi identically 0
        std::vector<std::vector<double>> tab = vtab[e];
        tab[k] = dtab[e][k];
        const std::vector<double> fk(
            Fvals.begin() + static_cast<std::ptrdiff_t>(k) * nc * m,
            Fvals.begin() + static_cast<std::ptrdiff_t>(k + 1) * nc * m);
        X[e][j] += paired_integral(fk, m, tests.entries[e].comp, f, tab);
      }
    }
  }

  double worst = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    const Window win = make_window(tests.entries[e].window, ta, tb);
    double r = S[e].front() * win.w(ta) - S[e].back() * win.w(tb);
    for (std::size_t j = 0; j + 1 < ns; ++j) {
      const double a = field.times[j], b = field.times[j + 1];
      const double dW = win.W(b) - win.W(a);
      const double dWt = win.Wt(b) - win.Wt(a);
      const double dw = win.w(b) - win.w(a);
      const double mom1p = win.w(b) - dW / (b - a);  // int theta w' dt
      const double mom1 = (dWt - a * dW) / (b - a);  // int theta w dt
      r += S[e][j] * dw + (S[e][j + 1] - S[e][j]) * mom1p;
      r += X[e][j] * dW + (X[e][j + 1] - X[e][j]) * mom1;
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

std::string snapshot_csv(const Field& f) {
  std::vector<std::string> cols;
  for (int a = 0; a < f.dim(); ++a) cols.push_back("x" + std::to_string(a));
  for (int i = 0; i < f.m; ++i) cols.push_back("u" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  rows.reserve(f.ncells());
  for (long c = 0; c < f.ncells(); ++c) {
    std::vector<double> row = f.center(c);
    for (int i = 0; i < f.m; ++i) row.push_back(f.at(c, i));
    rows.push_back(std::move(row));
  }
  return to_csv(cols, rows);
}

std::string run_manifest_json(const SystemDef& sys, const GridSpec& grid,
                              const SolveTrace& trace) {
  nlohmann::ordered_json j;
  j["system"] = sys.name;
  j["d"] = grid.d;
  j["N"] = grid.N;
  j["cfl"] = grid.cfl;
  j["T"] = grid.T;
  j["flux"] = grid.godunov ? "godunov" : "rusanov";
  j["snapshot_times"] = grid.snapshot_times();
  j["steps"] = trace.steps;
  j["dts"] = trace.dts;
  j["wave_speeds"] = trace.speeds;
  return j.dump(2) + "\n";
}

}  // namespace hypercl
