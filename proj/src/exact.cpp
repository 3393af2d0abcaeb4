#include "hypercl/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypercl/errors.hpp"
#include "hypercl/osc.hpp"
#include "hypercl/relative_entropy.hpp"
#include "hypercl/util.hpp"

namespace hypercl {

namespace {

// Branch edges of the profile at time t: fan [a,b], plateau [b,c], ramp [c,e].
struct ProfileEdges {
  double a, b, c, e;
};

ProfileEdges edges_at(const RarefactionSpec& s, double t) {
  ProfileEdges ed;
  ed.a = s.x0 + s.f.fp(s.u_L) * t;
  ed.b = s.x0 + s.f.fp(s.u_R) * t;
  ed.c = s.periodic ? s.y0 + s.f.fp(s.u_R) * t : ed.b;
  ed.e = s.periodic ? s.y1 + s.f.fp(s.u_L) * t : ed.b;
  return ed;
}

// f' affine over [u_L, u_R]?  Then the ramp equation solves in closed form.
bool fp_affine(const Flux1D& f, double u_L, double u_R, double& k, double& c0) {
  const double fl = f.fp(u_L), fr = f.fp(u_R), fm = f.fp(0.5 * (u_L + u_R));
  const double scale = std::max({1.0, std::abs(fl), std::abs(fr)});
  if (std::abs(fm - 0.5 * (fl + fr)) > 1e-13 * scale) return false;
  k = (fr - fl) / (u_R - u_L);
  c0 = fl - k * u_L;
  return true;
}

double ramp_value(const RarefactionSpec& s, double z) {
  return s.u_R + (z - s.y0) * (s.u_L - s.u_R) / (s.y1 - s.y0);
}

void check_theta_monotone(const RarefactionSpec& s, double t) {
  if (t > s.T_max * (1 + 1e-12))
    throw ThetaNonMonotone("profile evaluated past its validity horizon T_max");
  const double sup = s.f.sup_fpp(s.u_L, s.u_R);
  if (1.0 - t * (s.u_R - s.u_L) * sup / (s.y1 - s.y0) <= 0.0)
    throw ThetaNonMonotone("ramp characteristics cross at t = " + format_double(t));
}

// Solve z + t f'(ramp(z)) = x for z in [y0, y1].
double theta_ramp_coordinate(const RarefactionSpec& s, double x, double t) {
  double k, c0;
  const double slope = (s.u_L - s.u_R) / (s.y1 - s.y0);
  if (fp_affine(s.f, s.u_L, s.u_R, k, c0)) {
    const double denom = 1.0 + t * k * slope;
    return (x - t * (k * (s.u_R - s.y0 * slope) + c0)) / denom;
  }
  double lo = s.y0, hi = s.y1;
  auto phi = [&](double z) { return z + t * s.f.fp(ramp_value(s, z)) - x; };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (s.y1 - s.y0); ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double invert_fprime(const Flux1D& f, double y) {
  double lo = -1.0, hi = 1.0;
  int guard = 0;
  while (f.fp(lo) > y && ++guard < 60) lo *= 2.0;
  while (f.fp(hi) < y && ++guard < 120) hi *= 2.0;
  if (f.fp(lo) > y || f.fp(hi) < y)
    throw BracketFailure("f' never reaches " + format_double(y));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = f.fp(mid);
    if (std::abs(v - y) <= 1e-12) return mid;
    (v < y ? lo : hi) = mid;
  }
  const double u = 0.5 * (lo + hi);
  if (std::abs(f.fp(u) - y) > 1e-12)
    throw BracketFailure("bisection stalled inverting f' at " + format_double(y));
  return u;
}

void RarefactionSpec::validate() const {
  if (!(u_L < u_R)) throw InvalidParams("rarefaction needs u_L < u_R");
  if (!f.f || !f.fp || !f.fpp) throw InvalidParams("flux closures missing");
  if (periodic) {
    if (!(x0 < y0 && y0 < y1)) throw InvalidParams("periodic profile needs x0 < y0 < y1");
    if (!(T_max > 0.0)) throw InvalidParams("T_max must be positive");
    const double sup = f.sup_fpp(u_L, u_R);
    if (sup > 0.0 && T_max > 0.9 * (y1 - y0) / ((u_R - u_L) * sup))
      throw InvalidParams("T_max within 10% of the ramp blow-up time");
  }
}

double rarefaction(const RarefactionSpec& spec, double x, double t) {
  if (t <= 0.0) return x <= spec.x0 ? spec.u_L : spec.u_R;
  const double a = spec.x0 + spec.f.fp(spec.u_L) * t;
  const double b = spec.x0 + spec.f.fp(spec.u_R) * t;
  if (x <= a) return spec.u_L;
  if (x >= b) return spec.u_R;
  const double y = (x - spec.x0) / t;
  const double u = spec.f.fp_inv ? spec.f.fp_inv(y) : invert_fprime(spec.f, y);
  return std::clamp(u, spec.u_L, spec.u_R);
}

double periodic_profile(const RarefactionSpec& spec, double x, double t) {
  if (!spec.periodic) throw InvalidParams("spec has no periodic ramp");
  check_theta_monotone(spec, t);
  const ProfileEdges ed = edges_at(spec, t);
  if (x <= ed.a || x >= ed.e) return spec.u_L;
  if (x < ed.b) return rarefaction(spec, x, t);
  if (x <= ed.c) return spec.u_R;
  return ramp_value(spec, theta_ramp_coordinate(spec, x, t));
}

Field profile_field(const RarefactionSpec& spec, double t, int n, double lo, double hi) {
  spec.validate();
  return Field::sample1d(n, lo, hi,
                         [&](double x) { return periodic_profile(spec, x, t); });
}

double lipschitz_B0(const RarefactionSpec& spec, double T, int grid_n) {
  spec.validate();
  if (grid_n < 2) throw InvalidParams("need at least 2 ramp quotients");
  const int slices = 16;
  double B0 = 0.0;
  for (int j = 0; j <= slices; ++j) {
    const double t = T * j / slices;
    const ProfileEdges ed = edges_at(spec, t);
    const double inset = 1e-9 * (ed.e - ed.c);
    const double lo = ed.c + inset, hi = ed.e - inset;
    const double dz = (hi - lo) / grid_n;
    double prev = periodic_profile(spec, lo, t);
    for (int i = 1; i <= grid_n; ++i) {
      const double cur = periodic_profile(spec, lo + i * dz, t);
      B0 = std::max(B0, std::abs(cur - prev) / dz);
      prev = cur;
    }
  }
  return B0;
}

// ---------------------------------------------------------------------------
// Passive transport along characteristics
// ---------------------------------------------------------------------------

namespace {

struct ProfileEval {
  const RarefactionSpec& spec;
  double lo, hi, dx;

  double wrap(double x) const {
    const double L = hi - lo;
    double y = std::fmod(x - lo, L);
    if (y < 0) y += L;
    return lo + y;
  }

  double u(double x, double t) const {
    const double w = wrap(x);
    return spec.periodic ? periodic_profile(spec, w, t) : rarefaction(spec, w, t);
  }

  // d/dx (g(u)) with the analytic branch structure; one-sided quotients
  // within 2 dx of a branch seam.
  double dgx(double x, double t, const std::function<double(double)>& g,
             const std::function<double(double)>& gp) const {
    const double w = wrap(x);
    const ProfileEdges ed = edges_at(spec, t);
    const double seams[4] = {ed.a, ed.b, ed.c, ed.e};
    double dist = std::numeric_limits<double>::infinity();
    double nearest = ed.a;
    for (double sm : seams)
      if (std::abs(w - sm) < dist) {
        dist = std::abs(w - sm);
        nearest = sm;
      }
    if (dist < 2 * dx) {
      const double h = dx;
      if (w < nearest) return (g(u(w, t)) - g(u(w - h, t))) / h;
      return (g(u(w + h, t)) - g(u(w, t))) / h;
    }
    double ux = 0.0;
    const double uv = spec.periodic ? periodic_profile(spec, w, t) : rarefaction(spec, w, t);
    if (w > ed.a && w < ed.b && t > 0.0) {
      ux = 1.0 / (t * spec.f.fpp(uv));
    } else if (spec.periodic && w > ed.c && w < ed.e) {
      const double s = (spec.u_L - spec.u_R) / (spec.y1 - spec.y0);
      ux = s / (1.0 + t * spec.f.fpp(uv) * s);
    }
    return gp(uv) * ux;
  }
};

}  // namespace

SpaceTimeField triangular_v(const RarefactionSpec& spec,
                            const std::function<double(double)>& g,
                            const std::function<double(double)>& gp,
                            const std::function<double(double)>& v0,
                            const std::vector<double>& times, double lo, double hi,
                            int n, int workers) {
  spec.validate();
  if (times.empty()) throw InvalidParams("no output times requested");
  for (std::size_t j = 1; j < times.size(); ++j)
    if (!(times[j] > times[j - 1])) throw InvalidParams("output times must increase");
  if (n < 8) throw InvalidParams("need at least 8 cells");

  const ProfileEval pe{spec, lo, hi, (hi - lo) / n};
  if (spec.periodic) periodic_profile(spec, lo, times.back());  // horizon check
  double gmax = 0.0;
  for (int i = 0; i <= 512; ++i)
    gmax = std::max(gmax, std::abs(g(spec.u_L + (spec.u_R - spec.u_L) * i / 512.0)));

  SpaceTimeField out;
  out.push(times[0], Field::sample1d(n, lo, hi, v0));
  const double t0 = times[0];
  for (std::size_t j = 1; j < times.size(); ++j) {
    Field snap(std::vector<int>{n}, 1, {lo}, {hi});
    const double tau = times[j];
    if (gmax < 1e-300) {
      snap = out.snaps[0];  // frozen: no transport, no compression
      out.push(tau, std::move(snap));
      continue;
    }
    const double dt = 0.5 * pe.dx / gmax;
    const long steps = std::max(1L, static_cast<long>(std::ceil((tau - t0) / dt)));
    const double h = -(tau - t0) / steps;  // backward in time
    parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t ci) {
      double x = snap.center(0, static_cast<int>(ci));
      double I = 0.0;   // accumulates -int_{t0}^{tau} d/dx(g(u)) ds
      double s = tau;
      auto fx = [&](double xx, double ss) { return g(pe.u(xx, ss)); };
      auto fI = [&](double xx, double ss) { return pe.dgx(xx, ss, g, gp); };
      for (long st = 0; st < steps; ++st) {
        const double k1x = fx(x, s), k1I = fI(x, s);
        const double k2x = fx(x + 0.5 * h * k1x, s + 0.5 * h);
        const double k2I = fI(x + 0.5 * h * k1x, s + 0.5 * h);
        const double k3x = fx(x + 0.5 * h * k2x, s + 0.5 * h);
        const double k3I = fI(x + 0.5 * h * k2x, s + 0.5 * h);
        const double k4x = fx(x + h * k3x, s + h);
        const double k4I = fI(x + h * k3x, s + h);
        x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        I += h / 6.0 * (k1I + 2 * k2I + 2 * k3I + k4I);
        x = pe.wrap(x);
        s += h;
      }
      // never throw inside a worker thread: flag the cell, report after join
      snap.at(static_cast<long>(ci), 0) =
          (std::isfinite(x) && std::isfinite(I))
              ? v0(pe.wrap(x)) * std::exp(I)
              : std::numeric_limits<double>::quiet_NaN();
    });
    for (long ci = 0; ci < n; ++ci)
      if (!std::isfinite(snap.at(ci, 0)))
        throw CharacteristicLeavesDomain("characteristic diverged from cell " +
                                         std::to_string(ci) + " at t = " +
                                         format_double(tau));
    out.push(tau, std::move(snap));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Backward reconstruction from terminal data
// ---------------------------------------------------------------------------

Field backward_reconstruct(const TerminalData& td, const Flux1D& f, double t) {
  if (td.u_T.dim() != 1 || td.u_T.m != 1)
    throw GridMismatch("terminal data must be a 1-D scalar field");
  if (!(t > 0.0 && t <= td.T)) throw InvalidParams("need 0 < t <= T");
  const long n = td.u_T.ncells();
  std::vector<double> y(n), u(n);
  for (long i = 0; i < n; ++i) {
    const double x = td.u_T.center(0, static_cast<int>(i));
    u[i] = td.u_T.at(i, 0);
    y[i] = x - (td.T - t) * f.fp(u[i]);
  }
  for (long i = 0; i + 1 < n; ++i)
    if (!(y[i + 1] > y[i]))
      throw NonMonotoneCharacteristicMap("backward map not strictly increasing near x = " +
                                         format_double(td.u_T.center(0, static_cast<int>(i))));
  Field out(std::vector<int>{static_cast<int>(n)}, 1, {y.front()}, {y.back()});
  long seg = 0;
  for (long i = 0; i < n; ++i) {
    const double yc = out.center(0, static_cast<int>(i));
    while (seg + 2 < n && y[seg + 1] < yc) ++seg;
    const double w = (yc - y[seg]) / (y[seg + 1] - y[seg]);
    out.at(i, 0) = u[seg] + std::clamp(w, 0.0, 1.0) * (u[seg + 1] - u[seg]);
  }
  return out;
}

Report holder_certificate(const Field& u, const Flux1D& f, double beta, double M,
                          double C0, double t) {
  if (u.dim() != 1 || u.m != 1) throw GridMismatch("certificate needs a 1-D scalar field");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidParams("beta must lie in (0, 1]");
  if (!(t > 0.0)) throw InvalidParams("t must be positive");
  const long n = u.ncells();
  std::vector<double> w(n), x(n);
  for (long i = 0; i < n; ++i) {
    w[i] = f.fp(u.at(i, 0));
    x[i] = u.center(0, static_cast<int>(i));
  }
  const long total = n * (n - 1) / 2;
  const long budget = 1000000;
  double semi = 0.0;
  for (long gap = 1; gap < n; ++gap) {
    const long count = n - gap;
    const long stride = total > budget ? std::max(1L, count * (n - 1) / budget) : 1;
    for (long i = 0; i < count; i += stride)
      semi = std::max(semi,
                      std::abs(w[i + gap] - w[i]) / std::pow(x[i + gap] - x[i], beta));
  }
  const double bound = std::max(C0, std::pow(2.0 * M, 1.0 - beta) / t);
  Report rep;
  rep.name = "holder_certificate";
  rep.metric("seminorm", semi);
  rep.metric("bound", bound);
  rep.metric("slack", 1.05);
  rep.pass = semi <= 1.05 * bound;
  if (!rep.pass) rep.note("violated: Holder seminorm exceeds 1.05 x reachability bound");
  return rep;
}

OnesidedCertificate onesided_certificate(const Field& u, bool include_wrap) {
  OnesidedCertificate c;
  c.min_quotient = scalar_onesided(u, include_wrap);
  c.B1 = std::max(0.0, -c.min_quotient);
  return c;
}

// ---------------------------------------------------------------------------
// Self-similar elasticity fan
// ---------------------------------------------------------------------------

SelfSimilarFan elasticity_self_similar(const ElasticityParams& ep, double z_lo,
                                       double z_hi, int n) {
  if (!ep.Wp || !ep.Wpp) throw InvalidParams("stress closures missing");
  if (!(0.0 <= z_lo && z_lo < z_hi)) throw InvalidParams("need 0 <= z_lo < z_hi");
  if (n < 8) throw InvalidParams("need at least 8 intervals");
  if (ep.Wpp(2.0) - ep.Wpp(0.0) <= 1e-12 * (1.0 + std::abs(ep.Wpp(0.0))))
    throw NonStrictlyConvex("fan needs strictly increasing Sigma' on the branch");

  SelfSimilarFan fan;
  fan.zeta.resize(n + 1);
  fan.F.resize(n + 1);
  fan.V.assign(n + 1, 0.0);
  const double hz = (z_hi - z_lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double z = z_lo + i * hz;
    const double target = z * z;
    if (ep.Wpp(0.0) > target * (1 + 1e-12) + 1e-12)
      throw BracketFailure("zeta^2 below Sigma'(0); no fan strain on this branch");
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (ep.Wpp(hi) < target && ++guard < 60) hi *= 2.0;
    if (ep.Wpp(hi) < target) throw BracketFailure("Sigma' never reaches zeta^2");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (std::abs(ep.Wpp(mid) - target) <= 1e-12 * std::max(1.0, target)) {
        lo = hi = mid;
        break;
      }
      (ep.Wpp(mid) < target ? lo : hi) = mid;
    }
    fan.zeta[i] = z;
    fan.F[i] = 0.5 * (lo + hi);
  }
  for (int i = 0; i < n; ++i)
    fan.V[i + 1] = fan.V[i] -
                   0.5 * (fan.zeta[i] + fan.zeta[i + 1]) * (fan.F[i + 1] - fan.F[i]);
  for (int i = 1; i < n; ++i) {
    const double Vp = (fan.V[i + 1] - fan.V[i - 1]) / (2 * hz);
    const double Fp = (fan.F[i + 1] - fan.F[i - 1]) / (2 * hz);
    fan.residual = std::max(fan.residual,
                            std::abs(fan.zeta[i] * Vp + ep.Wpp(fan.F[i]) * Fp));
  }
  return fan;
}

// ---------------------------------------------------------------------------
// Planar lifting
// ---------------------------------------------------------------------------

Vec PlanarSplit::embed(const Vec& w) const {
  Vec U = Vec::Zero(full.m);
  for (std::size_t i = 0; i < w_idx.size(); ++i) U[w_idx[i]] = w[i];
  return U;
}

PlanarSplit euler_planar_split(EulerParams p) {
  if (p.d < 2) p.d = 2;
  PlanarSplit sp;
  sp.full = make_isentropic_euler(p);
  sp.w_idx = {0, 1};
  for (int i = 2; i <= p.d; ++i) sp.z_idx.push_back(i);
  return sp;
}

PlanarSplit swmhd_planar_split(const SwmhdParams& p) {
  if (p.d != 2) throw InvalidParams("planar split implemented for d = 2");
  PlanarSplit sp;
  sp.full = make_swmhd(p);
  sp.w_idx = {0, 1, 3};  // (h, v1, b1)
  sp.z_idx = {2, 4};     // (v2, b2)
  return sp;
}

PlanarSplit triangular_planar_split(TriangularParams p) {
  if (p.d < 2) p.d = 2;
  if (p.n_v < 2) p.n_v = 2;
  PlanarSplit sp;
  sp.full = make_multid_triangular(p);
  sp.w_idx = {0, 1};
  for (int i = 2; i <= p.n_v; ++i) sp.z_idx.push_back(i);
  return sp;
}

Report planar_condition_check(const PlanarSplit& split, int n_samples,
                              std::uint64_t seed) {
  const SystemDef& sys = split.full;
  if (split.w_idx.empty() || split.w_idx.size() + split.z_idx.size() !=
                                 static_cast<std::size_t>(sys.m))
    throw InvalidParams("split indices must partition the state");
  Rng rng(seed);
  const int nw = static_cast<int>(split.w_idx.size());
  const auto lhs = latin_hypercube(n_samples, nw, rng);
  double maxA = 0.0, maxG = 0.0, maxF = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    Vec w(nw);
    for (int i = 0; i < nw; ++i) {
      const int c = split.w_idx[i];
      w[i] = sys.sample_box.lo[c] +
             lhs[s][i] * (sys.sample_box.hi[c] - sys.sample_box.lo[c]);
    }
    const Vec U = split.embed(w);
    const Vec A = sys.A(U), G = sys.G(U), F1 = sys.F[0](U);
    for (int zc : split.z_idx) {
      maxA = std::max(maxA, std::abs(A[zc]));
      maxG = std::max(maxG, std::abs(G[zc]));
      maxF = std::max(maxF, std::abs(F1[zc]));
    }
  }
  Report rep;
  rep.name = "planar_condition";
  rep.metric("n_samples", n_samples);
  rep.metric("max_A2", maxA);
  rep.metric("max_G2", maxG);
  rep.metric("max_F1_z", maxF);
  rep.pass = maxA <= 1e-12 && maxG <= 1e-12 && maxF <= 1e-12;
  if (!rep.pass)
    rep.note("violated: transverse rows of A, G, F_1 must vanish at z = 0");
  return rep;
}

SpaceTimeField planar_extend(const PlanarSplit& split, const SpaceTimeField& w1d,
                             int n2, double lo2, double hi2) {
  Report check = planar_condition_check(split, 256);
  if (!check.pass)
    throw PlanarConditionViolated("split fails the planar condition: max |A2| = " +
                                  format_double(check.get("max_A2")));
  w1d.check_consistent();
  const int d = split.full.d;
  if (d < 2) throw InvalidParams("planar extension needs d >= 2");
  if (n2 < 1 || !(hi2 > lo2)) throw InvalidParams("bad transverse grid");

  SpaceTimeField out;
  for (std::size_t j = 0; j < w1d.snaps.size(); ++j) {
    const Field& w = w1d.snaps[j];
    if (w.dim() != 1 || w.m != static_cast<int>(split.w_idx.size()))
      throw GridMismatch("1-D solution must carry exactly the w components");
    std::vector<int> n(static_cast<std::size_t>(d), n2);
    n[0] = w.n[0];
    std::vector<double> lo(static_cast<std::size_t>(d), lo2);
    std::vector<double> hi(static_cast<std::size_t>(d), hi2);
    lo[0] = w.lo[0];
    hi[0] = w.hi[0];
    Field U(n, split.full.m, lo, hi);
    long transverse = 1;
    for (int a = 1; a < d; ++a) transverse *= n2;
    Vec wstate(w.m);
    for (long i = 0; i < w.n[0]; ++i) {
      for (int cmp = 0; cmp < w.m; ++cmp) wstate[cmp] = w.at(i, cmp);
      const Vec full = split.embed(wstate);
      for (long tcell = 0; tcell < transverse; ++tcell) {
        const long cell = i * transverse + tcell;
        for (int cmp = 0; cmp < split.full.m; ++cmp) U.at(cell, cmp) = full[cmp];
      }
    }
    out.push(w1d.times[j], std::move(U));
  }
  return out;
}

}  // namespace hypercl
