/// @file test_exact.cpp
/// @brief Reference solutions: fans and periodic profiles, passive transport,
///        backward reconstruction with certificates, self-similar elasticity
///        fans, and planar lifting.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypercl/catalog.hpp"
#include "hypercl/errors.hpp"
#include "hypercl/exact.hpp"
#include "hypercl/field.hpp"

using namespace hypercl;

namespace {

// Fan opening at 0 with a return ramp on [1, 3]; the workhorse geometry.
RarefactionSpec burgers_profile() {
  RarefactionSpec s;
  s.f = burgers_flux();
  s.u_L = 0.0;
  s.u_R = 1.0;
  s.x0 = 0.0;
  s.periodic = true;
  s.y0 = 1.0;
  s.y1 = 3.0;
  s.T_max = 1.5;
  return s;
}

Flux1D quartic_flux() {  // f' = u^3, strictly convex on u > 0, no inverse closure
  Flux1D fx;
  fx.f = [](double u) { return 0.25 * u * u * u * u; };
  fx.fp = [](double u) { return u * u * u; };
  fx.fpp = [](double u) { return 3 * u * u; };
  return fx;
}

}  // namespace

TEST_CASE("invert_fprime recovers characteristic speeds") {
  Flux1D lin;
  lin.f = [](double u) { return 0.5 * u * u; };
  lin.fp = [](double u) { return u; };
  lin.fpp = [](double) { return 1.0; };
  CHECK(invert_fprime(lin, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(invert_fprime(lin, -3.25) == doctest::Approx(-3.25).epsilon(1e-10));

  CHECK(invert_fprime(quartic_flux(), 8.0) == doctest::Approx(2.0).epsilon(1e-9));

  Flux1D bounded;
  bounded.f = [](double u) { return std::log(std::cosh(u)); };
  bounded.fp = [](double u) { return std::tanh(u); };
  bounded.fpp = [](double u) { return 1.0 / (std::cosh(u) * std::cosh(u)); };
  CHECK_THROWS_AS(invert_fprime(bounded, 2.0), BracketFailure);
}

TEST_CASE("rarefaction spec validation") {
  RarefactionSpec s = burgers_profile();
  CHECK_NOTHROW(s.validate());

  RarefactionSpec bad = s;
  bad.u_L = 1.0;
  bad.u_R = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidParams);

  bad = s;
  bad.y0 = -1.0;  // ramp must sit right of the fan
  CHECK_THROWS_AS(bad.validate(), InvalidParams);

  bad = s;
  bad.T_max = 1.9;  // blow-up at t = 2; the 10% margin caps T_max at 1.8
  CHECK_THROWS_AS(bad.validate(), InvalidParams);

  bad = s;
  bad.T_max = 1.79;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("fan evaluation, closed form and bisection") {
  RarefactionSpec s;
  s.f = burgers_flux();
  s.u_L = 0.0;
  s.u_R = 1.0;
  CHECK(rarefaction(s, -0.5, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rarefaction(s, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rarefaction(s, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rarefaction(s, -0.1, 0.0) == 0.0);  // initial step
  CHECK(rarefaction(s, 0.1, 0.0) == 1.0);

  RarefactionSpec q;  // no f'-inverse closure: exercises the bisection path
  q.f = quartic_flux();
  q.u_L = 0.0;
  q.u_R = 1.0;
  CHECK(rarefaction(q, 0.125, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rarefaction(q, 0.216, 1.0) == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("periodic profile branch values") {
  const RarefactionSpec s = burgers_profile();
  // t = 1: fan [0,1], plateau [1,2], ramp [2,3]; on the ramp u = 3 - x.
  CHECK(periodic_profile(s, 2.5, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(periodic_profile(s, -0.5, 1.0) == 0.0);
  CHECK(periodic_profile(s, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(periodic_profile(s, 1.5, 1.0) == 1.0);
  CHECK(periodic_profile(s, 3.5, 1.0) == 0.0);

  // t = 0 reproduces the initial ramp exactly.
  CHECK(periodic_profile(s, 2.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(periodic_profile(s, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(periodic_profile(s, 3.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("periodic profile with a non-affine characteristic speed") {
  RarefactionSpec s;
  s.f = quartic_flux();
  s.u_L = 0.0;
  s.u_R = 1.0;
  s.x0 = 0.0;
  s.periodic = true;
  s.y0 = 1.0;
  s.y1 = 3.0;
  s.T_max = 0.5;  // blow-up at 2/3; margin caps at 0.6
  s.validate();

  const double t = 0.4;
  for (double x : {2.2, 2.5, 2.8}) {
    const double u = periodic_profile(s, x, t);
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
    // invert the ramp parametrization and verify z + t f'(u) = x
    const double z = s.y0 + (u - s.u_R) * (s.y1 - s.y0) / (s.u_L - s.u_R);
    CHECK(z + t * s.f.fp(u) == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("profile guards against characteristic crossing") {
  const RarefactionSpec s = burgers_profile();
  CHECK_THROWS_AS(periodic_profile(s, 2.5, 1.6), ThetaNonMonotone);

  RarefactionSpec loose = s;  // bypasses validate(): crossing check must catch it
  loose.T_max = 10.0;
  CHECK_THROWS_AS(periodic_profile(loose, 2.5, 2.5), ThetaNonMonotone);

  RarefactionSpec nonper = s;
  nonper.periodic = false;
  CHECK_THROWS_AS(periodic_profile(nonper, 0.5, 0.5), InvalidParams);
}

TEST_CASE("profile field sampling and ramp slope") {
  const RarefactionSpec s = burgers_profile();
  const Field f = profile_field(s, 1.0, 256, -1.0, 3.0);
  for (int i : {10, 100, 200})
    CHECK(f.at(i, 0) == periodic_profile(s, f.center(0, i), 1.0));

  RarefactionSpec bad = s;
  bad.T_max = 1.9;
  CHECK_THROWS_AS(profile_field(bad, 1.0, 64, -1.0, 3.0), InvalidParams);

  // ramp slope 0.5/(1 - 0.5 t), largest at t = T
  CHECK(lipschitz_B0(s, 1.0, 64) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(lipschitz_B0(s, 0.0, 64) == doctest::Approx(0.5).epsilon(0.01));
  CHECK_THROWS_AS(lipschitz_B0(s, 1.0, 1), InvalidParams);
}

TEST_CASE("passive transport: constant-state advection is exact") {
  RarefactionSpec s;  // profile far outside the window: u = 0.5 everywhere
  s.f = burgers_flux();
  s.u_L = 0.5;
  s.u_R = 1.0;
  s.x0 = 10.0;
  s.periodic = true;
  s.y0 = 11.0;
  s.y1 = 13.0;
  s.T_max = 1.5;

  auto g = [](double u) { return -0.2 * u * u * u; };
  auto gp = [](double u) { return -0.6 * u * u; };
  auto v0 = [](double x) { return std::sin(M_PI * x / 2); };  // period 4

  const auto st = triangular_v(s, g, gp, v0, {0.0, 0.8}, 0.0, 4.0, 512);
  REQUIRE(st.size() == 2);
  const double shift = 0.2 * 0.125 * 0.8;  // -g(0.5) * t
  double err = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double x = st.snaps[1].center(0, i);
    err = std::max(err, std::abs(st.snaps[1].at(i, 0) - v0(x + shift)));
  }
  CHECK(err <= 1e-12);
}

TEST_CASE("passive transport: finite speed and mass conservation") {
  const RarefactionSpec s = burgers_profile();
  auto g = [](double u) { return -0.2 * u * u * u; };
  auto gp = [](double u) { return -0.6 * u * u; };
  auto v0 = [](double) { return 2.0; };

  const int n = 512;
  const auto st = triangular_v(s, g, gp, v0, {0.25, 0.75}, -1.0, 3.0, n);

  // g(u_L) = 0: the left state never moves, v stays at its initial value there
  const Field& last = st.snaps[1];
  int i_half = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(last.center(0, i) + 0.5) < std::abs(last.center(0, i_half) + 0.5))
      i_half = i;
  CHECK(last.at(i_half, 0) == doctest::Approx(2.0).epsilon(1e-12));

  double mass = 0.0;
  for (int i = 0; i < n; ++i) mass += last.at(i, 0);
  mass *= last.cell_measure();
  CHECK(mass == doctest::Approx(8.0).epsilon(1.25e-4));  // 1e-3 absolute
}

TEST_CASE("passive transport: zero speed freezes the data") {
  const RarefactionSpec s = burgers_profile();
  auto zero = [](double) { return 0.0; };
  auto v0 = [](double x) { return 1.0 + 0.25 * std::cos(M_PI * x / 2); };
  const auto st = triangular_v(s, zero, zero, v0, {0.0, 0.3, 0.9}, -1.0, 3.0, 64);
  REQUIRE(st.size() == 3);
  CHECK(st.snaps[1].data == st.snaps[0].data);
  CHECK(st.snaps[2].data == st.snaps[0].data);

  CHECK_THROWS_AS(triangular_v(s, zero, zero, v0, {0.5, 0.5}, -1.0, 3.0, 64),
                  InvalidParams);
  CHECK_THROWS_AS(triangular_v(s, zero, zero, v0, {}, -1.0, 3.0, 64), InvalidParams);
  CHECK_THROWS_AS(triangular_v(s, zero, zero, v0, {0.0, 0.5}, -1.0, 3.0, 4),
                  InvalidParams);
}

TEST_CASE("backward reconstruction of a linear profile") {
  TerminalData td;
  td.u_T = Field::sample1d(256, 0.0, 1.0, [](double x) { return x; });
  td.T = 1.0;
  const Flux1D f = burgers_flux();

  for (double t : {0.25, 0.5, 1.0}) {
    const Field u = backward_reconstruct(td, f, t);
    REQUIRE(u.ncells() == 256);
    double err = 0.0;
    for (int i = 0; i < 256; ++i)
      err = std::max(err, std::abs(u.at(i, 0) - u.center(0, i) / t));
    CHECK(err <= 1e-12);
  }

  // two-step reconstruction lands on the same self-similar solution
  TerminalData mid;
  mid.u_T = backward_reconstruct(td, f, 0.5);
  mid.T = 0.5;
  const Field u25 = backward_reconstruct(mid, f, 0.25);
  double err = 0.0;
  for (int i = 0; i < 256; ++i)
    err = std::max(err, std::abs(u25.at(i, 0) - u25.center(0, i) / 0.25));
  CHECK(err <= 1e-12);

  TerminalData steep;
  steep.u_T = Field::sample1d(64, 0.0, 1.0, [](double x) { return 10 * x; });
  steep.T = 1.0;
  CHECK_THROWS_AS(backward_reconstruct(steep, f, 0.5), NonMonotoneCharacteristicMap);
  CHECK_THROWS_AS(backward_reconstruct(td, f, 0.0), InvalidParams);
  CHECK_THROWS_AS(backward_reconstruct(td, f, 1.5), InvalidParams);

  TerminalData vec;
  vec.u_T = Field({16}, 2, {0.0}, {1.0});
  CHECK_THROWS_AS(backward_reconstruct(vec, f, 0.5), GridMismatch);
}

TEST_CASE("holder certificate") {
  const Flux1D f = burgers_flux();
  const Field lin = Field::sample1d(512, 0.0, 1.0, [](double x) { return 2 * x; });

  Report ok = holder_certificate(lin, f, 1.0, 1.0, 2.0, 1.0);
  CHECK(ok.pass);
  CHECK(ok.get("seminorm") == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ok.get("bound") == doctest::Approx(2.0));

  Report tight = holder_certificate(lin, f, 1.0, 1.0, 0.0, 4.0);
  CHECK_FALSE(tight.pass);  // bound max(0, 1/4) = 0.25 < 2

  const Field flat = Field::sample1d(128, 0.0, 1.0, [](double) { return 0.7; });
  CHECK(holder_certificate(flat, f, 0.5, 1.0, 0.0, 1.0).get("seminorm") == 0.0);

  // subsampled pair set (eight million pairs) still finds the linear slope
  const Field big = Field::sample1d(4096, 0.0, 1.0, [](double x) { return 2 * x; });
  CHECK(holder_certificate(big, f, 1.0, 1.0, 2.0, 1.0).get("seminorm") ==
        doctest::Approx(2.0).epsilon(1e-9));

  // kink profile: the 1/2-seminorm is attained on kink-to-edge pairs
  const Field kink =
      Field::sample1d(1024, 0.0, 1.0, [](double x) { return std::abs(2 * x - 1); });
  CHECK(holder_certificate(kink, f, 0.5, 1.0, 2.0, 1.0).get("seminorm") ==
        doctest::Approx(std::sqrt(2.0)).epsilon(0.1));

  CHECK_THROWS_AS(holder_certificate(lin, f, 0.0, 1.0, 0.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(holder_certificate(lin, f, 1.2, 1.0, 0.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(holder_certificate(lin, f, 1.0, 1.0, 0.0, 0.0), InvalidParams);
}

TEST_CASE("one-sided certificate") {
  const Field down = Field::sample1d(64, 0.0, 1.0, [](double x) { return -x; });
  const OnesidedCertificate cd = onesided_certificate(down);
  CHECK(cd.min_quotient == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cd.B1 == doctest::Approx(1.0).epsilon(1e-12));

  const Field up = Field::sample1d(64, 0.0, 1.0, [](double x) { return x; });
  const OnesidedCertificate cu = onesided_certificate(up);
  CHECK(cu.min_quotient == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cu.B1 == 0.0);
}

TEST_CASE("self-similar elasticity fan") {
  const ElasticityParams ep = ElasticityParams::quartic_default();

  const SelfSimilarFan fan = elasticity_self_similar(ep, 1.05, 2.0, 4096);
  CHECK(fan.residual <= 1e-6);
  for (std::size_t i = 0; i + 1 < fan.zeta.size(); ++i) {
    CHECK(fan.F[i + 1] > fan.F[i]);   // strain increases with zeta
    CHECK(fan.V[i + 1] < fan.V[i]);   // velocity decreases
    const double z2 = fan.zeta[i] * fan.zeta[i];
    CHECK(std::abs(ep.Wpp(fan.F[i]) - z2) <= 5e-12 * std::max(1.0, z2));
  }

  // stress-rate identity: -zeta^2 Sigma''(F) V' = 2 zeta^4 > 0.  Checked
  // tightly away from zeta = 1, where Sigma''(F) -> 0 makes V' singular and
  // central differences lose accuracy; positivity holds on the full range.
  const SelfSimilarFan id = elasticity_self_similar(ep, 1.2, 2.0, 1024);
  const double hz = id.zeta[1] - id.zeta[0];
  for (std::size_t i = 1; i + 1 < id.zeta.size(); ++i) {
    const double Vp = (id.V[i + 1] - id.V[i - 1]) / (2 * hz);
    const double z = id.zeta[i];
    const double lhs = -z * z * (6 * id.F[i]) * Vp;  // Sigma'' = 6 F for the quartic
    CHECK(lhs == doctest::Approx(2 * z * z * z * z).epsilon(1e-5));
    CHECK(lhs > 0.0);
  }
  const double hf = fan.zeta[1] - fan.zeta[0];
  for (std::size_t i = 1; i + 1 < fan.zeta.size(); ++i) {
    const double Vp = (fan.V[i + 1] - fan.V[i - 1]) / (2 * hf);
    CHECK(-fan.zeta[i] * fan.zeta[i] * (6 * fan.F[i]) * Vp > 0.0);
  }

  // fan touches zero strain where zeta^2 = Sigma'(0)
  const SelfSimilarFan base = elasticity_self_similar(ep, 1.0, 2.0, 8);
  CHECK(std::abs(base.F[0]) <= 1e-5);

  ElasticityParams lin;  // quadratic energy: Sigma' constant, no fan
  lin.W = [](double F) { return 0.5 * F * F; };
  lin.Wp = [](double F) { return F; };
  lin.Wpp = [](double) { return 1.0; };
  CHECK_THROWS_AS(elasticity_self_similar(lin, 1.05, 2.0, 64), NonStrictlyConvex);

  CHECK_THROWS_AS(elasticity_self_similar(ep, -0.5, 2.0, 64), InvalidParams);
  CHECK_THROWS_AS(elasticity_self_similar(ep, 2.0, 1.0, 64), InvalidParams);
  CHECK_THROWS_AS(elasticity_self_similar(ep, 1.0, 2.0, 4), InvalidParams);
}

TEST_CASE("planar splits satisfy the lifting condition") {
  for (const PlanarSplit& sp :
       {euler_planar_split(), swmhd_planar_split(), triangular_planar_split()}) {
    const Report rep = planar_condition_check(sp, 512);
    CHECK(rep.pass);
    CHECK(rep.get("max_A2") <= 1e-12);
    CHECK(rep.get("max_G2") <= 1e-12);
    CHECK(rep.get("max_F1_z") <= 1e-12);
  }

  PlanarSplit bad = euler_planar_split();
  bad.w_idx = {0, 2};  // carrying the transverse velocity breaks the x1 flux
  bad.z_idx = {1};
  CHECK_FALSE(planar_condition_check(bad, 512).pass);

  // same seed, same pair set, identical metrics
  const Report a = planar_condition_check(euler_planar_split(), 256, 99u);
  const Report b = planar_condition_check(euler_planar_split(), 256, 99u);
  CHECK(a.get("max_F1_z") == b.get("max_F1_z"));
}

TEST_CASE("planar extension replicates the 1-D run") {
  const PlanarSplit sp = euler_planar_split();
  SpaceTimeField w1d;
  for (double t : {0.0, 0.1}) {
    w1d.push(t, Field::sample({16}, 2, {0.0}, {1.0},
                              [](const std::vector<double>& x) {
                                Vec w(2);
                                w << 1.0 + 0.1 * std::sin(M_PI * x[0]),
                                    0.2 * std::cos(M_PI * x[0]);
                                return w;
                              }));
  }

  const SpaceTimeField ext = planar_extend(sp, w1d, 4, 0.0, 1.0);
  REQUIRE(ext.size() == 2);
  const Field& U = ext.snaps[1];
  REQUIRE(U.dim() == 2);
  CHECK(U.n[0] == 16);
  CHECK(U.n[1] == 4);
  REQUIRE(U.m == 3);

  for (int i = 0; i < 16; ++i) {
    const long base = static_cast<long>(i) * 4;
    for (int j = 0; j < 4; ++j) {
      CHECK(U.at(base + j, 0) == w1d.snaps[1].at(i, 0));
      CHECK(U.at(base + j, 1) == w1d.snaps[1].at(i, 1));
      CHECK(U.at(base + j, 2) == 0.0);
    }
    // transverse flux is identical cell to cell: its divergence vanishes
    Vec s0(3), s1(3);
    for (int c = 0; c < 3; ++c) {
      s0[c] = U.at(base, c);
      s1[c] = U.at(base + 1, c);
    }
    const Vec f0 = sp.full.F[1](s0), f1 = sp.full.F[1](s1);
    CHECK((f0 - f1).cwiseAbs().maxCoeff() == 0.0);
  }

  PlanarSplit bad = euler_planar_split();
  bad.w_idx = {0, 2};
  bad.z_idx = {1};
  CHECK_THROWS_AS(planar_extend(bad, w1d, 4, 0.0, 1.0), PlanarConditionViolated);

  SpaceTimeField wrong;
  wrong.push(0.0, Field::sample1d(16, 0.0, 1.0, [](double) { return 1.0; }));
  CHECK_THROWS_AS(planar_extend(sp, wrong, 4, 0.0, 1.0), GridMismatch);
}
