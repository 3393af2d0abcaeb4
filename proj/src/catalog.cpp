#include "hypercl/catalog.hpp"

#include <cmath>

namespace hypercl {

namespace {

constexpr int kConvexityProbes = 1024;

// 5-node Gauss-Legendre rule on [0,1], composite over `panels`.
double gauss01(const std::function<double(double)>& fn, double a, double b, int panels = 32) {
  static const double X[5] = {0.046910077030668004, 0.23076534494715845, 0.5,
                              0.76923465505284155, 0.953089922969332};
  static const double W[5] = {0.11846344252809454, 0.23931433524968324,
                              0.28444444444444444, 0.23931433524968324,
                              0.11846344252809454};
  std::vector<double> terms;
  terms.reserve(5 * panels);
  for (int p = 0; p < panels; ++p)
    for (int g = 0; g < 5; ++g) {
      const double s = (p + X[g]) / panels;
      terms.push_back(W[g] / panels * fn(a + s * (b - a)));
    }
  return (b - a) * pairwise_sum(terms);
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

double Flux1D::sup_fpp(double a, double b) const {
  double s = fpp(a);
  for (int i = 1; i <= 512; ++i) s = std::max(s, fpp(a + (b - a) * i / 512.0));
  return s;
}

Flux1D burgers_flux() {
  Flux1D fx;
  fx.f = [](double u) { return 0.5 * u * u; };
  fx.fp = [](double u) { return u; };
  fx.fpp = [](double) { return 1.0; };
  fx.fp_inv = [](double y) { return y; };
  return fx;
}

Flux1D power_law_flux(double q) {
  if (q < 1.0) throw InvalidParams("power_law_flux: exponent must be >= 1");
  Flux1D fx;
  fx.f = [q](double u) { return std::pow(std::abs(u), q + 1) / (q + 1); };
  fx.fp = [q](double u) { return sgn(u) * std::pow(std::abs(u), q); };
  fx.fpp = [q](double u) { return q * std::pow(std::abs(u), q - 1); };
  fx.fp_inv = [q](double y) { return sgn(y) * std::pow(std::abs(y), 1.0 / q); };
  return fx;
}

// ---------------------------------------------------------------------------
// Isentropic Euler
// ---------------------------------------------------------------------------

double euler_P(double gamma, double rho) {
  return (std::pow(rho, gamma) - rho) / (gamma - 1.0);
}
double euler_Pp(double gamma, double rho) {
  return (gamma * std::pow(rho, gamma - 1.0) - 1.0) / (gamma - 1.0);
}
double euler_Ppp(double gamma, double rho) { return gamma * std::pow(rho, gamma - 2.0); }

SystemDef make_isentropic_euler(const EulerParams& params) {
  if (params.gamma <= 1.0) throw InvalidParams("euler: gamma must be > 1");
  if (params.d < 1) throw InvalidParams("euler: d must be >= 1");
  if (params.rho_lo <= 0.0 || params.rho_hi <= params.rho_lo)
    throw InvalidParams("euler: sample box must exclude vacuum");
  const double gam = params.gamma;
  const int d = params.d, m = 1 + d;

  SystemDef sys;
  sys.name = "euler";
  sys.d = d;
  sys.m = m;

  sys.A = [m](const Vec& xi) {
    Vec a(m);
    a[0] = xi[0];
    for (int i = 1; i < m; ++i) a[i] = xi[0] * xi[i];
    return a;
  };
  sys.A_inverse = [m](const Vec& V) {
    if (!(V[0] > 0)) throw NonInvertibleA("euler: conserved density <= 0");
    Vec xi(m);
    xi[0] = V[0];
    for (int i = 1; i < m; ++i) xi[i] = V[i] / V[0];
    return xi;
  };
  for (int k = 0; k < d; ++k) {
    sys.F.push_back([m, k, gam](const Vec& xi) {
      const double rho = xi[0], vk = xi[1 + k];
      const double p = std::pow(rho, gam);
      Vec f(m);
      f[0] = rho * vk;
      for (int i = 1; i < m; ++i) f[i] = rho * xi[i] * vk + (i == 1 + k ? p : 0.0);
      return f;
    });
  }
  sys.H = [m, gam](const Vec& xi) {
    double kin = 0;
    for (int i = 1; i < m; ++i) kin += xi[i] * xi[i];
    return 0.5 * xi[0] * kin + euler_P(gam, xi[0]);
  };
  sys.G = [m, gam](const Vec& xi) {
    double kin = 0;
    for (int i = 1; i < m; ++i) kin += xi[i] * xi[i];
    Vec g(m);
    g[0] = euler_Pp(gam, xi[0]) - 0.5 * kin;
    for (int i = 1; i < m; ++i) g[i] = xi[i];
    return g;
  };

  sys.DA = [m](const Vec& xi) {
    Mat J = Mat::Zero(m, m);
    J(0, 0) = 1.0;
    for (int i = 1; i < m; ++i) {
      J(i, 0) = xi[i];
      J(i, i) = xi[0];
    }
    return J;
  };
  for (int k = 0; k < d; ++k) {
    sys.DF.push_back([m, k, gam](const Vec& xi) {
      const double rho = xi[0], vk = xi[1 + k];
      Mat J = Mat::Zero(m, m);
      J(0, 0) = vk;
      J(0, 1 + k) = rho;
      for (int i = 1; i < m; ++i) {
        J(i, 0) = xi[i] * vk + (i == 1 + k ? gam * std::pow(rho, gam - 1.0) : 0.0);
        J(i, i) += rho * vk;
        J(i, 1 + k) += rho * xi[i];
      }
      return J;
    });
  }
  sys.DG = [m, gam](const Vec& xi) {
    Mat J = Mat::Zero(m, m);
    J(0, 0) = euler_Ppp(gam, xi[0]);
    for (int i = 1; i < m; ++i) {
      J(0, i) = -xi[i];
      J(i, i) = 1.0;
    }
    return J;
  };
  sys.D2H = [m, gam](const Vec& xi) {
    Mat Hm = Mat::Zero(m, m);
    Hm(0, 0) = euler_Ppp(gam, xi[0]);
    for (int i = 1; i < m; ++i) {
      Hm(0, i) = Hm(i, 0) = xi[i];
      Hm(i, i) = xi[0];
    }
    return Hm;
  };
  sys.D2A = [m](const Vec&) {
    std::vector<Mat> hs(m, Mat::Zero(m, m));
    for (int i = 1; i < m; ++i) {
      hs[i](0, i) = 1.0;
      hs[i](i, 0) = 1.0;
    }
    return hs;
  };

  sys.admissible = [](const Vec& xi) { return xi[0] > 0.0; };
  sys.admissible_closure = [](const Vec& xi) { return xi[0] >= 0.0; };

  sys.sample_box.lo = Vec(m);
  sys.sample_box.hi = Vec(m);
  sys.sample_box.lo[0] = params.rho_lo;
  sys.sample_box.hi[0] = params.rho_hi;
  for (int i = 1; i < m; ++i) {
    sys.sample_box.lo[i] = -params.v_max;
    sys.sample_box.hi[i] = params.v_max;
  }

  sys.growth.p = 2 * gam / (gam + 1);
  sys.growth.l = std::max(gam, 3.0);
  sys.growth.L = 0.0;
  sys.growth.nonlinear_G = {0};
  sys.growth.relflux_vanishes_on_nonlinear_G = true;
  sys.growth.q_required = 4 * gam / (gam - 1);
  return sys;
}

// ---------------------------------------------------------------------------
// Shallow water magnetohydrodynamics
// ---------------------------------------------------------------------------

SystemDef make_swmhd(const SwmhdParams& params) {
  if (params.gravity <= 0.0) throw InvalidParams("swmhd: gravity must be > 0");
  if (params.d < 1) throw InvalidParams("swmhd: d must be >= 1");
  if (params.h_lo <= 0.0 || params.h_hi <= params.h_lo)
    throw InvalidParams("swmhd: sample box must exclude dry state");
  const double gr = params.gravity;
  const int d = params.d, m = 1 + 2 * d;
  // component layout: xi = (h, v_1..v_d, b_1..b_d)
  const auto vi = [d](int i) { return 1 + i; };
  const auto bi = [d](int i) { return 1 + d + i; };

  SystemDef sys;
  sys.name = "swmhd";
  sys.d = d;
  sys.m = m;

  sys.A = [m](const Vec& xi) {
    Vec a(m);
    a[0] = xi[0];
    for (int i = 1; i < m; ++i) a[i] = xi[0] * xi[i];
    return a;
  };
  sys.A_inverse = [m](const Vec& V) {
    if (!(V[0] > 0)) throw NonInvertibleA("swmhd: conserved depth <= 0");
    Vec xi(m);
    xi[0] = V[0];
    for (int i = 1; i < m; ++i) xi[i] = V[i] / V[0];
    return xi;
  };
  for (int k = 0; k < d; ++k) {
    sys.F.push_back([m, d, k, gr, vi, bi](const Vec& xi) {
      const double h = xi[0], vk = xi[vi(k)], bk = xi[bi(k)];
      Vec f(m);
      f[0] = h * vk;
      for (int i = 0; i < d; ++i) {
        f[vi(i)] = h * xi[vi(i)] * vk - h * xi[bi(i)] * bk + (i == k ? 0.5 * gr * h * h : 0.0);
        f[bi(i)] = h * xi[bi(i)] * vk - h * xi[vi(i)] * bk;
      }
      return f;
    });
  }
  sys.H = [m, gr](const Vec& xi) {
    double s = 0;
    for (int i = 1; i < m; ++i) s += xi[i] * xi[i];
    return 0.5 * gr * xi[0] * xi[0] + 0.5 * xi[0] * s;
  };
  sys.G = [m, gr](const Vec& xi) {
    double s = 0;
    for (int i = 1; i < m; ++i) s += xi[i] * xi[i];
    Vec g(m);
    g[0] = gr * xi[0] - 0.5 * s;
    for (int i = 1; i < m; ++i) g[i] = xi[i];
    return g;
  };

  sys.DA = [m](const Vec& xi) {
    Mat J = Mat::Zero(m, m);
    J(0, 0) = 1.0;
    for (int i = 1; i < m; ++i) {
      J(i, 0) = xi[i];
      J(i, i) = xi[0];
    }
    return J;
  };
  for (int k = 0; k < d; ++k) {
    sys.DF.push_back([m, d, k, gr, vi, bi](const Vec& xi) {
      const double h = xi[0], vk = xi[vi(k)], bk = xi[bi(k)];
      Mat J = Mat::Zero(m, m);
      J(0, 0) = vk;
      J(0, vi(k)) = h;
      for (int i = 0; i < d; ++i) {
        const double vv = xi[vi(i)], bb = xi[bi(i)];
        J(vi(i), 0) = vv * vk - bb * bk + (i == k ? gr * h : 0.0);
        J(vi(i), vi(i)) += h * vk;
        J(vi(i), vi(k)) += h * vv;
        J(vi(i), bi(i)) += -h * bk;
        J(vi(i), bi(k)) += -h * bb;
        J(bi(i), 0) = bb * vk - vv * bk;
        J(bi(i), bi(i)) += h * vk;
        J(bi(i), vi(k)) += h * bb;
        J(bi(i), vi(i)) += -h * bk;
        J(bi(i), bi(k)) += -h * vv;
      }
      return J;
    });
  }
  sys.DG = [m, gr](const Vec& xi) {
    Mat J = Mat::Zero(m, m);
    J(0, 0) = gr;
    for (int i = 1; i < m; ++i) {
      J(0, i) = -xi[i];
      J(i, i) = 1.0;
    }
    return J;
  };
  sys.D2H = [m, gr](const Vec& xi) {
    Mat Hm = Mat::Zero(m, m);
    Hm(0, 0) = gr;
    for (int i = 1; i < m; ++i) {
      Hm(0, i) = Hm(i, 0) = xi[i];
      Hm(i, i) = xi[0];
    }
    return Hm;
  };
  sys.D2A = [m](const Vec&) {
    std::vector<Mat> hs(m, Mat::Zero(m, m));
    for (int i = 1; i < m; ++i) {
      hs[i](0, i) = 1.0;
      hs[i](i, 0) = 1.0;
    }
    return hs;
  };

  sys.admissible = [](const Vec& xi) { return xi[0] > 0.0; };
  sys.admissible_closure = [](const Vec& xi) { return xi[0] >= 0.0; };

  sys.sample_box.lo = Vec(m);
  sys.sample_box.hi = Vec(m);
  sys.sample_box.lo[0] = params.h_lo;
  sys.sample_box.hi[0] = params.h_hi;
  for (int i = 0; i < d; ++i) {
    sys.sample_box.lo[vi(i)] = -params.v_max;
    sys.sample_box.hi[vi(i)] = params.v_max;
    sys.sample_box.lo[bi(i)] = -params.b_max;
    sys.sample_box.hi[bi(i)] = params.b_max;
  }

  sys.growth.p = 4.0 / 3.0;
  sys.growth.l = 3.0;
  sys.growth.L = 0.0;
  sys.growth.nonlinear_G = {0};
  sys.growth.relflux_vanishes_on_nonlinear_G = true;
  sys.growth.q_required = 8.0;
  return sys;
}

// ---------------------------------------------------------------------------
// Convex elasticity in 1-D
// ---------------------------------------------------------------------------

ElasticityParams ElasticityParams::quartic_default() {
  ElasticityParams p;
  p.W = [](double F) { return 0.5 * F * F + 0.25 * F * F * F * F; };
  p.Wp = [](double F) { return F + F * F * F; };
  p.Wpp = [](double F) { return 1.0 + 3.0 * F * F; };
  return p;
}

SystemDef make_convex_elasticity_1d(const ElasticityParams& params) {
  if (!params.W || !params.Wp || !params.Wpp)
    throw InvalidParams("elastic1d: W, W', W'' closures are required");
  if (params.F_hi <= params.F_lo) throw InvalidParams("elastic1d: bad F range");
  for (int i = 0; i <= kConvexityProbes; ++i) {
    const double F = params.F_lo + (params.F_hi - params.F_lo) * i / kConvexityProbes;
    if (!(params.Wpp(F) > 0.0))
      throw NonConvexEnergy("elastic1d: W'' <= 0 at F = " + format_double(F));
  }
  auto Sig = params.Wp;
  auto Sigp = params.Wpp;
  auto W = params.W;

  SystemDef sys;
  sys.name = "elastic1d";
  sys.d = 1;
  sys.m = 2;
  // state xi = (v, F); conservation form carries fluxes -(Sigma(F), v)
  sys.A = [](const Vec& xi) { return xi; };
  sys.A_inverse = [](const Vec& V) { return V; };
  sys.F.push_back([Sig](const Vec& xi) {
    Vec f(2);
    f[0] = -Sig(xi[1]);
    f[1] = -xi[0];
    return f;
  });
  sys.H = [W](const Vec& xi) { return 0.5 * xi[0] * xi[0] + W(xi[1]); };
  sys.G = [Sig](const Vec& xi) {
    Vec g(2);
    g[0] = xi[0];
    g[1] = Sig(xi[1]);
    return g;
  };
  sys.Q.push_back([Sig](const Vec& xi) { return -xi[0] * Sig(xi[1]); });

  sys.DA = [](const Vec&) { return Mat::Identity(2, 2); };
  sys.DF.push_back([Sigp](const Vec& xi) {
    Mat J = Mat::Zero(2, 2);
    J(0, 1) = -Sigp(xi[1]);
    J(1, 0) = -1.0;
    return J;
  });
  sys.DG = [Sigp](const Vec& xi) {
    Mat J = Mat::Zero(2, 2);
    J(0, 0) = 1.0;
    J(1, 1) = Sigp(xi[1]);
    return J;
  };
  sys.D2H = [Sigp](const Vec& xi) {
    Mat Hm = Mat::Zero(2, 2);
    Hm(0, 0) = 1.0;
    Hm(1, 1) = Sigp(xi[1]);
    return Hm;
  };
  sys.D2A = [](const Vec&) { return std::vector<Mat>(2, Mat::Zero(2, 2)); };

  sys.admissible = [](const Vec&) { return true; };
  sys.sample_box.lo = Vec(2);
  sys.sample_box.hi = Vec(2);
  sys.sample_box.lo << -params.v_max, params.F_lo;
  sys.sample_box.hi << params.v_max, params.F_hi;

  sys.growth.p = 2.0;
  sys.growth.l = 4.0;
  sys.growth.L = 0.0;
  sys.growth.nonlinear_G = {1};
  sys.growth.relflux_vanishes_on_nonlinear_G = true;
  sys.growth.q_required = 4.0;
  return sys;
}

// ---------------------------------------------------------------------------
// Triangular system (1-D and multi-D share the builder)
// ---------------------------------------------------------------------------

double max_lambda(double q, int m, double M1, double cap) {
  const double denom = (2 * m * q + q + 1) * std::pow(M1, 2 * m * q);
  if (denom <= 0.0) return cap;
  return std::min(cap, (2 * m * q - 1) / denom);
}

double triangular_phi(const TriangularParams& p, double u) {
  const double w = std::pow(std::abs(u), 2 * p.m * p.q);
  return (2.0 * p.m + 1) / (2.0 * p.m) * std::log1p(p.lambda * w);
}

double triangular_kappa(const TriangularParams& p, double u) {
  return std::exp(-triangular_phi(p, u));
}

namespace {

// phi' and phi'' in closed form; see the kappa concavity bracket below.
double tri_phip(const TriangularParams& p, double u) {
  const double a = (2 * p.m + 1) * p.q;
  const double w = std::pow(std::abs(u), 2 * p.m * p.q);
  return a * p.lambda * sgn(u) * std::pow(std::abs(u), 2 * p.m * p.q - 1) /
         (1 + p.lambda * w);
}

double tri_phipp(const TriangularParams& p, double u) {
  const double a = (2 * p.m + 1) * p.q;
  const double e = 2 * p.m * p.q;
  const double w = std::pow(std::abs(u), e);
  const double denom = (1 + p.lambda * w) * (1 + p.lambda * w);
  return a * p.lambda * std::pow(std::abs(u), e - 2) * ((e - 1) - p.lambda * w) / denom;
}

}  // namespace

double triangular_kappa_pp(const TriangularParams& p, double u) {
  const double phip = tri_phip(p, u), phipp = tri_phipp(p, u);
  return triangular_kappa(p, u) * (phip * phip - phipp);
}

double triangular_g(const TriangularParams& p, double u) {
  const double fp = sgn(u) * std::pow(std::abs(u), p.q);
  return -p.lambda * std::pow(fp, 2 * p.m + 1);
}

double triangular_gp(const TriangularParams& p, double u) {
  // g = -lambda sgn(u)|u|^{(2m+1)q}
  const double e = (2 * p.m + 1) * p.q;
  return -p.lambda * e * std::pow(std::abs(u), e - 1);
}

namespace {

SystemDef make_triangular_core(const TriangularParams& p, int d, const std::string& name) {
  if (p.q < 1.0 || p.q >= 2.0) throw InvalidParams("triangular: q must lie in [1,2)");
  if (p.m < 1 || p.n_v < 1 || p.M1 <= 0.0) throw InvalidParams("triangular: bad m/n_v/M1");
  const double lam_max = max_lambda(p.q, p.m, p.M1);
  if (p.lambda > lam_max * (1 + 1e-12))
    throw LambdaTooLarge("triangular: lambda " + format_double(p.lambda) +
                         " exceeds max_lambda " + format_double(lam_max) +
                         "; entropy weight would lose concavity");
  if (p.lambda <= 0.0) throw InvalidParams("triangular: lambda must be > 0");

  TriangularParams prm = p;  // copy captured by closures
  const int nv = p.n_v, mtot = 1 + nv;
  const Flux1D fx = power_law_flux(p.q);

  const bool custom_psi = static_cast<bool>(p.psi);
  if (custom_psi && (!p.psip || !p.psipp))
    throw InvalidParams("triangular: custom psi requires psi' and psi''");
  std::function<double(double)> psi = p.psi, psip = p.psip, psipp = p.psipp;
  if (!custom_psi) {
    psi = [](double u) { return u * u; };
    psip = [](double u) { return 2 * u; };
    psipp = [](double) { return 2.0; };
  }

  // P(u) = int_0^u psi'(s) f'(s) ds; closed form for the default psi.
  std::function<double(double)> Pfn;
  if (custom_psi) {
    auto fp = fx.fp;
    auto pp = psip;
    Pfn = [fp, pp](double u) {
      return gauss01([&](double s) { return pp(s) * fp(s); }, 0.0, u);
    };
  } else {
    const double qq = p.q;
    Pfn = [qq](double u) { return 2 * u * std::pow(std::abs(u), qq + 1) / (qq + 2); };
  }

  SystemDef sys;
  sys.name = name;
  sys.d = d;
  sys.m = mtot;

  sys.A = [](const Vec& xi) { return xi; };
  sys.A_inverse = [](const Vec& V) { return V; };
  for (int k = 0; k < d; ++k) {
    sys.F.push_back([prm, fx, mtot](const Vec& xi) {
      const double g = triangular_g(prm, xi[0]);
      Vec f(mtot);
      f[0] = fx.f(xi[0]);
      for (int i = 1; i < mtot; ++i) f[i] = g * xi[i];
      return f;
    });
  }
  // entropy with K(s) = |s|^2: eta = psi(u) + |v|^2 e^{phi(u)}
  sys.H = [prm, psi, mtot](const Vec& xi) {
    double v2 = 0;
    for (int i = 1; i < mtot; ++i) v2 += xi[i] * xi[i];
    return psi(xi[0]) + v2 * std::exp(triangular_phi(prm, xi[0]));
  };
  sys.G = [prm, psip, mtot](const Vec& xi) {
    const double E = std::exp(triangular_phi(prm, xi[0]));
    const double phip = tri_phip(prm, xi[0]);
    double v2 = 0;
    for (int i = 1; i < mtot; ++i) v2 += xi[i] * xi[i];
    Vec g(mtot);
    g[0] = psip(xi[0]) + phip * v2 * E;
    for (int i = 1; i < mtot; ++i) g[i] = 2 * xi[i] * E;
    return g;
  };
  for (int k = 0; k < d; ++k) {
    sys.Q.push_back([prm, Pfn, mtot](const Vec& xi) {
      double v2 = 0;
      for (int i = 1; i < mtot; ++i) v2 += xi[i] * xi[i];
      return Pfn(xi[0]) +
             triangular_g(prm, xi[0]) * v2 * std::exp(triangular_phi(prm, xi[0]));
    });
  }

  sys.DA = [mtot](const Vec&) { return Mat::Identity(mtot, mtot); };
  for (int k = 0; k < d; ++k) {
    sys.DF.push_back([prm, fx, mtot](const Vec& xi) {
      Mat J = Mat::Zero(mtot, mtot);
      J(0, 0) = fx.fp(xi[0]);
      const double g = triangular_g(prm, xi[0]), gp = triangular_gp(prm, xi[0]);
      for (int i = 1; i < mtot; ++i) {
        J(i, 0) = gp * xi[i];
        J(i, i) = g;
      }
      return J;
    });
  }
  auto hess = [prm, psipp, mtot](const Vec& xi) {
    const double E = std::exp(triangular_phi(prm, xi[0]));
    const double phip = tri_phip(prm, xi[0]), phipp = tri_phipp(prm, xi[0]);
    double v2 = 0;
    for (int i = 1; i < mtot; ++i) v2 += xi[i] * xi[i];
    Mat Hm = Mat::Zero(mtot, mtot);
    Hm(0, 0) = psipp(xi[0]) + v2 * E * (phipp + phip * phip);
    for (int i = 1; i < mtot; ++i) {
      Hm(0, i) = Hm(i, 0) = 2 * xi[i] * E * phip;
      Hm(i, i) = 2 * E;
    }
    return Hm;
  };
  sys.DG = hess;
  sys.D2H = hess;
  sys.D2A = [mtot](const Vec&) { return std::vector<Mat>(mtot, Mat::Zero(mtot, mtot)); };

  const double M1 = p.M1;
  sys.admissible = [M1](const Vec& xi) { return std::abs(xi[0]) <= M1 * (1 + 1e-12); };

  sys.sample_box.lo = Vec(mtot);
  sys.sample_box.hi = Vec(mtot);
  sys.sample_box.lo[0] = -p.M1;
  sys.sample_box.hi[0] = p.M1;
  for (int i = 1; i < mtot; ++i) {
    sys.sample_box.lo[i] = -p.v_max;
    sys.sample_box.hi[i] = p.v_max;
  }

  // bounded (L^infinity) setting: no growth exponents; q > 2 suffices
  sys.growth.p = 0.0;
  sys.growth.l = 0.0;
  sys.growth.L = 0.0;
  sys.growth.nonlinear_G.resize(mtot);
  for (int i = 0; i < mtot; ++i) sys.growth.nonlinear_G[i] = i;
  sys.growth.relflux_vanishes_on_nonlinear_G = false;
  sys.growth.q_required = 2.0;
  return sys;
}

}  // namespace

SystemDef make_triangular(const TriangularParams& params) {
  TriangularParams p = params;
  p.d = 1;
  return make_triangular_core(p, 1, "triangular");
}

TriangularParams multid_default() {
  TriangularParams p;
  p.d = 2;
  p.n_v = 2;
  return p;
}

SystemDef make_multid_triangular(TriangularParams params) {
  if (params.d < 2) throw InvalidParams("triangular-md: d must be >= 2");
  return make_triangular_core(params, params.d, "triangular-md");
}

// ---------------------------------------------------------------------------
// Scalar conservation law
// ---------------------------------------------------------------------------

SystemDef make_scalar(const ScalarParams& params) {
  if (params.u_hi <= params.u_lo) throw InvalidParams("scalar: bad u range");
  const Flux1D fx = params.flux;
  for (int i = 0; i <= kConvexityProbes; ++i) {
    const double u = params.u_lo + (params.u_hi - params.u_lo) * i / kConvexityProbes;
    if (fx.fpp(u) < -1e-12)
      throw NonConvexFlux("scalar: f'' < 0 at u = " + format_double(u));
  }
  if (!(fx.fp(params.u_hi) > fx.fp(params.u_lo)))
    throw NonConvexFlux("scalar: f' not increasing across the sample box");

  SystemDef sys;
  sys.name = "scalar";
  sys.d = 1;
  sys.m = 1;
  sys.A = [](const Vec& xi) { return xi; };
  sys.A_inverse = [](const Vec& V) { return V; };
  sys.F.push_back([fx](const Vec& xi) { return Vec::Constant(1, fx.f(xi[0])); });
  sys.H = [](const Vec& xi) { return xi[0] * xi[0]; };
  sys.G = [](const Vec& xi) { return Vec::Constant(1, 2 * xi[0]); };
  // entropy flux reconstructed on demand: q(u) = int_0^u 2 s f'(s) ds
  sys.Q.push_back([fx](const Vec& xi) {
    return gauss01([&](double s) { return 2 * s * fx.fp(s); }, 0.0, xi[0]);
  });
  sys.DA = [](const Vec&) { return Mat::Identity(1, 1); };
  sys.DF.push_back([fx](const Vec& xi) { return Mat::Constant(1, 1, fx.fp(xi[0])); });
  sys.DG = [](const Vec&) { return Mat::Constant(1, 1, 2.0); };
  sys.D2H = [](const Vec&) { return Mat::Constant(1, 1, 2.0); };
  sys.D2A = [](const Vec&) { return std::vector<Mat>(1, Mat::Zero(1, 1)); };
  sys.admissible = [](const Vec&) { return true; };
  sys.sample_box.lo = Vec::Constant(1, params.u_lo);
  sys.sample_box.hi = Vec::Constant(1, params.u_hi);
  sys.growth.p = 0.0;
  sys.growth.q_required = 2.0;
  return sys;
}

std::vector<std::string> catalog_names() {
  return {"euler", "swmhd", "elastic1d", "triangular", "scalar", "triangular-md"};
}

}  // namespace hypercl
