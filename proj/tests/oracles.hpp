#pragma once

// Independent oracles for the test suite.  Everything here is implemented
// from scratch against the model definitions, deliberately NOT reusing the
// library's derivative or quadrature code, so that agreement is meaningful.

#include <cmath>
#include <functional>

#include "hypercl/types.hpp"

namespace oracle {

using hypercl::Mat;
using hypercl::Vec;

// Richardson-extrapolated central-difference Jacobian: O(h^4) truncation.
inline Mat richardson_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(f(x).size());
  Mat J(m, n);
  for (int j = 0; j < n; ++j) {
    const double h = 1e-4 * std::max(1.0, std::abs(x[j]));
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec d1 = (f(xp) - f(xm)) / (2 * h);
    xp[j] = x[j] + h / 2;
    xm[j] = x[j] - h / 2;
    const Vec d2 = (f(xp) - f(xm)) / h;
    J.col(j) = (4.0 * d2 - d1) / 3.0;
  }
  return J;
}

// Composite Simpson integral with a fixed fine partition.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 4096) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Pressure potential for isentropic Euler by direct quadrature of the
// defining integral P(rho) = rho * int_1^rho p(r)/r^2 dr with p = r^gamma.
inline double euler_P_quadrature(double gamma, double rho) {
  return rho * simpson([gamma](double r) { return std::pow(r, gamma - 2.0); }, 1.0, rho);
}

// Closed-form relative entropies / fluxes as printed for the model systems.
// Euler state xi = (rho, v), any spatial dimension.
inline double euler_rel_entropy_closed(double gamma, const Vec& xi, const Vec& xb) {
  const auto P = [gamma](double r) { return (std::pow(r, gamma) - r) / (gamma - 1.0); };
  const auto Pp = [gamma](double r) {
    return (gamma * std::pow(r, gamma - 1.0) - 1.0) / (gamma - 1.0);
  };
  const int d = static_cast<int>(xi.size()) - 1;
  double dv2 = 0;
  for (int i = 1; i <= d; ++i) dv2 += (xi[i] - xb[i]) * (xi[i] - xb[i]);
  const double Prel = P(xi[0]) - P(xb[0]) - Pp(xb[0]) * (xi[0] - xb[0]);
  return 0.5 * xi[0] * dv2 + Prel;
}

inline Vec euler_rel_flux_closed(double gamma, int k, const Vec& xi, const Vec& xb) {
  const int d = static_cast<int>(xi.size()) - 1;
  const auto p = [gamma](double r) { return std::pow(r, gamma); };
  const auto pp = [gamma](double r) { return gamma * std::pow(r, gamma - 1.0); };
  const double prel = p(xi[0]) - p(xb[0]) - pp(xb[0]) * (xi[0] - xb[0]);
  Vec f = Vec::Zero(d + 1);
  for (int i = 1; i <= d; ++i)
    f[i] = xi[0] * (xi[i] - xb[i]) * (xi[1 + k] - xb[1 + k]) + (i == 1 + k ? prel : 0.0);
  return f;
}

// SWMHD state xi = (h, v_1..v_d, b_1..b_d).
inline double swmhd_rel_entropy_closed(double g, const Vec& xi, const Vec& xb) {
  const int d = (static_cast<int>(xi.size()) - 1) / 2;
  double dv2 = 0, db2 = 0;
  for (int i = 0; i < d; ++i) {
    dv2 += (xi[1 + i] - xb[1 + i]) * (xi[1 + i] - xb[1 + i]);
    db2 += (xi[1 + d + i] - xb[1 + d + i]) * (xi[1 + d + i] - xb[1 + d + i]);
  }
  const double dh = xi[0] - xb[0];
  return 0.5 * xi[0] * dv2 + 0.5 * xi[0] * db2 + 0.5 * g * dh * dh;
}

inline Vec swmhd_rel_flux_closed(double g, int k, const Vec& xi, const Vec& xb) {
  const int d = (static_cast<int>(xi.size()) - 1) / 2;
  const double h = xi[0], dh = xi[0] - xb[0];
  const double dvk = xi[1 + k] - xb[1 + k], dbk = xi[1 + d + k] - xb[1 + d + k];
  Vec f = Vec::Zero(1 + 2 * d);
  for (int i = 0; i < d; ++i) {
    const double dvi = xi[1 + i] - xb[1 + i], dbi = xi[1 + d + i] - xb[1 + d + i];
    f[1 + i] = h * dvi * dvk - h * dbi * dbk + (i == k ? 0.5 * g * dh * dh : 0.0);
    f[1 + d + i] = h * dbi * dvk - h * dvi * dbk;
  }
  return f;
}

// Triangular system (single transported component): relative flux
// (f(u|ub), g(u|ub) v + g'(ub)(v - vb)(u - ub)).
inline Vec triangular_rel_flux_closed(const std::function<double(double)>& f,
                                      const std::function<double(double)>& fp,
                                      const std::function<double(double)>& g,
                                      const std::function<double(double)>& gp,
                                      const Vec& xi, const Vec& xb) {
  const double u = xi[0], v = xi[1], ub = xb[0], vb = xb[1];
  Vec out(2);
  out[0] = f(u) - f(ub) - fp(ub) * (u - ub);
  out[1] = (g(u) - g(ub) - gp(ub) * (u - ub)) * v + gp(ub) * (v - vb) * (u - ub);
  return out;
}

}  // namespace oracle
