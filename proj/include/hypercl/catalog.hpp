#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypercl/system.hpp"

namespace hypercl {

// ---------------------------------------------------------------------------
// Scalar convex flux with derivative closures.  fp_inv (inverse of f') is
// optional; rarefaction evaluation falls back to bisection without it.
// ---------------------------------------------------------------------------
struct Flux1D {
  std::function<double(double)> f, fp, fpp;
  std::function<double(double)> fp_inv;  // optional analytic inverse of f'

  // Sampled supremum of f'' over [a,b] (512 evaluation points).
  double sup_fpp(double a, double b) const;
};

Flux1D burgers_flux();
// f(u) = |u|^{q+1}/(q+1), strictly convex for q >= 1; q = 1 is Burgers.
Flux1D power_law_flux(double q);

// ---------------------------------------------------------------------------
// Isentropic Euler, pressure p(rho) = rho^gamma.  State xi = (rho, v).
// ---------------------------------------------------------------------------
struct EulerParams {
  double gamma = 1.4;
  int d = 1;
  double rho_lo = 0.5, rho_hi = 2.0;  // sample box (vacuum excluded)
  double v_max = 1.0;
};

SystemDef make_isentropic_euler(const EulerParams& params = {});

// Pressure potential P with P'' = p'(rho)/rho; fixed so P(1) = 0.
double euler_P(double gamma, double rho);
double euler_Pp(double gamma, double rho);
double euler_Ppp(double gamma, double rho);

// ---------------------------------------------------------------------------
// Shallow water magnetohydrodynamics.  State xi = (h, v, b).
// ---------------------------------------------------------------------------
struct SwmhdParams {
  double gravity = 9.81;
  int d = 2;
  double h_lo = 0.5, h_hi = 2.0;
  double v_max = 1.0, b_max = 1.0;
};

SystemDef make_swmhd(const SwmhdParams& params = {});

// ---------------------------------------------------------------------------
// 1-D elastodynamics with strongly convex stored energy W.  State xi = (v, F)
// and fluxes -(Sigma(F), v), so the entropy flux is -v Sigma(F).
// ---------------------------------------------------------------------------
struct ElasticityParams {
  std::function<double(double)> W, Wp, Wpp;  // energy, stress Sigma = W', W''
  double v_max = 1.0;
  double F_lo = -1.0, F_hi = 1.0;

  // Default energy W = F^2/2 + F^4/4, i.e. Sigma(F) = F + F^3.
  static ElasticityParams quartic_default();
};

SystemDef make_convex_elasticity_1d(const ElasticityParams& params = ElasticityParams::quartic_default());

// ---------------------------------------------------------------------------
// Triangular system: scalar conservation law for u coupled to linear
// transport of v by g(u), with f(u) = |u|^{q+1}/(q+1) and
// g(u) = -lambda (f'(u))^{2m+1}.  The entropy weight is
// kappa(u) = exp(-phi(u)) = (1 + lambda |u|^{2 m q})^{-(2m+1)/(2m)}; it must
// be concave on [-M1, M1], which bounds lambda by max_lambda below.
// ---------------------------------------------------------------------------
struct TriangularParams {
  double q = 1.0;      // flux exponent, in [1, 2)
  int m = 1;           // exponent index in g = -lambda (f')^{2m+1}
  double lambda = 0.25;
  double M1 = 1.0;     // sup-norm bound on u
  double v_max = 1.0;
  int d = 1;           // space dimension (make_multid_triangular sets > 1)
  int n_v = 1;         // number of transported components

  // Optional overrides of the entropy building blocks; defaults are
  // psi(u) = u^2 and K(s) = |s|^2.
  std::function<double(double)> psi, psip, psipp;
};

// Largest lambda keeping kappa concave on [-M1, M1]; the closed form
// (2mq-1) / ((2mq+q+1) M1^{2mq}) diverges as M1 -> 0 and is capped at `cap`.
double max_lambda(double q, int m, double M1, double cap = 1e6);

SystemDef make_triangular(const TriangularParams& params = {});
TriangularParams multid_default();
SystemDef make_multid_triangular(TriangularParams params = multid_default());

// Entropy weight diagnostics used by validation and tests.
double triangular_phi(const TriangularParams& p, double u);
double triangular_kappa(const TriangularParams& p, double u);
double triangular_kappa_pp(const TriangularParams& p, double u);
double triangular_g(const TriangularParams& p, double u);
double triangular_gp(const TriangularParams& p, double u);

// ---------------------------------------------------------------------------
// Scalar conservation law with entropy u^2 (entropy flux by line
// reconstruction from the origin).
// ---------------------------------------------------------------------------
struct ScalarParams {
  Flux1D flux = burgers_flux();
  double u_lo = -1.0, u_hi = 1.0;
};

SystemDef make_scalar(const ScalarParams& params = {});

// Catalog names addressable from configs: euler, swmhd, elastic1d,
// triangular, scalar, triangular-md.
std::vector<std::string> catalog_names();

}  // namespace hypercl
