#include "hypercl/system.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace hypercl {

namespace {

double fd_step1(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }
double fd_step2(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

// 5-node Gauss-Legendre rule on [0,1].
constexpr int kGaussN = 5;
constexpr double kGaussX[kGaussN] = {
    0.046910077030668004, 0.23076534494715845, 0.5,
    0.76923465505284155, 0.953089922969332};
constexpr double kGaussW[kGaussN] = {
    0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
    0.23931433524968324, 0.11846344252809454};

double rel_mismatch(const Mat& a, const Mat& b) {
  const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

Mat fd_jacobian(const VecFn& f, const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  const int mout = static_cast<int>(f(xi).size());
  Mat J(mout, n);
  for (int j = 0; j < n; ++j) {
    const double h = fd_step1(xi[j]);
    Vec xp = xi, xm = xi;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (f(xp) - f(xm)) / (2 * h);
  }
  return J;
}

Mat fd_hessian(const ScalarFn& f, const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  Mat Hm(n, n);
  const double f0 = f(xi);
  for (int i = 0; i < n; ++i) {
    const double hi = fd_step2(xi[i]);
    Vec xp = xi, xm = xi;
    xp[i] += hi;
    xm[i] -= hi;
    Hm(i, i) = (f(xp) - 2 * f0 + f(xm)) / (hi * hi);
    for (int j = i + 1; j < n; ++j) {
      const double hj = fd_step2(xi[j]);
      Vec xpp = xi, xpm = xi, xmp = xi, xmm = xi;
      xpp[i] += hi; xpp[j] += hj;
      xpm[i] += hi; xpm[j] -= hj;
      xmp[i] -= hi; xmp[j] += hj;
      xmm[i] -= hi; xmm[j] -= hj;
      Hm(i, j) = Hm(j, i) = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4 * hi * hj);
    }
  }
  return Hm;
}

DerivativeBundle jacobians(const SystemDef& sys, const Vec& xi, DerivMode mode) {
  if (!sys.in_admissible(xi))
    throw NonAdmissibleState("jacobians: state outside admissible set for " + sys.name);

  const bool want_analytic = mode != DerivMode::FiniteDifference;
  DerivativeBundle b;

  b.DA = (want_analytic && sys.DA) ? sys.DA(xi) : fd_jacobian(sys.A, xi);
  b.DF.resize(sys.d);
  for (int k = 0; k < sys.d; ++k) {
    const bool have = want_analytic && k < static_cast<int>(sys.DF.size()) && sys.DF[k];
    b.DF[k] = have ? sys.DF[k](xi) : fd_jacobian(sys.F[k], xi);
  }
  b.DG = (want_analytic && sys.DG) ? sys.DG(xi) : fd_jacobian(sys.G, xi);
  b.D2H = (want_analytic && sys.D2H) ? sys.D2H(xi) : fd_hessian(sys.H, xi);
  if (want_analytic && sys.D2A) {
    b.D2A = sys.D2A(xi);
  } else {
    b.D2A.resize(sys.m);
    for (int i = 0; i < sys.m; ++i) {
      const int comp = i;
      b.D2A[i] = fd_hessian([&](const Vec& x) { return sys.A(x)[comp]; }, xi);
    }
  }
  if (mode == DerivMode::Analytic && (!sys.DA || sys.DF.empty()))
    throw InvalidParams("jacobians: analytic mode requested but closures missing for " + sys.name);

  b.det_DA = b.DA.partialPivLu().determinant();
  if (std::abs(b.det_DA) < 1e-12)
    throw SingularDA("jacobians: |det DA| < 1e-12 for " + sys.name);
  return b;
}

double derivative_consistency(const SystemDef& sys, const Vec& xi) {
  if (!sys.has_analytic_jacobians())
    throw InvalidParams("derivative_consistency: no analytic closures for " + sys.name);
  double worst = rel_mismatch(sys.DA(xi), fd_jacobian(sys.A, xi));
  for (int k = 0; k < sys.d; ++k)
    if (k < static_cast<int>(sys.DF.size()) && sys.DF[k])
      worst = std::max(worst, rel_mismatch(sys.DF[k](xi), fd_jacobian(sys.F[k], xi)));
  if (sys.DG) worst = std::max(worst, rel_mismatch(sys.DG(xi), fd_jacobian(sys.G, xi)));
  if (sys.D2H) worst = std::max(worst, rel_mismatch(sys.D2H(xi), fd_hessian(sys.H, xi)));
  return worst;
}

Mat symmetrizer(const SystemDef& sys, const Vec& xi, DerivMode mode,
                double* asymmetry_out, double asym_tol) {
  const DerivativeBundle b = jacobians(sys, xi, mode);
  const Vec g = sys.G(xi);
  Mat M = b.D2H;
  for (int i = 0; i < sys.m; ++i) M -= g[i] * b.D2A[i];

  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff() / scale;
  if (asymmetry_out) *asymmetry_out = asym;
  if (asym > asym_tol)
    throw AsymmetricInput("symmetrizer: asymmetry " + format_double(asym) +
                          " exceeds tolerance; derivative closures look wrong for " +
                          sys.name);
  return 0.5 * (M + M.transpose());
}

SpdResult check_spd(const Mat& M) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() / scale > 1e-10)
    throw AsymmetricInput("check_spd: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  SpdResult r;
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.pass = r.min_eigenvalue > 0.0;
  return r;
}

double entropy_flux_compatibility(const SystemDef& sys, const Vec& xi, DerivMode mode) {
  if (!sys.has_Q())
    throw MissingEntropyFlux("entropy_flux_compatibility: no Q stored for " + sys.name);
  const DerivativeBundle b = jacobians(sys, xi, mode);
  const Vec g = sys.G(xi);
  double worst = 0.0;
  for (int k = 0; k < sys.d; ++k) {
    const int kk = k;
    const Mat DQk = fd_jacobian(
        [&](const Vec& x) { return Vec::Constant(1, sys.Q[kk](x)); }, xi);
    const Eigen::RowVectorXd rhs = g.transpose() * b.DF[k];
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    worst = std::max(worst, (DQk.row(0) - rhs).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

std::vector<double> entropy_flux_line_integral(const SystemDef& sys,
                                               const std::vector<Vec>& polyline,
                                               int panels) {
  if (polyline.size() < 2)
    throw InvalidParams("entropy_flux_line_integral: need at least 2 vertices");
  std::vector<double> q(sys.d, 0.0);
  std::vector<std::vector<double>> contrib(sys.d);
  for (std::size_t seg = 0; seg + 1 < polyline.size(); ++seg) {
    const Vec &a = polyline[seg], &bb = polyline[seg + 1];
    const Vec dxi = bb - a;
    for (int p = 0; p < panels; ++p) {
      for (int gn = 0; gn < kGaussN; ++gn) {
        const double s = (p + kGaussX[gn]) / panels;
        const Vec x = a + s * dxi;
        if (!sys.in_admissible(x))
          throw PathLeavesAdmissibleSet(
              "entropy_flux_line_integral: quadrature node left admissible set");
        const DerivativeBundle der = jacobians(sys, x);
        const Vec g = sys.G(x);
        const double w = kGaussW[gn] / panels;
        for (int k = 0; k < sys.d; ++k)
          contrib[k].push_back(w * (g.transpose() * der.DF[k]).dot(dxi));
      }
    }
  }
  for (int k = 0; k < sys.d; ++k) q[k] = pairwise_sum(contrib[k]);
  return q;
}

std::vector<double> entropy_flux_reconstruct(const SystemDef& sys, const Vec& base,
                                             const Vec& target, int panels) {
  return entropy_flux_line_integral(sys, {base, target}, panels);
}

std::vector<Vec> sample_states(const SystemDef& sys, int n, Rng& rng) {
  auto unit = latin_hypercube(n, sys.sample_box.dim(), rng);
  std::vector<Vec> out;
  out.reserve(n);
  for (const auto& u : unit) out.push_back(sys.sample_box.map_unit(u));
  return out;
}

}  // namespace hypercl
