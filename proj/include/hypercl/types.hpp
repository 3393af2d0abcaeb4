#pragma once

#include <Eigen/Dense>

#include "hypercl/errors.hpp"

namespace hypercl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Axis-aligned box in state space; doubles as the sampling domain for audits.
struct Box {
  Vec lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Vec& x, double slack = 0.0) const {
    if (x.size() != lo.size()) return false;
    for (int i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
    return true;
  }

  // Map a point of [0,1)^dim into the box.
  Vec map_unit(const std::vector<double>& u) const {
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u[i];
    return x;
  }

  Vec center() const { return 0.5 * (lo + hi); }
  Vec widths() const { return hi - lo; }
};

}  // namespace hypercl
