#pragma once

#include <functional>
#include <vector>

#include "hypercl/types.hpp"

namespace hypercl {

// ---------------------------------------------------------------------------
// Field: m state components sampled at cell centers of a uniform periodic
// grid over an axis-aligned box.  Storage is row-major over cells with the
// component index fastest.
// ---------------------------------------------------------------------------
struct Field {
  std::vector<int> n;        // cells per axis; size() = spatial dimension
  int m = 1;                 // components per cell
  std::vector<double> lo, hi;  // domain box per axis
  std::vector<double> data;  // ncells * m values

  Field() = default;
  Field(std::vector<int> n_, int m_, std::vector<double> lo_, std::vector<double> hi_);

  // Unit-box convenience constructor ([0,1]^d).
  static Field unit(std::vector<int> n_, int m_ = 1);

  int dim() const { return static_cast<int>(n.size()); }
  long ncells() const;
  double dx(int axis) const { return (hi[axis] - lo[axis]) / n[axis]; }
  double cell_measure() const;
  double length(int axis) const { return hi[axis] - lo[axis]; }

  // Flat cell index from per-axis indices (row-major, axis 0 slowest).
  long flat(const std::vector<int>& idx) const;
  std::vector<int> unflat(long cell) const;

  // Cell-center coordinate along one axis.
  double center(int axis, int i) const { return lo[axis] + (i + 0.5) * dx(axis); }
  std::vector<double> center(long cell) const;

  double& at(long cell, int comp) { return data[cell * m + comp]; }
  double at(long cell, int comp) const { return data[cell * m + comp]; }

  Vec state(long cell) const;
  void set_state(long cell, const Vec& s);

  // Flat index of the cell shifted by `steps` cells along `axis` (periodic).
  long shifted(long cell, int axis, long steps) const;

  // Single-component view as a dense vector (in cell order).
  std::vector<double> component(int comp) const;

  bool same_layout(const Field& o) const;

  // Build by sampling a state-valued function of the cell center.
  static Field sample(std::vector<int> n, int m, std::vector<double> lo,
                      std::vector<double> hi,
                      const std::function<Vec(const std::vector<double>&)>& f);

  // 1-D scalar convenience sampler.
  static Field sample1d(int n, double lo, double hi,
                        const std::function<double(double)>& f);
};

// Time-indexed sequence of snapshots sharing one spatial layout.
struct SpaceTimeField {
  std::vector<double> times;
  std::vector<Field> snaps;

  int size() const { return static_cast<int>(times.size()); }
  const Field& at(int i) const { return snaps[i]; }
  void push(double t, Field f);
  void check_consistent() const;  // throws GridMismatch
};

// Flatten a space-time field into a (d+1)-axis Field whose leading axis is
// time.  The time axis is made periodic by reflection padding: snapshots are
// followed by their reverse, so seminorm translations wrap smoothly.
Field spacetime_to_field(const SpaceTimeField& stf);

}  // namespace hypercl
