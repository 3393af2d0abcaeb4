#include "hypercl/field.hpp"

#include <cmath>

namespace hypercl {

Field::Field(std::vector<int> n_, int m_, std::vector<double> lo_, std::vector<double> hi_)
    : n(std::move(n_)), m(m_), lo(std::move(lo_)), hi(std::move(hi_)) {
  if (n.empty() || lo.size() != n.size() || hi.size() != n.size() || m < 1)
    throw GridMismatch("Field: inconsistent axis/box sizes");
  for (std::size_t a = 0; a < n.size(); ++a)
    if (n[a] < 1 || hi[a] <= lo[a]) throw GridMismatch("Field: bad axis extent");
  data.assign(static_cast<std::size_t>(ncells()) * m, 0.0);
}

Field Field::unit(std::vector<int> n_, int m_) {
  std::vector<double> lo(n_.size(), 0.0), hi(n_.size(), 1.0);
  return Field(std::move(n_), m_, std::move(lo), std::move(hi));
}

long Field::ncells() const {
  long c = 1;
  for (int ni : n) c *= ni;
  return c;
}

double Field::cell_measure() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= dx(a);
  return v;
}

long Field::flat(const std::vector<int>& idx) const {
  long c = 0;
  for (int a = 0; a < dim(); ++a) c = c * n[a] + idx[a];
  return c;
}

std::vector<int> Field::unflat(long cell) const {
  std::vector<int> idx(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(cell % n[a]);
    cell /= n[a];
  }
  return idx;
}

std::vector<double> Field::center(long cell) const {
  auto idx = unflat(cell);
  std::vector<double> x(dim());
  for (int a = 0; a < dim(); ++a) x[a] = center(a, idx[a]);
  return x;
}

Vec Field::state(long cell) const {
  Vec s(m);
  for (int c = 0; c < m; ++c) s[c] = at(cell, c);
  return s;
}

void Field::set_state(long cell, const Vec& s) {
  for (int c = 0; c < m; ++c) at(cell, c) = s[c];
}

long Field::shifted(long cell, int axis, long steps) const {
  auto idx = unflat(cell);
  long i = (idx[axis] + steps) % n[axis];
  if (i < 0) i += n[axis];
  idx[axis] = static_cast<int>(i);
  return flat(idx);
}

std::vector<double> Field::component(int comp) const {
  std::vector<double> out(ncells());
  for (long c = 0; c < ncells(); ++c) out[c] = at(c, comp);
  return out;
}

bool Field::same_layout(const Field& o) const {
  return n == o.n && m == o.m && lo == o.lo && hi == o.hi;
}

Field Field::sample(std::vector<int> n, int m, std::vector<double> lo,
                    std::vector<double> hi,
                    const std::function<Vec(const std::vector<double>&)>& f) {
  Field out(std::move(n), m, std::move(lo), std::move(hi));
  for (long c = 0; c < out.ncells(); ++c) out.set_state(c, f(out.center(c)));
  return out;
}

Field Field::sample1d(int n, double lo, double hi,
                      const std::function<double(double)>& f) {
  Field out({n}, 1, {lo}, {hi});
  for (long c = 0; c < n; ++c) out.at(c, 0) = f(out.center(0, static_cast<int>(c)));
  return out;
}

void SpaceTimeField::push(double t, Field f) {
  if (!snaps.empty() && !snaps.front().same_layout(f))
    throw GridMismatch("SpaceTimeField: snapshot layout differs");
  if (!times.empty() && t <= times.back())
    throw GridMismatch("SpaceTimeField: times must increase");
  times.push_back(t);
  snaps.push_back(std::move(f));
}

void SpaceTimeField::check_consistent() const {
  if (times.size() != snaps.size())
    throw GridMismatch("SpaceTimeField: times/snapshots length mismatch");
  for (const auto& f : snaps)
    if (!f.same_layout(snaps.front()))
      throw GridMismatch("SpaceTimeField: snapshot layout differs");
}

Field spacetime_to_field(const SpaceTimeField& stf) {
  stf.check_consistent();
  const int nt = stf.size();
  if (nt < 2) throw GridMismatch("spacetime_to_field: need at least 2 snapshots");
  const Field& s0 = stf.snaps.front();
  const double dt = stf.times[1] - stf.times[0];
  for (int i = 1; i + 1 < nt; ++i)
    if (std::abs((stf.times[i + 1] - stf.times[i]) - dt) > 1e-9 * std::max(1.0, dt))
      throw GridMismatch("spacetime_to_field: snapshots must be uniformly spaced");

  // Reflected time axis: t_0..t_{nt-1}, t_{nt-1}..t_0 -> periodic length 2*nt.
  std::vector<int> n{2 * nt};
  n.insert(n.end(), s0.n.begin(), s0.n.end());
  std::vector<double> lo{stf.times.front() - 0.5 * dt};
  lo.insert(lo.end(), s0.lo.begin(), s0.lo.end());
  std::vector<double> hi{stf.times.front() + (2 * nt - 0.5) * dt};
  hi.insert(hi.end(), s0.hi.begin(), s0.hi.end());
  Field out(std::move(n), s0.m, std::move(lo), std::move(hi));

  const long cells_per_snap = s0.ncells();
  for (int i = 0; i < 2 * nt; ++i) {
    const int src = i < nt ? i : 2 * nt - 1 - i;
    const Field& f = stf.snaps[src];
    for (long c = 0; c < cells_per_snap; ++c)
      for (int k = 0; k < s0.m; ++k)
        out.at(static_cast<long>(i) * cells_per_snap + c, k) = f.at(c, k);
  }
  return out;
}

}  // namespace hypercl
