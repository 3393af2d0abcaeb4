#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace hypercl {

// ---------------------------------------------------------------------------
// Deterministic RNG.  splitmix64 state advance + explicit bit mapping to
// doubles, so streams are identical across platforms and standard-library
// versions (std::uniform_real_distribution is implementation-defined).
// ---------------------------------------------------------------------------
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Fisher-Yates shuffle driven by Rng (std::shuffle is implementation-defined).
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// Latin hypercube sample of n points in [0,1)^dim: one stratum per point and
// axis, strata orders decorrelated by per-axis shuffles.
std::vector<std::vector<double>> latin_hypercube(int n, int dim, Rng& rng);

// ---------------------------------------------------------------------------
// Deterministic reductions.  Pairwise summation gives both accuracy and a
// fixed association order, so results do not depend on the worker count.
// ---------------------------------------------------------------------------
double pairwise_sum(std::span<const double> v);

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v.data(), v.size()));
}

// ---------------------------------------------------------------------------
// parallel_for: chunked index loop over [0, n).  Each index writes only its
// own output slots, so the result is independent of the worker count.
// ---------------------------------------------------------------------------
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// Resolve the effective worker count: explicit flag > HYPERCL_WORKERS env >
// hardware concurrency.
int resolve_workers(int requested);

// ---------------------------------------------------------------------------
// Least-squares slope of log(y) against log(x).  Used for all rate fits.
// Points with y <= floor are clamped to the floor to keep logs finite.
// ---------------------------------------------------------------------------
double loglog_slope(std::span<const double> x, std::span<const double> y,
                    double floor = 1e-300);

// linspace with both endpoints included (n >= 2).
std::vector<double> linspace(double lo, double hi, int n);

// Format a double with 17 significant digits, '.' decimal separator,
// locale-independent.  Shared by every CSV/JSON emitter.
std::string format_double(double v);

}  // namespace hypercl
