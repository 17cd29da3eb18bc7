#pragma once

// Seeded randomness with a fixed, versioned derivation. The standard
// distributions are implementation-defined, so only the raw engine output is
// used and everything else is done here.

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace lbg {

class Rng {
 public:
  static constexpr const char* kGenerator = "mt19937_64-rejection/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // k distinct values from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::int64_t> sample(std::int64_t n, std::int64_t k) {
    std::vector<std::int64_t> pool(n);
    for (std::int64_t i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (std::int64_t i = 0; i < k; ++i) std::swap(pool[i], pool[between(i, n - 1)]);
    pool.resize(k);
    return pool;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lbg
