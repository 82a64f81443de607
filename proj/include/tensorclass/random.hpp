#pragma once

#include <cstdint>
#include <random>

#include "core.hpp"

namespace tensorclass {

// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so ranges are mapped by hand to keep runs identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Tensor on `support` with nonzero integer coefficients in [-100, 100].
inline Tensor generic_tensor(const Support& support, std::uint64_t seed) {
  SeededRng rng(seed);
  Tensor t(support.shape());
  for (const auto& idx : support) {
    std::int64_t v = 0;
    while (v == 0) v = rng.uniform(-100, 100);
    t.set(idx, Rational(static_cast<long>(v)));
  }
  return t;
}

/// Each cell of `shape` kept independently with probability `density`.
inline Support random_support(const Shape& shape, double density, SeededRng& rng) {
  std::vector<Triple> ts;
  for (int i = 0; i < shape.a(); ++i)
    for (int j = 0; j < shape.b(); ++j)
      for (int k = 0; k < shape.c(); ++k)
        if (rng.coin(density)) ts.push_back({i, j, k});
  return Support(shape, std::move(ts));
}

}  // namespace tensorclass
