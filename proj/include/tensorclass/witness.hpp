#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "core.hpp"

namespace tensorclass {

/// Integer weights on the three index ranges certifying tightness of a support:
/// injective on each axis and summing to zero on every triple of the support.
struct TightWitness {
  std::array<std::vector<std::int64_t>, 3> tau;

  const std::vector<std::int64_t>& axis(int x) const { return tau[static_cast<std::size_t>(x)]; }

  std::int64_t weight(const Triple& t) const {
    return tau[0][static_cast<std::size_t>(t[0])] + tau[1][static_cast<std::size_t>(t[1])] +
           tau[2][static_cast<std::size_t>(t[2])];
  }

  bool is_injective() const {
    for (const auto& v : tau) {
      std::vector<std::int64_t> s = v;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    }
    return true;
  }

  bool fits(const Shape& shape) const {
    for (int x = 0; x < 3; ++x)
      if (static_cast<int>(tau[static_cast<std::size_t>(x)].size()) != shape[x]) return false;
    return true;
  }

  /// Injective, sized to the shape, and zero on every triple of `s`.
  bool certifies(const Support& s) const {
    if (!fits(s.shape()) || !is_injective()) return false;
    return std::all_of(s.begin(), s.end(), [&](const Triple& t) { return weight(t) == 0; });
  }

  /// Per axis, the permutation placing indices in increasing order of tau.
  AxisPermutations sorting_permutations() const {
    std::array<std::vector<int>, 3> p;
    for (int x = 0; x < 3; ++x) {
      const auto& v = tau[static_cast<std::size_t>(x)];
      std::vector<int> order(v.size());
      for (std::size_t n = 0; n < order.size(); ++n) order[n] = static_cast<int>(n);
      std::sort(order.begin(), order.end(), [&](int l, int r) { return v[static_cast<std::size_t>(l)] < v[static_cast<std::size_t>(r)]; });
      p[x].resize(v.size());
      for (std::size_t rank = 0; rank < order.size(); ++rank) p[x][static_cast<std::size_t>(order[rank])] = static_cast<int>(rank);
    }
    return AxisPermutations(std::move(p));
  }

  /// The largest support this witness certifies: all zero-weight triples.
  Support zero_set() const {
    Shape shape(static_cast<int>(tau[0].size()), static_cast<int>(tau[1].size()), static_cast<int>(tau[2].size()));
    std::vector<Triple> ts;
    for (int i = 0; i < shape.a(); ++i)
      for (int j = 0; j < shape.b(); ++j)
        for (int k = 0; k < shape.c(); ++k)
          if (weight({i, j, k}) == 0) ts.push_back({i, j, k});
    return Support(shape, std::move(ts));
  }

  friend bool operator==(const TightWitness&, const TightWitness&) = default;
};

}  // namespace tensorclass
