#pragma once

// Coordinate compressibility of supports.
//
// A box I x J x K with (I x J x K) n S = {} restricts every tensor with
// support S to zero on the coordinate subspaces spanned by the dual basis
// vectors in I, J, K. Complements of a zero box are a slice cover and vice
// versa, so min cover + max (|I|+|J|+|K|) = a + b + c.
//
// Only coordinate subspaces are searched; values are lower bounds for the
// compressibility of any particular tensor.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"
#include "witness.hpp"

namespace tensorclass {

struct ZeroBox {
  std::array<std::vector<int>, 3> sets;  // I, J, K, each ascending

  const std::vector<int>& axis(int x) const { return sets[static_cast<std::size_t>(x)]; }
  std::array<int, 3> dims() const {
    return {static_cast<int>(sets[0].size()), static_cast<int>(sets[1].size()), static_cast<int>(sets[2].size())};
  }
  int total() const { return dims()[0] + dims()[1] + dims()[2]; }

  friend bool operator==(const ZeroBox&, const ZeroBox&) = default;
};

inline bool is_zero_box(const Support& s, const ZeroBox& box) {
  for (int x = 0; x < 3; ++x)
    for (int v : box.axis(x))
      if (v < 0 || v >= s.shape()[x]) return false;
  auto in = [&](int x, int v) {
    const auto& set = box.axis(x);
    return std::binary_search(set.begin(), set.end(), v);
  };
  for (const auto& t : s)
    if (in(0, t[0]) && in(1, t[1]) && in(2, t[2])) return false;
  return true;
}

namespace detail {

inline std::vector<int> first_n(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

inline std::vector<int> mask_indices(std::uint64_t mask, int limit) {
  std::vector<int> out;
  while (mask && static_cast<int>(out.size()) < limit) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

class BoxSearch {
 public:
  BoxSearch(const Support& s, std::array<int, 3> target) : shape_(s.shape()), target_(target) {
    const auto a = static_cast<std::size_t>(shape_.a()), b = static_cast<std::size_t>(shape_.b());
    occupied_.assign(a, std::vector<std::uint64_t>(b, 0));
    for (const auto& t : s)
      occupied_[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] |= std::uint64_t{1} << t[2];
    full_ = shape_.c() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << shape_.c()) - 1;
  }

  std::optional<ZeroBox> run() {
    std::vector<std::uint64_t> allowed(static_cast<std::size_t>(shape_.b()), full_);
    if (choose_i(0, allowed)) return box_;
    return std::nullopt;
  }

 private:
  bool feasible(const std::vector<std::uint64_t>& allowed) const {
    int rows = 0;
    for (auto m : allowed)
      if (std::popcount(m) >= target_[2]) ++rows;
    return rows >= target_[1];
  }

  bool choose_i(int from, std::vector<std::uint64_t>& allowed) {
    if (!feasible(allowed)) return false;
    if (static_cast<int>(i_.size()) == target_[0]) return choose_j(0, full_);
    for (int i = from; i <= shape_.a() - (target_[0] - static_cast<int>(i_.size())); ++i) {
      auto next = allowed;
      for (std::size_t j = 0; j < next.size(); ++j) next[j] &= ~occupied_[static_cast<std::size_t>(i)][j];
      i_.push_back(i);
      if (choose_i(i + 1, next)) return true;
      i_.pop_back();
    }
    return false;
  }

  bool choose_j(int from, std::uint64_t common) {
    if (std::popcount(common) < target_[2]) return false;
    if (static_cast<int>(j_.size()) == target_[1]) {
      box_.sets = {i_, j_, mask_indices(common, target_[2])};
      return true;
    }
    std::vector<std::uint64_t> allowed(static_cast<std::size_t>(shape_.b()), full_);
    for (int i : i_)
      for (std::size_t j = 0; j < allowed.size(); ++j) allowed[j] &= ~occupied_[static_cast<std::size_t>(i)][j];
    for (int j = from; j <= shape_.b() - (target_[1] - static_cast<int>(j_.size())); ++j) {
      j_.push_back(j);
      if (choose_j(j + 1, common & allowed[static_cast<std::size_t>(j)])) return true;
      j_.pop_back();
    }
    return false;
  }

  Shape shape_;
  std::array<int, 3> target_;
  std::vector<std::vector<std::uint64_t>> occupied_;  // [i][j] -> mask over k
  std::uint64_t full_ = 0;
  std::vector<int> i_, j_;
  ZeroBox box_;
};

}  // namespace detail

/// Lexicographically first zero box with the given dimensions, or nullopt if
/// none exists. Exact.
inline std::optional<ZeroBox> find_zero_box(const Support& s, int a1, int b1, int c1) {
  const Shape& sh = s.shape();
  const std::array<int, 3> target{a1, b1, c1};
  for (int x = 0; x < 3; ++x)
    if (target[x] < 0 || target[x] > sh[x])
      throw DomainError("box dimensions " + to_string(Triple{a1, b1, c1}) + " do not fit shape " + sh.str());
  if (sh.c() > 64) throw DomainError("zero box search limited to 64 indices on the third axis");
  if (a1 == 0 || b1 == 0 || c1 == 0) {
    ZeroBox box;
    for (int x = 0; x < 3; ++x) box.sets[static_cast<std::size_t>(x)] = detail::first_n(target[x]);
    return box;
  }
  return detail::BoxSearch(s, target).run();
}

/// Largest rho such that a zero box exists for every (a', b', c') fitting the
/// shape with a' + b' + c' = rho.
inline int multicompressibility(const Support& s) {
  const Shape& sh = s.shape();
  int best = 0;
  for (int rho = 1; rho <= sh.total(); ++rho) {
    for (int a1 = 0; a1 <= sh.a(); ++a1)
      for (int b1 = 0; b1 <= sh.b(); ++b1) {
        const int c1 = rho - a1 - b1;
        if (c1 < 0 || c1 > sh.c()) continue;
        if (!find_zero_box(s, a1, b1, c1)) return best;
      }
    best = rho;
  }
  return best;
}

/// Largest a' + b' + c' over all zero boxes.
inline int total_compressibility(const Support& s) {
  const Shape& sh = s.shape();
  int best = 0;
  for (int a1 = 0; a1 <= sh.a(); ++a1)
    for (int b1 = 0; b1 <= sh.b(); ++b1)
      for (int c1 = sh.c(); c1 >= 0; --c1) {
        if (a1 + b1 + c1 <= best) break;
        if (find_zero_box(s, a1, b1, c1)) {
          best = a1 + b1 + c1;
          break;
        }
      }
  return best;
}

struct Slice {
  int axis = 0;
  int index = 0;
  friend auto operator<=>(const Slice&, const Slice&) = default;
};

struct SliceCover {
  std::vector<Slice> slices;  // sorted
  std::size_t size() const { return slices.size(); }

  bool covers(const Support& s) const {
    for (const auto& t : s) {
      bool hit = false;
      for (const auto& sl : slices) hit |= t[sl.axis] == sl.index;
      if (!hit) return false;
    }
    return true;
  }
};

namespace detail {

inline void cover_search(const Support& s, std::vector<Slice>& current, std::vector<Slice>& best) {
  const Triple* uncovered = nullptr;
  for (const auto& t : s) {
    bool hit = false;
    for (const auto& sl : current) hit |= t[sl.axis] == sl.index;
    if (!hit) {
      uncovered = &t;
      break;
    }
  }
  if (!uncovered) {
    if (current.size() < best.size()) best = current;
    return;
  }
  if (current.size() + 1 >= best.size()) return;
  for (int x = 0; x < 3; ++x) {
    current.push_back({x, (*uncovered)[x]});
    cover_search(s, current, best);
    current.pop_back();
  }
}

}  // namespace detail

/// Minimum number of axis slices containing every triple of S. Exact.
inline SliceCover slice_cover(const Support& s) {
  // Start from the first-axis projection, always a cover.
  std::vector<Slice> best;
  for (const auto& t : s)
    if (best.empty() || best.back().index != t[0]) best.push_back({0, t[0]});
  std::vector<Slice> current;
  detail::cover_search(s, current, best);
  std::sort(best.begin(), best.end());
  return SliceCover{best};
}

/// Zero box of dimensions floor(m/2) on `small_axis` and ceil(m/2) on the other
/// two axes, read off from a tightness witness on [m]^3.
///
/// After sorting each axis by tau, shift the weights to
///   t_A = 3 (tau_A - tau_A[h-1]) - 1,  t_B = 3 (tau_B - tau_B[H-1]) - 1,
///   t_C = 3 (tau_C + tau_A[h-1] + tau_B[H-1]) + 2,
/// (h = floor(m/2), H = ceil(m/2)), so all values are 2 mod 3 and sums are
/// still zero exactly on the certified triples. If t_C[H-1] > 0 the upper box
/// has all sums >= 3; otherwise the lower box has all sums <= -3.
inline ZeroBox tight_compression_box(const TightWitness& w, int small_axis) {
  const int m = static_cast<int>(w.tau[0].size());
  if (m < 1 || !w.fits(Shape::cube(m))) throw ShapeError("tight_compression_box needs a witness on a cube");
  if (!w.is_injective()) throw InvariantError("witness is not injective");
  if (small_axis < 0 || small_axis > 2) throw DomainError("axis must be 0, 1 or 2");
  const int h = m / 2, big = (m + 1) / 2;
  const std::array<int, 3> role{small_axis, (small_axis + 1) % 3, (small_axis + 2) % 3};

  std::array<std::vector<int>, 3> order;  // order[r][pos] = index of rank pos
  std::array<std::vector<std::int64_t>, 3> t;
  for (int r = 0; r < 3; ++r) {
    const auto& v = w.axis(role[r]);
    order[r] = detail::first_n(m);
    std::sort(order[r].begin(), order[r].end(),
              [&](int l, int rr) { return v[static_cast<std::size_t>(l)] < v[static_cast<std::size_t>(rr)]; });
    for (int pos = 0; pos < m; ++pos) t[r].push_back(v[static_cast<std::size_t>(order[r][static_cast<std::size_t>(pos)])]);
  }

  ZeroBox box;
  auto take = [&](int r, int from, int count) {
    auto& out = box.sets[static_cast<std::size_t>(role[r])];
    for (int pos = from; pos < from + count; ++pos) out.push_back(order[r][static_cast<std::size_t>(pos)]);
    std::sort(out.begin(), out.end());
  };
  if (h == 0) {  // m = 1: the small axis is empty
    take(1, 0, 1);
    take(2, 0, 1);
    return box;
  }
  const std::int64_t shift_a = t[0][static_cast<std::size_t>(h - 1)];
  const std::int64_t shift_b = t[1][static_cast<std::size_t>(big - 1)];
  const std::int64_t c_mid = 3 * (t[2][static_cast<std::size_t>(big - 1)] + shift_a + shift_b) + 2;
  if (c_mid > 0) {
    // positions h.. on A (H of them), H-1.. on B and C (h+1 >= H of them)
    take(0, h, h);
    take(1, big - 1, big);
    take(2, big - 1, big);
  } else {
    take(0, 0, h);
    take(1, 0, big);
    take(2, 0, big);
  }
  for (int i : box.axis(0))
    for (int j : box.axis(1))
      for (int k : box.axis(2))
        if (w.weight({i, j, k}) == 0) throw InvariantError("constructed box meets a zero-weight triple");
  return box;
}

/// Rank of the contraction sum_i alpha_i T(i, ., .) along `axis`; the tensor is
/// then (1, b', c')-compressible through alpha whenever b' + c' <= n_y + n_z - rank.
inline int contraction_rank(const Tensor& t, int axis, const std::vector<Rational>& alpha) {
  const Shape& sh = t.shape();
  if (axis < 0 || axis > 2) throw DomainError("axis must be 0, 1 or 2");
  if (static_cast<int>(alpha.size()) != sh[axis]) throw ShapeError("contraction vector has the wrong length");
  const int y = (axis + 1) % 3, z = (axis + 2) % 3;
  std::vector<std::map<int, Rational>> rows(static_cast<std::size_t>(sh[y]));
  for (const auto& [idx, v] : t.entries()) {
    const auto& a = alpha[static_cast<std::size_t>(idx[axis])];
    if (a != 0) rows[static_cast<std::size_t>(idx[y])][idx[z]] += a * v;
  }
  LinearSystem sys;
  sys.cols = sh[z];
  for (auto& r : rows) {
    SparseRow row;
    for (auto& [c, v] : r)
      if (v != 0) row.terms.emplace_back(c, v);
    sys.rows.push_back(std::move(row));
  }
  return nullspace_rational(sys).rank;
}

inline int one_slice_compression(const Tensor& t, int axis, const std::vector<Rational>& alpha) {
  const Shape& sh = t.shape();
  return sh[(axis + 1) % 3] + sh[(axis + 2) % 3] - contraction_rank(t, axis, alpha);
}

}  // namespace tensorclass
