#pragma once

// Shapes, supports and sparse exact tensors in A (x) B (x) C, together with the
// structural operations used throughout: conciseness, direct sum, Kronecker
// product and reordering of the three index ranges.
//
// Indices are 0-based. Kronecker products flatten the pair (i1, i2) on each
// axis to i1 * n2 + i2 (row-major).

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tensorclass {

using Triple = std::array<int, 3>;

inline std::string to_string(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

/// Componentwise t <= u.
inline bool dominated(const Triple& t, const Triple& u) {
  return t[0] <= u[0] && t[1] <= u[1] && t[2] <= u[2];
}

class Shape {
 public:
  Shape() = default;
  Shape(int a, int b, int c) : dims_{a, b, c} {
    if (a < 1 || b < 1 || c < 1)
      throw ShapeError("shape dimensions must be >= 1, got (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")");
  }
  static Shape cube(int m) { return {m, m, m}; }

  int a() const { return dims_[0]; }
  int b() const { return dims_[1]; }
  int c() const { return dims_[2]; }
  int operator[](int axis) const { return dims_[static_cast<std::size_t>(axis)]; }
  const std::array<int, 3>& dims() const { return dims_; }

  long volume() const { return long(dims_[0]) * dims_[1] * dims_[2]; }
  int total() const { return dims_[0] + dims_[1] + dims_[2]; }
  bool is_cube() const { return dims_[0] == dims_[1] && dims_[1] == dims_[2]; }

  bool contains(const Triple& t) const {
    for (int x = 0; x < 3; ++x)
      if (t[x] < 0 || t[x] >= dims_[x]) return false;
    return true;
  }

  /// Row-major linear index of a triple.
  long linear(const Triple& t) const { return (long(t[0]) * dims_[1] + t[1]) * dims_[2] + t[2]; }

  friend bool operator==(const Shape&, const Shape&) = default;

  std::string str() const {
    return "(" + std::to_string(a()) + "," + std::to_string(b()) + "," + std::to_string(c()) + ")";
  }

 private:
  std::array<int, 3> dims_{1, 1, 1};
};

/// A set of index triples inside a shape, stored sorted and duplicate free.
class Support {
 public:
  Support() = default;
  Support(Shape shape, std::vector<Triple> triples) : shape_(shape), triples_(std::move(triples)) {
    for (const auto& t : triples_)
      if (!shape_.contains(t))
        throw ShapeError("triple " + to_string(t) + " outside shape " + shape_.str());
    std::sort(triples_.begin(), triples_.end());
    triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  }

  const Shape& shape() const { return shape_; }
  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }
  const Triple& operator[](std::size_t n) const { return triples_[n]; }

  bool contains(const Triple& t) const { return std::binary_search(triples_.begin(), triples_.end(), t); }

  friend bool operator==(const Support&, const Support&) = default;

 private:
  Shape shape_;
  std::vector<Triple> triples_;
};

/// Sparse tensor with exact rational coefficients. No zero is ever stored.
class Tensor {
 public:
  using Entries = std::map<Triple, Rational>;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(shape) {}

  /// Every triple of `support` with coefficient 1.
  static Tensor indicator(const Support& support) {
    Tensor t(support.shape());
    for (const auto& idx : support) t.set(idx, 1);
    return t;
  }

  const Shape& shape() const { return shape_; }
  const Entries& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  Rational at(const Triple& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  void set(const Triple& idx, const Rational& value) {
    check(idx);
    if (value == 0)
      entries_.erase(idx);
    else
      entries_[idx] = value;
  }

  void add(const Triple& idx, const Rational& value) {
    check(idx);
    if (value == 0) return;
    auto [it, inserted] = entries_.try_emplace(idx, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) entries_.erase(it);
    }
  }

  Support support() const {
    std::vector<Triple> ts;
    ts.reserve(entries_.size());
    for (const auto& [idx, _] : entries_) ts.push_back(idx);
    return Support(shape_, std::move(ts));
  }

  Tensor scaled(const Rational& factor) const {
    if (factor == 0) return Tensor(shape_);
    Tensor out(shape_);
    for (const auto& [idx, v] : entries_) out.entries_.emplace(idx, v * factor);
    return out;
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  void check(const Triple& idx) const {
    if (!shape_.contains(idx)) throw ShapeError("index " + to_string(idx) + " outside shape " + shape_.str());
  }

  Shape shape_;
  Entries entries_;
};

/// One bijection per axis; perm[x][old] = new.
class AxisPermutations {
 public:
  AxisPermutations() = default;
  explicit AxisPermutations(std::array<std::vector<int>, 3> perms) : perms_(std::move(perms)) {
    for (int x = 0; x < 3; ++x) {
      std::vector<int> sorted = perms_[x];
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t n = 0; n < sorted.size(); ++n)
        if (sorted[n] != static_cast<int>(n))
          throw ShapeError("axis " + std::to_string(x) + " map is not a bijection");
    }
  }

  static AxisPermutations identity(const Shape& shape) {
    std::array<std::vector<int>, 3> p;
    for (int x = 0; x < 3; ++x) {
      p[x].resize(static_cast<std::size_t>(shape[x]));
      std::iota(p[x].begin(), p[x].end(), 0);
    }
    return AxisPermutations(std::move(p));
  }

  const std::vector<int>& axis(int x) const { return perms_[static_cast<std::size_t>(x)]; }
  int size(int x) const { return static_cast<int>(axis(x).size()); }

  Triple operator()(const Triple& t) const {
    return {perms_[0][static_cast<std::size_t>(t[0])], perms_[1][static_cast<std::size_t>(t[1])],
            perms_[2][static_cast<std::size_t>(t[2])]};
  }

  /// (this o other): apply `other` first.
  AxisPermutations compose(const AxisPermutations& other) const {
    std::array<std::vector<int>, 3> p;
    for (int x = 0; x < 3; ++x) {
      if (size(x) != other.size(x)) throw ShapeError("cannot compose permutations of different sizes");
      p[x].resize(perms_[x].size());
      for (std::size_t n = 0; n < p[x].size(); ++n)
        p[x][n] = perms_[x][static_cast<std::size_t>(other.perms_[x][n])];
    }
    return AxisPermutations(std::move(p));
  }

  AxisPermutations inverse() const {
    std::array<std::vector<int>, 3> p;
    for (int x = 0; x < 3; ++x) {
      p[x].resize(perms_[x].size());
      for (std::size_t n = 0; n < p[x].size(); ++n) p[x][static_cast<std::size_t>(perms_[x][n])] = static_cast<int>(n);
    }
    return AxisPermutations(std::move(p));
  }

  friend bool operator==(const AxisPermutations&, const AxisPermutations&) = default;

 private:
  std::array<std::vector<int>, 3> perms_;
};

inline bool is_concise_support(const Support& s) {
  for (int x = 0; x < 3; ++x) {
    std::vector<bool> hit(static_cast<std::size_t>(s.shape()[x]), false);
    for (const auto& t : s) hit[static_cast<std::size_t>(t[x])] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

/// First axis whose projection misses an index, or -1 when concise.
inline int first_nonconcise_axis(const Support& s) {
  for (int x = 0; x < 3; ++x) {
    std::vector<bool> hit(static_cast<std::size_t>(s.shape()[x]), false);
    for (const auto& t : s) hit[static_cast<std::size_t>(t[x])] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return x;
  }
  return -1;
}

inline Shape direct_sum_shape(const Shape& s1, const Shape& s2) {
  return {s1.a() + s2.a(), s1.b() + s2.b(), s1.c() + s2.c()};
}

inline Tensor direct_sum(const Tensor& t1, const Tensor& t2) {
  const Shape& s1 = t1.shape();
  Tensor out(direct_sum_shape(s1, t2.shape()));
  for (const auto& [idx, v] : t1.entries()) out.set(idx, v);
  for (const auto& [idx, v] : t2.entries()) out.set({idx[0] + s1.a(), idx[1] + s1.b(), idx[2] + s1.c()}, v);
  return out;
}

inline Support direct_sum(const Support& s1, const Support& s2) {
  return direct_sum(Tensor::indicator(s1), Tensor::indicator(s2)).support();
}

inline Triple kronecker_index(const Triple& t1, const Triple& t2, const Shape& shape2) {
  return {t1[0] * shape2.a() + t2[0], t1[1] * shape2.b() + t2[1], t1[2] * shape2.c() + t2[2]};
}

inline Tensor kronecker(const Tensor& t1, const Tensor& t2) {
  const Shape& s1 = t1.shape();
  const Shape& s2 = t2.shape();
  Tensor out(Shape(s1.a() * s2.a(), s1.b() * s2.b(), s1.c() * s2.c()));
  for (const auto& [i1, v1] : t1.entries())
    for (const auto& [i2, v2] : t2.entries()) out.set(kronecker_index(i1, i2, s2), v1 * v2);
  return out;
}

inline Support kronecker(const Support& s1, const Support& s2) {
  return kronecker(Tensor::indicator(s1), Tensor::indicator(s2)).support();
}

inline Support apply_permutations(const Support& s, const AxisPermutations& p) {
  for (int x = 0; x < 3; ++x)
    if (p.size(x) != s.shape()[x])
      throw ShapeError("permutation on axis " + std::to_string(x) + " has size " + std::to_string(p.size(x)) +
                       " but the shape is " + s.shape().str());
  std::vector<Triple> out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back(p(t));
  return Support(s.shape(), std::move(out));
}

inline Tensor apply_permutations(const Tensor& t, const AxisPermutations& p) {
  for (int x = 0; x < 3; ++x)
    if (p.size(x) != t.shape()[x]) throw ShapeError("permutation does not match shape " + t.shape().str());
  Tensor out(t.shape());
  for (const auto& [idx, v] : t.entries()) out.set(p(idx), v);
  return out;
}

/// Permutes the three factors: out[perm[x]] = in[x].
inline Triple permute_factors(const Triple& t, const std::array<int, 3>& perm) {
  Triple out{};
  for (int x = 0; x < 3; ++x) out[static_cast<std::size_t>(perm[x])] = t[x];
  return out;
}

inline Support permute_factors(const Support& s, const std::array<int, 3>& perm) {
  std::array<int, 3> d{};
  for (int x = 0; x < 3; ++x) d[static_cast<std::size_t>(perm[x])] = s.shape()[x];
  std::vector<Triple> out;
  for (const auto& t : s) out.push_back(permute_factors(t, perm));
  return Support(Shape(d[0], d[1], d[2]), std::move(out));
}

}  // namespace tensorclass
