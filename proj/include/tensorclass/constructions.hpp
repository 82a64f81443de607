#pragma once

// Catalog of the explicit tensors and supports the library is built around.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "witness.hpp"

namespace tensorclass {

/// Central tight support of [m]^3 with its weights.
///   m = 2l+1: tau_A = tau_B = tau_C = i - l, i.e. {i + j + k = 3l}
///   m = 2l:   tau_A = i - l + 1, tau_B = tau_C = j - l, i.e. {i + j + k = 3l - 1}
/// Cardinality ceil(3 m^2 / 4).
inline std::pair<Support, TightWitness> tight_max_support(int m) {
  if (m < 1) throw DomainError("tight_max_support needs m >= 1");
  const int l = m / 2;
  TightWitness w;
  for (int x = 0; x < 3; ++x) w.tau[static_cast<std::size_t>(x)].resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto n = static_cast<std::size_t>(i);
    if (m % 2 == 1) {
      w.tau[0][n] = w.tau[1][n] = w.tau[2][n] = i - l;
    } else {
      w.tau[0][n] = i - l + 1;
      w.tau[1][n] = w.tau[2][n] = i - l;
    }
  }
  return {w.zero_set(), w};
}

/// Circulant free support {i + j + k = floor(m/2) mod m}, m^2 triples.
/// For odd m = 2l+1 the central tight support {i + j + k = 3l} sits in the
/// residue class l - 1, so it lies in this support after k -> k + 1 mod m.
inline Support free_max_support(int m) {
  if (m < 1) throw DomainError("free_max_support needs m >= 1");
  std::vector<Triple> ts;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) ts.push_back({i, j, ((m / 2 - i - j) % m + 2 * m) % m});
  return Support(Shape::cube(m), std::move(ts));
}

/// Matrix multiplication sum_{i,j,k} a_(i,j) (x) b_(j,k) (x) c_(k,i), with
/// (i, j) flattened to i * n + j. Shape (n^2, n^2, n^2), n^3 triples.
inline Tensor matmul(int n) {
  if (n < 1) throw DomainError("matmul needs n >= 1");
  Tensor t(Shape::cube(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t.set({i * n + j, j * n + k, k * n + i}, 1);
  return t;
}

/// Sum of the unit diagonal and the all-ones rank-one tensor: coefficient 2 on
/// (i,i,i), 1 elsewhere.
inline Tensor t_std(int m) {
  if (m < 1) throw DomainError("t_std needs m >= 1");
  Tensor t(Shape::cube(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) t.add({i, j, k}, 1);
  for (int i = 0; i < m; ++i) t.add({i, i, i}, 1);
  return t;
}

/// Unit diagonal of length r.
inline Tensor unit_diagonal(int r) {
  if (r < 1) throw DomainError("unit_diagonal needs r >= 1");
  Tensor t(Shape::cube(r));
  for (int i = 0; i < r; ++i) t.set({i, i, i}, 1);
  return t;
}

/// Small (shape (q+1)^3, 3q triples) or big (shape (q+2)^3, 3q+3 triples)
/// Coppersmith-Winograd tensor.
inline Tensor coppersmith_winograd(int q, bool big) {
  if (q < 1) throw DomainError("coppersmith_winograd needs q >= 1");
  Tensor t(Shape::cube(big ? q + 2 : q + 1));
  for (int i = 1; i <= q; ++i) {
    t.set({0, i, i}, 1);
    t.set({i, 0, i}, 1);
    t.set({i, i, 0}, 1);
  }
  if (big) {
    t.set({0, 0, q + 1}, 1);
    t.set({0, q + 1, 0}, 1);
    t.set({q + 1, 0, 0}, 1);
  }
  return t;
}

/// 4x4x4 tensor whose support is an antichain in the natural order but which
/// has no continuous symmetry beyond the center.
inline Tensor oblique_not_tight_4() {
  Tensor t(Shape::cube(4));
  for (const Triple& idx : std::vector<Triple>{{0, 2, 3}, {0, 3, 2}, {1, 0, 3}, {1, 1, 2}, {1, 2, 1},
                                               {1, 3, 0}, {2, 1, 1}, {2, 2, 0}, {3, 0, 2}, {3, 1, 0}})
    t.set(idx, 1);
  return t;
}

namespace detail {
inline void add_product_of_sums(Tensor& t, const std::vector<int>& as, const std::vector<int>& bs,
                                const std::vector<int>& cs) {
  for (int i : as)
    for (int j : bs)
      for (int k : cs) t.add({i, j, k}, 1);
}
}  // namespace detail

/// 4x4x4 tensor that is 6-multicompressible yet has trivial annihilator:
///   sum_i a_i b_i c_i + (a0+a1+a2+a3)(b0+b1)(c2+c3) + (a1+a2+a3) b2 (c2+c3)
///   + (a1+a2+a3) b3 c3 + (a2+a3) b3 c2
inline Tensor not_tight_compressible_4() {
  Tensor t(Shape::cube(4));
  for (int i = 0; i < 4; ++i) t.add({i, i, i}, 1);
  detail::add_product_of_sums(t, {0, 1, 2, 3}, {0, 1}, {2, 3});
  detail::add_product_of_sums(t, {1, 2, 3}, {2}, {2, 3});
  detail::add_product_of_sums(t, {1, 2, 3}, {3}, {3});
  detail::add_product_of_sums(t, {2, 3}, {3}, {2});
  return t;
}

enum class CatalogKind { TMax, FMax, MatMul, MOneSum, TStd, Tcw, TCW, ObliqueNotTight4, NotTightCompressible4 };

struct CatalogId {
  CatalogKind kind;
  int param = 0;  // unused by the two fixed 4x4x4 tensors
};

inline const std::vector<std::pair<std::string, CatalogKind>>& catalog_names() {
  static const std::vector<std::pair<std::string, CatalogKind>> names{
      {"TMax", CatalogKind::TMax},
      {"FMax", CatalogKind::FMax},
      {"MatMul", CatalogKind::MatMul},
      {"MOneSum", CatalogKind::MOneSum},
      {"TStd", CatalogKind::TStd},
      {"Tcw", CatalogKind::Tcw},
      {"TCW", CatalogKind::TCW},
      {"ObliqueNotTight4", CatalogKind::ObliqueNotTight4},
      {"NotTightCompressible4", CatalogKind::NotTightCompressible4}};
  return names;
}

inline bool catalog_takes_parameter(CatalogKind k) {
  return k != CatalogKind::ObliqueNotTight4 && k != CatalogKind::NotTightCompressible4;
}

inline std::optional<CatalogKind> parse_catalog_kind(const std::string& name) {
  for (const auto& [n, k] : catalog_names())
    if (n == name) return k;
  return std::nullopt;
}

/// Catalog entry as a tensor; supports come back with unit coefficients.
inline Tensor construct(const CatalogId& id) {
  if (catalog_takes_parameter(id.kind) && id.param < 1) throw DomainError("catalog parameter must be >= 1");
  switch (id.kind) {
    case CatalogKind::TMax:
      return Tensor::indicator(tight_max_support(id.param).first);
    case CatalogKind::FMax:
      return Tensor::indicator(free_max_support(id.param));
    case CatalogKind::MatMul:
      return matmul(id.param);
    case CatalogKind::MOneSum:
      return unit_diagonal(id.param);
    case CatalogKind::TStd:
      return t_std(id.param);
    case CatalogKind::Tcw:
      return coppersmith_winograd(id.param, false);
    case CatalogKind::TCW:
      return coppersmith_winograd(id.param, true);
    case CatalogKind::ObliqueNotTight4:
      return oblique_not_tight_4();
    case CatalogKind::NotTightCompressible4:
      return not_tight_compressible_4();
  }
  throw DomainError("unknown catalog id");
}

}  // namespace tensorclass
