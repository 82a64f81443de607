#pragma once

// Continuous symmetries of tensors.
//
// gl(A) + gl(B) + gl(C) acts on A (x) B (x) C by the Leibniz rule
//   (X, Y, Z).T = (X (x) 1 (x) 1 + 1 (x) Y (x) 1 + 1 (x) 1 (x) Z) T,
// and the annihilator of T is the kernel of this action. The two-dimensional
// center {(l Id, m Id, n Id) : l + m + n = 0} always lies in the kernel, so
// annihilator_dim = kernel_dim - 2 counts the symmetries of T proper.
//
// Unknown ordering: X[p][q] at p*a + q, then Y, then Z. X[p][q] is the
// coefficient of a_p in X(a_q).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "deciders.hpp"
#include "linalg.hpp"
#include "witness.hpp"

namespace tensorclass {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix zero_matrix(int n) {
  return RationalMatrix(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
}

/// (X, Y, Z) in gl(A) + gl(B) + gl(C).
struct LieElement {
  std::array<RationalMatrix, 3> blocks;

  const RationalMatrix& block(int x) const { return blocks[static_cast<std::size_t>(x)]; }

  bool is_diagonal() const {
    for (const auto& m : blocks)
      for (std::size_t p = 0; p < m.size(); ++p)
        for (std::size_t q = 0; q < m.size(); ++q)
          if (p != q && m[p][q] != 0) return false;
    return true;
  }

  friend bool operator==(const LieElement&, const LieElement&) = default;
};

inline int lie_dimension(const Shape& sh) { return sh.a() * sh.a() + sh.b() * sh.b() + sh.c() * sh.c(); }

inline int lie_offset(const Shape& sh, int axis) {
  int off = 0;
  for (int x = 0; x < axis; ++x) off += sh[x] * sh[x];
  return off;
}

inline LieElement lie_element_from_vector(const Shape& sh, const std::vector<Rational>& v) {
  LieElement l;
  for (int x = 0; x < 3; ++x) {
    const int n = sh[x], off = lie_offset(sh, x);
    l.blocks[static_cast<std::size_t>(x)] = zero_matrix(n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        l.blocks[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
            v[static_cast<std::size_t>(off + p * n + q)];
  }
  return l;
}

/// L.T by the Leibniz rule.
inline Tensor act(const LieElement& l, const Tensor& t) {
  Tensor out(t.shape());
  for (const auto& [idx, v] : t.entries())
    for (int x = 0; x < 3; ++x) {
      const auto& m = l.block(x);
      const auto q = static_cast<std::size_t>(idx[x]);
      for (std::size_t p = 0; p < m.size(); ++p) {
        if (m[p][q] == 0) continue;
        Triple target = idx;
        target[x] = static_cast<int>(p);
        out.add(target, m[p][q] * v);
      }
    }
  return out;
}

/// Rows indexed by output triples, columns by the unknowns of (X, Y, Z).
inline LinearSystem action_system(const Tensor& t) {
  const Shape& sh = t.shape();
  std::map<Triple, std::map<int, Rational>> rows;
  for (const auto& [idx, v] : t.entries())
    for (int x = 0; x < 3; ++x) {
      const int n = sh[x], off = lie_offset(sh, x);
      for (int p = 0; p < n; ++p) {
        Triple target = idx;
        target[x] = p;
        rows[target][off + p * n + idx[x]] += v;
      }
    }
  LinearSystem sys;
  sys.cols = lie_dimension(sh);
  for (auto& [_, terms] : rows) {
    SparseRow row;
    for (auto& [c, v] : terms)
      if (v != 0) row.terms.emplace_back(c, v);
    if (!row.terms.empty()) sys.rows.push_back(std::move(row));
  }
  return sys;
}

enum class SolveRoute { Automatic, Rational, Modular };

struct LieSolveReport {
  Shape shape;
  Support support;  // of the tensor that was solved
  int kernel_dim = 0;
  int annihilator_dim = 0;  // kernel_dim - 2
  std::vector<LieElement> basis;
};

inline LieSolveReport annihilator(const Tensor& t, SolveRoute route = SolveRoute::Automatic) {
  const auto sys = action_system(t);
  Nullspace ns = route == SolveRoute::Rational  ? nullspace_rational(sys)
                 : route == SolveRoute::Modular ? nullspace_modular(sys)
                                                : nullspace(sys);
  LieSolveReport r;
  r.shape = t.shape();
  r.support = t.support();
  r.kernel_dim = ns.dimension();
  r.annihilator_dim = r.kernel_dim - 2;
  for (const auto& v : ns.basis) {
    r.basis.push_back(lie_element_from_vector(t.shape(), v));
    if (act(r.basis.back(), t).nnz() != 0) throw InvariantError("annihilator basis element does not kill the tensor");
  }
  if (r.annihilator_dim < 0) throw InvariantError("kernel smaller than the center");
  return r;
}

enum class TightEvidenceKind { NotTight, TightWitnessFound, Inconclusive };

inline std::string to_string(TightEvidenceKind k) {
  switch (k) {
    case TightEvidenceKind::NotTight:
      return "not-tight";
    case TightEvidenceKind::TightWitnessFound:
      return "tight-witness-found";
    case TightEvidenceKind::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct TightEvidence {
  TightEvidenceKind kind = TightEvidenceKind::Inconclusive;
  std::optional<TightWitness> witness;
};

/// Looks for a regular semisimple element in the annihilator.
///
/// A trivial annihilator rules tightness out in every basis. When the whole
/// kernel is diagonal, a separating combination of the diagonals is a regular
/// semisimple element and its (integer) eigenvalues are a tightness witness
/// for the support. Everything else is reported as inconclusive.
inline TightEvidence has_regular_semisimple(const LieSolveReport& report, std::uint64_t seed = 0) {
  TightEvidence ev;
  if (report.annihilator_dim == 0) {
    ev.kind = TightEvidenceKind::NotTight;
    return ev;
  }
  for (const auto& l : report.basis)
    if (!l.is_diagonal()) return ev;
  Nullspace diag;
  for (const auto& l : report.basis) {
    std::vector<Rational> v;
    for (const auto& m : l.blocks)
      for (std::size_t p = 0; p < m.size(); ++p) v.push_back(m[p][p]);
    diag.basis.push_back(std::move(v));
  }
  auto w = detail::separating_witness(detail::integer_basis(diag), report.shape, seed);
  if (!w) return ev;
  if (!w->certifies(report.support)) throw InvariantError("eigenvalue witness does not certify the support");
  ev.kind = TightEvidenceKind::TightWitnessFound;
  ev.witness = std::move(w);
  return ev;
}

/// Constraints on (X, Y, Z) for mapping the coordinate span <S> into itself:
/// an off-diagonal entry moving s in S to a neighbour t not in S must vanish.
inline LinearSystem span_stabilizer_system(const Support& s) {
  const Shape& sh = s.shape();
  std::set<int> forced;
  for (const auto& t : s)
    for (int x = 0; x < 3; ++x)
      for (int p = 0; p < sh[x]; ++p) {
        if (p == t[x]) continue;
        Triple target = t;
        target[x] = p;
        if (!s.contains(target)) forced.insert(lie_offset(sh, x) + p * sh[x] + t[x]);
      }
  LinearSystem sys;
  sys.cols = lie_dimension(sh);
  for (int c : forced) {
    SparseRow row;
    row.terms.emplace_back(c, Rational(1));
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

/// dim {L : L.<S> in <S>}.
inline int span_stabilizer_dim(const Support& s) { return nullspace_rational(span_stabilizer_system(s)).dimension(); }

/// Dimension of the orbit of <S> in the Grassmannian: (a^2+b^2+c^2) - stabilizer.
inline int span_orbit_dim(const Support& s) { return lie_dimension(s.shape()) - span_stabilizer_dim(s); }

/// Orbit dimension plus |S|: the dimension of the tautological bundle over the
/// orbit closure, i.e. 3m^2 - 3m + |S| for concise free supports of [m]^3.
inline long span_bundle_dim(const Support& s) { return span_orbit_dim(s) + static_cast<long>(s.size()); }

enum class TensorClass { MaMu, Tight, Oblique, Free, Ambient };

inline std::optional<TensorClass> parse_tensor_class(const std::string& name) {
  if (name == "MaMu") return TensorClass::MaMu;
  if (name == "Tight") return TensorClass::Tight;
  if (name == "Oblique") return TensorClass::Oblique;
  if (name == "Free") return TensorClass::Free;
  if (name == "Ambient") return TensorClass::Ambient;
  return std::nullopt;
}

/// Closed-form dimensions of the closures of the classes in [m]^3.
inline long class_dimension(TensorClass cls, long m) {
  if (m < 1) throw DomainError("class_dimension needs m >= 1");
  const long ceil34 = (3 * m * m + 3) / 4;
  switch (cls) {
    case TensorClass::MaMu: {
      long n = 0;
      while ((n + 1) * (n + 1) <= m) ++n;
      if (n * n != m) throw DomainError("MaMu needs m to be a perfect square, got " + std::to_string(m));
      return 3 * m * m - 3 * m;
    }
    case TensorClass::Tight:
    case TensorClass::Oblique:
      return 3 * m * m + ceil34 - 3 * m;
    case TensorClass::Free:
      return 4 * m * m - 3 * m;
    case TensorClass::Ambient:
      return m * m * m;
  }
  throw DomainError("unknown class");
}

/// Exact rank of the flattening A* -> B (x) C (axis 0) and its analogues.
inline int flattening_rank(const Tensor& t, int axis) {
  const Shape& sh = t.shape();
  const int y = (axis + 1) % 3, z = (axis + 2) % 3;
  std::vector<SparseRow> rows(static_cast<std::size_t>(sh[axis]));
  for (const auto& [idx, v] : t.entries())
    rows[static_cast<std::size_t>(idx[axis])].terms.emplace_back(idx[y] * sh[z] + idx[z], v);
  LinearSystem sys;
  sys.cols = sh[y] * sh[z];
  sys.rows = std::move(rows);
  return nullspace(sys).rank;
}

/// Axis of the first non-injective flattening, or -1 if the tensor is concise.
inline int first_degenerate_flattening(const Tensor& t) {
  for (int x = 0; x < 3; ++x)
    if (flattening_rank(t, x) < t.shape()[x]) return x;
  return -1;
}

inline bool is_concise(const Tensor& t) { return first_degenerate_flattening(t) < 0; }

/// L1 (x) Id + Id (x) L2 acting on the Kronecker product (row-major indices).
inline LieElement kronecker_lift(const LieElement& l1, const Shape& s1, const LieElement& l2, const Shape& s2) {
  LieElement out;
  for (int x = 0; x < 3; ++x) {
    const int n1 = s1[x], n2 = s2[x];
    auto m = zero_matrix(n1 * n2);
    const auto& a = l1.block(x);
    const auto& b = l2.block(x);
    for (int p1 = 0; p1 < n1; ++p1)
      for (int q1 = 0; q1 < n1; ++q1)
        for (int p2 = 0; p2 < n2; ++p2)
          for (int q2 = 0; q2 < n2; ++q2) {
            Rational v;
            if (p2 == q2) v += a[static_cast<std::size_t>(p1)][static_cast<std::size_t>(q1)];
            if (p1 == q1) v += b[static_cast<std::size_t>(p2)][static_cast<std::size_t>(q2)];
            m[static_cast<std::size_t>(p1 * n2 + p2)][static_cast<std::size_t>(q1 * n2 + q2)] = v;
          }
    out.blocks[static_cast<std::size_t>(x)] = std::move(m);
  }
  return out;
}

inline LieElement zero_lie_element(const Shape& sh) {
  LieElement l;
  for (int x = 0; x < 3; ++x) l.blocks[static_cast<std::size_t>(x)] = zero_matrix(sh[x]);
  return l;
}

struct PropagationReport {
  int dim_t = 0, dim_s = 0, dim_sum = 0, dim_product = 0;  // modulo the center
  int kernel_t = 0, kernel_s = 0, kernel_sum = 0, kernel_product = 0;
  bool sum_additive = false;        // kernel(T+S) = kernel T + kernel S
  bool product_contains = false;    // dim(T x S) >= dim T + dim S
  bool lifts_annihilate = false;    // every L (x) Id and Id (x) L kills T x S
  bool trivial_propagates = false;  // both trivial => product trivial (vacuous otherwise)
  bool product_strict = false;      // dim(T x S) > dim T + dim S
};

/// Annihilator dimensions of T, S, T (+) S and T (x) S. Both inputs must be
/// concise.
///
/// Additivity under (+) is a statement about the kernels inside
/// gl(A1 + A2) + ...: each block keeps its own two-dimensional center, so
/// modulo the center of the sum dim(T + S) = dim T + dim S + 2.
inline PropagationReport check_propagation(const Tensor& t, const Tensor& s) {
  const char* names[3] = {"A", "B", "C"};
  if (int x = first_degenerate_flattening(t); x >= 0)
    throw PreconditionError(std::string("first tensor is not concise: flattening ") + names[x] + " is degenerate");
  if (int x = first_degenerate_flattening(s); x >= 0)
    throw PreconditionError(std::string("second tensor is not concise: flattening ") + names[x] + " is degenerate");
  const auto rt = annihilator(t);
  const auto rs = annihilator(s);
  const auto sum = annihilator(direct_sum(t, s));
  const Tensor product = kronecker(t, s);
  const auto prod = annihilator(product);

  PropagationReport r;
  r.dim_t = rt.annihilator_dim;
  r.dim_s = rs.annihilator_dim;
  r.dim_sum = sum.annihilator_dim;
  r.dim_product = prod.annihilator_dim;
  r.kernel_t = rt.kernel_dim;
  r.kernel_s = rs.kernel_dim;
  r.kernel_sum = sum.kernel_dim;
  r.kernel_product = prod.kernel_dim;
  r.sum_additive = r.kernel_sum == r.kernel_t + r.kernel_s;
  r.product_contains = r.dim_product >= r.dim_t + r.dim_s;
  r.product_strict = r.dim_product > r.dim_t + r.dim_s;
  r.trivial_propagates = !(r.dim_t == 0 && r.dim_s == 0) || r.dim_product == 0;
  r.lifts_annihilate = true;
  for (const auto& l : rt.basis)
    r.lifts_annihilate &= act(kronecker_lift(l, t.shape(), zero_lie_element(s.shape()), s.shape()), product).nnz() == 0;
  for (const auto& l : rs.basis)
    r.lifts_annihilate &= act(kronecker_lift(zero_lie_element(t.shape()), t.shape(), l, s.shape()), product).nnz() == 0;
  return r;
}

}  // namespace tensorclass
