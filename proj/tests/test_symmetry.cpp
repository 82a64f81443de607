#include <catch2/catch_amalgamated.hpp>

#include <tensorclass/constructions.hpp>
#include <tensorclass/random.hpp>
#include <tensorclass/symmetry.hpp>

using namespace tensorclass;

namespace {

RationalMatrix unit(int n, int p, int q) {
  RationalMatrix m = zero_matrix(n);
  m[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = 1;
  return m;
}

RationalMatrix identity(int n) {
  RationalMatrix m = zero_matrix(n);
  for (int p = 0; p < n; ++p) m[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = 1;
  return m;
}

// Flattened coordinates of an element, in the library's unknown ordering.
std::vector<Rational> flatten(const LieElement& l) {
  std::vector<Rational> v;
  for (int x = 0; x < 3; ++x)
    for (const auto& row : l.block(x))
      for (const auto& e : row) v.push_back(e);
  return v;
}

int rank_of(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  LinearSystem sys;
  sys.cols = static_cast<int>(rows.size());
  // rank of the vectors = number of columns minus nullity of the transpose
  const std::size_t len = rows[0].size();
  for (std::size_t c = 0; c < len; ++c) {
    SparseRow r;
    for (std::size_t n = 0; n < rows.size(); ++n)
      if (rows[n][c] != 0) r.terms.emplace_back(static_cast<int>(n), rows[n][c]);
    if (!r.terms.empty()) sys.rows.push_back(r);
  }
  return sys.cols - nullspace_rational(sys).dimension();
}

}  // namespace

TEST_CASE("a single rank-one tensor has only the center", "[symmetry]") {
  Tensor one(Shape::cube(1));
  one.set({0, 0, 0}, Rational(1));
  const auto r = annihilator(one);
  CHECK(r.kernel_dim == 2);
  CHECK(r.annihilator_dim == 0);
}

TEST_CASE("annihilators of generic tensors on tight maximal supports", "[symmetry]") {
  for (int m : {3, 5}) {
    const auto r = annihilator(generic_tensor(tight_max_support(m).first, 77));
    CHECK(r.annihilator_dim == 1);
    const auto ev = has_regular_semisimple(r);
    CHECK(ev.kind == TightEvidenceKind::TightWitnessFound);
    REQUIRE(ev.witness);
    CHECK(ev.witness->certifies(tight_max_support(m).first));
    // The witness is an affine image of the centred weights i - l.
    const auto& ta = ev.witness->axis(0);
    for (std::size_t i = 1; i + 1 < ta.size(); ++i) CHECK(ta[i + 1] - ta[i] == ta[i] - ta[i - 1]);
  }
}

TEST_CASE("trivial annihilators", "[symmetry]") {
  CHECK(annihilator(t_std(4)).annihilator_dim == 0);
  CHECK(annihilator(t_std(3)).annihilator_dim == 0);
  const auto r = annihilator(oblique_not_tight_4());
  CHECK(r.annihilator_dim == 0);
  CHECK(has_regular_semisimple(r).kind == TightEvidenceKind::NotTight);
  CHECK(annihilator(not_tight_compressible_4()).annihilator_dim == 0);
}

TEST_CASE("the 2x2 matrix multiplication tensor has sl2 x sl2 x sl2 symmetry", "[symmetry]") {
  // For P, Q, R in gl2 the triple (P (x) 1 - 1 (x) Q^T, Q (x) 1 - 1 (x) R^T,
  // R (x) 1 - 1 (x) P^T) on indices (i, j) -> 2 i + j annihilates
  // sum a_{ij} b_{jk} c_{ki}. Together with the center this spans an
  // 11-dimensional space: 12 parameters minus the scalar P = Q = R.
  const Tensor mm = matmul(2);
  auto kron = [](const RationalMatrix& l, const RationalMatrix& r) {
    RationalMatrix out = zero_matrix(4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d)
            out[static_cast<std::size_t>(2 * a + c)][static_cast<std::size_t>(2 * b + d)] =
                l[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * r[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
    return out;
  };
  auto transpose = [](const RationalMatrix& m) {
    RationalMatrix t = zero_matrix(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    return t;
  };
  auto minus = [](RationalMatrix l, const RationalMatrix& r) {
    for (std::size_t a = 0; a < l.size(); ++a)
      for (std::size_t b = 0; b < l.size(); ++b) l[a][b] -= r[a][b];
    return l;
  };
  const RationalMatrix id2 = identity(2), zero2 = zero_matrix(2);
  std::vector<std::vector<Rational>> span;
  for (int which = 0; which < 3; ++which)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) {
        std::array<RationalMatrix, 3> pqr{zero2, zero2, zero2};
        pqr[static_cast<std::size_t>(which)] = unit(2, p, q);
        LieElement l;
        l.blocks[0] = minus(kron(pqr[0], id2), kron(id2, transpose(pqr[1])));
        l.blocks[1] = minus(kron(pqr[1], id2), kron(id2, transpose(pqr[2])));
        l.blocks[2] = minus(kron(pqr[2], id2), kron(id2, transpose(pqr[0])));
        CHECK(act(l, mm).nnz() == 0);
        span.push_back(flatten(l));
      }
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{1, -1}, {1, 0}}) {
    LieElement c;
    c.blocks = {identity(4), identity(4), identity(4)};
    for (auto& row : c.blocks[0]) for (auto& e : row) e *= a;
    for (auto& row : c.blocks[1]) for (auto& e : row) e *= b;
    for (auto& row : c.blocks[2]) for (auto& e : row) e *= -a - b;
    CHECK(act(c, mm).nnz() == 0);
    span.push_back(flatten(c));
  }
  const int independent = rank_of(span);
  CHECK(independent == 11);

  const auto r = annihilator(mm);
  CHECK(r.kernel_dim == independent);
  CHECK(r.annihilator_dim == independent - 2);
  // Every computed basis element lies in the explicit span.
  for (const auto& l : r.basis) {
    auto with = span;
    with.push_back(flatten(l));
    CHECK(rank_of(with) == independent);
  }
}

TEST_CASE("rational and modular routes agree on annihilators", "[symmetry]") {
  SeededRng rng(8);
  for (int n = 0; n < 6; ++n) {
    const Tensor t = generic_tensor(random_support(Shape(3, 3, 2), 0.5, rng), rng.next());
    const auto a = annihilator(t, SolveRoute::Rational), b = annihilator(t, SolveRoute::Modular);
    CHECK(a.kernel_dim == b.kernel_dim);
    for (const auto& l : b.basis) CHECK(act(l, t).nnz() == 0);
  }
}

TEST_CASE("nilpotent symmetries are inconclusive", "[symmetry]") {
  // a1 does not occur in a0 (x) (b0 (x) c0 + b1 (x) c1), so X may send a1
  // anywhere; such elements are not diagonal.
  Tensor t(Shape(2, 2, 2));
  t.set({0, 0, 0}, Rational(1));
  t.set({0, 1, 1}, Rational(1));
  const auto r = annihilator(t);
  REQUIRE(r.annihilator_dim >= 1);
  bool any_nondiagonal = false;
  for (const auto& l : r.basis) any_nondiagonal |= !l.is_diagonal();
  CHECK(any_nondiagonal);
  CHECK(has_regular_semisimple(r).kind == TightEvidenceKind::Inconclusive);
}

TEST_CASE("span stabilizers", "[symmetry]") {
  for (int m = 3; m <= 5; ++m) {
    CHECK(span_stabilizer_dim(free_max_support(m)) == 3 * m);
    CHECK(span_orbit_dim(free_max_support(m)) == 3 * m * m - 3 * m);
  }
  std::vector<Triple> all;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) all.push_back({i, j, k});
  CHECK(span_stabilizer_dim(Support(Shape::cube(2), all)) == 12);

  // For S = {(0,0,0)}, L stabilizes span{e000} iff the (1,0) entries of X, Y
  // and Z all vanish: 12 - 3 free parameters remain.
  const Support point(Shape::cube(2), {{0, 0, 0}});
  int count = 0;
  for (int x = 0; x < 3; ++x)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) {
        LieElement l = zero_lie_element(Shape::cube(2));
        l.blocks[static_cast<std::size_t>(x)] = unit(2, p, q);
        const Tensor image = act(l, Tensor::indicator(point));
        bool inside = true;
        for (const auto& [idx, v] : image.entries()) inside &= point.contains(idx);
        count += inside;
      }
  CHECK(count == 9);
  CHECK(span_stabilizer_dim(point) == count);
}

TEST_CASE("class dimensions", "[symmetry]") {
  CHECK(class_dimension(TensorClass::Tight, 4) == 48);
  CHECK(class_dimension(TensorClass::Oblique, 4) == 48);
  CHECK(class_dimension(TensorClass::MaMu, 4) == 36);
  CHECK(class_dimension(TensorClass::Free, 3) == 27);
  CHECK(class_dimension(TensorClass::Ambient, 3) == 27);
  CHECK_THROWS_AS(class_dimension(TensorClass::MaMu, 5), DomainError);
  CHECK_THROWS_AS(class_dimension(TensorClass::Tight, 0), DomainError);
  CHECK(parse_tensor_class("Free") == TensorClass::Free);
  CHECK_FALSE(parse_tensor_class("free").has_value());
  for (int m = 3; m <= 5; ++m) {
    CHECK(span_bundle_dim(tight_max_support(m).first) == class_dimension(TensorClass::Tight, m));
    CHECK(span_bundle_dim(free_max_support(m)) == class_dimension(TensorClass::Free, m));
  }
}

TEST_CASE("conciseness of tensors", "[symmetry]") {
  CHECK(is_concise(t_std(3)));
  CHECK(is_concise(matmul(2)));
  Tensor t(Shape(2, 2, 2));
  t.set({0, 0, 0}, Rational(1));
  t.set({1, 1, 0}, Rational(1));
  CHECK_FALSE(is_concise(t));
  CHECK(first_degenerate_flattening(t) == 2);
  // Rank-deficient A-flattening with a concise support.
  Tensor u(Shape(2, 1, 1));
  u.set({0, 0, 0}, Rational(1));
  u.set({1, 0, 0}, Rational(2));
  CHECK(is_concise_support(u.support()));
  CHECK(flattening_rank(u, 0) == 1);
  CHECK(first_degenerate_flattening(u) == 0);
}

TEST_CASE("propagation under sums and products", "[symmetry]") {
  const auto std3 = check_propagation(t_std(3), t_std(3));
  CHECK(std3.dim_t == 0);
  CHECK(std3.dim_s == 0);
  CHECK(std3.dim_product == 0);
  CHECK(std3.sum_additive);
  CHECK(std3.product_contains);
  CHECK(std3.trivial_propagates);
  // Each summand keeps its own center inside the sum.
  CHECK(std3.kernel_sum == std3.kernel_t + std3.kernel_s);
  CHECK(std3.dim_sum == 2);

  const Tensor g = generic_tensor(tight_max_support(3).first, 5);
  const auto gg = check_propagation(g, g);
  CHECK(gg.dim_t == 1);
  CHECK(gg.sum_additive);
  CHECK(gg.dim_sum == 4);
  CHECK(gg.product_contains);
  CHECK(gg.lifts_annihilate);

  Tensor nc(Shape(2, 2, 2));
  nc.set({0, 0, 0}, Rational(1));
  CHECK_THROWS_AS(check_propagation(nc, g), PreconditionError);
  CHECK_THROWS_WITH(check_propagation(g, nc), Catch::Matchers::ContainsSubstring("flattening A"));
}

TEST_CASE("matrix multiplication symmetries propagate strictly", "[symmetry][slow]") {
  const auto r = check_propagation(matmul(2), matmul(2));
  CHECK(r.dim_t == 9);
  CHECK(r.product_contains);
  CHECK(r.lifts_annihilate);
  CHECK(r.dim_product >= 2 * r.dim_t);
  CHECK(r.product_strict);
}
