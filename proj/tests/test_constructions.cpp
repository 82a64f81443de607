#include <catch2/catch_amalgamated.hpp>

#include <tensorclass/constructions.hpp>
#include <tensorclass/deciders.hpp>

using namespace tensorclass;

TEST_CASE("tight maximal support sizes and witnesses", "[constructions]") {
  for (int m = 1; m <= 12; ++m) {
    const auto [s, w] = tight_max_support(m);
    CHECK(static_cast<long>(s.size()) == (3L * m * m + 3) / 4);
    CHECK(w.certifies(s));
    CHECK(w.is_injective());
    CHECK(is_concise_support(s));
  }
  CHECK(tight_max_support(5).first.size() == 19);
  CHECK(tight_max_support(4).first.size() == 12);
  CHECK(tight_max_support(2).first.triples() == std::vector<Triple>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

TEST_CASE("free maximal supports", "[constructions]") {
  for (int m = 1; m <= 9; ++m) {
    const Support f = free_max_support(m);
    CHECK(static_cast<int>(f.size()) == m * m);
    CHECK(is_free(f));
    CHECK(is_concise_support(f));
  }
  const Support f2 = free_max_support(2);
  for (std::size_t u = 0; u < f2.size(); ++u)
    for (std::size_t v = u + 1; v < f2.size(); ++v) {
      int differ = 0;
      for (int x = 0; x < 3; ++x) differ += f2[u][x] != f2[v][x];
      CHECK(differ >= 2);
    }
  const Support f5 = free_max_support(5);
  // 3l = l - 1 mod m, so the tight maximum embeds after a cyclic shift of the last axis.
  for (const auto& t : tight_max_support(5).first) {
    CHECK_FALSE(f5.contains(t));
    CHECK(f5.contains({t[0], t[1], (t[2] + 1) % 5}));
  }
}

TEST_CASE("matrix multiplication tensors", "[constructions]") {
  CHECK(matmul(1).nnz() == 1);
  CHECK(matmul(2).nnz() == 8);
  CHECK(matmul(3).nnz() == 27);
  CHECK(matmul(2).shape() == Shape::cube(4));
  CHECK(is_free(matmul(3).support()));
  // M<n> = sum a_{ij} b_{jk} c_{ki} with (i, j) -> i n + j.
  CHECK(matmul(2).at({0 * 2 + 1, 1 * 2 + 0, 0 * 2 + 0}) == 1);
}

TEST_CASE("M<2> (x) M<2> is M<4> after regrouping the factor indices", "[constructions]") {
  // kronecker index of ((i1,j1),(i2,j2)) is (i1 n + j1) 4 + (i2 n + j2); matmul(4)
  // indexes (i, j) by i 4 + j with i = 2 i1 + i2, j = 2 j1 + j2. The bijection
  // swaps the two middle bits of the 4-bit index.
  const Support k = kronecker(matmul(2), matmul(2)).support();
  REQUIRE(k.size() == 64);
  std::vector<int> swap(16);
  for (int v = 0; v < 16; ++v) {
    const int b3 = (v >> 3) & 1, b2 = (v >> 2) & 1, b1 = (v >> 1) & 1, b0 = v & 1;
    swap[static_cast<std::size_t>(v)] = (b3 << 3) | (b1 << 2) | (b2 << 1) | b0;
  }
  const AxisPermutations p({swap, swap, swap});
  CHECK(apply_permutations(k, p) == matmul(4).support());
}

TEST_CASE("standard secant tensor", "[constructions]") {
  CHECK(t_std(1).nnz() == 1);
  CHECK(t_std(1).at({0, 0, 0}) == 2);
  CHECK(t_std(2).at({0, 0, 0}) == 2);
  CHECK(t_std(2).at({0, 1, 1}) == 1);
  CHECK(t_std(3).nnz() == 27);
}

TEST_CASE("unit diagonal", "[constructions]") {
  const Tensor d = unit_diagonal(4);
  CHECK(d.nnz() == 4);
  for (int i = 0; i < 4; ++i) CHECK(d.at({i, i, i}) == 1);
}

TEST_CASE("Coppersmith-Winograd tensors", "[constructions]") {
  CHECK(coppersmith_winograd(1, false).nnz() == 3);
  CHECK(coppersmith_winograd(1, true).nnz() == 6);
  CHECK(is_concise_support(coppersmith_winograd(1, true).support()));
  CHECK(coppersmith_winograd(2, false).shape() == Shape::cube(3));
  CHECK(coppersmith_winograd(2, true).shape() == Shape::cube(4));
  CHECK(coppersmith_winograd(2, false).nnz() == 6);
  CHECK(coppersmith_winograd(2, true).nnz() == 9);
}

TEST_CASE("oblique but not tight example", "[constructions]") {
  const Support s = oblique_not_tight_4().support();
  CHECK(s.size() == 10);
  CHECK(is_antichain(s));
  CHECK(is_free(s));
  CHECK(is_concise_support(s));
}

TEST_CASE("compressible but not tight example", "[constructions]") {
  const Tensor t = not_tight_compressible_4();
  CHECK(t.at({0, 0, 0}) == 1);
  CHECK(t.at({0, 0, 2}) == 1);
  CHECK(t.shape() == Shape::cube(4));
}

TEST_CASE("catalog lookup", "[constructions]") {
  CHECK(parse_catalog_kind("TMax") == CatalogKind::TMax);
  CHECK_FALSE(parse_catalog_kind("tmax").has_value());
  CHECK(construct({CatalogKind::TMax, 3}).nnz() == 7);
  CHECK(construct({CatalogKind::MatMul, 2}).nnz() == 8);
  CHECK(construct({CatalogKind::ObliqueNotTight4, 0}).nnz() == 10);
  CHECK_THROWS_AS(construct({CatalogKind::TStd, 0}), DomainError);
  for (const auto& [name, kind] : catalog_names()) {
    const Tensor t = construct({kind, 2});
    CHECK(is_concise_support(t.support()));
  }
}
