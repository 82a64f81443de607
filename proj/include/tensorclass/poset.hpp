#pragma once

// Antichains of the product order on [a] x [b] x [c].
//
// Maximal antichains are maximal cliques of the incomparability graph, which
// are enumerated with Bron-Kerbosch (Tomita pivoting) over 64-bit vertex
// masks. Vertices are the grid cells in lexicographic order.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "core.hpp"

namespace tensorclass {

namespace detail {

struct CellGraph {
  std::vector<Triple> cells;
  std::vector<std::uint64_t> incomparable;  // adjacency masks
};

inline CellGraph incomparability_graph(const Shape& shape) {
  if (shape.volume() > 64) throw DomainError("antichain enumeration limited to 64 cells, shape " + shape.str());
  CellGraph g;
  for (int i = 0; i < shape.a(); ++i)
    for (int j = 0; j < shape.b(); ++j)
      for (int k = 0; k < shape.c(); ++k) g.cells.push_back({i, j, k});
  const std::size_t n = g.cells.size();
  g.incomparable.assign(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && !dominated(g.cells[u], g.cells[v]) && !dominated(g.cells[v], g.cells[u]))
        g.incomparable[u] |= std::uint64_t{1} << v;
  return g;
}

inline void bron_kerbosch(const CellGraph& g, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                          const std::function<void(std::uint64_t)>& emit) {
  if (p == 0 && x == 0) {
    emit(r);
    return;
  }
  // Pivot on the vertex of P u X with the most neighbours in P.
  std::uint64_t px = p | x;
  int pivot = -1, best = -1;
  while (px) {
    const int u = std::countr_zero(px);
    px &= px - 1;
    const int deg = std::popcount(p & g.incomparable[static_cast<std::size_t>(u)]);
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  std::uint64_t candidates = p & ~g.incomparable[static_cast<std::size_t>(pivot)];
  while (candidates) {
    const int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    const std::uint64_t bit = std::uint64_t{1} << v;
    const std::uint64_t nv = g.incomparable[static_cast<std::size_t>(v)];
    bron_kerbosch(g, r | bit, p & nv, x & nv, emit);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace detail

/// Every maximal antichain of the grid, each as a canonical Support, sorted.
inline std::vector<Support> maximal_antichains(const Shape& shape) {
  const auto g = detail::incomparability_graph(shape);
  const std::size_t n = g.cells.size();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<Support> out;
  detail::bron_kerbosch(g, 0, all, 0, [&](std::uint64_t mask) {
    std::vector<Triple> ts;
    while (mask) {
      ts.push_back(g.cells[static_cast<std::size_t>(std::countr_zero(mask))]);
      mask &= mask - 1;
    }
    out.emplace_back(shape, std::move(ts));
  });
  std::sort(out.begin(), out.end(), [](const Support& l, const Support& r) { return l.triples() < r.triples(); });
  return out;
}

/// Size of a largest antichain, by exhausting the maximal ones.
inline std::size_t maximum_antichain_size(const Shape& shape) {
  std::size_t best = 0;
  for (const auto& s : maximal_antichains(shape)) best = std::max(best, s.size());
  return best;
}

}  // namespace tensorclass
