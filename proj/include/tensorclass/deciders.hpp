#pragma once

// Decision procedures for the three support classes
//
//   tight    there are injective tau_A, tau_B, tau_C with
//            tau_A(i) + tau_B(j) + tau_C(k) = 0 on every triple
//   oblique  some reordering of the three index ranges makes the support an
//            antichain of the product order
//   free     any two triples differ in at least two coordinates
//
// tight => oblique => free. Positive answers always carry a certificate that
// is re-checked before it is returned.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "core.hpp"
#include "linalg.hpp"
#include "poset.hpp"
#include "random.hpp"
#include "witness.hpp"

namespace tensorclass {

inline bool is_free(const Support& s) {
  const auto& ts = s.triples();
  for (std::size_t u = 0; u < ts.size(); ++u)
    for (std::size_t v = u + 1; v < ts.size(); ++v) {
      int same = 0;
      for (int x = 0; x < 3; ++x) same += ts[u][x] == ts[v][x];
      if (same >= 2) return false;
    }
  return true;
}

inline bool is_antichain(const Support& s) {
  const auto& ts = s.triples();
  for (std::size_t u = 0; u < ts.size(); ++u)
    for (std::size_t v = u + 1; v < ts.size(); ++v)
      if (dominated(ts[u], ts[v]) || dominated(ts[v], ts[u])) return false;
  return true;
}

/// Linear constraints tau_A(i) + tau_B(j) + tau_C(k) = 0, one row per triple.
/// Unknowns are ordered tau_A[0..a), tau_B[0..b), tau_C[0..c).
inline LinearSystem tightness_system(const Support& s) {
  const Shape& sh = s.shape();
  LinearSystem sys;
  sys.cols = sh.total();
  for (const auto& t : s)
    sys.rows.push_back({{{t[0], Rational(1)}, {sh.a() + t[1], Rational(1)}, {sh.a() + sh.b() + t[2], Rational(1)}}});
  return sys;
}

namespace detail {

inline std::vector<std::vector<BigInt>> integer_basis(const Nullspace& ns) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& v : ns.basis) {
    BigInt l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<BigInt> w;
    for (const auto& q : v) w.push_back(q.get_num() * (l / q.get_den()));
    out.push_back(std::move(w));
  }
  return out;
}

// Column pairs that must end up distinct: every pair of indices on one axis.
inline std::vector<std::pair<int, int>> separation_pairs(const Shape& sh) {
  std::vector<std::pair<int, int>> pairs;
  int offset = 0;
  for (int x = 0; x < 3; ++x) {
    for (int u = 0; u < sh[x]; ++u)
      for (int v = u + 1; v < sh[x]; ++v) pairs.emplace_back(offset + u, offset + v);
    offset += sh[x];
  }
  return pairs;
}

inline std::optional<TightWitness> witness_from_combination(const std::vector<std::vector<BigInt>>& basis,
                                                            const std::vector<BigInt>& coeffs, const Shape& sh,
                                                            const std::vector<std::pair<int, int>>& pairs) {
  const std::size_t n = static_cast<std::size_t>(sh.total());
  std::vector<BigInt> tau(n, BigInt(0));
  for (std::size_t t = 0; t < basis.size(); ++t)
    for (std::size_t c = 0; c < n; ++c) tau[c] += coeffs[t] * basis[t][c];
  for (const auto& [u, v] : pairs)
    if (tau[static_cast<std::size_t>(u)] == tau[static_cast<std::size_t>(v)]) return std::nullopt;
  BigInt g = 0;
  for (const auto& z : tau) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  if (g > 1)
    for (auto& z : tau) z /= g;
  for (const auto& z : tau)
    if (!fits_int64(z)) return std::nullopt;
  TightWitness w;
  std::size_t c = 0;
  for (int x = 0; x < 3; ++x)
    for (int u = 0; u < sh[x]; ++u) w.tau[static_cast<std::size_t>(x)].push_back(to_int64(tau[c++]));
  return w;
}

/// Integer combination of `basis` (vectors over the a+b+c weight slots) that
/// separates every pair of indices on each axis, or nullopt if some pair is
/// equal on the whole span. Seeded random combinations are tried first, then
/// the powers-of-N combination, which cannot fail.
inline std::optional<TightWitness> separating_witness(const std::vector<std::vector<BigInt>>& basis, const Shape& sh,
                                                      std::uint64_t seed) {
  const auto pairs = separation_pairs(sh);
  BigInt max_diff = 0;
  for (const auto& [u, v] : pairs) {
    bool separated = false;
    for (const auto& b : basis) {
      const BigInt d = abs(b[static_cast<std::size_t>(u)] - b[static_cast<std::size_t>(v)]);
      if (d != 0) separated = true;
      if (d > max_diff) max_diff = d;
    }
    if (!separated) return std::nullopt;
  }
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const long range = 4L * (attempt + 1);
    std::vector<BigInt> coeffs;
    for (std::size_t t = 0; t < basis.size(); ++t) coeffs.emplace_back(static_cast<long>(rng.uniform(-range, range)));
    if (auto w = witness_from_combination(basis, coeffs, sh, pairs)) return w;
  }
  // sum_t d_t N^t != 0 whenever some d_t != 0 and N > 2 max |d_t|.
  const BigInt n = 2 * max_diff + 2;
  std::vector<BigInt> coeffs;
  BigInt power = 1;
  for (std::size_t t = 0; t < basis.size(); ++t) {
    coeffs.push_back(power);
    power *= n;
  }
  if (auto w = witness_from_combination(basis, coeffs, sh, pairs)) return w;
  throw InvariantError("separating combination exists but overflowed 64-bit witness values");
}

}  // namespace detail

/// Exact tightness test.
///
/// The zero-sum constraints cut out a linear space V of weightings. The
/// support is tight iff no separation functional tau_X(u) - tau_X(v) vanishes
/// on all of V (a vector space over an infinite field is not a finite union of
/// proper subspaces). The witness is a separating integer combination of the
/// kernel basis.
inline std::optional<TightWitness> decide_tight(const Support& s, std::uint64_t seed = 0) {
  const auto ns = nullspace_rational(tightness_system(s));
  auto w = detail::separating_witness(detail::integer_basis(ns), s.shape(), seed);
  if (w && !w->certifies(s)) throw InvariantError("tightness witness failed verification");
  return w;
}

enum class Verdict { Yes, No, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

struct ObliqueResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<AxisPermutations> witness;  // set iff verdict == Yes
  long nodes = 0;
  bool via_tight = false;
};

inline constexpr long kDefaultObliqueBudget = 10'000'000;

namespace detail {

// Places the indices of each axis one position at a time (axes in order A, B,
// C). Once an index is placed its order relative to every other index of that
// axis is known, so a pair of triples is fully decided as soon as the first
// of its differing coordinates on its last differing axis is placed; such a
// pair is rejected if all differing coordinates point the same way.
class ObliqueSearch {
 public:
  ObliqueSearch(const Support& s, long budget) : s_(s), budget_(budget) {
    for (int x = 0; x < 3; ++x) {
      pos_[x].assign(static_cast<std::size_t>(s.shape()[x]), -1);
      by_value_[x].assign(static_cast<std::size_t>(s.shape()[x]), {});
    }
    for (std::size_t n = 0; n < s.size(); ++n)
      for (int x = 0; x < 3; ++x) by_value_[x][static_cast<std::size_t>(s[n][x])].push_back(static_cast<int>(n));
  }

  Verdict run() {
    const bool found = place(0, 0);
    if (found) return Verdict::Yes;
    return exhausted_ ? Verdict::Unknown : Verdict::No;
  }

  long nodes() const { return nodes_; }

  AxisPermutations permutations() const {
    std::array<std::vector<int>, 3> p;
    for (int x = 0; x < 3; ++x) p[x] = pos_[x];
    return AxisPermutations(std::move(p));
  }

 private:
  bool place(int axis, int position) {
    if (axis == 3) return true;
    const int n = s_.shape()[axis];
    if (position == n) return place(axis + 1, 0);
    for (int v = 0; v < n; ++v) {
      if (pos_[axis][static_cast<std::size_t>(v)] >= 0) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      pos_[axis][static_cast<std::size_t>(v)] = position;
      if (consistent(axis, v) && place(axis, position + 1)) return true;
      pos_[axis][static_cast<std::size_t>(v)] = -1;
      if (exhausted_) return false;
    }
    return false;
  }

  // Order of u versus w on `axis`: -1, 0, +1, or 2 if not yet decided.
  int order(int axis, int u, int w) const {
    if (u == w) return 0;
    const int pu = pos_[axis][static_cast<std::size_t>(u)], pw = pos_[axis][static_cast<std::size_t>(w)];
    if (pu < 0 && pw < 0) return 2;
    if (pu < 0) return 1;
    if (pw < 0) return -1;
    return pu < pw ? -1 : 1;
  }

  bool consistent(int axis, int v) const {
    for (int n : by_value_[axis][static_cast<std::size_t>(v)])
      for (std::size_t m = 0; m < s_.size(); ++m) {
        const Triple& p = s_[static_cast<std::size_t>(n)];
        const Triple& q = s_[m];
        if (q[axis] == v) continue;
        bool decided = true, has_less = false, has_greater = false;
        for (int y = 0; y < 3 && decided; ++y) {
          const int o = order(y, p[y], q[y]);
          if (o == 2) decided = false;
          has_less |= o == -1;
          has_greater |= o == 1;
        }
        if (decided && !(has_less && has_greater)) return false;
      }
    return true;
  }

  const Support& s_;
  long budget_;
  long nodes_ = 0;
  bool exhausted_ = false;
  std::array<std::vector<int>, 3> pos_;
  std::array<std::vector<std::vector<int>>, 3> by_value_;
};

}  // namespace detail

/// Obliqueness by reordering search. Tight supports short-circuit through the
/// tau-sorting reorder; non-free supports are rejected outright. Unknown is
/// returned only when the node budget runs out.
inline ObliqueResult decide_oblique(const Support& s, long budget = kDefaultObliqueBudget) {
  ObliqueResult result;
  auto check = [&](const AxisPermutations& p) {
    if (!is_antichain(apply_permutations(s, p))) throw InvariantError("oblique reordering failed verification");
  };
  if (!is_free(s)) {
    result.verdict = Verdict::No;
    return result;
  }
  if (auto w = decide_tight(s)) {
    result.verdict = Verdict::Yes;
    result.witness = w->sorting_permutations();
    result.via_tight = true;
    check(*result.witness);
    return result;
  }
  detail::ObliqueSearch search(s, budget);
  result.verdict = search.run();
  result.nodes = search.nodes();
  if (result.verdict == Verdict::Yes) {
    result.witness = search.permutations();
    check(*result.witness);
  }
  return result;
}

struct ObliqueBound {
  long bound = 0;
  int central_rank = 0;  // floor((a + b + c - 3) / 2)
  Support achieving;     // {i + j + k = central_rank}
};

/// Largest oblique support in [a] x [b] x [c]: with a <= b <= c sorted,
/// ab - floor((a + b - c)^2 / 4) when a + b >= c, else ab. The central rank
/// of the grid attains it.
inline ObliqueBound max_oblique_size(int a, int b, int c) {
  const Shape shape(a, b, c);
  std::array<long, 3> d{a, b, c};
  std::sort(d.begin(), d.end());
  ObliqueBound out;
  const long excess = d[0] + d[1] - d[2];
  out.bound = excess >= 0 ? d[0] * d[1] - (excess * excess) / 4 : d[0] * d[1];
  out.central_rank = (a + b + c - 3) / 2;
  std::vector<Triple> ts;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      const int k = out.central_rank - i - j;
      if (k >= 0 && k < c) ts.push_back({i, j, k});
    }
  out.achieving = Support(shape, std::move(ts));
  return out;
}

// ---------------------------------------------------------------------------
// Orbits of supports of [m]^3 under S_3 (factor permutations) x Z_2
// ((i, j, k) -> (m-1-i, m-1-j, m-1-k)).

inline const std::array<std::array<int, 3>, 6>& factor_permutations() {
  static const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return perms;
}

/// Image of a cube support under group element (perm, reversed).
inline Support cube_symmetry(const Support& s, const std::array<int, 3>& perm, bool reversed) {
  if (!s.shape().is_cube()) throw ShapeError("cube symmetry needs a cubic shape, got " + s.shape().str());
  const int m = s.shape().a();
  std::vector<Triple> ts;
  for (Triple t : s) {
    if (reversed)
      for (auto& v : t) v = m - 1 - v;
    ts.push_back(permute_factors(t, perm));
  }
  return Support(s.shape(), std::move(ts));
}

/// Lexicographically smallest sorted triple list in the orbit.
inline Support cube_canonical_form(const Support& s) {
  std::optional<Support> best;
  for (const auto& perm : factor_permutations())
    for (bool rev : {false, true}) {
      Support img = cube_symmetry(s, perm, rev);
      if (!best || img.triples() < best->triples()) best = std::move(img);
    }
  return *best;
}

struct CensusOrbit {
  Support representative;  // lexicographic minimum of the orbit
  std::size_t orbit_size = 0;
  std::optional<TightWitness> witness;
};

struct CensusReport {
  std::size_t maximal = 0;
  std::size_t concise = 0;
  std::vector<CensusOrbit> orbits;  // sorted by representative
};

/// Maximal antichains of [m]^3, the concise ones, and their symmetry orbits,
/// each representative run through decide_tight.
inline CensusReport census_cube(int m) {
  CensusReport report;
  const auto antichains = maximal_antichains(Shape::cube(m));
  report.maximal = antichains.size();
  std::map<std::vector<Triple>, CensusOrbit> orbits;
  for (const auto& s : antichains) {
    if (!is_concise_support(s)) continue;
    ++report.concise;
    Support canon = cube_canonical_form(s);
    auto [it, inserted] = orbits.try_emplace(canon.triples(), CensusOrbit{canon, 0, std::nullopt});
    ++it->second.orbit_size;
  }
  for (auto& [_, orbit] : orbits) {
    orbit.witness = decide_tight(orbit.representative);
    report.orbits.push_back(std::move(orbit));
  }
  return report;
}

inline CensusReport census_m3() { return census_cube(3); }

}  // namespace tensorclass
