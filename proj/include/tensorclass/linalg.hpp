#pragma once

// Exact nullspaces of homogeneous linear systems over Q.
//
// Two independent routes compute the same reduced-row-echelon kernel basis:
//   * nullspace_rational: Gauss-Jordan directly over GMP rationals.
//   * nullspace_modular:  Gauss-Jordan modulo word-size primes, Chinese
//     remaindering and rational reconstruction, then exact verification of
//     every basis vector against the original rational system.
// Both return the kernel basis indexed by free column: the vector for free
// column f has a 1 at f, zeros at the other free columns, and the negated
// reduced-row entries at the pivot columns.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tensorclass {

struct SparseRow {
  std::vector<std::pair<int, Rational>> terms;  // (column, coefficient), no zeros
};

/// Homogeneous system rows * x = 0 over `cols` unknowns.
struct LinearSystem {
  int cols = 0;
  std::vector<SparseRow> rows;
};

struct Nullspace {
  int cols = 0;
  int rank = 0;
  std::vector<int> pivots;     // ascending
  std::vector<int> free_cols;  // ascending
  std::vector<std::vector<Rational>> basis;  // one vector per free column

  int dimension() const { return static_cast<int>(basis.size()); }
};

inline bool in_kernel(const LinearSystem& sys, const std::vector<Rational>& v) {
  Rational acc;
  for (const auto& row : sys.rows) {
    acc = 0;
    for (const auto& [col, coef] : row.terms)
      if (v[static_cast<std::size_t>(col)] != 0) acc += coef * v[static_cast<std::size_t>(col)];
    if (acc != 0) return false;
  }
  return true;
}

namespace detail {

template <class Field>
struct EchelonBuilder {
  using Value = typename Field::Value;

  explicit EchelonBuilder(int cols, Field field) : cols(cols), field(std::move(field)), pivot_row(cols, -1) {}

  // Reduces `row` against the current pivots; if something survives, it
  // becomes a new pivot row and the pivot column is cleared from the others.
  void insert(std::vector<Value> row) {
    for (int c = 0; c < cols; ++c) {
      if (field.is_zero(row[c]) || pivot_row[c] < 0) continue;
      const Value factor = row[c];
      const auto& p = rows[static_cast<std::size_t>(pivot_row[c])];
      for (int d = 0; d < cols; ++d)
        if (!field.is_zero(p[d])) row[d] = field.sub(row[d], field.mul(factor, p[d]));
    }
    int lead = -1;
    for (int c = 0; c < cols; ++c)
      if (!field.is_zero(row[c])) {
        lead = c;
        break;
      }
    if (lead < 0) return;
    const Value inv = field.inv(row[lead]);
    for (int d = lead; d < cols; ++d)
      if (!field.is_zero(row[d])) row[d] = field.mul(row[d], inv);
    for (auto& other : rows) {
      if (field.is_zero(other[lead])) continue;
      const Value factor = other[lead];
      for (int d = 0; d < cols; ++d)
        if (!field.is_zero(row[d])) other[d] = field.sub(other[d], field.mul(factor, row[d]));
    }
    pivot_row[lead] = static_cast<int>(rows.size());
    rows.push_back(std::move(row));
  }

  int rank() const { return static_cast<int>(rows.size()); }

  std::vector<int> pivots() const {
    std::vector<int> out;
    for (int c = 0; c < cols; ++c)
      if (pivot_row[c] >= 0) out.push_back(c);
    return out;
  }

  int cols;
  Field field;
  std::vector<int> pivot_row;
  std::vector<std::vector<Value>> rows;
};

struct RationalField {
  using Value = Rational;
  bool is_zero(const Value& v) const { return v == 0; }
  Value sub(const Value& x, const Value& y) const { return x - y; }
  Value mul(const Value& x, const Value& y) const { return x * y; }
  Value inv(const Value& x) const { return 1 / x; }
};

struct PrimeField {
  using Value = std::uint64_t;
  std::uint64_t p;
  bool is_zero(Value v) const { return v == 0; }
  Value sub(Value x, Value y) const { return x >= y ? x - y : x + p - y; }
  Value mul(Value x, Value y) const { return (x * y) % p; }
  Value pow(Value base, std::uint64_t e) const {
    Value r = 1;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  Value inv(Value x) const { return pow(x, p - 2); }
};

// Descending primes below 2^31, generated on demand.
inline std::uint64_t nth_prime_below_2_31(std::size_t n) {
  static std::vector<std::uint64_t> cache;
  BigInt z = cache.empty() ? BigInt(2147483648UL) : BigInt(static_cast<unsigned long>(cache.back()));
  while (cache.size() <= n) {
    do {
      z -= 1;
    } while (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0);
    cache.push_back(z.get_ui());
  }
  return cache[n];
}

inline std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p) {
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  PrimeField f{p};
  return f.mul(num, f.inv(den));
}

// Wang's rational reconstruction: finds n/d == u (mod m) with |n|, d <= sqrt(m/2).
inline std::optional<Rational> reconstruct(const BigInt& u, const BigInt& m) {
  BigInt bound;
  BigInt half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

template <class Builder>
Nullspace extract_nullspace(const Builder& eb, auto&& to_rational) {
  Nullspace ns;
  ns.cols = eb.cols;
  ns.rank = eb.rank();
  ns.pivots = eb.pivots();
  for (int c = 0; c < eb.cols; ++c)
    if (eb.pivot_row[c] < 0) ns.free_cols.push_back(c);
  for (int f : ns.free_cols) {
    std::vector<Rational> v(static_cast<std::size_t>(eb.cols));
    v[static_cast<std::size_t>(f)] = 1;
    for (int c : ns.pivots) {
      const auto& entry = eb.rows[static_cast<std::size_t>(eb.pivot_row[c])][f];
      if (!eb.field.is_zero(entry)) v[static_cast<std::size_t>(c)] = -to_rational(entry);
    }
    ns.basis.push_back(std::move(v));
  }
  return ns;
}

}  // namespace detail

inline Nullspace nullspace_rational(const LinearSystem& sys) {
  detail::EchelonBuilder<detail::RationalField> eb(sys.cols, {});
  for (const auto& row : sys.rows) {
    std::vector<Rational> dense(static_cast<std::size_t>(sys.cols));
    for (const auto& [c, v] : row.terms) dense[static_cast<std::size_t>(c)] += v;
    eb.insert(std::move(dense));
  }
  return detail::extract_nullspace(eb, [](const Rational& q) { return q; });
}

/// Multi-modular kernel computation with an exact post-hoc certificate.
///
/// Primes for which the echelon structure differs from the best one seen
/// (smaller rank, or same rank with lexicographically later pivots) are
/// discarded. The reconstruction is accepted once two consecutive primes agree
/// on it and every vector verifies exactly; the dimension is then exact,
/// because rank mod p never exceeds the rank over Q.
inline Nullspace nullspace_modular(const LinearSystem& sys, std::size_t max_primes = 256) {
  using detail::PrimeField;
  std::vector<int> best_pivots;
  int best_rank = -1;
  std::vector<std::vector<BigInt>> residues;  // [free index][pivot index]
  BigInt modulus = 1;
  std::optional<Nullspace> previous;

  for (std::size_t n = 0; n < max_primes; ++n) {
    const std::uint64_t p = detail::nth_prime_below_2_31(n);
    detail::EchelonBuilder<PrimeField> eb(sys.cols, PrimeField{p});
    bool bad_prime = false;
    for (const auto& row : sys.rows) {
      std::vector<std::uint64_t> dense(static_cast<std::size_t>(sys.cols), 0);
      for (const auto& [c, v] : row.terms) {
        auto r = detail::reduce_mod(v, p);
        if (!r) {
          bad_prime = true;
          break;
        }
        dense[static_cast<std::size_t>(c)] = (dense[static_cast<std::size_t>(c)] + *r) % p;
      }
      if (bad_prime) break;
      eb.insert(std::move(dense));
    }
    if (bad_prime) continue;

    const auto pivots = eb.pivots();
    if (eb.rank() < best_rank || (eb.rank() == best_rank && pivots > best_pivots)) continue;
    if (eb.rank() > best_rank || pivots != best_pivots) {
      best_rank = eb.rank();
      best_pivots = pivots;
      residues.clear();
      modulus = 1;
      previous.reset();
    }

    std::vector<int> free_cols;
    for (int c = 0; c < sys.cols; ++c)
      if (eb.pivot_row[c] < 0) free_cols.push_back(c);
    if (residues.empty()) residues.assign(free_cols.size(), std::vector<BigInt>(pivots.size(), BigInt(0)));

    // CRT step: x := x + M * ((r - x) * M^{-1} mod p).
    const BigInt bp(static_cast<unsigned long>(p));
    BigInt minv;
    mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), bp.get_mpz_t());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi)
      for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        const std::uint64_t entry = eb.rows[static_cast<std::size_t>(eb.pivot_row[pivots[pi]])][free_cols[fi]];
        const std::uint64_t neg = entry == 0 ? 0 : p - entry;
        BigInt& x = residues[fi][pi];
        BigInt diff = BigInt(static_cast<unsigned long>(neg)) - x;
        BigInt t = (diff * minv) % bp;
        if (t < 0) t += bp;
        x += modulus * t;
      }
    modulus *= bp;

    Nullspace ns;
    ns.cols = sys.cols;
    ns.rank = best_rank;
    ns.pivots = pivots;
    ns.free_cols = free_cols;
    bool ok = true;
    for (std::size_t fi = 0; fi < free_cols.size() && ok; ++fi) {
      std::vector<Rational> v(static_cast<std::size_t>(sys.cols));
      v[static_cast<std::size_t>(free_cols[fi])] = 1;
      for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        auto q = detail::reconstruct(residues[fi][pi], modulus);
        if (!q) {
          ok = false;
          break;
        }
        v[static_cast<std::size_t>(pivots[pi])] = *q;
      }
      ns.basis.push_back(std::move(v));
    }
    if (!ok) {
      previous.reset();
      continue;
    }
    const bool stable = previous && previous->basis == ns.basis;
    previous = ns;
    if (!stable) continue;
    bool verified = true;
    for (const auto& v : ns.basis)
      if (!in_kernel(sys, v)) {
        verified = false;
        break;
      }
    if (verified) return ns;
  }
  throw InvariantError("modular nullspace did not converge");
}

/// Picks the modular route for large systems and the direct one otherwise.
inline Nullspace nullspace(const LinearSystem& sys) {
  const long work = long(sys.rows.size()) * sys.cols;
  return work > 4000 ? nullspace_modular(sys) : nullspace_rational(sys);
}

}  // namespace tensorclass
