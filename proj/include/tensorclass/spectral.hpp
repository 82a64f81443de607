#pragma once

// Strassen's support functional at coordinate flags.
//
// For a flag index (i, j, k) the restriction of T to the annihilators of the
// first i, j, k basis vectors is nonzero iff some support triple dominates
// (i, j, k). On that down-set the functional maximizes
//   theta_A H(p_A) + theta_B H(p_B) + theta_C H(p_C)
// over probability distributions p and returns 2^max. The objective is
// concave, so exponentiated gradient with the Frank-Wolfe gap as a stopping
// certificate gives the global maximum.
//
// Floating point is confined to this header.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "core.hpp"

namespace tensorclass {

struct SpectralWeights {
  std::array<Rational, 3> theta;

  SpectralWeights(Rational a, Rational b, Rational c) : theta{std::move(a), std::move(b), std::move(c)} {
    for (const auto& t : theta)
      if (t < 0) throw DomainError("theta components must be nonnegative");
    if (theta[0] + theta[1] + theta[2] != 1) throw DomainError("theta components must sum to 1");
  }
  static SpectralWeights uniform() { return {Rational(1, 3), Rational(1, 3), Rational(1, 3)}; }

  double operator[](int x) const { return theta[static_cast<std::size_t>(x)].get_d(); }
};

/// Down-set {(i,j,k) : some s in S has s >= (i,j,k)}.
inline Support incompr_set(const Support& s) {
  const Shape& sh = s.shape();
  std::vector<Triple> ts;
  for (int i = 0; i < sh.a(); ++i)
    for (int j = 0; j < sh.b(); ++j)
      for (int k = 0; k < sh.c(); ++k)
        for (const auto& t : s)
          if (dominated({i, j, k}, t)) {
            ts.push_back({i, j, k});
            break;
          }
  return Support(sh, std::move(ts));
}

struct SupportDistribution {
  Support domain;
  std::vector<double> p;  // aligned with domain.triples()

  SupportDistribution(Support d, std::vector<double> probs) : domain(std::move(d)), p(std::move(probs)) {
    if (p.size() != domain.size()) throw DomainError("distribution length differs from its domain");
    double total = 0;
    for (double v : p) {
      if (!(v >= 0)) throw DomainError("probabilities must be nonnegative");
      total += v;
    }
    if (std::abs(total - 1) > 1e-12) throw DomainError("probabilities must sum to 1");
  }

  static SupportDistribution uniform(const Support& d) {
    return {d, std::vector<double>(d.size(), 1.0 / static_cast<double>(d.size()))};
  }

  std::vector<double> marginal(int axis) const {
    std::vector<double> out(static_cast<std::size_t>(domain.shape()[axis]), 0.0);
    for (std::size_t n = 0; n < p.size(); ++n) out[static_cast<std::size_t>(domain[n][axis])] += p[n];
    return out;
  }
};

/// Shannon entropy in bits, 0 log 0 = 0.
inline double shannon_entropy(const std::vector<double>& q) {
  double h = 0;
  for (double v : q)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

inline double entropy(const SupportDistribution& d, int axis) { return shannon_entropy(d.marginal(axis)); }

struct ZetaOptions {
  double tol = 1e-9;
  long max_iterations = 100'000;
};

struct ZetaResult {
  double value = 0;      // 2^objective
  double objective = 0;  // weighted entropy at the returned distribution
  double gap = 0;        // Frank-Wolfe gap, an upper bound on optimum - objective
  long iterations = 0;
  bool converged = false;  // gap < tol
  std::vector<double> distribution;  // over incompr_set(S)
};

namespace detail {

struct EntropyObjective {
  const Support& domain;
  std::array<double, 3> theta;

  std::vector<double> marginal(const std::vector<double>& p, int x) const {
    std::vector<double> m(static_cast<std::size_t>(domain.shape()[x]), 0.0);
    for (std::size_t n = 0; n < p.size(); ++n) m[static_cast<std::size_t>(domain[n][x])] += p[n];
    return m;
  }

  double value(const std::vector<double>& p) const {
    double f = 0;
    for (int x = 0; x < 3; ++x)
      if (theta[static_cast<std::size_t>(x)] > 0) f += theta[static_cast<std::size_t>(x)] * shannon_entropy(marginal(p, x));
    return f;
  }

  // Gradient up to an additive constant shared by all coordinates.
  std::vector<double> gradient(const std::vector<double>& p) const {
    std::array<std::vector<double>, 3> logs;
    for (int x = 0; x < 3; ++x) {
      auto m = marginal(p, x);
      for (auto& v : m) v = std::log2(std::max(v, std::numeric_limits<double>::min()));
      logs[static_cast<std::size_t>(x)] = std::move(m);
    }
    std::vector<double> g(p.size(), 0.0);
    for (std::size_t n = 0; n < p.size(); ++n)
      for (int x = 0; x < 3; ++x)
        g[n] -= theta[static_cast<std::size_t>(x)] * logs[static_cast<std::size_t>(x)][static_cast<std::size_t>(domain[n][x])];
    return g;
  }
};

inline double fw_gap(const std::vector<double>& p, const std::vector<double>& g) {
  double best = -std::numeric_limits<double>::infinity(), avg = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    best = std::max(best, g[n]);
    avg += p[n] * g[n];
  }
  return best - avg;
}

}  // namespace detail

/// Maximum weighted marginal entropy over distributions on `domain`.
inline ZetaResult maximize_entropy(const Support& domain, const SpectralWeights& theta, ZetaOptions opt = {}) {
  if (domain.empty()) throw DomainError("support functional of an empty support");
  if (!(opt.tol > 0)) throw DomainError("tolerance must be positive");
  const detail::EntropyObjective obj{domain, {theta[0], theta[1], theta[2]}};
  const std::size_t n = domain.size();
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  double f = obj.value(p);
  ZetaResult r;
  double eta = 1.0;
  bool stalled = false;
  double window_start = f;
  for (r.iterations = 0; r.iterations < opt.max_iterations; ++r.iterations) {
    const auto g = obj.gradient(p);
    r.gap = detail::fw_gap(p, g);
    if (r.gap < opt.tol) {
      r.converged = true;
      break;
    }
    if (r.iterations % 1000 == 0) {
      // Progress below double resolution over a whole window: stop.
      if (r.iterations > 0 && f - window_start < 1e-14) break;
      window_start = f;
    }
    const double gmax = *std::max_element(g.begin(), g.end());
    double step = eta;
    for (int tries = 0;; ++tries) {
      std::vector<double> q(n);
      double z = 0;
      for (std::size_t u = 0; u < n; ++u) z += q[u] = p[u] * std::exp(step * (g[u] - gmax));
      for (auto& v : q) v /= z;
      const double fq = obj.value(q);
      if (fq >= f) {
        p = std::move(q);
        f = fq;
        eta = std::min(step * 1.5, 1e6);
        break;
      }
      step /= 2;
      if (tries > 60) {  // no ascent direction left at double precision
        stalled = true;
        break;
      }
    }
    if (stalled) break;
  }
  r.objective = f;
  r.value = std::exp2(f);
  r.distribution = std::move(p);
  return r;
}

/// Support functional of S at the coordinate flags of the given basis.
inline ZetaResult zeta(const Support& s, const SpectralWeights& theta, ZetaOptions opt = {}) {
  if (s.empty()) throw DomainError("support functional of an empty support");
  return maximize_entropy(incompr_set(s), theta, opt);
}

/// Entropy-cap upper bound 2^(sum theta_x log2 n_x).
inline double zeta_upper_bound(const Shape& sh, const SpectralWeights& theta) {
  double e = 0;
  for (int x = 0; x < 3; ++x) e += theta[x] * std::log2(static_cast<double>(sh[x]));
  return std::exp2(e);
}

struct ZetaMinResult {
  double value = 0;
  AxisPermutations argmin;
  std::size_t orderings = 0;
  std::size_t distinct_sets = 0;
};

/// Minimum of zeta over all reorderings of the three index ranges, an upper
/// bound for the functional over all flags. nullopt when an axis exceeds 4.
inline std::optional<ZetaMinResult> zeta_min_over_axis_orders(const Support& s, const SpectralWeights& theta,
                                                              ZetaOptions opt = {}) {
  const Shape& sh = s.shape();
  for (int x = 0; x < 3; ++x)
    if (sh[x] > 4) return std::nullopt;
  std::array<std::vector<std::vector<int>>, 3> perms;
  for (int x = 0; x < 3; ++x) {
    std::vector<int> v(static_cast<std::size_t>(sh[x]));
    for (int n = 0; n < sh[x]; ++n) v[static_cast<std::size_t>(n)] = n;
    do perms[static_cast<std::size_t>(x)].push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
  }
  std::map<std::vector<Triple>, double> cache;
  std::optional<ZetaMinResult> best;
  std::size_t count = 0;
  for (const auto& pa : perms[0])
    for (const auto& pb : perms[1])
      for (const auto& pc : perms[2]) {
        AxisPermutations p({pa, pb, pc});
        const Support down = incompr_set(apply_permutations(s, p));
        auto it = cache.find(down.triples());
        if (it == cache.end()) it = cache.emplace(down.triples(), maximize_entropy(down, theta, opt).value).first;
        ++count;
        if (!best || it->second < best->value) best = ZetaMinResult{it->second, p, 0, 0};
      }
  best->orderings = count;
  best->distinct_sets = cache.size();
  return best;
}

}  // namespace tensorclass
