#pragma once

// Line arrangements in the plane x + y + z = 0 induced by a tightness witness.
//
// Index i of A gives the line x = tau_A(i), index j of B the line
// y = tau_B(j), index k of C the line x + y = -tau_C(k). Three lines meet in a
// joint exactly when tau_A(i) + tau_B(j) + tau_C(k) = 0, so a certified
// support lands injectively on joints. Everything is integer arithmetic.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "compress.hpp"
#include "witness.hpp"

namespace tensorclass {

struct Arrangement {
  // offsets[x] strictly increasing; labels[x][n] is the index carrying offsets[x][n].
  std::array<std::vector<std::int64_t>, 3> offsets;
  std::array<std::vector<int>, 3> labels;
  TightWitness witness;

  const std::vector<std::int64_t>& xs() const { return offsets[0]; }
  const std::vector<std::int64_t>& ys() const { return offsets[1]; }
  // z-lines are stored as x + y = offset, i.e. offset = -tau_C.
  const std::vector<std::int64_t>& zs() const { return offsets[2]; }

  Shape shape() const {
    return {static_cast<int>(offsets[0].size()), static_cast<int>(offsets[1].size()),
            static_cast<int>(offsets[2].size())};
  }
};

inline Arrangement build_arrangement(const TightWitness& w) {
  for (int x = 0; x < 3; ++x)
    if (w.axis(x).empty()) throw DomainError("witness has an empty axis");
  if (!w.is_injective()) throw InvariantError("arrangement needs an injective witness");
  Arrangement arr;
  arr.witness = w;
  for (int x = 0; x < 3; ++x) {
    const auto& tau = w.axis(x);
    std::vector<std::pair<std::int64_t, int>> lines;
    for (std::size_t n = 0; n < tau.size(); ++n) lines.emplace_back(x == 2 ? -tau[n] : tau[n], static_cast<int>(n));
    std::sort(lines.begin(), lines.end());
    for (const auto& [off, idx] : lines) {
      arr.offsets[static_cast<std::size_t>(x)].push_back(off);
      arr.labels[static_cast<std::size_t>(x)].push_back(idx);
    }
  }
  return arr;
}

struct Joint {
  Triple index;  // (i, j, k) in witness indices
  std::int64_t x = 0, y = 0;
  friend bool operator==(const Joint&, const Joint&) = default;
};

/// All joints, ordered by index triple.
inline std::vector<Joint> joints(const Arrangement& arr) {
  const auto& w = arr.witness;
  std::vector<Joint> out;
  const Shape sh = arr.shape();
  for (int i = 0; i < sh.a(); ++i)
    for (int j = 0; j < sh.b(); ++j)
      for (int k = 0; k < sh.c(); ++k)
        if (w.weight({i, j, k}) == 0)
          out.push_back({{i, j, k}, w.axis(0)[static_cast<std::size_t>(i)], w.axis(1)[static_cast<std::size_t>(j)]});
  return out;
}

inline Support joint_support(const Arrangement& arr) {
  std::vector<Triple> ts;
  for (const auto& jt : joints(arr)) ts.push_back(jt.index);
  return Support(arr.shape(), std::move(ts));
}

/// a' x-lines, b' y-lines and c' z-lines with no joint among them, as a box of
/// witness indices, or nullopt if no such choice exists.
inline std::optional<ZeroBox> joint_free_subarrangement(const Arrangement& arr, int a1, int b1, int c1) {
  const Shape sh = arr.shape();
  if (a1 < 1 || b1 < 1 || c1 < 1 || a1 > sh.a() || b1 > sh.b() || c1 > sh.c())
    throw DomainError("sub-arrangement needs between 1 and all lines in each direction");
  return find_zero_box(joint_support(arr), a1, b1, c1);
}

namespace detail {

inline std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }
inline std::int64_t ceil_div2(std::int64_t v) { return -floor_div2(-v); }

}  // namespace detail

/// Deterministic SVG: x-lines red, y-lines blue, z-lines green, joints as black
/// dots. The view is a square padded by one unit around all offsets and the
/// points where z-lines cross the diagonal; 40 px per unit.
inline std::string render_svg(const Arrangement& arr) {
  constexpr std::int64_t unit = 40;
  std::int64_t lo = 0, hi = 0;
  bool first = true;
  auto include = [&](std::int64_t l, std::int64_t h) {
    if (first) {
      lo = l;
      hi = h;
      first = false;
    }
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  };
  for (auto v : arr.xs()) include(v, v);
  for (auto v : arr.ys()) include(v, v);
  for (auto d : arr.zs()) include(detail::floor_div2(d), detail::ceil_div2(d));
  lo -= 1;
  hi += 1;
  const std::int64_t size = (hi - lo) * unit;
  auto px = [&](std::int64_t x) { return (x - lo) * unit; };
  auto py = [&](std::int64_t y) { return (hi - y) * unit; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  auto line = [&](std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2, const char* colour) {
    out << "<line x1=\"" << px(x1) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(x2) << "\" y2=\"" << py(y2)
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
  };
  for (auto v : arr.xs()) line(v, lo, v, hi, "#d62728");
  for (auto v : arr.ys()) line(lo, v, hi, v, "#1f77b4");
  for (auto d : arr.zs()) {
    const std::int64_t x1 = std::max(lo, d - hi), x2 = std::min(hi, d - lo);
    line(x1, d - x1, x2, d - x2, "#2ca02c");
  }
  for (const auto& jt : joints(arr))
    out << "<circle cx=\"" << px(jt.x) << "\" cy=\"" << py(jt.y) << "\" r=\"5\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

inline void write_svg(const Arrangement& arr, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << render_svg(arr);
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace tensorclass
