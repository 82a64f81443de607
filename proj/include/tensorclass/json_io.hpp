#pragma once

// JSON encodings shared by the command line tool and the tests.
//
//   tensor / support: {"shape":[a,b,c],"entries":[{"idx":[i,j,k],"coef":"p/q"},...]}
//                     ("coef" omitted for supports, read as 1 when absent)
//   witness:          {"tauA":[...],"tauB":[...],"tauC":[...]}

#include <fstream>
#include <limits>
#include <set>
#include <string>

#include <json.hpp>

#include "arrangement.hpp"
#include "compress.hpp"
#include "deciders.hpp"
#include "symmetry.hpp"

namespace tensorclass {

using Json = nlohmann::ordered_json;

inline Json shape_to_json(const Shape& sh) { return Json::array({sh.a(), sh.b(), sh.c()}); }

inline Json triple_to_json(const Triple& t) { return Json::array({t[0], t[1], t[2]}); }

inline Json support_to_json(const Support& s) {
  Json entries = Json::array();
  for (const auto& t : s) entries.push_back(Json{{"idx", triple_to_json(t)}});
  return Json{{"shape", shape_to_json(s.shape())}, {"entries", std::move(entries)}};
}

inline Json tensor_to_json(const Tensor& t) {
  Json entries = Json::array();
  for (const auto& [idx, v] : t.entries())
    entries.push_back(Json{{"idx", triple_to_json(idx)}, {"coef", format_rational(v)}});
  return Json{{"shape", shape_to_json(t.shape())}, {"entries", std::move(entries)}};
}

namespace detail {

inline int json_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw DomainError(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) throw DomainError(what + " out of range");
  return static_cast<int>(v);
}

inline Triple json_triple(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw DomainError(what + " must be an array of three integers");
  return {json_int(j[0], what), json_int(j[1], what), json_int(j[2], what)};
}

}  // namespace detail

inline Tensor tensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("entries"))
    throw DomainError("tensor JSON needs \"shape\" and \"entries\"");
  const Triple d = detail::json_triple(j.at("shape"), "shape");
  Tensor t(Shape(d[0], d[1], d[2]));
  const Json& entries = j.at("entries");
  if (!entries.is_array()) throw DomainError("\"entries\" must be an array");
  std::set<Triple> seen;
  for (const auto& e : entries) {
    if (!e.is_object() || !e.contains("idx")) throw DomainError("entry without \"idx\"");
    const Triple idx = detail::json_triple(e.at("idx"), "idx");
    if (!seen.insert(idx).second) throw DomainError("duplicate entry " + to_string(idx));
    Rational coef = 1;
    if (e.contains("coef")) {
      if (!e.at("coef").is_string()) throw DomainError("\"coef\" must be a string \"p/q\"");
      coef = parse_rational(e.at("coef").get<std::string>());
    }
    if (coef == 0) throw DomainError("zero coefficient at " + to_string(idx));
    t.set(idx, coef);
  }
  return t;
}

inline Support support_from_json(const Json& j) { return tensor_from_json(j).support(); }

inline Json witness_to_json(const TightWitness& w) {
  return Json{{"tauA", w.tau[0]}, {"tauB", w.tau[1]}, {"tauC", w.tau[2]}};
}

inline TightWitness witness_from_json(const Json& j) {
  TightWitness w;
  const char* keys[3] = {"tauA", "tauB", "tauC"};
  for (int x = 0; x < 3; ++x) {
    if (!j.is_object() || !j.contains(keys[x]) || !j.at(keys[x]).is_array())
      throw DomainError(std::string("witness JSON needs an array \"") + keys[x] + "\"");
    for (const auto& v : j.at(keys[x])) {
      if (!v.is_number_integer()) throw DomainError("witness values must be integers");
      w.tau[static_cast<std::size_t>(x)].push_back(v.get<std::int64_t>());
    }
  }
  return w;
}

inline Json permutations_to_json(const AxisPermutations& p) {
  return Json::array({p.axis(0), p.axis(1), p.axis(2)});
}

inline Json census_to_json(const CensusReport& r) {
  Json orbits = Json::array();
  for (const auto& o : r.orbits) {
    Json e{{"representative", support_to_json(o.representative)}, {"orbit_size", o.orbit_size}};
    e["tight"] = o.witness.has_value();
    e["witness"] = o.witness ? witness_to_json(*o.witness) : Json(nullptr);
    orbits.push_back(std::move(e));
  }
  return Json{{"counts", {{"maximal", r.maximal}, {"concise", r.concise}, {"orbits", r.orbits.size()}}},
              {"orbits", std::move(orbits)}};
}

inline Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(format_rational(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json lie_report_to_json(const LieSolveReport& r) {
  Json basis = Json::array();
  for (const auto& l : r.basis)
    basis.push_back(Json{{"X", matrix_to_json(l.block(0))}, {"Y", matrix_to_json(l.block(1))}, {"Z", matrix_to_json(l.block(2))}});
  return Json{{"shape", shape_to_json(r.shape)},
              {"kernel_dim", r.kernel_dim},
              {"annihilator_dim", r.annihilator_dim},
              {"basis", std::move(basis)}};
}

inline Json propagation_to_json(const PropagationReport& r) {
  return Json{{"dims", {{"T", r.dim_t}, {"S", r.dim_s}, {"sum", r.dim_sum}, {"product", r.dim_product}}},
              {"kernel_dims", {{"T", r.kernel_t}, {"S", r.kernel_s}, {"sum", r.kernel_sum}, {"product", r.kernel_product}}},
              {"sum_additive", r.sum_additive},
              {"product_contains", r.product_contains},
              {"trivial_propagates", r.trivial_propagates},
              {"lifts_annihilate", r.lifts_annihilate},
              {"product_strict", r.product_strict}};
}

inline Json zero_box_to_json(const ZeroBox& b) {
  return Json{{"I", b.axis(0)}, {"J", b.axis(1)}, {"K", b.axis(2)}};
}

inline Json slice_cover_to_json(const SliceCover& c) {
  Json slices = Json::array();
  for (const auto& s : c.slices) slices.push_back(Json{{"axis", s.axis}, {"index", s.index}});
  return Json{{"size", c.size()}, {"slices", std::move(slices)}};
}

inline Json arrangement_to_json(const Arrangement& a) {
  Json js = Json::array();
  for (const auto& jt : joints(a)) js.push_back(Json{{"idx", triple_to_json(jt.index)}, {"x", jt.x}, {"y", jt.y}});
  return Json{{"xs", a.xs()}, {"ys", a.ys()}, {"zs", a.zs()}, {"joints", std::move(js)}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace tensorclass
