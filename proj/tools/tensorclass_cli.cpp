// Command line front end. Every subcommand prints a JSON run report on stdout;
// human-readable progress goes to stderr.
//
// Exit codes: 0 success, 1 invalid input, 2 undecided (Unknown or budget),
// 3 internal invariant violation or a failed reproduction check.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <tensorclass/tensorclass.hpp>

#include "support/acceptance.hpp"

namespace tc = tensorclass;
using tc::Json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUndecided = 2, kInvariant = 3 };

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Run {
 public:
  Json inputs = Json::array();
  Json results = Json::object();
  int code = kOk;

  Json load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw tc::IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    const std::string bytes = ss.str();
    inputs.push_back(Json{{"path", path}, {"fnv1a64", hex(fnv1a(bytes))}});
    try {
      return Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
      throw tc::DomainError(path + ": " + e.what());
    }
  }
};

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string in, in1, in2, witness_path, svg;
  std::string catalog, decide_kind, class_name;
  int param = 0;
  long budget = tc::kDefaultObliqueBudget;
  std::vector<int> dims;
  std::vector<std::string> theta{"1/3", "1/3", "1/3"};
  bool min_orders = false;
  double tol = 1e-9;
  long m = 0;
};

Json verdict_json(tc::Verdict v) { return Json(tc::to_string(v)); }

void cmd_construct(Run& run, const Options& o) {
  const auto kind = tc::parse_catalog_kind(o.catalog);
  if (!kind) {
    std::string names;
    for (const auto& [n, _] : tc::catalog_names()) names += (names.empty() ? "" : ", ") + n;
    throw tc::DomainError("unknown catalog id '" + o.catalog + "' (known: " + names + ")");
  }
  if (tc::catalog_takes_parameter(*kind) && o.param < 1) throw tc::DomainError(o.catalog + " needs a parameter >= 1");
  const tc::Tensor t = tc::construct({*kind, o.param});
  const Json j = tc::tensor_to_json(t);
  run.results = Json{{"catalog", o.catalog}, {"param", o.param}, {"tensor", j}};
  if (*kind == tc::CatalogKind::TMax)
    run.results["witness"] = tc::witness_to_json(tc::tight_max_support(o.param).second);
  if (!o.out.empty()) tc::write_text_file(o.out, j.dump() + "\n");
}

void cmd_decide(Run& run, const Options& o) {
  const tc::Support s = tc::support_from_json(run.load(o.in));
  run.results = Json{{"kind", o.decide_kind}, {"size", s.size()}};
  if (o.decide_kind == "tight") {
    const auto w = tc::decide_tight(s, o.seed);
    run.results["tight"] = w.has_value();
    run.results["witness"] = w ? tc::witness_to_json(*w) : Json(nullptr);
  } else if (o.decide_kind == "oblique") {
    const auto r = tc::decide_oblique(s, o.budget);
    run.results["verdict"] = verdict_json(r.verdict);
    run.results["via_tight"] = r.via_tight;
    run.results["nodes"] = r.nodes;
    run.results["permutations"] = r.witness ? tc::permutations_to_json(*r.witness) : Json(nullptr);
    if (r.verdict == tc::Verdict::Unknown) run.code = kUndecided;
  } else {
    run.results["free"] = tc::is_free(s);
  }
  if (!o.out.empty()) tc::write_text_file(o.out, run.results.dump(2) + "\n");
}

void cmd_census(Run& run, const Options& o) {
  run.results = tc::census_to_json(tc::census_m3());
  if (!o.out.empty()) tc::write_text_file(o.out, run.results.dump(2) + "\n");
}

void cmd_max_oblique(Run& run, const Options& o) {
  if (o.dims.size() != 3) throw tc::DomainError("max-oblique needs three dimensions");
  const auto b = tc::max_oblique_size(o.dims[0], o.dims[1], o.dims[2]);
  run.results = Json{{"bound", b.bound}, {"central_rank", b.central_rank}, {"achieving", tc::support_to_json(b.achieving)}};
}

void cmd_annihilator(Run& run, const Options& o) {
  const tc::Tensor t = tc::tensor_from_json(run.load(o.in));
  const auto r = tc::annihilator(t);
  run.results = tc::lie_report_to_json(r);
  const auto ev = tc::has_regular_semisimple(r, o.seed);
  run.results["regular_semisimple"] = Json{{"evidence", tc::to_string(ev.kind)},
                                           {"witness", ev.witness ? tc::witness_to_json(*ev.witness) : Json(nullptr)}};
  if (!o.out.empty()) tc::write_text_file(o.out, run.results.dump(2) + "\n");
}

void cmd_propagate(Run& run, const Options& o) {
  const tc::Tensor t = tc::tensor_from_json(run.load(o.in1));
  const tc::Tensor s = tc::tensor_from_json(run.load(o.in2));
  run.results = tc::propagation_to_json(tc::check_propagation(t, s));
}

void cmd_class_dim(Run& run, const Options& o) {
  const auto cls = tc::parse_tensor_class(o.class_name);
  if (!cls) throw tc::DomainError("unknown class '" + o.class_name + "' (MaMu, Tight, Oblique, Free, Ambient)");
  run.results = Json{{"class", o.class_name}, {"m", o.m}, {"dimension", tc::class_dimension(*cls, o.m)}};
}

void cmd_box(Run& run, const Options& o) {
  const tc::Support s = tc::support_from_json(run.load(o.in));
  if (o.dims.size() != 3) throw tc::DomainError("--dims needs three values");
  const auto box = tc::find_zero_box(s, o.dims[0], o.dims[1], o.dims[2]);
  run.results = Json{{"dims", o.dims}, {"found", box.has_value()}, {"box", box ? tc::zero_box_to_json(*box) : Json(nullptr)}};
}

void cmd_multi(Run& run, const Options& o) {
  const tc::Support s = tc::support_from_json(run.load(o.in));
  run.results = Json{{"multicompressibility", tc::multicompressibility(s)},
                     {"total_compressibility", tc::total_compressibility(s)}};
}

void cmd_cover(Run& run, const Options& o) {
  const tc::Support s = tc::support_from_json(run.load(o.in));
  const auto cover = tc::slice_cover(s);
  run.results = tc::slice_cover_to_json(cover);
  run.results["total_compressibility"] = tc::total_compressibility(s);
}

void cmd_zeta(Run& run, const Options& o) {
  const tc::Support s = tc::support_from_json(run.load(o.in));
  if (o.theta.size() != 3) throw tc::DomainError("--theta needs three values");
  const tc::SpectralWeights th(tc::parse_rational(o.theta[0]), tc::parse_rational(o.theta[1]), tc::parse_rational(o.theta[2]));
  tc::ZetaOptions opt;
  opt.tol = o.tol;
  const auto z = tc::zeta(s, th, opt);
  run.results = Json{{"label", "coordinate-flag upper bound"},
                     {"theta", o.theta},
                     {"value", z.value},
                     {"log2_value", z.objective},
                     {"gap", z.gap},
                     {"iterations", z.iterations},
                     {"converged", z.converged},
                     {"incompr_set", tc::support_to_json(tc::incompr_set(s))}};
  if (o.min_orders) {
    const auto best = tc::zeta_min_over_axis_orders(s, th, opt);
    if (!best) {
      run.results["min_over_axis_orders"] = Json{{"verdict", "Unknown"}, {"reason", "an axis has more than 4 indices"}};
      run.code = kUndecided;
    } else {
      run.results["min_over_axis_orders"] = Json{{"value", best->value},
                                                 {"permutations", tc::permutations_to_json(best->argmin)},
                                                 {"orderings", best->orderings},
                                                 {"distinct_sets", best->distinct_sets}};
    }
  }
}

void cmd_arrange(Run& run, const Options& o) {
  const tc::TightWitness w = tc::witness_from_json(run.load(o.witness_path));
  const tc::Arrangement arr = tc::build_arrangement(w);
  run.results = tc::arrangement_to_json(arr);
  if (!o.dims.empty()) {
    if (o.dims.size() != 3) throw tc::DomainError("--dims needs three values");
    const auto sub = tc::joint_free_subarrangement(arr, o.dims[0], o.dims[1], o.dims[2]);
    run.results["joint_free"] = Json{{"dims", o.dims}, {"found", sub.has_value()}, {"lines", sub ? tc::zero_box_to_json(*sub) : Json(nullptr)}};
  }
  if (!o.svg.empty()) {
    tc::write_svg(arr, o.svg);
    run.results["svg"] = o.svg;
  }
}

void cmd_reproduce(Run& run, const Options& o) {
  std::vector<std::future<acceptance::Outcome>> jobs;
  for (const auto& c : acceptance::criteria())
    jobs.push_back(std::async(std::launch::async, [&c, seed = o.seed] { return acceptance::run(c, seed); }));
  Json list = Json::array();
  int failed = 0;
  for (auto& j : jobs) {
    const auto r = j.get();
    std::cerr << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << '\n';
    list.push_back(Json{{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"summary", r.summary},
                        {"failures", r.failures},
                        {"seconds", r.seconds}});
    failed += !r.pass;
  }
  run.results = Json{{"criteria", std::move(list)}, {"passed", static_cast<int>(acceptance::criteria().size()) - failed},
                     {"failed", failed}};
  if (failed > 0) run.code = kInvariant;
  if (!o.out.empty()) tc::write_text_file(o.out, run.results.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial tensor classes: deciders, constructions, symmetries, compressibility"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "seed for randomized witnesses and generic tensors")->capture_default_str();
  app.add_option("--out", o.out, "also write the primary result to this file");
  app.set_version_flag("--version", tc::kVersion);

  auto* construct = app.add_subcommand("construct", "emit a catalog tensor as JSON");
  construct->add_option("catalog-id", o.catalog, "TMax, FMax, MatMul, MOneSum, TStd, Tcw, TCW, ObliqueNotTight4, NotTightCompressible4")->required();
  construct->add_option("param", o.param, "size parameter");

  auto* decide = app.add_subcommand("decide", "decide tightness, obliqueness or freeness of a support");
  decide->add_option("kind", o.decide_kind)->required()->check(CLI::IsMember({"tight", "oblique", "free"}));
  decide->add_option("--in", o.in, "support JSON")->required();
  decide->add_option("--budget", o.budget, "node budget for the oblique search")->capture_default_str();

  auto* census = app.add_subcommand("census-m3", "classify the maximal antichains of [3]^3");

  auto* max_oblique = app.add_subcommand("max-oblique", "largest oblique support in [a] x [b] x [c]");
  max_oblique->add_option("dims", o.dims, "a b c")->required()->expected(3);

  auto* symmetry = app.add_subcommand("symmetry", "annihilators, propagation and class dimensions");
  symmetry->require_subcommand(1);
  symmetry->fallthrough();
  auto* annihilator = symmetry->add_subcommand("annihilator", "exact annihilator of a tensor");
  annihilator->add_option("--in", o.in, "tensor JSON")->required();
  auto* propagate = symmetry->add_subcommand("propagate", "symmetries of direct sums and Kronecker products");
  propagate->add_option("--in1", o.in1, "first tensor JSON")->required();
  propagate->add_option("--in2", o.in2, "second tensor JSON")->required();
  auto* class_dim = symmetry->add_subcommand("class-dim", "closed-form dimension of a class");
  class_dim->add_option("class", o.class_name, "MaMu, Tight, Oblique, Free or Ambient")->required();
  class_dim->add_option("m", o.m)->required();

  auto* compress = app.add_subcommand("compress", "zero boxes, multicompressibility and slice covers");
  compress->require_subcommand(1);
  compress->fallthrough();
  auto* box = compress->add_subcommand("box", "find a zero box of given dimensions");
  box->add_option("--in", o.in, "support JSON")->required();
  box->add_option("--dims", o.dims, "a' b' c'")->required()->expected(3);
  auto* multi = compress->add_subcommand("multi", "multicompressibility");
  multi->add_option("--in", o.in, "support JSON")->required();
  auto* cover = compress->add_subcommand("cover", "minimum slice cover");
  cover->add_option("--in", o.in, "support JSON")->required();

  auto* zeta = app.add_subcommand("zeta", "support functional at the coordinate flags");
  zeta->add_option("--in", o.in, "support JSON")->required();
  zeta->add_option("--theta", o.theta, "three weights summing to 1, e.g. 1/3 1/3 1/3")->expected(3);
  zeta->add_flag("--min-orders", o.min_orders, "also minimize over axis orders (axes of size <= 4)");
  zeta->add_option("--tol", o.tol, "Frank-Wolfe gap tolerance")->capture_default_str();

  auto* arrange = app.add_subcommand("arrange", "line arrangement of a tightness witness");
  arrange->add_option("--witness", o.witness_path, "witness JSON")->required();
  arrange->add_option("--svg", o.svg, "write an SVG drawing");
  arrange->add_option("--dims", o.dims, "look for a joint-free sub-arrangement a' b' c'")->expected(3);

  auto* reproduce = app.add_subcommand("reproduce", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  Run run;
  Json command = Json::array();
  for (int n = 0; n < argc; ++n) command.push_back(argv[n]);
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    if (construct->parsed()) cmd_construct(run, o);
    else if (decide->parsed()) cmd_decide(run, o);
    else if (census->parsed()) cmd_census(run, o);
    else if (max_oblique->parsed()) cmd_max_oblique(run, o);
    else if (annihilator->parsed()) cmd_annihilator(run, o);
    else if (propagate->parsed()) cmd_propagate(run, o);
    else if (class_dim->parsed()) cmd_class_dim(run, o);
    else if (box->parsed()) cmd_box(run, o);
    else if (multi->parsed()) cmd_multi(run, o);
    else if (cover->parsed()) cmd_cover(run, o);
    else if (zeta->parsed()) cmd_zeta(run, o);
    else if (arrange->parsed()) cmd_arrange(run, o);
    else if (reproduce->parsed()) cmd_reproduce(run, o);
  } catch (const tc::InvariantError& e) {
    run.code = kInvariant;
    error = e.what();
  } catch (const tc::Error& e) {
    run.code = kInvalid;
    error = e.what();
  } catch (const nlohmann::json::exception& e) {
    run.code = kInvalid;
    error = e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json report{{"command", std::move(command)},
              {"seed", o.seed},
              {"inputs", run.inputs},
              {"results", error.empty() ? run.results : Json(nullptr)},
              {"exit_code", run.code},
              {"timing", {{"seconds", seconds}}},
              {"version", tc::kVersion}};
  if (!error.empty()) {
    report["error"] = error;
    std::cerr << "error: " << error << '\n';
  }
  std::cout << report.dump(2) << '\n';
  return run.code;
}
