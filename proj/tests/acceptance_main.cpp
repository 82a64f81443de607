// Runs the acceptance criteria and prints one line per criterion.
//
//   tensorclass_acceptance [--seed N] [--only ID]
//
// Exit status is 0 when every selected criterion passes.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "support/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tensorclass acceptance suite"};
  std::uint64_t seed = 0;
  int only = 0;
  app.add_option("--seed", seed, "seed for the randomized families");
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : acceptance::criteria()) {
    if (only != 0 && c.id != only) continue;
    const auto o = acceptance::run(c, seed);
    std::printf("[%s] criterion %d: %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", o.id, o.title.c_str(), o.seconds,
                o.summary.c_str());
    for (const auto& f : o.failures) std::printf("       - %s\n", f.c_str());
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
