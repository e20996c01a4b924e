// Emits the built-in fixture corpora and hand algebras as files, so CLI runs
// and external experiments can share the exact data the tests use.
#include <iostream>

#include "lexsym/fixtures.h"
#include "CLI11.hpp"

using namespace lexsym;

int main(int argc, char** argv) {
  CLI::App app{"lexsym-gen: write fixture datasets and hand algebras"};

  std::string what, output;
  int n = 1000;
  int reps = 25;
  std::uint64_t seed = 0;
  app.add_option("what", what,
                 "scan | grid-induction | grid-verify | mini-alchemy | cogs | arithmetic | "
                 "scan-algebra | cogent-algebra | mini-alchemy-algebra | arithmetic-algebra")
      ->required();
  app.add_option("--output", output, "output path")->required();
  app.add_option("--n", n, "example count for sized corpora");
  app.add_option("--reps", reps, "repetitions per template for grid-induction");
  app.add_option("--seed", seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (what == "scan") {
      save_dataset(make_scan_dataset(), output);
    } else if (what == "grid-induction") {
      save_dataset(make_grid_induction_dataset(reps, seed), output);
    } else if (what == "grid-verify") {
      save_dataset(make_grid_verification_dataset(n, seed), output);
    } else if (what == "mini-alchemy") {
      save_dataset(make_mini_alchemy_dataset(n, seed), output);
    } else if (what == "cogs") {
      save_dataset(make_cogs_dataset(), output);
    } else if (what == "arithmetic") {
      save_dataset(make_arithmetic_dataset(), output);
    } else if (what == "scan-algebra") {
      Dataset d = make_scan_dataset();
      save_algebra(make_scan_algebra(d), output);
    } else if (what == "cogent-algebra") {
      Dataset d = make_grid_induction_dataset(1, seed);
      save_algebra(make_cogent_algebra(d), output);
    } else if (what == "mini-alchemy-algebra") {
      Dataset d = make_mini_alchemy_dataset(1, seed);
      save_algebra(make_mini_alchemy_algebra(d), output);
    } else if (what == "arithmetic-algebra") {
      Dataset d = make_arithmetic_dataset();
      save_algebra(make_arithmetic_algebra(d), output);
    } else {
      std::cerr << "unknown fixture '" << what << "'\n";
      return 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << "\n";
    return 1;
  }
  return 0;
}
