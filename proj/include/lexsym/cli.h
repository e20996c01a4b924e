#pragma once

#include <cstdint>
#include <string>

namespace lexsym {

// Stable exit codes, also used by the test suite.
enum ExitCode {
  kOk = 0,
  kError = 1,          // generic failure (including verify below --min-valid)
  kEmptyDataset = 2,
  kInvalidAlgebra = 3,
  kAdapterMismatch = 4,
  kGuardExceeded = 5,
};

struct RunConfig {
  std::string subcommand;

  std::string data_path;
  std::string output_path;
  std::string algebra_path;
  std::string domain;

  uint64_t seed = 0;

  // induction
  std::string aligner = "ibm2";
  int iterations = 5;
  double threshold = 0.01;
  int window = 1;
  std::string tags_path;
  bool diagonal_prior = false;

  // augmentation
  std::string passes = "1";  // non-negative integer or "online"
  long stream_items = 0;     // required with --passes online
  int swaps_per_example = 1;
  std::string novelty_key = "text+meaning";
  bool include_identity = false;
  bool class_consistent = false;

  // enumeration
  int max_vocab = 8;
  bool isomorphisms_only = false;

  // verification
  double min_valid = 1.0;
  int max_failures = 10;

  int jobs = 1;
};

int cmd_induce(const RunConfig& cfg);
int cmd_enumerate(const RunConfig& cfg);
int cmd_augment(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_stats(const RunConfig& cfg);

// Dispatches on cfg.subcommand; LEXSYM_SEED in the environment overrides
// cfg.seed first.
int run_cli(RunConfig cfg);

}  // namespace lexsym
