#include "lexsym/cli.h"
#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lexsym: lexical algebra induction, homomorphisms, and augmentation"};
  app.require_subcommand(1);

  lexsym::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (LEXSYM_SEED overrides)");
    sub->add_option("--jobs", cfg.jobs, "worker threads; output order is canonical")
        ->check(CLI::PositiveNumber);
  };

  auto* induce = app.add_subcommand("induce", "induce a lexical algebra from a dataset");
  induce->add_option("--data", cfg.data_path, "dataset (.jsonl or .tsv)")->required();
  induce->add_option("--output", cfg.output_path, "algebra JSON output")->required();
  induce->add_option("--aligner", cfg.aligner, "ibm1 or ibm2");
  induce->add_option("--iterations", cfg.iterations, "EM iterations per stage");
  induce->add_option("--threshold", cfg.threshold, "min fraction of occurrences for a link");
  induce->add_option("--window", cfg.window, "context window w");
  induce->add_option("--tags", cfg.tags_path, "token\\ttag sidecar filtering congruence edges");
  induce->add_flag("--diagonal-prior", cfg.diagonal_prior, "fixed diagonal alignment prior");
  add_common(induce);

  auto* enumerate = app.add_subcommand("enumerate", "enumerate all L-homomorphisms");
  enumerate->add_option("--algebra", cfg.algebra_path, "algebra JSON")->required();
  enumerate->add_option("--output", cfg.output_path, "JSON array output (stdout if omitted)");
  enumerate->add_option("--max-vocab", cfg.max_vocab, "enumeration guard");
  enumerate->add_flag("--isomorphisms-only", cfg.isomorphisms_only, "bijective maps only");
  add_common(enumerate);

  auto* augment = app.add_subcommand("augment", "swap-sample augmented examples");
  augment->add_option("--data", cfg.data_path, "dataset (.jsonl or .tsv)")->required();
  augment->add_option("--algebra", cfg.algebra_path, "algebra JSON")->required();
  augment->add_option("--output", cfg.output_path, "augmented dataset output")->required();
  augment->add_option("--passes", cfg.passes, "pass count or 'online'");
  augment->add_option("--items", cfg.stream_items, "items to emit with --passes online");
  augment->add_option("--swaps-per-example", cfg.swaps_per_example, "swaps chained per example");
  augment->add_option("--novelty-key", cfg.novelty_key,
                      "text+meaning | text_only | question+answer");
  augment->add_flag("--include-identity", cfg.include_identity, "allow x_i = x_j swaps");
  augment->add_flag("--class-consistent", cfg.class_consistent,
                    "one draw per equivalence class instead of per occurrence");
  add_common(augment);

  auto* verify = app.add_subcommand("verify", "run a domain oracle over a dataset");
  verify->add_option("--data", cfg.data_path, "dataset (.jsonl or .tsv)")->required();
  verify->add_option("--domain", cfg.domain, "arithmetic | scan | mini_alchemy | grid_vqa")
      ->required();
  verify->add_option("--min-valid", cfg.min_valid, "exit 0 iff fraction >= this");
  verify->add_option("--max-failures", cfg.max_failures, "failures echoed to stderr");
  verify->add_option("--output", cfg.output_path, "report JSON output");
  add_common(verify);

  auto* stats = app.add_subcommand("stats", "dataset statistics");
  stats->add_option("--data", cfg.data_path, "dataset (.jsonl or .tsv)")->required();
  stats->add_option("--output", cfg.output_path, "stats JSON output");
  add_common(stats);

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {induce, enumerate, augment, verify, stats})
    if (sub->parsed()) cfg.subcommand = sub->get_name();

  return lexsym::run_cli(cfg);
}
