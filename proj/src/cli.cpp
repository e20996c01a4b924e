#include "lexsym/cli.h"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <unordered_set>

#include "lexsym/augment.h"
#include "lexsym/induction.h"
#include "lexsym/oracles.h"
#include "lexsym/rng.h"
#include "lexsym/symmetry.h"
#include "json.hpp"

namespace lexsym {

namespace {

using nlohmann::json;

Format format_for(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0 ? Format::tsv
                                                                           : Format::jsonl;
}

Dataset load_or_exit(const std::string& stage, const std::string& path, int* code) {
  try {
    return load_dataset(path, format_for(path));
  } catch (const std::exception& ex) {
    std::string what = ex.what();
    std::cerr << "[" << stage << "] " << what << "\n";
    *code = what.find("empty dataset") != std::string::npos ? kEmptyDataset : kError;
    return {};
  }
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

// Reproducibility manifest: the resolved config, written next to the output.
void write_manifest(const RunConfig& cfg, const std::string& output_path) {
  json j{{"subcommand", cfg.subcommand},
         {"data", cfg.data_path},
         {"output", cfg.output_path},
         {"algebra", cfg.algebra_path},
         {"domain", cfg.domain},
         {"seed", cfg.seed},
         {"aligner", cfg.aligner},
         {"iterations", cfg.iterations},
         {"threshold", cfg.threshold},
         {"window", cfg.window},
         {"tags", cfg.tags_path},
         {"diagonal_prior", cfg.diagonal_prior},
         {"passes", cfg.passes},
         {"stream_items", cfg.stream_items},
         {"swaps_per_example", cfg.swaps_per_example},
         {"novelty_key", cfg.novelty_key},
         {"include_identity", cfg.include_identity},
         {"class_consistent", cfg.class_consistent},
         {"max_vocab", cfg.max_vocab},
         {"isomorphisms_only", cfg.isomorphisms_only},
         {"min_valid", cfg.min_valid},
         {"jobs", cfg.jobs}};
  write_text(output_path + ".manifest.json", j.dump(2) + "\n");
}

// Loads and strictly validates the algebra against the dataset vocabulary.
int load_algebra_checked(const std::string& stage, const RunConfig& cfg,
                         std::shared_ptr<Vocabulary> vocab, LexicalAlgebra* out) {
  if (cfg.algebra_path.empty()) {
    std::cerr << "[" << stage << "] --algebra is required\n";
    return kError;
  }
  try {
    *out = vocab ? load_algebra(cfg.algebra_path, vocab) : load_algebra(cfg.algebra_path);
  } catch (const std::exception& ex) {
    std::cerr << "[" << stage << "] " << ex.what() << "\n";
    return kError;
  }
  auto violations = validate_algebra(*out);
  if (!violations.empty()) {
    for (const auto& v : violations)
      std::cerr << "[" << stage << "] invalid algebra (" << v.condition << "): " << v.detail << "\n";
    return kInvalidAlgebra;
  }
  return kOk;
}

}  // namespace

int cmd_induce(const RunConfig& cfg) {
  int code = kOk;
  Dataset d = load_or_exit("induce", cfg.data_path, &code);
  if (code) return code;

  InductionConfig icfg;
  if (cfg.aligner == "ibm1")
    icfg.aligner = AlignerKind::ibm1;
  else if (cfg.aligner == "ibm2")
    icfg.aligner = AlignerKind::ibm2;
  else {
    std::cerr << "[induce] unknown aligner '" << cfg.aligner << "'\n";
    return kError;
  }
  icfg.iterations = cfg.iterations;
  icfg.threshold = cfg.threshold;
  icfg.window = cfg.window;
  icfg.tags_path = cfg.tags_path;
  icfg.diagonal_prior = cfg.diagonal_prior;
  icfg.seed = cfg.seed;

  InductionReport report;
  LexicalAlgebra a;
  try {
    a = induce_algebra(d, icfg, &report);
  } catch (const std::exception& ex) {
    std::cerr << "[induce] " << ex.what() << "\n";
    return kError;
  }

  if (cfg.output_path.empty()) {
    std::cerr << "[induce] --output is required\n";
    return kError;
  }
  save_algebra(a, cfg.output_path);

  json rep{{"log_likelihood", report.log_likelihood},
           {"correspondence_entries", report.correspondence_entries}};
  rep["component_sizes"] = json::object();
  for (const auto& [name, size] : report.component_sizes) rep["component_sizes"][name] = size;
  write_text(cfg.output_path + ".report.json", rep.dump(2) + "\n");
  write_manifest(cfg, cfg.output_path);

  std::cout << "induced " << report.correspondence_entries << " correspondences, "
            << a.type_relations.size() << " types from " << d.examples.size() << " examples\n";
  return kOk;
}

int cmd_enumerate(const RunConfig& cfg) {
  LexicalAlgebra a;
  int code = load_algebra_checked("enumerate", cfg, nullptr, &a);
  if (code) return code;

  EnumerateOptions opt;
  opt.max_vocab = cfg.max_vocab;
  opt.isomorphisms_only = cfg.isomorphisms_only;

  std::vector<SymbolMap> maps;
  try {
    maps = enumerate_homomorphisms(a, opt);
  } catch (const std::exception& ex) {
    std::string what = ex.what();
    std::cerr << "[enumerate] " << what << "\n";
    return what.find("guard") != std::string::npos ? kGuardExceeded : kError;
  }

  json arr = json::array();
  for (const auto& f : maps) arr.push_back(json::parse(symbol_map_to_json(f, a)));
  std::string body = arr.dump(2) + "\n";
  if (!cfg.output_path.empty()) {
    write_text(cfg.output_path, body);
    write_manifest(cfg, cfg.output_path);
  } else {
    std::cout << body;
  }
  std::cout << maps.size() << " homomorphisms\n";
  return kOk;
}

int cmd_augment(const RunConfig& cfg) {
  int code = kOk;
  Dataset d = load_or_exit("augment", cfg.data_path, &code);
  if (code) return code;

  LexicalAlgebra a;
  code = load_algebra_checked("augment", cfg, d.vocab, &a);
  if (code) return code;

  AugmentationConfig acfg;
  acfg.seed = cfg.seed;
  acfg.swaps_per_example = cfg.swaps_per_example;
  acfg.exclude_identity = !cfg.include_identity;
  acfg.class_consistent = cfg.class_consistent;
  acfg.jobs = cfg.jobs;
  try {
    acfg.novelty_key = novelty_key_from_name(cfg.novelty_key);
  } catch (const std::exception& ex) {
    std::cerr << "[augment] " << ex.what() << "\n";
    return kError;
  }

  if (cfg.output_path.empty()) {
    std::cerr << "[augment] --output is required\n";
    return kError;
  }

  Dataset out;
  AugmentationStats stats;
  try {
    if (cfg.passes == "online") {
      if (cfg.stream_items <= 0) {
        std::cerr << "[augment] --passes online requires --items > 0\n";
        return kError;
      }
      AugmentStream stream(d, a, acfg);
      out.name = d.name + "+aug";
      out.vocab = d.vocab;
      for (long i = 0; i < cfg.stream_items; i++) out.examples.push_back(stream.next());
      // Novelty accounting over the synthesized half of the stream.
      std::unordered_set<std::string> train_keys, test_keys, novel_seen, test_seen;
      for (const Example& e : d.examples) {
        if (e.split == Split::train) train_keys.insert(novelty_string(d, e, acfg.novelty_key));
        if (e.split == Split::test) test_keys.insert(novelty_string(d, e, acfg.novelty_key));
      }
      for (size_t i = 1; i < out.examples.size(); i += 2) {
        const Example& e = out.examples[i];
        stats.augmented++;
        auto it = e.extras.find("augmentation");
        if (it != e.extras.end() && it->second == "noop") continue;
        std::string k = novelty_string(d, e, acfg.novelty_key);
        if (train_keys.count(k)) continue;
        stats.novel++;
        if (novel_seen.insert(k).second) stats.unique_novel++;
        if (test_keys.count(k)) {
          stats.in_test++;
          if (test_seen.insert(k).second) stats.unique_in_test++;
        }
      }
    } else {
      size_t pos = 0;
      int passes = 0;
      try {
        passes = std::stoi(cfg.passes, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (pos != cfg.passes.size() || passes < 0) {
        std::cerr << "[augment] --passes must be a non-negative integer or 'online'\n";
        return kError;
      }
      std::tie(out, stats) = augment_passes(d, a, acfg, passes);
    }
  } catch (const std::exception& ex) {
    std::cerr << "[augment] " << ex.what() << "\n";
    return kError;
  }

  save_dataset(out, cfg.output_path, format_for(cfg.output_path));
  json st{{"augmented", stats.augmented},
          {"novel", stats.novel},
          {"unique_novel", stats.unique_novel},
          {"in_test", stats.in_test},
          {"unique_in_test", stats.unique_in_test}};
  write_text(cfg.output_path + ".stats.json", st.dump(2) + "\n");
  write_manifest(cfg, cfg.output_path);

  std::cout << "augmented " << stats.augmented << " examples (" << stats.novel << " novel, "
            << stats.unique_novel << " unique)\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  int code = kOk;
  Dataset d = load_or_exit("verify", cfg.data_path, &code);
  if (code) return code;

  if (cfg.domain.empty()) {
    std::cerr << "[verify] --domain is required\n";
    return kError;
  }
  Domain domain;
  try {
    domain = domain_from_name(cfg.domain);
  } catch (const std::exception& ex) {
    std::cerr << "[verify] " << ex.what() << "\n";
    return kError;
  }

  VerifyReport rep;
  try {
    rep = verify_dataset(d, domain, cfg.jobs);
  } catch (const AdapterError& ex) {
    std::cerr << "[verify] adapter mismatch: " << ex.what() << "\n";
    return kAdapterMismatch;
  } catch (const std::exception& ex) {
    std::cerr << "[verify] " << ex.what() << "\n";
    return kError;
  }

  std::cout << "valid " << rep.valid << "/" << rep.total << " fraction " << std::fixed
            << std::setprecision(6) << rep.fraction << "\n";
  int shown = 0;
  for (const auto& f : rep.failures) {
    if (shown++ >= cfg.max_failures) {
      std::cerr << "[verify] ... " << (rep.failures.size() - shown + 1) << " more failures\n";
      break;
    }
    std::cerr << "[verify] " << f.id << ": " << f.reason << "\n";
  }

  if (!cfg.output_path.empty()) {
    json j{{"total", rep.total},   {"valid", rep.valid},         {"invalid", rep.invalid},
           {"malformed", rep.malformed}, {"fraction", rep.fraction}};
    j["failures"] = json::array();
    for (const auto& f : rep.failures) j["failures"].push_back({{"id", f.id}, {"reason", f.reason}});
    write_text(cfg.output_path, j.dump(2) + "\n");
    write_manifest(cfg, cfg.output_path);
  }
  return rep.fraction >= cfg.min_valid ? kOk : kError;
}

int cmd_stats(const RunConfig& cfg) {
  int code = kOk;
  Dataset d = load_or_exit("stats", cfg.data_path, &code);
  if (code) return code;

  long per_split[3] = {0, 0, 0};
  size_t text_tokens = 0, meaning_tokens = 0, max_text = 0, max_meaning = 0;
  for (const Example& e : d.examples) {
    per_split[static_cast<int>(e.split)]++;
    text_tokens += e.text.size();
    meaning_tokens += e.meaning.size();
    max_text = std::max(max_text, e.text.size());
    max_meaning = std::max(max_meaning, e.meaning.size());
  }
  auto [text_vocab, meaning_vocab] = vocabulary_partition(d);

  json j{{"examples", d.examples.size()},
         {"splits",
          {{"train", per_split[0]}, {"validation", per_split[1]}, {"test", per_split[2]}}},
         {"vocab", {{"text", text_vocab.size()}, {"meaning", meaning_vocab.size()}}},
         {"tokens", {{"text", text_tokens}, {"meaning", meaning_tokens}}},
         {"max_length", {{"text", max_text}, {"meaning", max_meaning}}}};
  std::string body = j.dump(2) + "\n";
  std::cout << body;
  if (!cfg.output_path.empty()) {
    write_text(cfg.output_path, body);
    write_manifest(cfg, cfg.output_path);
  }
  return kOk;
}

int run_cli(RunConfig cfg) {
  if (const char* env = std::getenv("LEXSYM_SEED")) {
    try {
      size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
      cfg.seed = static_cast<uint64_t>(v);
    } catch (const std::exception&) {
      std::cerr << "[cli] ignoring non-numeric LEXSYM_SEED '" << env << "'\n";
    }
  }

  try {
    if (cfg.subcommand == "induce") return cmd_induce(cfg);
    if (cfg.subcommand == "enumerate") return cmd_enumerate(cfg);
    if (cfg.subcommand == "augment") return cmd_augment(cfg);
    if (cfg.subcommand == "verify") return cmd_verify(cfg);
    if (cfg.subcommand == "stats") return cmd_stats(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "[" << cfg.subcommand << "] " << ex.what() << "\n";
    return kError;
  }
  std::cerr << "[cli] unknown subcommand '" << cfg.subcommand << "'\n";
  return kError;
}

}  // namespace lexsym
