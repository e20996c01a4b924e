#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lexsym/algebra.h"
#include "lexsym/corpus.h"
#include "lexsym/symmetry.h"

namespace lexsym {

enum class NoveltyKey { text_meaning, text_only, question_answer };

NoveltyKey novelty_key_from_name(const std::string& name);
std::string novelty_key_name(NoveltyKey k);

struct AugmentationConfig {
  int swaps_per_example = 1;
  uint64_t seed = 0;
  NoveltyKey novelty_key = NoveltyKey::text_meaning;
  bool exclude_identity = true;
  bool class_consistent = false;
  int jobs = 1;
};

struct AugmentationStats {
  long augmented = 0;
  long novel = 0;
  long unique_novel = 0;
  long in_test = 0;
  long unique_in_test = 0;
};

// The string identity used for novelty accounting. question_answer reads the
// text stream: in the grid-VQA layout it is exactly question + answer tokens,
// while generated meaning codes may be novel without the triple being novel.
std::string novelty_string(const Dataset& d, const Example& e, NoveltyKey k);

// One sampled swap: uniformly pick an eligible type (>= 2 text members, one of
// them present in the example's swappable positions), uniformly pick a pair
// (x_i present, x_j from the rest of the type), build the swap, and apply it.
// Candidates failing the homomorphism check against extra relations are rejected.
// Returns the example unchanged (plus a noop marker) when nothing applies.
Example sample_augmentation(const Dataset& d, const LexicalAlgebra& a, const Example& e,
                            std::mt19937_64& rng, const AugmentationConfig& cfg = {});

// One augmented example per train example; original dataset untouched.
std::pair<Dataset, AugmentationStats> augment_pass(const Dataset& d, const LexicalAlgebra& a,
                                                   const AugmentationConfig& cfg);

// cfg.seed is re-derived per pass; stats are cumulative with uniqueness
// computed across all passes.
std::pair<Dataset, AugmentationStats> augment_passes(const Dataset& d, const LexicalAlgebra& a,
                                                     const AugmentationConfig& cfg, int passes);

// Unbounded deterministic stream interleaving originals and augmented
// examples 1:1 over the train split.
class AugmentStream {
 public:
  AugmentStream(const Dataset& d, const LexicalAlgebra& a, const AugmentationConfig& cfg);
  Example next();

 private:
  const Dataset& d_;
  const LexicalAlgebra& a_;
  AugmentationConfig cfg_;
  std::vector<size_t> train_idx_;
  uint64_t pos_ = 0;
};

}  // namespace lexsym
