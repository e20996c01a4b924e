#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexsym/algebra.h"

namespace lexsym {

// Candidate homomorphism. base is a total map over symbol ids (identity by
// default). class_targets maps a text symbol's equivalence class to another
// text symbol's class; meaning tokens in the source class resolve to a member
// of the target class, chosen per occurrence unless class_consistent is set.
struct SymbolMap {
  std::vector<int> base;  // indexed by symbol id
  std::map<int, int> class_targets;
  uint64_t seed = 0;
  std::string provenance = "hand";
  bool class_consistent = false;

  static SymbolMap identity(const Vocabulary& v, uint64_t seed = 0);
  bool is_identity() const;
};

// Set of possible images of one symbol (singleton unless a class target applies).
std::vector<int> image_set(const LexicalAlgebra& a, const SymbolMap& f, int sym);

struct HomCheck {
  bool ok = true;
  std::string relation;
  std::vector<int> tuple;       // offending source tuple
  std::vector<int> image;       // its (possible) image
  std::string to_string(const Vocabulary& v) const;
};

// Two-sided check for extensional relations: forward images of every positive
// tuple must be positive, and every preimage combination of a positive tuple
// must be positive. Per-occurrence maps are checked over the class closure,
// so a pass guarantees every resolution of class_targets is safe.
HomCheck is_homomorphism(const SymbolMap& f, const LexicalAlgebra& a);

// All stream-preserving maps passing is_homomorphism, in lexicographic order
// of image ids per symbol id. Guard refuses |Sigma| > max_vocab.
struct EnumerateOptions {
  int max_vocab = 8;
  bool isomorphisms_only = false;
};
void enumerate_homomorphisms(const LexicalAlgebra& a, const EnumerateOptions& opt,
                             const std::function<void(const SymbolMap&)>& yield);
std::vector<SymbolMap> enumerate_homomorphisms(const LexicalAlgebra& a,
                                               const EnumerateOptions& opt = {});

// Swap of two same-type text symbols and their equivalence classes (identity
// elsewhere). Requires a validated algebra; throws on type mismatch.
SymbolMap make_swap(const LexicalAlgebra& a, int x_i, int x_j, uint64_t seed);

// One-directional substitution: x_i -> x_j and E_i -> E_j with nothing mapped
// back. Not a homomorphism in general; used for contrast experiments.
SymbolMap make_substitution(const LexicalAlgebra& a, int x_i, int x_j, uint64_t seed);

// Tokenwise image; per-occurrence class choices are drawn from a stream
// seeded by (seed, example id, position). Pure given its arguments.
Example apply(const SymbolMap& f, const LexicalAlgebra& a, const Example& e, uint64_t seed);
inline Example apply(const SymbolMap& f, const LexicalAlgebra& a, const Example& e) {
  return apply(f, a, e, f.seed);
}

// Requires a bijective base and symmetric class_targets (true for swaps).
SymbolMap invert(const SymbolMap& f, const LexicalAlgebra& a);

std::string symbol_map_to_json(const SymbolMap& f, const LexicalAlgebra& a);
SymbolMap symbol_map_from_json(const std::string& text, const LexicalAlgebra& a);

}  // namespace lexsym
