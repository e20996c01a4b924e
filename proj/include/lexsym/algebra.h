#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexsym/corpus.h"

namespace lexsym {

// Extensional relation: explicit tuple set over symbol ids.
struct Relation {
  std::string name;
  int arity = 1;
  std::set<std::vector<int>> tuples;

  bool holds(const std::vector<int>& t) const { return tuples.count(t) > 0; }
};

struct Violation {
  std::string condition;  // "types-disjoint", "one-to-many", "type-preserving", plus schema-level checks
  std::string detail;
};

struct LexicalAlgebra {
  std::shared_ptr<Vocabulary> vocab = std::make_shared<Vocabulary>();
  std::vector<Relation> type_relations;  // unary, canonical names t1, t2, ...
  Relation correspondence{"correspondence", 2, {}};
  std::vector<Relation> extra_relations;
  bool validated = false;  // set by validate_algebra when no violations

  // caches, rebuilt by rebuild_caches()
  std::unordered_map<int, int> type_of_;          // symbol -> index into type_relations
  std::unordered_map<int, std::vector<int>> class_of_;  // text symbol -> sorted E_i
  std::unordered_map<int, int> owner_of_;         // meaning symbol -> text symbol

  void rebuild_caches();
  // -1 when untyped
  int type_of(int sym) const;
  // meaning-side owner under the one-to-many correspondence; -1 when none
  int owner_of(int sym) const;
  std::vector<Relation const*> all_relations() const;
};

// E_x = {y : correspondence(x, y)}; error on meaning-stream argument.
std::vector<int> equivalence_class(const LexicalAlgebra& a, int text_sym);

// One boolean tensor per relation, flattened row-major over |x|^arity entries.
struct RelationTensor {
  std::string relation;
  int arity = 1;
  size_t side = 0;  // |x|
  std::vector<char> data;

  char at(const std::vector<size_t>& idx) const;
};

using LexicalRepresentation = std::vector<RelationTensor>;

// Token order: text stream followed by meaning stream.
std::vector<int> example_symbols(const Example& e);

LexicalRepresentation lexical_representation(const LexicalAlgebra& a, const Example& e);

// Empty list iff App-style conditions (i) types disjoint, (ii) one-to-many
// text->meaning, (iii) type preserving all hold. Sets a.validated.
std::vector<Violation> validate_algebra(LexicalAlgebra& a);

LexicalAlgebra load_algebra(const std::string& path);
LexicalAlgebra load_algebra(const std::string& path, std::shared_ptr<Vocabulary> vocab);
void save_algebra(const LexicalAlgebra& a, const std::string& path);

// Canonical JSON (sorted keys/members); used by save_algebra and tests.
std::string algebra_to_json(const LexicalAlgebra& a);
LexicalAlgebra algebra_from_json(const std::string& text, std::shared_ptr<Vocabulary> vocab);

}  // namespace lexsym
