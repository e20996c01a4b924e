#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lexsym/corpus.h"

namespace lexsym {

enum class Domain { arithmetic, scan, mini_alchemy, grid_vqa };
Domain domain_from_name(const std::string& name);
std::string domain_name(Domain d);

// Dataset schema does not match what the domain adapter needs (missing
// meaning stream, missing state fields, ...). Distinct from a syntactically
// broken example, which only fails that example.
struct AdapterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the domain grammar. Distinct from interpretation = 0.
struct OracleSyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- arithmetic -----------------------------------------------------------

// "zero" .. "twenty"
const std::vector<std::string>& number_words();
int number_from_word(const std::string& w);  // -1 when unknown

// Template: <a> plus <b> is <c> over number words 0..max_n.
// Returns 1 iff a+b=c; throws OracleSyntaxError off-template.
int arithmetic_interpret(const std::vector<std::string>& words, int max_n = 20);

// ---- SCAN ------------------------------------------------------------------

std::vector<std::string> scan_interpret(const std::vector<std::string>& command);
int scan_verify(const Dataset& d, const Example& e);

// ---- mini-ALCHEMY ----------------------------------------------------------

// 7 mixable colors plus brown.
const std::vector<std::string>& alchemy_colors();

// c1 if c1 == c2, otherwise brown. Case of the first argument wins.
std::string alchemy_mix(const std::string& c1, const std::string& c2);

struct AlchemyState {
  struct Beaker {
    std::string label;
    std::vector<std::string> colors;  // bottom to top, uppercase units
  };
  std::vector<Beaker> beakers;
  int capacity = 4;
};

// "1 : RED RED , 2 : _ , 3 : GREEN" as tokens.
AlchemyState parse_alchemy_state(const std::vector<std::string>& tokens);
std::vector<std::string> alchemy_state_tokens(const AlchemyState& st);

// Comma-separated instructions: "pour beaker A into beaker B",
// "mix beaker A", "drain <color> from beaker A". Returns false on an illegal
// action (overfull pour, empty mix/pour, draining an absent color);
// throws OracleSyntaxError on template violations.
bool mini_alchemy_execute(AlchemyState& st, const std::vector<std::string>& instructions);
int mini_alchemy_verify(const Dataset& d, const Example& e);

// ---- grid VQA ---------------------------------------------------------------

struct Codebook {
  std::map<std::string, std::vector<int>> codes;  // color word -> image codes
  std::map<int, std::string> color_of;            // inverse
  int background = 0;

  void index();  // fills color_of from codes
};

// The published CoGenT color/code table (multi-code purple and yellow).
const Codebook& cogent_codebook();

// Question templates: "count <color> cells" -> decimal count,
// "any <color> present" -> yes|no, "name hue at <r> <c>" -> color word|none.
int grid_vqa_interpret(const std::vector<std::string>& question, const std::vector<int>& grid,
                       int h, int w, const std::string& answer,
                       const Codebook& cb = cogent_codebook());
int grid_vqa_verify(const Dataset& d, const Example& e, const Codebook& cb = cogent_codebook());

// ---- dataset-level verification ---------------------------------------------

enum class Verdict { valid, invalid, malformed };

struct VerifyFailure {
  std::string id;
  std::string reason;
};

struct VerifyReport {
  long total = 0;
  long valid = 0;
  long invalid = 0;
  long malformed = 0;
  double fraction = 0.0;
  std::vector<VerifyFailure> failures;
};

Verdict verify_example(const Dataset& d, const Example& e, Domain domain, std::string* reason);
VerifyReport verify_dataset(const Dataset& d, Domain domain, int jobs = 1);

}  // namespace lexsym
