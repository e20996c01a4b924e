#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexsym {

enum class Stream { text = 0, meaning = 1 };

enum class Split { train = 0, validation = 1, test = 2 };

std::string split_name(Split s);
Split split_from_name(const std::string& name);  // throws on unknown label

struct Symbol {
  int id = -1;
  std::string surface;
  Stream stream = Stream::text;
};

// Interned (surface, stream) pairs with dense ids in first-occurrence order.
class Vocabulary {
 public:
  int intern(std::string_view surface, Stream stream);
  // -1 when absent
  int lookup(std::string_view surface, Stream stream) const;
  const Symbol& symbol(int id) const;
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, int> index_[2];
};

struct Example {
  std::string id;
  std::vector<int> text;
  std::vector<int> meaning;
  Split split = Split::train;
  // Domain fields (state0, stateN, grid dims, provenance...) carried opaquely.
  // They never hold vocabulary symbols; oracles re-parse the token streams.
  std::map<std::string, std::string> extras;
};

struct Dataset {
  std::string name;
  std::shared_ptr<Vocabulary> vocab = std::make_shared<Vocabulary>();
  std::vector<Example> examples;

  std::string detok(const std::vector<int>& ids) const;
  std::vector<int> tokenize(std::string_view s, Stream stream);        // interning
  std::vector<int> tokenize_const(std::string_view s, Stream stream) const;  // throws on OOV
};

// Whitespace tokenization; pure function of the input string.
std::vector<std::string> split_ws(std::string_view s);

enum class Format { jsonl, tsv };

// JSONL: one object per line with fields id (optional), text, meaning
// (optional, default empty), split (optional, default train); unknown fields
// land in extras. TSV: text \t meaning [\t split].
Dataset load_dataset(const std::string& path, Format format = Format::jsonl);
void save_dataset(const Dataset& d, const std::string& path, Format format = Format::jsonl);

std::pair<std::set<int>, std::set<int>> vocabulary_partition(const Dataset& d);

}  // namespace lexsym
