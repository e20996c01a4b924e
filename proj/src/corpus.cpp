#include "lexsym/corpus.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lexsym {

using nlohmann::json;

std::string split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "train";
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "validation" || name == "valid" || name == "dev") return Split::validation;
  if (name == "test") return Split::test;
  throw std::runtime_error("unknown split label: " + name);
}

int Vocabulary::intern(std::string_view surface, Stream stream) {
  auto& idx = index_[static_cast<int>(stream)];
  auto it = idx.find(std::string(surface));
  if (it != idx.end()) return it->second;
  if (surface.empty()) throw std::runtime_error("empty symbol surface");
  for (char c : surface)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      throw std::runtime_error("symbol surface contains whitespace: '" + std::string(surface) + "'");
  int id = static_cast<int>(symbols_.size());
  symbols_.push_back(Symbol{id, std::string(surface), stream});
  idx.emplace(std::string(surface), id);
  return id;
}

int Vocabulary::lookup(std::string_view surface, Stream stream) const {
  const auto& idx = index_[static_cast<int>(stream)];
  auto it = idx.find(std::string(surface));
  return it == idx.end() ? -1 : it->second;
}

const Symbol& Vocabulary::symbol(int id) const {
  if (id < 0 || id >= static_cast<int>(symbols_.size()))
    throw std::out_of_range("symbol id out of range: " + std::to_string(id));
  return symbols_[id];
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) j++;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string Dataset::detok(const std::vector<int>& ids) const {
  std::string out;
  for (size_t i = 0; i < ids.size(); i++) {
    if (i) out += ' ';
    out += vocab->symbol(ids[i]).surface;
  }
  return out;
}

std::vector<int> Dataset::tokenize(std::string_view s, Stream stream) {
  std::vector<int> ids;
  for (const auto& tok : split_ws(s)) ids.push_back(vocab->intern(tok, stream));
  return ids;
}

std::vector<int> Dataset::tokenize_const(std::string_view s, Stream stream) const {
  std::vector<int> ids;
  for (const auto& tok : split_ws(s)) {
    int id = vocab->lookup(tok, stream);
    if (id < 0) throw std::runtime_error("token outside vocabulary: '" + tok + "'");
    ids.push_back(id);
  }
  return ids;
}

namespace {

void check_unique_ids(const Dataset& d) {
  std::set<std::string> seen;
  for (const auto& e : d.examples)
    if (!seen.insert(e.id).second)
      throw std::runtime_error("duplicate example id: " + e.id);
}

Dataset load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Dataset d;
  d.name = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& ex) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed record: " + ex.what());
    }
    if (!rec.is_object() || !rec.contains("text"))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": record needs a `text` field");
    Example e;
    e.id = rec.contains("id") ? rec["id"].get<std::string>() : "e" + std::to_string(lineno);
    e.text = d.tokenize(rec["text"].get<std::string>(), Stream::text);
    if (e.text.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty text");
    if (rec.contains("meaning"))
      e.meaning = d.tokenize(rec["meaning"].get<std::string>(), Stream::meaning);
    if (rec.contains("split")) e.split = split_from_name(rec["split"].get<std::string>());
    for (auto& [k, v] : rec.items()) {
      if (k == "id" || k == "text" || k == "meaning" || k == "split") continue;
      e.extras[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    d.examples.push_back(std::move(e));
  }
  if (d.examples.empty()) throw std::runtime_error(path + ": empty dataset");
  check_unique_ids(d);
  return d;
}

Dataset load_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Dataset d;
  d.name = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 2 || cols.size() > 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 2 or 3 tab-separated columns");
    Example e;
    e.id = "e" + std::to_string(lineno);
    e.text = d.tokenize(cols[0], Stream::text);
    if (e.text.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty text");
    e.meaning = d.tokenize(cols[1], Stream::meaning);
    if (cols.size() == 3) e.split = split_from_name(cols[2]);
    d.examples.push_back(std::move(e));
  }
  if (d.examples.empty()) throw std::runtime_error(path + ": empty dataset");
  check_unique_ids(d);
  return d;
}

}  // namespace

Dataset load_dataset(const std::string& path, Format format) {
  return format == Format::jsonl ? load_jsonl(path) : load_tsv(path);
}

void save_dataset(const Dataset& d, const std::string& path, Format format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& e : d.examples) {
    if (format == Format::jsonl) {
      json rec;
      rec["id"] = e.id;
      rec["text"] = d.detok(e.text);
      rec["meaning"] = d.detok(e.meaning);
      rec["split"] = split_name(e.split);
      for (const auto& [k, v] : e.extras) rec[k] = v;
      out << rec.dump() << "\n";
    } else {
      out << d.detok(e.text) << '\t' << d.detok(e.meaning) << '\t' << split_name(e.split) << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::pair<std::set<int>, std::set<int>> vocabulary_partition(const Dataset& d) {
  std::pair<std::set<int>, std::set<int>> parts;
  for (const auto& s : d.vocab->symbols())
    (s.stream == Stream::text ? parts.first : parts.second).insert(s.id);
  return parts;
}

}  // namespace lexsym
