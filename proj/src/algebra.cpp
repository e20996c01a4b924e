#include "lexsym/algebra.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lexsym {

using nlohmann::json;

void LexicalAlgebra::rebuild_caches() {
  type_of_.clear();
  class_of_.clear();
  owner_of_.clear();
  for (size_t k = 0; k < type_relations.size(); k++)
    for (const auto& t : type_relations[k].tuples)
      if (!t.empty()) type_of_.emplace(t[0], static_cast<int>(k));
  for (const auto& t : correspondence.tuples) {
    if (t.size() != 2) continue;
    class_of_[t[0]].push_back(t[1]);
    owner_of_.emplace(t[1], t[0]);
  }
  for (auto& [k, v] : class_of_) std::sort(v.begin(), v.end());
}

int LexicalAlgebra::type_of(int sym) const {
  auto it = type_of_.find(sym);
  return it == type_of_.end() ? -1 : it->second;
}

int LexicalAlgebra::owner_of(int sym) const {
  auto it = owner_of_.find(sym);
  return it == owner_of_.end() ? -1 : it->second;
}

std::vector<Relation const*> LexicalAlgebra::all_relations() const {
  std::vector<Relation const*> rs;
  for (const auto& r : type_relations) rs.push_back(&r);
  rs.push_back(&correspondence);
  for (const auto& r : extra_relations) rs.push_back(&r);
  return rs;
}

std::vector<int> equivalence_class(const LexicalAlgebra& a, int text_sym) {
  if (a.vocab->symbol(text_sym).stream != Stream::text)
    throw std::runtime_error("equivalence_class expects a text-stream symbol, got meaning symbol '" +
                             a.vocab->symbol(text_sym).surface + "'");
  auto it = a.class_of_.find(text_sym);
  return it == a.class_of_.end() ? std::vector<int>{} : it->second;
}

std::vector<int> example_symbols(const Example& e) {
  std::vector<int> xs = e.text;
  xs.insert(xs.end(), e.meaning.begin(), e.meaning.end());
  return xs;
}

char RelationTensor::at(const std::vector<size_t>& idx) const {
  size_t off = 0;
  for (size_t v : idx) off = off * side + v;
  return data[off];
}

LexicalRepresentation lexical_representation(const LexicalAlgebra& a, const Example& e) {
  std::vector<int> xs = example_symbols(e);
  const size_t n = xs.size();
  LexicalRepresentation rep;
  for (const Relation* r : a.all_relations()) {
    if (r == &a.correspondence && r->tuples.empty() && a.type_relations.empty() &&
        a.extra_relations.empty())
      continue;  // fully empty algebra: empty representation
    RelationTensor t;
    t.relation = r->name;
    t.arity = r->arity;
    t.side = n;
    size_t cells = 1;
    for (int k = 0; k < r->arity; k++) cells *= n;
    t.data.assign(cells, 0);
    std::vector<size_t> idx(r->arity, 0);
    std::vector<int> tup(r->arity);
    for (size_t off = 0; off < cells; off++) {
      size_t rem = off;
      for (int k = r->arity - 1; k >= 0; k--) {
        idx[k] = rem % n;
        rem /= n;
      }
      for (int k = 0; k < r->arity; k++) tup[k] = xs[idx[k]];
      t.data[off] = r->holds(tup) ? 1 : 0;
    }
    rep.push_back(std::move(t));
  }
  return rep;
}

std::vector<Violation> validate_algebra(LexicalAlgebra& a) {
  std::vector<Violation> out;
  auto surf = [&](int id) { return a.vocab->symbol(id).surface; };

  for (const auto& tr : a.type_relations) {
    if (tr.arity != 1)
      out.push_back({"schema", "type relation " + tr.name + " has arity " + std::to_string(tr.arity)});
    for (const auto& t : tr.tuples)
      if (static_cast<int>(t.size()) != tr.arity)
        out.push_back({"schema", "tuple length mismatch in " + tr.name});
  }
  // (i) every symbol in at most one type
  std::unordered_map<int, std::string> seen_type;
  for (const auto& tr : a.type_relations)
    for (const auto& t : tr.tuples) {
      auto [it, fresh] = seen_type.emplace(t[0], tr.name);
      if (!fresh && it->second != tr.name)
        out.push_back({"types-disjoint",
                       "'" + surf(t[0]) + "' belongs to both " + it->second + " and " + tr.name});
    }
  // (ii) correspondence tuples are (text, meaning) and no meaning symbol has two owners
  std::unordered_map<int, int> owner;
  for (const auto& t : a.correspondence.tuples) {
    if (t.size() != 2) {
      out.push_back({"schema", "correspondence tuple arity != 2"});
      continue;
    }
    if (a.vocab->symbol(t[0]).stream != Stream::text ||
        a.vocab->symbol(t[1]).stream != Stream::meaning) {
      out.push_back({"one-to-many",
                     "correspondence (" + surf(t[0]) + ", " + surf(t[1]) + ") is not text->meaning"});
      continue;
    }
    auto [it, fresh] = owner.emplace(t[1], t[0]);
    if (!fresh && it->second != t[0])
      out.push_back({"one-to-many", "meaning symbol '" + surf(t[1]) + "' corresponds to both '" +
                                        surf(it->second) + "' and '" + surf(t[0]) + "'"});
  }
  // (iii) a class member's type matches its source word's type
  a.rebuild_caches();
  for (const auto& t : a.correspondence.tuples) {
    if (t.size() != 2) continue;
    if (a.type_of(t[0]) != a.type_of(t[1]))
      out.push_back({"type-preserving", "types of '" + surf(t[0]) + "' and '" + surf(t[1]) + "' differ"});
  }
  a.validated = out.empty();
  return out;
}

namespace {

// Surfaces may collide across streams (e.g. COGS "dog"/"dog"); such entries
// are written stream-qualified and bare entries must be unambiguous.
std::string qualified_surface(const Vocabulary& v, int id) {
  const Symbol& s = v.symbol(id);
  Stream other = s.stream == Stream::text ? Stream::meaning : Stream::text;
  if (v.lookup(s.surface, other) >= 0)
    return (s.stream == Stream::text ? "text:" : "meaning:") + s.surface;
  return s.surface;
}

int resolve_surface(const Vocabulary& v, const std::string& entry) {
  if (entry.rfind("text:", 0) == 0) {
    int id = v.lookup(entry.substr(5), Stream::text);
    if (id < 0) throw std::runtime_error("unknown text symbol '" + entry.substr(5) + "'");
    return id;
  }
  if (entry.rfind("meaning:", 0) == 0) {
    int id = v.lookup(entry.substr(8), Stream::meaning);
    if (id < 0) throw std::runtime_error("unknown meaning symbol '" + entry.substr(8) + "'");
    return id;
  }
  int t = v.lookup(entry, Stream::text);
  int m = v.lookup(entry, Stream::meaning);
  if (t >= 0 && m >= 0)
    throw std::runtime_error("surface '" + entry + "' exists in both streams; qualify with text: or meaning:");
  if (t < 0 && m < 0) throw std::runtime_error("unknown symbol '" + entry + "'");
  return t >= 0 ? t : m;
}

}  // namespace

std::string algebra_to_json(const LexicalAlgebra& a) {
  const Vocabulary& v = *a.vocab;
  json doc;
  json types = json::object();
  for (const auto& tr : a.type_relations) {
    std::vector<std::string> members;
    for (const auto& t : tr.tuples) members.push_back(qualified_surface(v, t[0]));
    std::sort(members.begin(), members.end());
    types[tr.name] = members;
  }
  doc["types"] = types;
  json corr = json::object();
  for (const auto& t : a.correspondence.tuples) {
    // keys are text surfaces, values meaning surfaces; streams implied
    corr[v.symbol(t[0]).surface].push_back(v.symbol(t[1]).surface);
  }
  for (auto& [k, vals] : corr.items()) {
    auto arr = vals.get<std::vector<std::string>>();
    std::sort(arr.begin(), arr.end());
    vals = arr;
  }
  doc["correspondences"] = corr;
  json rels = json::array();
  std::vector<const Relation*> extras;
  for (const auto& r : a.extra_relations) extras.push_back(&r);
  std::sort(extras.begin(), extras.end(),
            [](const Relation* x, const Relation* y) { return x->name < y->name; });
  for (const Relation* r : extras) {
    json jr;
    jr["name"] = r->name;
    jr["arity"] = r->arity;
    std::vector<std::vector<std::string>> tuples;
    for (const auto& t : r->tuples) {
      std::vector<std::string> row;
      for (int id : t) row.push_back(qualified_surface(v, id));
      tuples.push_back(std::move(row));
    }
    std::sort(tuples.begin(), tuples.end());
    jr["tuples"] = tuples;
    rels.push_back(jr);
  }
  doc["relations"] = rels;
  std::vector<std::string> text_syms, meaning_syms;
  for (const auto& s : v.symbols())
    (s.stream == Stream::text ? text_syms : meaning_syms).push_back(s.surface);
  std::sort(text_syms.begin(), text_syms.end());
  std::sort(meaning_syms.begin(), meaning_syms.end());
  doc["streams"] = {{"text", text_syms}, {"meaning", meaning_syms}};
  return doc.dump(2) + "\n";
}

LexicalAlgebra algebra_from_json(const std::string& text, std::shared_ptr<Vocabulary> vocab) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& ex) {
    throw std::runtime_error(std::string("algebra JSON parse error: ") + ex.what());
  }
  LexicalAlgebra a;
  a.vocab = vocab ? std::move(vocab) : std::make_shared<Vocabulary>();
  if (doc.contains("streams")) {
    for (const auto& s : doc["streams"].value("text", std::vector<std::string>{}))
      a.vocab->intern(s, Stream::text);
    for (const auto& s : doc["streams"].value("meaning", std::vector<std::string>{}))
      a.vocab->intern(s, Stream::meaning);
  }
  if (doc.contains("types")) {
    for (auto& [name, members] : doc["types"].items()) {
      Relation tr{name, 1, {}};
      for (const auto& m : members) tr.tuples.insert({resolve_surface(*a.vocab, m.get<std::string>())});
      a.type_relations.push_back(std::move(tr));
    }
    std::sort(a.type_relations.begin(), a.type_relations.end(),
              [](const Relation& x, const Relation& y) { return x.name < y.name; });
  }
  if (doc.contains("correspondences")) {
    for (auto& [word, targets] : doc["correspondences"].items()) {
      int t = a.vocab->lookup(word, Stream::text);
      if (t < 0) throw std::runtime_error("correspondence key '" + word + "' not a text symbol");
      for (const auto& tgt : targets) {
        int m = a.vocab->lookup(tgt.get<std::string>(), Stream::meaning);
        if (m < 0)
          throw std::runtime_error("correspondence target '" + tgt.get<std::string>() +
                                   "' not a meaning symbol");
        a.correspondence.tuples.insert({t, m});
      }
    }
  }
  if (doc.contains("relations")) {
    for (const auto& jr : doc["relations"]) {
      Relation r;
      r.name = jr.at("name").get<std::string>();
      r.arity = jr.at("arity").get<int>();
      for (const auto& jt : jr.at("tuples")) {
        std::vector<int> t;
        for (const auto& el : jt) t.push_back(resolve_surface(*a.vocab, el.get<std::string>()));
        if (static_cast<int>(t.size()) != r.arity)
          throw std::runtime_error("relation " + r.name + ": tuple arity mismatch");
        r.tuples.insert(std::move(t));
      }
      a.extra_relations.push_back(std::move(r));
    }
  }
  a.rebuild_caches();
  return a;
}

LexicalAlgebra load_algebra(const std::string& path, std::shared_ptr<Vocabulary> vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  LexicalAlgebra a = algebra_from_json(ss.str(), std::move(vocab));
  // hand lexicons may intentionally relax the structural conditions; warn only
  for (const auto& v : validate_algebra(a))
    std::cerr << "[algebra] warning: " << v.condition << ": " << v.detail << "\n";
  return a;
}

LexicalAlgebra load_algebra(const std::string& path) { return load_algebra(path, nullptr); }

void save_algebra(const LexicalAlgebra& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << algebra_to_json(a);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lexsym
