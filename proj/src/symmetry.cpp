#include "lexsym/symmetry.h"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "lexsym/rng.h"

namespace lexsym {

using nlohmann::json;

SymbolMap SymbolMap::identity(const Vocabulary& v, uint64_t seed) {
  SymbolMap f;
  f.base.resize(v.size());
  for (int i = 0; i < v.size(); i++) f.base[i] = i;
  f.seed = seed;
  return f;
}

bool SymbolMap::is_identity() const {
  if (!class_targets.empty()) {
    for (const auto& [k, v] : class_targets)
      if (k != v) return false;
  }
  for (size_t i = 0; i < base.size(); i++)
    if (base[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> image_set(const LexicalAlgebra& a, const SymbolMap& f, int sym) {
  if (sym < 0 || sym >= static_cast<int>(f.base.size()))
    throw std::runtime_error("symbol map is not total over the vocabulary");
  if (a.vocab->symbol(sym).stream == Stream::meaning) {
    int owner = a.owner_of(sym);
    if (owner >= 0) {
      auto it = f.class_targets.find(owner);
      if (it != f.class_targets.end()) return equivalence_class(a, it->second);
    }
  }
  return {f.base[sym]};
}

std::string HomCheck::to_string(const Vocabulary& v) const {
  if (ok) return "ok";
  auto render = [&](const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); i++) {
      if (i) s += ", ";
      s += v.symbol(t[i]).surface;
    }
    return s + ")";
  };
  return "relation " + relation + " not preserved: " + render(tuple) + " vs " + render(image);
}

namespace {

// Iterate the cartesian product of per-slot candidate sets.
bool for_each_combo(const std::vector<std::vector<int>>& slots,
                    const std::function<bool(const std::vector<int>&)>& visit) {
  for (const auto& s : slots)
    if (s.empty()) return true;  // empty product: vacuous
  std::vector<size_t> idx(slots.size(), 0);
  std::vector<int> tup(slots.size());
  while (true) {
    for (size_t k = 0; k < slots.size(); k++) tup[k] = slots[k][idx[k]];
    if (!visit(tup)) return false;
    size_t k = slots.size();
    while (k > 0) {
      k--;
      if (++idx[k] < slots[k].size()) break;
      idx[k] = 0;
      if (k == 0) return true;
    }
  }
}

}  // namespace

HomCheck is_homomorphism(const SymbolMap& f, const LexicalAlgebra& a) {
  const int n = a.vocab->size();
  if (static_cast<int>(f.base.size()) != n)
    throw std::runtime_error("symbol map is not total over the vocabulary");

  HomCheck res;
  // stream preservation is part of the SymbolMap contract; broken maps are
  // reported as violations rather than UB further down the pipeline
  for (int x = 0; x < n; x++) {
    auto img = image_set(a, f, x);
    if (img.empty()) {
      res = {false, "totality", {x}, {}};
      return res;
    }
    for (int y : img) {
      if (a.vocab->symbol(x).stream != a.vocab->symbol(y).stream) {
        res = {false, "streams", {x}, {y}};
        return res;
      }
    }
  }

  std::vector<std::vector<int>> images(n), preimages(n);
  for (int x = 0; x < n; x++) images[x] = image_set(a, f, x);
  for (int x = 0; x < n; x++)
    for (int y : images[x]) preimages[y].push_back(x);

  for (const Relation* r : a.all_relations()) {
    for (const auto& t : r->tuples) {
      std::vector<std::vector<int>> fwd(t.size()), bwd(t.size());
      for (size_t k = 0; k < t.size(); k++) {
        fwd[k] = images[t[k]];
        bwd[k] = preimages[t[k]];
      }
      bool ok = for_each_combo(fwd, [&](const std::vector<int>& u) {
        if (!r->holds(u)) {
          res = {false, r->name, t, u};
          return false;
        }
        return true;
      });
      if (!ok) return res;
      ok = for_each_combo(bwd, [&](const std::vector<int>& v) {
        if (!r->holds(v)) {
          res = {false, r->name, v, t};
          return false;
        }
        return true;
      });
      if (!ok) return res;
    }
  }
  return res;
}

void enumerate_homomorphisms(const LexicalAlgebra& a, const EnumerateOptions& opt,
                             const std::function<void(const SymbolMap&)>& yield) {
  const int n = a.vocab->size();
  if (n > opt.max_vocab)
    throw std::runtime_error("enumeration guard exceeded: |Sigma| = " + std::to_string(n) + " > " +
                             std::to_string(opt.max_vocab) +
                             " (use swap sampling for larger vocabularies)");

  // Candidates per symbol: same stream and same (possibly absent) type. The
  // type filter is exact for unary relations, so nothing valid is pruned.
  std::vector<std::vector<int>> candidates(n);
  for (int x = 0; x < n; x++)
    for (int y = 0; y < n; y++)
      if (a.vocab->symbol(x).stream == a.vocab->symbol(y).stream && a.type_of(x) == a.type_of(y))
        candidates[x].push_back(y);

  SymbolMap f = SymbolMap::identity(*a.vocab);
  f.provenance = "enumerated";
  std::vector<size_t> idx(n, 0);
  if (n == 0) {
    if (is_homomorphism(f, a).ok) yield(f);
    return;
  }
  while (true) {
    for (int x = 0; x < n; x++) f.base[x] = candidates[x][idx[x]];
    bool keep = is_homomorphism(f, a).ok;
    if (keep && opt.isomorphisms_only) {
      std::vector<char> hit(n, 0);
      for (int x = 0; x < n; x++) hit[f.base[x]] = 1;
      keep = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    }
    if (keep) yield(f);
    int k = n;
    bool done = true;
    while (k > 0) {
      k--;
      if (++idx[k] < candidates[k].size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) break;
  }
}

std::vector<SymbolMap> enumerate_homomorphisms(const LexicalAlgebra& a,
                                               const EnumerateOptions& opt) {
  std::vector<SymbolMap> out;
  enumerate_homomorphisms(a, opt, [&](const SymbolMap& f) { out.push_back(f); });
  return out;
}

SymbolMap make_swap(const LexicalAlgebra& a, int x_i, int x_j, uint64_t seed) {
  if (!a.validated)
    throw std::runtime_error("make_swap requires a validated algebra (run validate_algebra)");
  const Vocabulary& v = *a.vocab;
  if (v.symbol(x_i).stream != Stream::text || v.symbol(x_j).stream != Stream::text)
    throw std::runtime_error("make_swap arguments must be text symbols");
  if (a.type_of(x_i) != a.type_of(x_j))
    throw std::runtime_error("make_swap type mismatch: '" + v.symbol(x_i).surface + "' vs '" +
                             v.symbol(x_j).surface + "'");
  SymbolMap f = SymbolMap::identity(v, seed);
  f.provenance = "swap(" + v.symbol(x_i).surface + "," + v.symbol(x_j).surface + ")";
  if (x_i == x_j) return f;
  f.base[x_i] = x_j;
  f.base[x_j] = x_i;
  auto ei = equivalence_class(a, x_i);
  auto ej = equivalence_class(a, x_j);
  if (ei.empty() != ej.empty())
    throw std::runtime_error("make_swap: one side of (" + v.symbol(x_i).surface + "," +
                             v.symbol(x_j).surface + ") has an empty equivalence class");
  if (!ei.empty()) {
    f.class_targets[x_i] = x_j;
    f.class_targets[x_j] = x_i;
  }
  return f;
}

SymbolMap make_substitution(const LexicalAlgebra& a, int x_i, int x_j, uint64_t seed) {
  const Vocabulary& v = *a.vocab;
  SymbolMap f = SymbolMap::identity(v, seed);
  f.provenance = "substitute(" + v.symbol(x_i).surface + "->" + v.symbol(x_j).surface + ")";
  if (x_i == x_j) return f;
  f.base[x_i] = x_j;
  if (!equivalence_class(a, x_i).empty() && !equivalence_class(a, x_j).empty())
    f.class_targets[x_i] = x_j;
  return f;
}

Example apply(const SymbolMap& f, const LexicalAlgebra& a, const Example& e, uint64_t seed) {
  const int n = a.vocab->size();
  if (static_cast<int>(f.base.size()) != n)
    throw std::runtime_error("symbol map is not total over the vocabulary");
  Example out = e;
  for (size_t i = 0; i < out.text.size(); i++) {
    int x = out.text[i];
    if (x < 0 || x >= n) throw std::runtime_error("token outside vocabulary in " + e.id);
    out.text[i] = f.base[x];
  }
  const uint64_t id_h = fnv1a(e.id);
  for (size_t j = 0; j < out.meaning.size(); j++) {
    int x = out.meaning[j];
    if (x < 0 || x >= n) throw std::runtime_error("token outside vocabulary in " + e.id);
    int owner = a.owner_of(x);
    auto it = owner >= 0 ? f.class_targets.find(owner) : f.class_targets.end();
    if (it == f.class_targets.end()) {
      out.meaning[j] = f.base[x];
      continue;
    }
    const auto targets = equivalence_class(a, it->second);
    if (targets.empty()) throw std::runtime_error("empty target class in map " + f.provenance);
    if (targets.size() == 1) {
      out.meaning[j] = targets[0];
      continue;
    }
    uint64_t s = f.class_consistent ? mix_seed(seed, id_h, fnv1a(a.vocab->symbol(owner).surface))
                                    : mix_seed(seed, id_h, j);
    auto g = make_rng(s);
    out.meaning[j] = targets[rng_index(g, targets.size())];
  }
  return out;
}

SymbolMap invert(const SymbolMap& f, const LexicalAlgebra& a) {
  const int n = static_cast<int>(f.base.size());
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; x++) {
    if (inv[f.base[x]] != -1)
      throw std::runtime_error("map base is not a bijection; cannot invert");
    inv[f.base[x]] = x;
  }
  for (const auto& [k, v] : f.class_targets) {
    auto it = f.class_targets.find(v);
    if (it == f.class_targets.end() || it->second != k)
      throw std::runtime_error("class_targets are not symmetric; cannot invert");
  }
  SymbolMap g = f;
  g.base = std::move(inv);
  g.provenance = "inverse(" + f.provenance + ")";
  (void)a;
  return g;
}

std::string symbol_map_to_json(const SymbolMap& f, const LexicalAlgebra& a) {
  const Vocabulary& v = *a.vocab;
  json doc;
  json base = json::object();
  for (size_t x = 0; x < f.base.size(); x++) {
    if (f.base[x] == static_cast<int>(x)) continue;
    const Symbol& s = v.symbol(static_cast<int>(x));
    std::string key = (v.lookup(s.surface, s.stream == Stream::text ? Stream::meaning : Stream::text) >= 0)
                          ? (s.stream == Stream::text ? "text:" : "meaning:") + s.surface
                          : s.surface;
    const Symbol& t = v.symbol(f.base[x]);
    base[key] = t.surface;
  }
  doc["base"] = base;
  json ct = json::object();
  for (const auto& [k, t] : f.class_targets)
    ct["E(" + v.symbol(k).surface + ")"] = "E(" + v.symbol(t).surface + ")";
  doc["class_targets"] = ct;
  doc["seed"] = f.seed;
  doc["provenance"] = f.provenance;
  doc["class_consistent"] = f.class_consistent;
  return doc.dump(2) + "\n";
}

SymbolMap symbol_map_from_json(const std::string& text, const LexicalAlgebra& a) {
  json doc = json::parse(text);
  const Vocabulary& v = *a.vocab;
  SymbolMap f = SymbolMap::identity(v, doc.value("seed", 0ull));
  f.provenance = doc.value("provenance", "hand");
  f.class_consistent = doc.value("class_consistent", false);
  auto resolve = [&](const std::string& s, std::optional<Stream> want) -> int {
    std::string body = s;
    std::optional<Stream> st = want;
    if (body.rfind("text:", 0) == 0) { body = body.substr(5); st = Stream::text; }
    else if (body.rfind("meaning:", 0) == 0) { body = body.substr(8); st = Stream::meaning; }
    if (st) {
      int id = v.lookup(body, *st);
      if (id < 0) throw std::runtime_error("unknown symbol '" + s + "'");
      return id;
    }
    int t = v.lookup(body, Stream::text), m = v.lookup(body, Stream::meaning);
    if (t >= 0 && m >= 0) throw std::runtime_error("ambiguous symbol '" + s + "'");
    if (t < 0 && m < 0) throw std::runtime_error("unknown symbol '" + s + "'");
    return t >= 0 ? t : m;
  };
  if (doc.contains("base")) {
    for (auto& [key, val] : doc["base"].items()) {
      int x = resolve(key, std::nullopt);
      int y = resolve(val.get<std::string>(), v.symbol(x).stream);
      f.base[x] = y;
    }
  }
  if (doc.contains("class_targets")) {
    for (auto& [key, val] : doc["class_targets"].items()) {
      auto strip = [](const std::string& s) {
        if (s.rfind("E(", 0) == 0 && s.size() > 3 && s.back() == ')') return s.substr(2, s.size() - 3);
        return s;
      };
      f.class_targets[resolve(strip(key), Stream::text)] =
          resolve(strip(val.get<std::string>()), Stream::text);
    }
  }
  return f;
}

}  // namespace lexsym
