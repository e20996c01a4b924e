#include "lexsym/induction.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace lexsym {

namespace {

constexpr double kDiagonalLambda = 4.0;
constexpr const char* kBoundary = "<s>";

std::vector<const Example*> train_pairs(const Dataset& d) {
  std::vector<const Example*> out;
  for (const auto& e : d.examples)
    if (e.split == Split::train && !e.text.empty() && !e.meaning.empty()) out.push_back(&e);
  return out;
}

double diagonal_weight(int i, int j, int l, int m) {
  double di = static_cast<double>(i + 1) / l - static_cast<double>(j + 1) / m;
  return std::exp(-kDiagonalLambda * std::abs(di));
}

}  // namespace

double AlignmentModel::trans(int text_sym, int meaning_sym) const {
  if (text_sym < 0 || text_sym >= static_cast<int>(translation.size())) return 0.0;
  const auto& row = translation[text_sym];
  auto it = row.find(meaning_sym);
  return it == row.end() ? 0.0 : it->second;
}

double AlignmentModel::align_prob(int i, int j, int l, int m) const {
  if (diagonal_prior) {
    double z = 0;
    for (int k = 0; k < l; k++) z += diagonal_weight(k, j, l, m);
    return diagonal_weight(i, j, l, m) / z;
  }
  if (kind == AlignerKind::ibm2) {
    auto it = distortion.find({l, m});
    if (it != distortion.end()) return it->second[j][i];
  }
  return 1.0 / l;
}

AlignmentModel train_aligner(const Dataset& d, AlignerKind kind, int iterations,
                             bool diagonal_prior) {
  if (d.examples.empty()) throw std::runtime_error("empty dataset");
  if (iterations < 1) throw std::runtime_error("iterations must be >= 1");
  auto pairs = train_pairs(d);

  AlignmentModel model;
  model.kind = kind;
  model.diagonal_prior = diagonal_prior;
  model.translation.assign(d.vocab->size(), {});

  // uniform init over co-occurring meaning symbols
  {
    std::vector<std::set<int>> cooc(d.vocab->size());
    for (const Example* e : pairs)
      for (int t : e->text)
        for (int m : e->meaning) cooc[t].insert(m);
    for (int t = 0; t < d.vocab->size(); t++) {
      if (cooc[t].empty()) continue;
      double p = 1.0 / cooc[t].size();
      for (int m : cooc[t]) model.translation[t][m] = p;
    }
  }

  auto em_pass = [&](bool use_distortion, bool update_distortion) {
    std::vector<std::unordered_map<int, double>> tcount(d.vocab->size());
    std::vector<double> ttotal(d.vocab->size(), 0.0);
    std::map<std::pair<int, int>, std::vector<std::vector<double>>> dcount;
    double ll = 0.0;
    for (const Example* e : pairs) {
      const int l = static_cast<int>(e->text.size());
      const int m = static_cast<int>(e->meaning.size());
      std::vector<std::vector<double>>* dc = nullptr;
      if (update_distortion) {
        auto [it, fresh] = dcount.try_emplace({l, m});
        if (fresh) it->second.assign(m, std::vector<double>(l, 0.0));
        dc = &it->second;
      }
      for (int j = 0; j < m; j++) {
        const int mj = e->meaning[j];
        double denom = 0.0;
        for (int i = 0; i < l; i++) {
          double a = use_distortion ? model.align_prob(i, j, l, m) : 1.0 / l;
          denom += model.trans(e->text[i], mj) * a;
        }
        if (denom <= 0) continue;
        ll += std::log(denom);
        for (int i = 0; i < l; i++) {
          double a = use_distortion ? model.align_prob(i, j, l, m) : 1.0 / l;
          double post = model.trans(e->text[i], mj) * a / denom;
          tcount[e->text[i]][mj] += post;
          ttotal[e->text[i]] += post;
          if (dc) (*dc)[j][i] += post;
        }
      }
    }
    for (int t = 0; t < d.vocab->size(); t++) {
      if (ttotal[t] <= 0) continue;
      for (auto& [m, c] : tcount[t]) model.translation[t][m] = c / ttotal[t];
    }
    if (update_distortion) {
      model.distortion.clear();
      for (auto& [key, grid] : dcount) {
        auto& out = model.distortion[key];
        out.assign(grid.size(), std::vector<double>(key.first, 0.0));
        for (size_t j = 0; j < grid.size(); j++) {
          double z = std::accumulate(grid[j].begin(), grid[j].end(), 0.0);
          for (int i = 0; i < key.first; i++)
            out[j][i] = z > 0 ? grid[j][i] / z : 1.0 / key.first;
        }
      }
    }
    model.log_likelihood.push_back(ll);
    model.iterations_run++;
  };

  for (int it = 0; it < iterations; it++) em_pass(diagonal_prior, false);
  if (kind == AlignerKind::ibm2) {
    // distortion starts uniform (equivalent to the ibm1 objective), so the
    // likelihood series stays monotone across the stage boundary
    for (int it = 0; it < iterations; it++) em_pass(true, !diagonal_prior);
  }
  return model;
}

AlignmentLinks viterbi_align(const AlignmentModel& model, const Dataset& d) {
  AlignmentLinks out;
  out.links.resize(d.examples.size());
  std::set<int> warned;
  for (size_t n = 0; n < d.examples.size(); n++) {
    const Example& e = d.examples[n];
    const int l = static_cast<int>(e.text.size());
    const int m = static_cast<int>(e.meaning.size());
    for (int j = 0; j < m; j++) {
      int best = -1;
      double best_score = 0.0;
      for (int i = 0; i < l; i++) {
        double s = model.trans(e.text[i], e.meaning[j]) * model.align_prob(i, j, l, m);
        if (s > best_score) {  // strict: ties keep the lower text position
          best_score = s;
          best = i;
        }
      }
      if (best < 0) {
        if (warned.insert(e.meaning[j]).second)
          std::cerr << "[align] warning: no model entry for meaning symbol '"
                    << d.vocab->symbol(e.meaning[j]).surface << "'; link omitted\n";
        continue;
      }
      out.links[n].push_back({best, j});
      if (e.split == Split::train)
        out.counts[{e.text[best], e.meaning[j]}]++;
    }
  }
  return out;
}

Relation extract_correspondences(const AlignmentLinks& links, const Dataset& d,
                                 double min_fraction) {
  std::vector<long> occ(d.vocab->size(), 0);
  for (const auto& e : d.examples)
    if (e.split == Split::train)
      for (int t : e.text) occ[t]++;

  Relation r{"correspondence", 2, {}};
  std::map<int, std::set<int>> owners;  // meaning -> surviving text partners
  for (const auto& [pair, count] : links.counts) {
    auto [t, m] = pair;
    if (occ[t] <= 0) continue;
    if (static_cast<double>(count) + 1e-12 < min_fraction * occ[t]) continue;
    r.tuples.insert({t, m});
    owners[m].insert(t);
  }
  for (const auto& [m, ts] : owners) {
    if (ts.size() < 2) continue;
    for (int t : ts) r.tuples.erase({t, m});
  }
  return r;
}

namespace {

// hashable flat encoding of an (alpha, beta) context
std::string context_key(const std::vector<int>& toks, int pos, int window, const Vocabulary& v) {
  std::string key;
  for (int k = pos - window; k < pos; k++) {
    key += (k < 0) ? kBoundary : v.symbol(toks[k]).surface;
    key += '\x01';
  }
  key += '\x02';
  const int n = static_cast<int>(toks.size());
  for (int k = pos + 1; k <= pos + window; k++) {
    key += (k >= n) ? kBoundary : v.symbol(toks[k]).surface;
    key += '\x01';
  }
  return key;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ContextSet contexts(const Dataset& d, int text_sym, int window) {
  if (window < 1) throw std::runtime_error("window must be >= 1");
  ContextSet cs;
  cs.owner = text_sym;
  cs.window = window;
  const Vocabulary& v = *d.vocab;
  for (const auto& e : d.examples) {
    if (e.split != Split::train) continue;
    for (size_t p = 0; p < e.text.size(); p++) {
      if (e.text[p] != text_sym) continue;
      std::vector<std::string> alpha, beta;
      for (int k = static_cast<int>(p) - window; k < static_cast<int>(p); k++)
        alpha.push_back(k < 0 ? kBoundary : v.symbol(e.text[k]).surface);
      for (int k = static_cast<int>(p) + 1; k <= static_cast<int>(p) + window; k++)
        beta.push_back(k >= static_cast<int>(e.text.size()) ? kBoundary
                                                            : v.symbol(e.text[k]).surface);
      cs.contexts.insert({alpha, beta});
    }
  }
  return cs;
}

CongruenceGraph build_congruence_graph(
    const Dataset& d, const Relation& correspondences, int window,
    const std::optional<std::unordered_map<int, std::string>>& tags) {
  CongruenceGraph g;
  std::set<int> node_set;
  for (const auto& t : correspondences.tuples) node_set.insert(t[0]);
  g.nodes.assign(node_set.begin(), node_set.end());

  std::unordered_map<std::string, std::set<int>> by_context;
  for (const auto& e : d.examples) {
    if (e.split != Split::train) continue;
    for (size_t p = 0; p < e.text.size(); p++) {
      if (!node_set.count(e.text[p])) continue;
      by_context[context_key(e.text, static_cast<int>(p), window, *d.vocab)].insert(e.text[p]);
    }
  }
  auto tag_of = [&](int sym) -> std::optional<std::string> {
    if (!tags) return std::string();  // untagged run: everything matches
    auto it = tags->find(sym);
    if (it == tags->end()) return std::nullopt;  // untagged symbol matches nothing
    return it->second;
  };
  for (const auto& [key, members] : by_context) {
    for (auto a = members.begin(); a != members.end(); ++a) {
      auto b = a;
      for (++b; b != members.end(); ++b) {
        auto ta = tag_of(*a), tb = tag_of(*b);
        if (!ta || !tb || *ta != *tb) continue;
        g.edges.insert({std::min(*a, *b), std::max(*a, *b)});
      }
    }
  }
  return g;
}

std::vector<Relation> induce_types(
    const Dataset& d, const Relation& correspondences, int window,
    const std::optional<std::unordered_map<int, std::string>>& tags) {
  CongruenceGraph g = build_congruence_graph(d, correspondences, window, tags);
  std::unordered_map<int, int> node_index;
  for (size_t k = 0; k < g.nodes.size(); k++) node_index[g.nodes[k]] = static_cast<int>(k);
  UnionFind uf(static_cast<int>(g.nodes.size()));
  for (const auto& [a, b] : g.edges) uf.unite(node_index[a], node_index[b]);

  std::map<int, std::vector<int>> comps;  // root -> text members
  for (size_t k = 0; k < g.nodes.size(); k++) comps[uf.find(static_cast<int>(k))].push_back(g.nodes[k]);

  std::map<int, std::vector<int>> class_of;
  for (const auto& t : correspondences.tuples) class_of[t[0]].push_back(t[1]);

  std::vector<std::vector<int>> members;
  for (auto& [root, text_members] : comps) {
    std::vector<int> all = text_members;
    for (int t : text_members)
      for (int m : class_of[t]) all.push_back(m);
    members.push_back(std::move(all));
  }
  const Vocabulary& v = *d.vocab;
  auto smallest = [&](const std::vector<int>& ms) {
    std::string best;
    for (int id : ms) {
      const std::string& s = v.symbol(id).surface;
      if (best.empty() || s < best) best = s;
    }
    return best;
  };
  std::sort(members.begin(), members.end(),
            [&](const auto& a, const auto& b) { return smallest(a) < smallest(b); });
  std::vector<Relation> out;
  for (size_t k = 0; k < members.size(); k++) {
    Relation r{"t" + std::to_string(k + 1), 1, {}};
    for (int id : members[k]) r.tuples.insert({id});
    out.push_back(std::move(r));
  }
  return out;
}

std::unordered_map<int, std::string> load_tags(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tags file " + path);
  std::unordered_map<int, std::string> tags;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected token \\t tag");
    int id = vocab.lookup(line.substr(0, tab), Stream::text);
    if (id >= 0) tags[id] = line.substr(tab + 1);
  }
  return tags;
}

LexicalAlgebra induce_algebra(const Dataset& d, const InductionConfig& cfg,
                              InductionReport* report) {
  AlignmentModel model = train_aligner(d, cfg.aligner, cfg.iterations, cfg.diagonal_prior);
  AlignmentLinks links = viterbi_align(model, d);
  Relation corr = extract_correspondences(links, d, cfg.threshold);
  std::optional<std::unordered_map<int, std::string>> tags;
  if (!cfg.tags_path.empty()) tags = load_tags(cfg.tags_path, *d.vocab);
  std::vector<Relation> types = induce_types(d, corr, cfg.window, tags);

  LexicalAlgebra a;
  a.vocab = d.vocab;
  a.type_relations = std::move(types);
  a.correspondence = std::move(corr);
  auto violations = validate_algebra(a);
  if (!violations.empty()) {
    std::string msg = "induced algebra failed validation:";
    for (const auto& v : violations) msg += " [" + v.condition + "] " + v.detail;
    throw std::runtime_error(msg);
  }
  if (report) {
    report->log_likelihood = model.log_likelihood;
    report->component_sizes.clear();
    for (const auto& tr : a.type_relations) {
      size_t text_members = 0;
      for (const auto& t : tr.tuples)
        if (d.vocab->symbol(t[0]).stream == Stream::text) text_members++;
      report->component_sizes.push_back({tr.name, text_members});
    }
    report->correspondence_entries = a.correspondence.tuples.size();
  }
  return a;
}

}  // namespace lexsym
