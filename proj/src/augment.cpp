#include "lexsym/augment.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "lexsym/rng.h"

namespace lexsym {

NoveltyKey novelty_key_from_name(const std::string& name) {
  if (name == "text+meaning") return NoveltyKey::text_meaning;
  if (name == "text_only") return NoveltyKey::text_only;
  if (name == "question+answer") return NoveltyKey::question_answer;
  throw std::runtime_error("unknown novelty key: " + name);
}

std::string novelty_key_name(NoveltyKey k) {
  switch (k) {
    case NoveltyKey::text_meaning: return "text+meaning";
    case NoveltyKey::text_only: return "text_only";
    case NoveltyKey::question_answer: return "question+answer";
  }
  return "?";
}

std::string novelty_string(const Dataset& d, const Example& e, NoveltyKey k) {
  switch (k) {
    case NoveltyKey::text_meaning:
      return d.detok(e.text) + "\t" + d.detok(e.meaning);
    case NoveltyKey::text_only:
    case NoveltyKey::question_answer:
      // Question and answer both live in the text stream in this layout, so
      // the key deliberately ignores generated meaning codes.
      return d.detok(e.text);
  }
  return {};
}

namespace {

// One swap attempt on e. Keeps the incoming id so callers can chain; returns
// false when no applicable, verified swap exists.
bool sample_once(const LexicalAlgebra& a, Example& e, std::mt19937_64& rng,
                 const AugmentationConfig& cfg, std::string* provenance) {
  std::unordered_set<int> text_ids(e.text.begin(), e.text.end());
  std::unordered_set<int> meaning_ids(e.meaning.begin(), e.meaning.end());

  auto present = [&](int sym) {
    if (text_ids.count(sym)) return true;
    for (int m : equivalence_class(a, sym))
      if (meaning_ids.count(m)) return true;
    return false;
  };

  struct TypeCand {
    std::vector<int> members;  // text members, id order
    std::vector<int> present;  // subset occurring in the example
  };
  std::vector<TypeCand> cands;
  for (const Relation& r : a.type_relations) {
    TypeCand tc;
    for (const auto& t : r.tuples) {
      if (a.vocab->symbol(t[0]).stream != Stream::text) continue;
      tc.members.push_back(t[0]);
      if (present(t[0])) tc.present.push_back(t[0]);
    }
    size_t min_members = cfg.exclude_identity ? 2 : 1;
    if (!tc.present.empty() && tc.members.size() >= min_members) cands.push_back(std::move(tc));
  }
  if (cands.empty()) return false;

  // Uniform type, then uniform pair within it; on rejection fall through to
  // the remaining pairs, then the remaining types. With extra relations a
  // candidate swap must re-verify as a homomorphism before use.
  std::shuffle(cands.begin(), cands.end(), rng);
  for (const TypeCand& tc : cands) {
    std::vector<std::pair<int, int>> pairs;
    for (int xi : tc.present)
      for (int xj : tc.members) {
        if (cfg.exclude_identity && xj == xi) continue;
        pairs.emplace_back(xi, xj);
      }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (auto [xi, xj] : pairs) {
      SymbolMap f;
      try {
        f = make_swap(a, xi, xj, rng());
      } catch (const std::exception&) {
        continue;  // one-sided empty class
      }
      if (!a.extra_relations.empty() && !is_homomorphism(f, a).ok) continue;
      f.class_consistent = cfg.class_consistent;
      std::string id = e.id;
      e = apply(f, a, e);
      e.id = std::move(id);
      if (provenance) *provenance = f.provenance;
      return true;
    }
  }
  return false;
}

Example augment_one(const LexicalAlgebra& a, const Example& e, std::mt19937_64& rng,
                    const AugmentationConfig& cfg) {
  Example out = e;
  std::vector<std::string> provs;
  for (int s = 0; s < cfg.swaps_per_example; s++) {
    std::string p;
    if (sample_once(a, out, rng, cfg, &p)) provs.push_back(std::move(p));
  }
  out.id = e.id + "+aug";
  if (provs.empty()) {
    out.extras["augmentation"] = "noop";
  } else {
    std::string joined = provs[0];
    for (size_t i = 1; i < provs.size(); i++) joined += ";" + provs[i];
    out.extras["augmentation"] = joined;
  }
  return out;
}

AugmentationStats compute_stats(const Dataset& d, const std::vector<Example>& augmented,
                                NoveltyKey key) {
  std::unordered_set<std::string> train_keys, test_keys;
  for (const Example& e : d.examples) {
    if (e.split == Split::train) train_keys.insert(novelty_string(d, e, key));
    if (e.split == Split::test) test_keys.insert(novelty_string(d, e, key));
  }
  AugmentationStats st;
  std::unordered_set<std::string> novel_seen, in_test_seen;
  for (const Example& e : augmented) {
    st.augmented++;
    auto it = e.extras.find("augmentation");
    if (it != e.extras.end() && it->second == "noop") continue;
    std::string k = novelty_string(d, e, key);
    if (train_keys.count(k)) continue;
    st.novel++;
    if (novel_seen.insert(k).second) st.unique_novel++;
    if (test_keys.count(k)) {
      st.in_test++;
      if (in_test_seen.insert(k).second) st.unique_in_test++;
    }
  }
  return st;
}

std::vector<Example> run_pass(const Dataset& d, const LexicalAlgebra& a,
                              const AugmentationConfig& cfg) {
  std::vector<size_t> train_idx;
  for (size_t i = 0; i < d.examples.size(); i++)
    if (d.examples[i].split == Split::train) train_idx.push_back(i);

  std::vector<Example> out(train_idx.size());
  auto work = [&](size_t lo, size_t hi) {
    for (size_t k = lo; k < hi; k++) {
      const Example& e = d.examples[train_idx[k]];
      // Seeded per example id: output is independent of sharding.
      auto rng = make_rng(mix_seed(cfg.seed, fnv1a(e.id)));
      out[k] = augment_one(a, e, rng, cfg);
    }
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || train_idx.size() < 2) {
    work(0, train_idx.size());
  } else {
    jobs = std::min<int>(jobs, static_cast<int>(train_idx.size()));
    std::vector<std::thread> threads;
    size_t chunk = (train_idx.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; t++) {
      size_t lo = t * chunk, hi = std::min(train_idx.size(), lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back(work, lo, hi);
    }
    for (auto& th : threads) th.join();
  }
  return out;
}

}  // namespace

Example sample_augmentation(const Dataset& d, const LexicalAlgebra& a, const Example& e,
                            std::mt19937_64& rng, const AugmentationConfig& cfg) {
  (void)d;  // tokens already carry their stream via the shared vocabulary
  return augment_one(a, e, rng, cfg);
}

std::pair<Dataset, AugmentationStats> augment_pass(const Dataset& d, const LexicalAlgebra& a,
                                                   const AugmentationConfig& cfg) {
  if (!a.validated) throw std::runtime_error("augment_pass: algebra not validated");
  Dataset out;
  out.name = d.name + "+aug";
  out.vocab = d.vocab;
  out.examples = run_pass(d, a, cfg);
  return {std::move(out), compute_stats(d, out.examples, cfg.novelty_key)};
}

std::pair<Dataset, AugmentationStats> augment_passes(const Dataset& d, const LexicalAlgebra& a,
                                                     const AugmentationConfig& cfg, int passes) {
  if (!a.validated) throw std::runtime_error("augment_passes: algebra not validated");
  if (passes < 0) throw std::runtime_error("augment_passes: negative pass count");
  Dataset out;
  out.name = d.name + "+aug";
  out.vocab = d.vocab;
  for (int p = 0; p < passes; p++) {
    AugmentationConfig pc = cfg;
    pc.seed = mix_seed(cfg.seed, static_cast<uint64_t>(p));
    std::vector<Example> batch = run_pass(d, a, pc);
    if (p > 0)
      for (Example& e : batch) e.id += std::to_string(p + 1);
    out.examples.insert(out.examples.end(), std::make_move_iterator(batch.begin()),
                        std::make_move_iterator(batch.end()));
  }
  return {std::move(out), compute_stats(d, out.examples, cfg.novelty_key)};
}

AugmentStream::AugmentStream(const Dataset& d, const LexicalAlgebra& a,
                             const AugmentationConfig& cfg)
    : d_(d), a_(a), cfg_(cfg) {
  if (!a.validated) throw std::runtime_error("AugmentStream: algebra not validated");
  for (size_t i = 0; i < d.examples.size(); i++)
    if (d.examples[i].split == Split::train) train_idx_.push_back(i);
  if (train_idx_.empty()) throw std::runtime_error("AugmentStream: no train examples");
}

Example AugmentStream::next() {
  uint64_t k = pos_++;
  uint64_t t = k / 2;
  const Example& e = d_.examples[train_idx_[t % train_idx_.size()]];
  if (k % 2 == 0) return e;
  uint64_t pass = t / train_idx_.size();
  auto rng = make_rng(mix_seed(cfg_.seed, pass, fnv1a(e.id)));
  Example out = augment_one(a_, e, rng, cfg_);
  if (pass > 0) out.id += std::to_string(pass + 1);
  return out;
}

}  // namespace lexsym
