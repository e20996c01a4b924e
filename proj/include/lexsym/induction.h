#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexsym/algebra.h"
#include "lexsym/corpus.h"

namespace lexsym {

enum class AlignerKind { ibm1, ibm2 };

struct AlignmentModel {
  // translation[text id] -> {meaning id: prob}; each row sums to 1
  std::vector<std::unordered_map<int, double>> translation;
  // distortion[(l, m)][j][i] = a(i | j, l, m); present for ibm2 without prior
  std::map<std::pair<int, int>, std::vector<std::vector<double>>> distortion;
  AlignerKind kind = AlignerKind::ibm1;
  bool diagonal_prior = false;
  int iterations_run = 0;
  std::vector<double> log_likelihood;  // one entry per EM iteration

  double trans(int text_sym, int meaning_sym) const;
  // alignment factor a(i | j, l, m) under the model (uniform for ibm1)
  double align_prob(int i, int j, int l, int m) const;
};

struct AlignmentLinks {
  // per example (dataset order): (text position, meaning position) pairs
  std::vector<std::vector<std::pair<int, int>>> links;
  // aggregated over the train split: (text sym, meaning sym) -> count
  std::map<std::pair<int, int>, long> counts;
};

AlignmentModel train_aligner(const Dataset& d, AlignerKind kind, int iterations,
                             bool diagonal_prior = false);

// Each meaning position links to its argmax text position; ties break toward
// the lower text position. Symbols unknown to the model get no link.
AlignmentLinks viterbi_align(const AlignmentModel& model, const Dataset& d);

// (a) drop (x_i, x_j) with count < min_fraction * occurrences(x_i), then
// (b) drop every meaning symbol still aligned to two or more text symbols.
Relation extract_correspondences(const AlignmentLinks& links, const Dataset& d,
                                 double min_fraction = 0.01);

struct ContextSet {
  int owner = -1;
  int window = 1;
  // (alpha, beta), each exactly `window` tokens, boundary-padded with "<s>"
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> contexts;
};

ContextSet contexts(const Dataset& d, int text_sym, int window);

struct CongruenceGraph {
  std::vector<int> nodes;                       // text symbols with a correspondence
  std::set<std::pair<int, int>> edges;          // unordered, stored as (min, max)
};

CongruenceGraph build_congruence_graph(const Dataset& d, const Relation& correspondences,
                                       int window,
                                       const std::optional<std::unordered_map<int, std::string>>& tags);

// Connected components become types (canonical names t1, t2, ... ordered by
// smallest member surface); meaning symbols inherit their source word's type.
std::vector<Relation> induce_types(const Dataset& d, const Relation& correspondences, int window,
                                   const std::optional<std::unordered_map<int, std::string>>& tags = std::nullopt);

struct InductionConfig {
  AlignerKind aligner = AlignerKind::ibm2;
  int iterations = 5;  // per EM stage; ibm2 runs this many ibm1 iterations first
  double threshold = 0.01;
  int window = 1;
  std::string tags_path;  // optional token \t tag sidecar
  bool diagonal_prior = false;
  uint64_t seed = 0;  // accepted for config parity; induction is deterministic
};

struct InductionReport {
  std::vector<double> log_likelihood;
  std::vector<std::pair<std::string, size_t>> component_sizes;  // type name -> text members
  size_t correspondence_entries = 0;
};

std::unordered_map<int, std::string> load_tags(const std::string& path, const Vocabulary& vocab);

LexicalAlgebra induce_algebra(const Dataset& d, const InductionConfig& cfg,
                              InductionReport* report = nullptr);

}  // namespace lexsym
