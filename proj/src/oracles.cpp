#include "lexsym/oracles.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <thread>

namespace lexsym {

Domain domain_from_name(const std::string& name) {
  if (name == "arithmetic") return Domain::arithmetic;
  if (name == "scan") return Domain::scan;
  if (name == "mini_alchemy") return Domain::mini_alchemy;
  if (name == "grid_vqa") return Domain::grid_vqa;
  throw std::runtime_error("unknown domain: " + name);
}

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::arithmetic: return "arithmetic";
    case Domain::scan: return "scan";
    case Domain::mini_alchemy: return "mini_alchemy";
    case Domain::grid_vqa: return "grid_vqa";
  }
  return "?";
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::vector<std::string> surfaces(const Dataset& d, const std::vector<int>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(d.vocab->symbol(id).surface);
  return out;
}

}  // namespace

// ---- arithmetic -----------------------------------------------------------

const std::vector<std::string>& number_words() {
  static const std::vector<std::string> words = {
      "zero",    "one",     "two",       "three",    "four",    "five",    "six",
      "seven",   "eight",   "nine",      "ten",      "eleven",  "twelve",  "thirteen",
      "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};
  return words;
}

int number_from_word(const std::string& w) {
  const auto& words = number_words();
  for (size_t i = 0; i < words.size(); i++)
    if (words[i] == w) return static_cast<int>(i);
  return -1;
}

int arithmetic_interpret(const std::vector<std::string>& words, int max_n) {
  if (words.size() != 5 || words[1] != "plus" || words[3] != "is")
    throw OracleSyntaxError("expected '<a> plus <b> is <c>'");
  int a = number_from_word(words[0]);
  int b = number_from_word(words[2]);
  int c = number_from_word(words[4]);
  if (a < 0 || b < 0 || c < 0 || a > max_n || b > max_n || c > max_n)
    throw OracleSyntaxError("number word out of range");
  return a + b == c ? 1 : 0;
}

// ---- SCAN ------------------------------------------------------------------

namespace {

const std::map<std::string, std::string>& scan_verbs() {
  static const std::map<std::string, std::string> v = {{"walk", "I_WALK"},
                                                       {"look", "I_LOOK"},
                                                       {"run", "I_RUN"},
                                                       {"jump", "I_JUMP"}};
  return v;
}

std::string scan_turn(const std::string& dir) {
  if (dir == "left") return "I_TURN_LEFT";
  if (dir == "right") return "I_TURN_RIGHT";
  throw OracleSyntaxError("expected left or right, got '" + dir + "'");
}

// D | U in the SCAN grammar: a primitive with optional direction modifiers.
std::vector<std::string> scan_verb_phrase(const std::vector<std::string>& v) {
  const auto& verbs = scan_verbs();
  auto action = [&](const std::string& w) {
    auto it = verbs.find(w);
    if (it == verbs.end()) throw OracleSyntaxError("unknown action verb '" + w + "'");
    return it->second;
  };
  if (v.size() == 1) return {action(v[0])};
  if (v.size() == 2) {
    std::string t = scan_turn(v[1]);
    if (v[0] == "turn") return {t};
    return {t, action(v[0])};
  }
  if (v.size() == 3 && v[1] == "opposite") {
    std::string t = scan_turn(v[2]);
    if (v[0] == "turn") return {t, t};
    return {t, t, action(v[0])};
  }
  if (v.size() == 3 && v[1] == "around") {
    std::string t = scan_turn(v[2]);
    std::vector<std::string> out;
    for (int k = 0; k < 4; k++) {
      out.push_back(t);
      if (v[0] != "turn") out.push_back(action(v[0]));
    }
    return out;
  }
  throw OracleSyntaxError("unparseable verb phrase");
}

// S -> V twice | V thrice | V
std::vector<std::string> scan_clause(std::vector<std::string> v) {
  if (v.empty()) throw OracleSyntaxError("empty clause");
  int rep = 1;
  if (v.back() == "twice") rep = 2;
  if (v.back() == "thrice") rep = 3;
  if (rep > 1) v.pop_back();
  std::vector<std::string> once = scan_verb_phrase(v);
  std::vector<std::string> out;
  for (int k = 0; k < rep; k++) out.insert(out.end(), once.begin(), once.end());
  return out;
}

}  // namespace

std::vector<std::string> scan_interpret(const std::vector<std::string>& command) {
  size_t conj = command.size();
  for (size_t i = 0; i < command.size(); i++) {
    if (command[i] == "and" || command[i] == "after") {
      if (conj != command.size()) throw OracleSyntaxError("multiple conjunctions");
      conj = i;
    }
  }
  if (conj == command.size()) return scan_clause(command);
  std::vector<std::string> a(command.begin(), command.begin() + conj);
  std::vector<std::string> b(command.begin() + conj + 1, command.end());
  std::vector<std::string> out;
  if (command[conj] == "and") {
    out = scan_clause(a);
    auto rhs = scan_clause(b);
    out.insert(out.end(), rhs.begin(), rhs.end());
  } else {
    out = scan_clause(b);
    auto rhs = scan_clause(a);
    out.insert(out.end(), rhs.begin(), rhs.end());
  }
  return out;
}

int scan_verify(const Dataset& d, const Example& e) {
  if (e.meaning.empty()) throw AdapterError("scan adapter: example '" + e.id + "' has no meaning stream");
  return scan_interpret(surfaces(d, e.text)) == surfaces(d, e.meaning) ? 1 : 0;
}

// ---- mini-ALCHEMY ----------------------------------------------------------

const std::vector<std::string>& alchemy_colors() {
  static const std::vector<std::string> colors = {"blue",   "cyan", "green", "orange",
                                                  "purple", "red",  "yellow", "brown"};
  return colors;
}

std::string alchemy_mix(const std::string& c1, const std::string& c2) {
  const auto& palette = alchemy_colors();
  auto known = [&](const std::string& c) {
    return std::find(palette.begin(), palette.end(), lower(c)) != palette.end();
  };
  if (!known(c1) || !known(c2)) throw OracleSyntaxError("unknown color in mix");
  if (lower(c1) == lower(c2)) return c1;
  bool upper_case = !c1.empty() && std::isupper(static_cast<unsigned char>(c1[0]));
  return upper_case ? "BROWN" : "brown";
}

AlchemyState parse_alchemy_state(const std::vector<std::string>& tokens) {
  AlchemyState st;
  size_t i = 0;
  while (i < tokens.size()) {
    AlchemyState::Beaker b;
    b.label = tokens[i++];
    if (i >= tokens.size() || tokens[i] != ":")
      throw OracleSyntaxError("state: expected ':' after beaker label");
    i++;
    bool empty_marker = false;
    while (i < tokens.size() && tokens[i] != ",") {
      if (tokens[i] == "_") {
        empty_marker = true;
        i++;
        break;
      }
      std::string unit = tokens[i];
      if (std::find(alchemy_colors().begin(), alchemy_colors().end(), lower(unit)) ==
              alchemy_colors().end() ||
          unit != upper(unit))
        throw OracleSyntaxError("state: unknown unit '" + unit + "'");
      b.colors.push_back(unit);
      i++;
    }
    if (b.colors.empty() && !empty_marker)
      throw OracleSyntaxError("state: beaker '" + b.label + "' has no contents and no '_'");
    if (static_cast<int>(b.colors.size()) > st.capacity)
      throw OracleSyntaxError("state: beaker '" + b.label + "' over capacity");
    for (const auto& prev : st.beakers)
      if (prev.label == b.label) throw OracleSyntaxError("state: duplicate beaker '" + b.label + "'");
    st.beakers.push_back(std::move(b));
    if (i < tokens.size()) {
      if (tokens[i] != ",") throw OracleSyntaxError("state: expected ','");
      i++;
      if (i == tokens.size()) throw OracleSyntaxError("state: trailing ','");
    }
  }
  if (st.beakers.empty()) throw OracleSyntaxError("state: empty");
  return st;
}

std::vector<std::string> alchemy_state_tokens(const AlchemyState& st) {
  std::vector<std::string> out;
  for (size_t k = 0; k < st.beakers.size(); k++) {
    if (k) out.push_back(",");
    out.push_back(st.beakers[k].label);
    out.push_back(":");
    if (st.beakers[k].colors.empty())
      out.push_back("_");
    else
      out.insert(out.end(), st.beakers[k].colors.begin(), st.beakers[k].colors.end());
  }
  return out;
}

bool mini_alchemy_execute(AlchemyState& st, const std::vector<std::string>& instructions) {
  auto find_beaker = [&](const std::string& label) -> AlchemyState::Beaker& {
    for (auto& b : st.beakers)
      if (b.label == label) return b;
    throw OracleSyntaxError("no beaker labeled '" + label + "'");
  };
  std::vector<std::vector<std::string>> cmds(1);
  for (const auto& t : instructions) {
    if (t == ",")
      cmds.emplace_back();
    else
      cmds.back().push_back(t);
  }
  if (cmds.size() == 1 && cmds[0].empty()) return true;  // no instructions

  for (const auto& c : cmds) {
    if (c.size() == 6 && c[0] == "pour" && c[1] == "beaker" && c[3] == "into" && c[4] == "beaker") {
      auto& src = find_beaker(c[2]);
      auto& dst = find_beaker(c[5]);
      if (src.colors.empty()) return false;
      if (&src == &dst) return false;
      if (static_cast<int>(src.colors.size() + dst.colors.size()) > st.capacity) return false;
      dst.colors.insert(dst.colors.end(), src.colors.begin(), src.colors.end());
      src.colors.clear();
    } else if (c.size() == 3 && c[0] == "mix" && c[1] == "beaker") {
      auto& b = find_beaker(c[2]);
      if (b.colors.empty()) return false;
      std::string acc = b.colors[0];
      for (size_t k = 1; k < b.colors.size(); k++) acc = alchemy_mix(acc, b.colors[k]);
      std::fill(b.colors.begin(), b.colors.end(), acc);
    } else if (c.size() == 5 && c[0] == "drain" && c[2] == "from" && c[3] == "beaker") {
      const std::string& color = c[1];
      if (std::find(alchemy_colors().begin(), alchemy_colors().end(), color) ==
          alchemy_colors().end())
        throw OracleSyntaxError("drain: unknown color '" + color + "'");
      auto& b = find_beaker(c[4]);
      std::string unit = upper(color);
      size_t before = b.colors.size();
      b.colors.erase(std::remove(b.colors.begin(), b.colors.end(), unit), b.colors.end());
      if (b.colors.size() == before) return false;
    } else {
      throw OracleSyntaxError("unparseable instruction");
    }
  }
  return true;
}

int mini_alchemy_verify(const Dataset& d, const Example& e) {
  // Streams first: augmentation rewrites them, while extras keep the
  // original strings. Extras remain the entry path for external corpora.
  std::vector<std::string> s0, sn;
  auto m = surfaces(d, e.meaning);
  auto sep = std::find(m.begin(), m.end(), "<sep>");
  if (sep != m.end()) {
    s0.assign(m.begin(), sep);
    sn.assign(sep + 1, m.end());
  } else {
    auto it0 = e.extras.find("state0");
    auto itn = e.extras.find("stateN");
    if (it0 == e.extras.end() || itn == e.extras.end())
      throw AdapterError("mini_alchemy adapter: example '" + e.id +
                         "' has neither a '<sep>' meaning nor state0/stateN fields");
    s0 = split_ws(it0->second);
    sn = split_ws(itn->second);
  }
  AlchemyState st = parse_alchemy_state(s0);
  parse_alchemy_state(sn);  // well-formedness of the claimed final state
  if (!mini_alchemy_execute(st, surfaces(d, e.text))) return 0;
  return alchemy_state_tokens(st) == sn ? 1 : 0;
}

// ---- grid VQA ---------------------------------------------------------------

void Codebook::index() {
  color_of.clear();
  for (const auto& [word, cs] : codes)
    for (int c : cs) color_of[c] = word;
}

const Codebook& cogent_codebook() {
  static const Codebook cb = [] {
    Codebook b;
    b.codes = {{"red", {9}},   {"purple", {25, 29}}, {"cyan", {28}},  {"blue", {20}},
               {"green", {11}}, {"yellow", {23, 18}}, {"gray", {6}},  {"brown", {2}}};
    b.background = 0;
    b.index();
    return b;
  }();
  return cb;
}

int grid_vqa_interpret(const std::vector<std::string>& question, const std::vector<int>& grid,
                       int h, int w, const std::string& answer, const Codebook& cb) {
  if (h <= 0 || w <= 0 || static_cast<int>(grid.size()) != h * w)
    throw OracleSyntaxError("grid does not match its dimensions");
  for (int code : grid)
    if (code != cb.background && !cb.color_of.count(code))
      throw OracleSyntaxError("unknown grid code " + std::to_string(code));

  auto count_color = [&](const std::string& color) {
    auto it = cb.codes.find(color);
    if (it == cb.codes.end()) throw OracleSyntaxError("unknown color '" + color + "'");
    int n = 0;
    for (int code : grid)
      if (std::find(it->second.begin(), it->second.end(), code) != it->second.end()) n++;
    return n;
  };

  if (question.size() == 3 && question[0] == "count" && question[2] == "cells")
    return answer == std::to_string(count_color(question[1])) ? 1 : 0;
  if (question.size() == 3 && question[0] == "any" && question[2] == "present")
    return answer == (count_color(question[1]) > 0 ? "yes" : "no") ? 1 : 0;
  if (question.size() == 5 && question[0] == "name" && question[1] == "hue" && question[2] == "at") {
    if (!all_digits(question[3]) || !all_digits(question[4]))
      throw OracleSyntaxError("cell coordinates must be digits");
    int r = std::stoi(question[3]), c = std::stoi(question[4]);
    if (r >= h || c >= w) throw OracleSyntaxError("cell out of range");
    int code = grid[r * w + c];
    std::string expected = code == cb.background ? "none" : cb.color_of.at(code);
    return answer == expected ? 1 : 0;
  }
  throw OracleSyntaxError("unknown question template");
}

int grid_vqa_verify(const Dataset& d, const Example& e, const Codebook& cb) {
  // Streams first (see mini_alchemy_verify); extras question/grid/answer are
  // the fallback for corpora that only ship structured fields.
  std::vector<std::string> question;
  std::string answer;
  auto t = surfaces(d, e.text);
  if (t.size() >= 2) {
    answer = t.back();
    t.pop_back();
    question = std::move(t);
  } else {
    auto itq = e.extras.find("question");
    auto ita = e.extras.find("answer");
    if (itq == e.extras.end() || ita == e.extras.end())
      throw AdapterError("grid_vqa adapter: example '" + e.id + "' text too short for question+answer");
    question = split_ws(itq->second);
    answer = ita->second;
  }

  std::vector<std::string> code_tokens = surfaces(d, e.meaning);
  if (code_tokens.empty()) {
    auto itg = e.extras.find("grid");
    if (itg != e.extras.end()) code_tokens = split_ws(itg->second);
  }
  if (code_tokens.empty())
    throw AdapterError("grid_vqa adapter: example '" + e.id + "' has no grid codes");
  std::vector<int> grid;
  grid.reserve(code_tokens.size());
  for (const auto& tok : code_tokens) {
    if (!all_digits(tok)) throw OracleSyntaxError("non-numeric grid code '" + tok + "'");
    grid.push_back(std::stoi(tok));
  }

  int h = 0, w = 0;
  auto ith = e.extras.find("grid_h");
  auto itw = e.extras.find("grid_w");
  if (ith != e.extras.end() && itw != e.extras.end()) {
    h = std::stoi(ith->second);
    w = std::stoi(itw->second);
  } else {
    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(grid.size()))));
    if (side * side != static_cast<int>(grid.size()))
      throw AdapterError("grid_vqa adapter: example '" + e.id +
                         "' has a non-square grid and no grid_h/grid_w fields");
    h = w = side;
  }
  return grid_vqa_interpret(question, grid, h, w, answer, cb);
}

// ---- dataset-level verification ---------------------------------------------

Verdict verify_example(const Dataset& d, const Example& e, Domain domain, std::string* reason) {
  try {
    int ok = 0;
    switch (domain) {
      case Domain::arithmetic: ok = arithmetic_interpret(surfaces(d, e.text)); break;
      case Domain::scan: ok = scan_verify(d, e); break;
      case Domain::mini_alchemy: ok = mini_alchemy_verify(d, e); break;
      case Domain::grid_vqa: ok = grid_vqa_verify(d, e); break;
    }
    if (ok) return Verdict::valid;
    if (reason) *reason = "interpretation failed";
    return Verdict::invalid;
  } catch (const OracleSyntaxError& ex) {
    if (reason) *reason = std::string("syntax: ") + ex.what();
    return Verdict::malformed;
  }
}

VerifyReport verify_dataset(const Dataset& d, Domain domain, int jobs) {
  size_t n = d.examples.size();
  std::vector<Verdict> verdicts(n, Verdict::valid);
  std::vector<std::string> reasons(n);

  auto work = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; i++)
      verdicts[i] = verify_example(d, d.examples[i], domain, &reasons[i]);
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || n < 2) {
    work(0, n);
  } else {
    jobs = std::min<int>(jobs, static_cast<int>(n));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    size_t chunk = (n + jobs - 1) / jobs;
    for (int t = 0; t < jobs; t++) {
      size_t lo = t * chunk, hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&, t, lo, hi] {
        try {
          work(lo, hi);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : threads) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  VerifyReport rep;
  rep.total = static_cast<long>(n);
  for (size_t i = 0; i < n; i++) {
    switch (verdicts[i]) {
      case Verdict::valid: rep.valid++; break;
      case Verdict::invalid: rep.invalid++; break;
      case Verdict::malformed: rep.malformed++; break;
    }
    if (verdicts[i] != Verdict::valid)
      rep.failures.push_back({d.examples[i].id, reasons[i]});
  }
  rep.fraction = rep.total ? static_cast<double>(rep.valid) / rep.total : 1.0;
  return rep;
}

}  // namespace lexsym
