#include "lexsym/fixtures.h"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lexsym/oracles.h"
#include "lexsym/rng.h"

namespace lexsym {

namespace {

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (size_t i = 0; i < toks.size(); i++) {
    if (i) out += ' ';
    out += toks[i];
  }
  return out;
}

std::string fmt_id(const char* prefix, size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, n);
  return buf;
}

Relation make_type(const std::string& name, const std::vector<int>& members) {
  Relation r{name, 1, {}};
  for (int m : members) r.tuples.insert({m});
  return r;
}

void must_validate(LexicalAlgebra& a, const char* what) {
  auto violations = validate_algebra(a);
  if (!violations.empty())
    throw std::logic_error(std::string(what) + ": fixture algebra failed validation: " +
                           violations[0].condition + " " + violations[0].detail);
}

}  // namespace

// ---- SCAN -------------------------------------------------------------------

std::vector<std::vector<std::string>> scan_all_commands() {
  const std::vector<std::string> verbs = {"walk", "look", "run", "jump"};
  const std::vector<std::string> heads = {"walk", "look", "run", "jump", "turn"};
  const std::vector<std::string> dirs = {"left", "right"};

  std::vector<std::vector<std::string>> phrases;
  for (const auto& u : verbs) phrases.push_back({u});
  for (const auto& h : heads)
    for (const char* mod : {"", "opposite", "around"})
      for (const auto& dir : dirs) {
        std::vector<std::string> p{h};
        if (*mod) p.push_back(mod);
        p.push_back(dir);
        phrases.push_back(std::move(p));
      }

  std::vector<std::vector<std::string>> clauses;
  for (const auto& p : phrases) {
    clauses.push_back(p);
    for (const char* rep : {"twice", "thrice"}) {
      auto c = p;
      c.push_back(rep);
      clauses.push_back(std::move(c));
    }
  }

  std::vector<std::vector<std::string>> commands = clauses;
  for (const char* conj : {"and", "after"})
    for (const auto& a : clauses)
      for (const auto& b : clauses) {
        auto c = a;
        c.push_back(conj);
        c.insert(c.end(), b.begin(), b.end());
        commands.push_back(std::move(c));
      }
  return commands;
}

Dataset make_scan_dataset() {
  Dataset d;
  d.name = "scan-jump";
  auto commands = scan_all_commands();

  auto add = [&](const std::vector<std::string>& cmd, Split split, const char* prefix, size_t n) {
    Example e;
    e.id = fmt_id(prefix, n);
    e.text = d.tokenize(join(cmd), Stream::text);
    e.meaning = d.tokenize(join(scan_interpret(cmd)), Stream::meaning);
    e.split = split;
    d.examples.push_back(std::move(e));
  };

  size_t ntrain = 0, ntest = 0;
  for (const auto& cmd : commands) {
    bool has_jump = std::find(cmd.begin(), cmd.end(), "jump") != cmd.end();
    if (!has_jump) add(cmd, Split::train, "train_", ntrain++);
  }
  // The add-jump split shows "jump" only in isolation, oversampled to 1467
  // copies so primitive frequencies stay balanced.
  for (int k = 0; k < 1467; k++) add({"jump"}, Split::train, "train_", ntrain++);
  for (const auto& cmd : commands) {
    bool has_jump = std::find(cmd.begin(), cmd.end(), "jump") != cmd.end();
    if (has_jump && cmd.size() > 1) add(cmd, Split::test, "test_", ntest++);
  }
  return d;
}

LexicalAlgebra make_scan_algebra(Dataset& d) {
  LexicalAlgebra a;
  a.vocab = d.vocab;
  auto t = [&](const char* s) { return d.vocab->intern(s, Stream::text); };
  auto m = [&](const char* s) { return d.vocab->intern(s, Stream::meaning); };

  a.type_relations.push_back(make_type(
      "t1", {t("jump"), t("walk"), t("run"), t("look"), m("I_JUMP"), m("I_WALK"), m("I_RUN"), m("I_LOOK")}));
  a.type_relations.push_back(
      make_type("t2", {t("left"), t("right"), m("I_TURN_LEFT"), m("I_TURN_RIGHT")}));
  a.correspondence.tuples = {{t("jump"), m("I_JUMP")}, {t("walk"), m("I_WALK")},
                             {t("run"), m("I_RUN")},   {t("look"), m("I_LOOK")},
                             {t("left"), m("I_TURN_LEFT")}, {t("right"), m("I_TURN_RIGHT")}};
  must_validate(a, "scan");
  return a;
}

// ---- grid VQA ----------------------------------------------------------------

namespace {

constexpr int kGridSide = 3;

std::vector<std::string> grid_tokens(const std::vector<int>& grid) {
  std::vector<std::string> out;
  out.reserve(grid.size());
  for (int code : grid) out.push_back(std::to_string(code));
  return out;
}

int pick_code(const Codebook& cb, const std::string& color, std::mt19937_64& rng) {
  const auto& codes = cb.codes.at(color);
  return codes[rng_index(rng, codes.size())];
}

}  // namespace

Dataset make_grid_induction_dataset(int reps, uint64_t seed) {
  Dataset d;
  d.name = "grid-induction";
  const Codebook& cb = cogent_codebook();
  auto rng = make_rng(seed);
  size_t n = 0;

  std::vector<std::string> colors;
  for (const auto& [word, codes] : cb.codes) colors.push_back(word);

  auto add = [&](const std::vector<std::string>& text, const std::vector<int>& grid) {
    Example e;
    e.id = fmt_id("g", n++);
    e.text = d.tokenize(join(text), Stream::text);
    e.meaning = d.tokenize(join(grid_tokens(grid)), Stream::meaning);
    e.split = Split::train;
    d.examples.push_back(std::move(e));
  };

  // Single-color grids; the question always names the color on the grid, so
  // codes never co-occur with a wrong color word.
  for (int rep = 0; rep < reps; rep++) {
    for (const auto& color : colors) {
      std::vector<int> cells(kGridSide * kGridSide);
      std::iota(cells.begin(), cells.end(), 0);

      {  // count <color> cells <k>
        std::vector<int> grid(kGridSide * kGridSide, cb.background);
        int k = 1 + static_cast<int>(rng_index(rng, 4));
        std::shuffle(cells.begin(), cells.end(), rng);
        for (int i = 0; i < k; i++) grid[cells[i]] = pick_code(cb, color, rng);
        add({"count", color, "cells", std::to_string(k)}, grid);
      }
      {  // any <color> present yes
        std::vector<int> grid(kGridSide * kGridSide, cb.background);
        int k = 1 + static_cast<int>(rng_index(rng, 3));
        std::shuffle(cells.begin(), cells.end(), rng);
        for (int i = 0; i < k; i++) grid[cells[i]] = pick_code(cb, color, rng);
        add({"any", color, "present", "yes"}, grid);
      }
      {  // name hue at <r> <c> <color>
        std::vector<int> grid(kGridSide * kGridSide, cb.background);
        int r = static_cast<int>(rng_index(rng, kGridSide));
        int c = static_cast<int>(rng_index(rng, kGridSide));
        grid[r * kGridSide + c] = pick_code(cb, color, rng);
        if (rng_index(rng, 2)) grid[rng_index(rng, grid.size())] = pick_code(cb, color, rng);
        grid[r * kGridSide + c] = pick_code(cb, color, rng);
        add({"name", "hue", "at", std::to_string(r), std::to_string(c), color}, grid);
      }
    }
  }
  return d;
}

Dataset make_grid_verification_dataset(int n, uint64_t seed) {
  Dataset d;
  d.name = "grid-verify";
  const Codebook& cb = cogent_codebook();
  auto rng = make_rng(seed);

  std::vector<std::string> colors;
  for (const auto& [word, codes] : cb.codes) colors.push_back(word);

  for (int i = 0; i < n; i++) {
    std::vector<int> grid(kGridSide * kGridSide, cb.background);
    std::vector<std::string> cell_color(grid.size());
    for (size_t c = 0; c < grid.size(); c++) {
      if (rng_index(rng, 2)) continue;  // background
      const std::string& color = colors[rng_index(rng, colors.size())];
      cell_color[c] = color;
      grid[c] = pick_code(cb, color, rng);
    }

    std::vector<std::string> text;
    switch (rng_index(rng, 3)) {
      case 0: {
        const std::string& color = colors[rng_index(rng, colors.size())];
        int k = static_cast<int>(std::count(cell_color.begin(), cell_color.end(), color));
        text = {"count", color, "cells", std::to_string(k)};
        break;
      }
      case 1: {
        const std::string& color = colors[rng_index(rng, colors.size())];
        bool there = std::count(cell_color.begin(), cell_color.end(), color) > 0;
        text = {"any", color, "present", there ? "yes" : "no"};
        break;
      }
      default: {
        int r = static_cast<int>(rng_index(rng, kGridSide));
        int c = static_cast<int>(rng_index(rng, kGridSide));
        const std::string& color = cell_color[r * kGridSide + c];
        text = {"name", "hue", "at", std::to_string(r), std::to_string(c),
                color.empty() ? "none" : color};
        break;
      }
    }

    Example e;
    e.id = fmt_id("v", static_cast<size_t>(i));
    e.text = d.tokenize(join(text), Stream::text);
    e.meaning = d.tokenize(join(grid_tokens(grid)), Stream::meaning);
    e.split = Split::train;
    d.examples.push_back(std::move(e));
  }
  return d;
}

LexicalAlgebra make_cogent_algebra(Dataset& d) {
  LexicalAlgebra a;
  a.vocab = d.vocab;
  const Codebook& cb = cogent_codebook();

  std::vector<int> members;
  for (const auto& [word, codes] : cb.codes) {
    int w = d.vocab->intern(word, Stream::text);
    members.push_back(w);
    for (int code : codes) {
      int c = d.vocab->intern(std::to_string(code), Stream::meaning);
      members.push_back(c);
      a.correspondence.tuples.insert({w, c});
    }
  }
  a.type_relations.push_back(make_type("t1", members));
  must_validate(a, "cogent");
  return a;
}

// ---- mini-ALCHEMY -------------------------------------------------------------

namespace {

std::string upper_copy(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

Dataset make_mini_alchemy_dataset(int n, uint64_t seed) {
  Dataset d;
  d.name = "mini-alchemy";
  auto rng = make_rng(seed);
  const auto& palette = alchemy_colors();

  for (int i = 0; i < n; i++) {
    AlchemyState st;
    st.beakers = {{"1", {}}, {"2", {}}, {"3", {}}};
    int total = 0;
    for (auto& b : st.beakers) {
      int h = static_cast<int>(rng_index(rng, 4));  // 0..3, leaves room to pour
      for (int u = 0; u < h; u++) b.colors.push_back(upper_copy(palette[rng_index(rng, palette.size())]));
      total += h;
    }
    if (total == 0) {
      st.beakers[0].colors.push_back(upper_copy(palette[rng_index(rng, palette.size())]));
    }
    AlchemyState start = st;

    std::vector<std::string> text;
    int steps = 1 + static_cast<int>(rng_index(rng, 3));
    for (int s = 0; s < steps; s++) {
      // Enumerate legal moves against the current state, pick one uniformly.
      std::vector<std::vector<std::string>> moves;
      for (const auto& src : st.beakers)
        for (const auto& dst : st.beakers) {
          if (&src == &dst || src.colors.empty()) continue;
          if (static_cast<int>(src.colors.size() + dst.colors.size()) > st.capacity) continue;
          moves.push_back({"pour", "beaker", src.label, "into", "beaker", dst.label});
        }
      for (const auto& b : st.beakers)
        if (!b.colors.empty()) moves.push_back({"mix", "beaker", b.label});
      for (const auto& b : st.beakers) {
        std::set<std::string> units(b.colors.begin(), b.colors.end());
        for (const auto& u : units) {
          std::string color = u;
          for (char& c : color) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          moves.push_back({"drain", color, "from", "beaker", b.label});
        }
      }
      if (moves.empty()) break;
      const auto& mv = moves[rng_index(rng, moves.size())];
      bool ok = mini_alchemy_execute(st, mv);
      assert(ok);
      (void)ok;
      if (!text.empty()) text.push_back(",");
      text.insert(text.end(), mv.begin(), mv.end());
    }
    if (text.empty()) {
      i--;  // all beakers stuck; resample
      continue;
    }

    std::vector<std::string> meaning = alchemy_state_tokens(start);
    meaning.push_back("<sep>");
    auto fin = alchemy_state_tokens(st);
    meaning.insert(meaning.end(), fin.begin(), fin.end());

    Example e;
    e.id = fmt_id("a", static_cast<size_t>(i));
    e.text = d.tokenize(join(text), Stream::text);
    e.meaning = d.tokenize(join(meaning), Stream::meaning);
    e.split = Split::train;
    d.examples.push_back(std::move(e));
  }
  return d;
}

LexicalAlgebra make_mini_alchemy_algebra(Dataset& d) {
  LexicalAlgebra a;
  a.vocab = d.vocab;
  const auto& palette = alchemy_colors();

  std::vector<int> mixable, brown_type, units;
  for (const auto& color : palette) {
    int w = d.vocab->intern(color, Stream::text);
    int u = d.vocab->intern(upper_copy(color), Stream::meaning);
    units.push_back(u);
    a.correspondence.tuples.insert({w, u});
    if (color == "brown") {
      brown_type = {w, u};
    } else {
      mixable.push_back(w);
      mixable.push_back(u);
    }
  }
  a.type_relations.push_back(make_type("t1", mixable));
  a.type_relations.push_back(make_type("t2", brown_type));

  Relation mix{"r_mix", 3, {}};
  for (const auto& c1 : palette)
    for (const auto& c2 : palette) {
      int u1 = d.vocab->intern(upper_copy(c1), Stream::meaning);
      int u2 = d.vocab->intern(upper_copy(c2), Stream::meaning);
      int u3 = d.vocab->intern(upper_copy(alchemy_mix(c1, c2)), Stream::meaning);
      mix.tuples.insert({u1, u2, u3});
    }
  if (mix.tuples.size() != 64)
    throw std::logic_error("mini-alchemy: expected 64 mixing tuples");
  a.extra_relations.push_back(std::move(mix));
  must_validate(a, "mini-alchemy");
  return a;
}

// ---- COGS-like ----------------------------------------------------------------

Dataset make_cogs_dataset() {
  Dataset d;
  d.name = "cogs-sample";
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"baked", "bake"}, {"noticed", "notice"}, {"helped", "help"}};
  const std::vector<std::string> nouns = {"boy", "dog", "sailor"};

  size_t n = 0;
  for (const auto& [verb, stem] : verbs)
    for (const auto& na : nouns)
      for (const auto& nb : nouns) {
        if (na == nb) continue;
        Example e;
        e.id = fmt_id("c", n++);
        e.text = d.tokenize("the " + na + " " + verb + " the " + nb, Stream::text);
        e.meaning = d.tokenize(stem + " " + na + " " + nb, Stream::meaning);
        e.split = Split::train;
        d.examples.push_back(std::move(e));
      }
  return d;
}

// ---- arithmetic ----------------------------------------------------------------

Dataset make_arithmetic_dataset(int max_n) {
  Dataset d;
  d.name = "arithmetic";
  const auto& words = number_words();
  if (max_n >= static_cast<int>(words.size()))
    throw std::invalid_argument("make_arithmetic_dataset: max_n beyond the number word list");

  size_t n = 0;
  for (int a = 0; a <= max_n; a++)
    for (int b = 0; a + b <= max_n; b++) {
      Example e;
      e.id = fmt_id("ar", n++);
      e.text = d.tokenize(words[a] + " plus " + words[b] + " is " + words[a + b], Stream::text);
      e.split = Split::train;
      d.examples.push_back(std::move(e));
    }
  return d;
}

LexicalAlgebra make_arithmetic_algebra(Dataset& d, int max_n) {
  LexicalAlgebra a;
  a.vocab = d.vocab;
  const auto& words = number_words();

  std::vector<int> members;
  std::vector<int> ids(max_n + 1);
  for (int k = 0; k <= max_n; k++) {
    ids[k] = d.vocab->intern(words[k], Stream::text);
    members.push_back(ids[k]);
  }
  a.type_relations.push_back(make_type("t1", members));

  Relation sum{"r_sum", 3, {}};
  for (int x = 0; x <= max_n; x++)
    for (int y = 0; x + y <= max_n; y++) sum.tuples.insert({ids[x], ids[y], ids[x + y]});
  a.extra_relations.push_back(std::move(sum));
  must_validate(a, "arithmetic");
  return a;
}

// ---- random algebras ------------------------------------------------------------

LexicalAlgebra make_random_algebra(std::mt19937_64& rng) {
  LexicalAlgebra a;
  int n = 1 + static_cast<int>(rng_index(rng, 5));

  std::vector<int> text_syms, meaning_syms;
  for (int i = 0; i < n; i++) {
    bool is_text = i == 0 ? true : rng_index(rng, 2) == 0;  // at least one text symbol
    if (is_text)
      text_syms.push_back(a.vocab->intern(std::string(1, static_cast<char>('a' + i)), Stream::text));
    else
      meaning_syms.push_back(
          a.vocab->intern(std::string(1, static_cast<char>('A' + i)), Stream::meaning));
  }

  // Correspondence: each meaning symbol gets at most one owner.
  std::vector<int> unowned = meaning_syms;
  std::unordered_map<int, int> owner;
  for (int m : meaning_syms) {
    if (rng_index(rng, 3) == 0) continue;  // leave some unowned
    int x = text_syms[rng_index(rng, text_syms.size())];
    a.correspondence.tuples.insert({x, m});
    owner[m] = x;
    unowned.erase(std::find(unowned.begin(), unowned.end(), m));
  }

  // Type groups over text symbols; owned meaning symbols inherit.
  std::vector<int> pool = text_syms;
  std::shuffle(pool.begin(), pool.end(), rng);
  int named = 0;
  while (!pool.empty()) {
    if (rng_index(rng, 3) == 0) {  // leave untyped
      pool.pop_back();
      continue;
    }
    size_t take = std::min(pool.size(), size_t(1) + rng_index(rng, 2));
    std::vector<int> group(pool.end() - take, pool.end());
    pool.resize(pool.size() - take);
    std::vector<int> members = group;
    for (const auto& [m, x] : owner)
      if (std::find(group.begin(), group.end(), x) != group.end()) members.push_back(m);
    a.type_relations.push_back(make_type("t" + std::to_string(++named), members));
  }
  // Occasionally type an unowned meaning symbol on its own.
  for (int m : unowned)
    if (rng_index(rng, 4) == 0)
      a.type_relations.push_back(make_type("t" + std::to_string(++named), {m}));

  if (rng_index(rng, 2) == 0) {
    int arity = 1 + static_cast<int>(rng_index(rng, 2));
    Relation r{"r_x", arity, {}};
    std::vector<int> all;
    for (int i = 0; i < a.vocab->size(); i++) all.push_back(i);
    std::vector<int> idx(arity, 0);
    while (true) {
      if (rng_index(rng, 3) == 0) {
        std::vector<int> t;
        for (int k : idx) t.push_back(all[k]);
        r.tuples.insert(std::move(t));
      }
      int p = arity - 1;
      while (p >= 0 && ++idx[p] == static_cast<int>(all.size())) idx[p--] = 0;
      if (p < 0) break;
    }
    if (!r.tuples.empty()) a.extra_relations.push_back(std::move(r));
  }

  must_validate(a, "random");
  return a;
}

}  // namespace lexsym
