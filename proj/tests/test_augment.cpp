#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "lexsym/augment.h"
#include "lexsym/fixtures.h"
#include "lexsym/oracles.h"
#include "lexsym/rng.h"

using namespace lexsym;

TEST_CASE("novelty keys parse and select the right strings") {
  CHECK(novelty_key_from_name("text+meaning") == NoveltyKey::text_meaning);
  CHECK(novelty_key_from_name("text_only") == NoveltyKey::text_only);
  CHECK(novelty_key_from_name("question+answer") == NoveltyKey::question_answer);
  CHECK_THROWS_AS(novelty_key_from_name("bogus"), std::runtime_error);
  CHECK(novelty_key_name(NoveltyKey::question_answer) == "question+answer");

  Dataset d;
  Example e;
  e.id = "n";
  e.text = d.tokenize("count red cells 2", Stream::text);
  e.meaning = d.tokenize("9 9 0 0", Stream::meaning);
  CHECK(novelty_string(d, e, NoveltyKey::text_meaning) == "count red cells 2\t9 9 0 0");
  CHECK(novelty_string(d, e, NoveltyKey::text_only) == "count red cells 2");
  // the grid layout keeps question and answer in the text stream, so novel
  // codes alone must not count as novel triples
  CHECK(novelty_string(d, e, NoveltyKey::question_answer) == "count red cells 2");
}

TEST_CASE("sampled swap rewrites both streams coherently") {
  Dataset d = make_scan_dataset();
  LexicalAlgebra a = make_scan_algebra(d);
  Dataset probe;
  probe.vocab = d.vocab;
  Example e;
  e.id = "s";
  e.text = probe.tokenize_const("jump twice", Stream::text);
  e.meaning = probe.tokenize_const("I_JUMP I_JUMP", Stream::meaning);

  auto rng = make_rng(41);
  AugmentationConfig cfg;
  Example out = sample_augmentation(probe, a, e, rng, cfg);
  std::string verb = d.vocab->symbol(out.text[0]).surface;
  // exclude_identity keeps jump out of the candidate pool
  CHECK(std::set<std::string>{"walk", "run", "look"}.count(verb) == 1);
  CHECK(d.vocab->symbol(out.text[1]).surface == "twice");
  CHECK(scan_verify(d, out) == 1);
  CHECK(out.id == "s+aug");
  CHECK(out.extras.at("augmentation") != "noop");
}

TEST_CASE("examples without lexicon tokens pass through as noops") {
  Dataset d = make_scan_dataset();
  LexicalAlgebra a = make_scan_algebra(d);
  Dataset probe;
  probe.vocab = d.vocab;
  // directions are typed, so a bare turn command still swaps
  Example bare;
  bare.id = "u";
  bare.text = probe.tokenize_const("turn left", Stream::text);
  bare.meaning = probe.tokenize_const("I_TURN_LEFT", Stream::meaning);

  auto rng = make_rng(1);
  Example swapped = sample_augmentation(probe, a, bare, rng, {});
  // left <-> right is the only available move
  CHECK(d.detok(swapped.text) == "turn right");
  CHECK(d.detok(swapped.meaning) == "I_TURN_RIGHT");

  Dataset arith = make_arithmetic_dataset(6);
  LexicalAlgebra empty_alg;
  empty_alg.vocab = arith.vocab;
  REQUIRE(validate_algebra(empty_alg).empty());
  auto rng2 = make_rng(2);
  Example noop = sample_augmentation(arith, empty_alg, arith.examples[0], rng2, {});
  CHECK(noop.extras.at("augmentation") == "noop");
  CHECK(noop.text == arith.examples[0].text);
}

TEST_CASE("alchemy swap touches the color word and its state units only") {
  Dataset d = make_mini_alchemy_dataset(300, 8);
  LexicalAlgebra a = make_mini_alchemy_algebra(d);
  int red = d.vocab->lookup("red", Stream::text);
  int green = d.vocab->lookup("green", Stream::text);
  REQUIRE(red >= 0);

  const Example* e = nullptr;  // want "drain red ..." with RED in the state
  for (const auto& ex : d.examples) {
    bool text_red = false;
    for (int t : ex.text) text_red |= t == red;
    if (text_red) {
      e = &ex;
      break;
    }
  }
  REQUIRE(e != nullptr);
  REQUIRE(mini_alchemy_verify(d, *e) == 1);

  SymbolMap f = make_swap(a, red, green, 19);
  Example out = apply(f, a, *e, 19);
  CHECK(mini_alchemy_verify(d, out) == 1);
  for (size_t i = 0; i < e->text.size(); i++) {
    const auto& before = d.vocab->symbol(e->text[i]).surface;
    const auto& after = d.vocab->symbol(out.text[i]).surface;
    if (before == "red") CHECK(after == "green");
    else if (before == "green") CHECK(after == "red");
    else CHECK(after == before);
  }
  for (size_t i = 0; i < e->meaning.size(); i++) {
    const auto& before = d.vocab->symbol(e->meaning[i]).surface;
    const auto& after = d.vocab->symbol(out.meaning[i]).surface;
    if (before == "RED") CHECK(after == "GREEN");
    else if (before == "GREEN") CHECK(after == "RED");
    else CHECK(after == before);
  }
}

TEST_CASE("augment_pass conserves size and leaves the input alone") {
  Dataset d = make_scan_dataset();
  LexicalAlgebra a = make_scan_algebra(d);
  size_t train = 0;
  for (const auto& e : d.examples) train += e.split == Split::train;
  std::string before = d.detok(d.examples[0].text);

  AugmentationConfig cfg;
  cfg.seed = 5;
  auto [out, stats] = augment_pass(d, a, cfg);
  CHECK(out.examples.size() == train);
  CHECK(stats.augmented == static_cast<long>(train));
  CHECK(d.detok(d.examples[0].text) == before);
  CHECK(out.vocab == d.vocab);

  CHECK(stats.unique_novel <= stats.novel);
  CHECK(stats.novel <= stats.augmented);
  CHECK(stats.in_test <= stats.novel);
  CHECK(stats.unique_in_test <= stats.in_test);
  CHECK(stats.novel > 0);  // verb swaps reach jump commands

  // every output example is well-formed
  VerifyReport rep = verify_dataset(out, Domain::scan, 4);
  CHECK(rep.fraction == 1.0);
}

TEST_CASE("augmentation is deterministic and job-count invariant") {
  Dataset d = make_mini_alchemy_dataset(200, 4);
  LexicalAlgebra a = make_mini_alchemy_algebra(d);
  AugmentationConfig cfg;
  cfg.seed = 9;
  auto [o1, s1] = augment_pass(d, a, cfg);
  auto [o2, s2] = augment_pass(d, a, cfg);
  cfg.jobs = 4;
  auto [o3, s3] = augment_pass(d, a, cfg);
  REQUIRE(o1.examples.size() == o2.examples.size());
  REQUIRE(o1.examples.size() == o3.examples.size());
  for (size_t i = 0; i < o1.examples.size(); i++) {
    CHECK(o1.examples[i].id == o2.examples[i].id);
    CHECK(o1.examples[i].text == o2.examples[i].text);
    CHECK(o1.examples[i].meaning == o2.examples[i].meaning);
    CHECK(o1.examples[i].text == o3.examples[i].text);
    CHECK(o1.examples[i].meaning == o3.examples[i].meaning);
  }
  CHECK(s1.novel == s2.novel);
  CHECK(s1.novel == s3.novel);
  CHECK(s1.unique_novel == s3.unique_novel);

  AugmentationConfig other = cfg;
  other.seed = 10;
  auto [o4, s4] = augment_pass(d, a, other);
  bool all_same = true;
  for (size_t i = 0; i < o1.examples.size(); i++)
    all_same &= o1.examples[i].text == o4.examples[i].text &&
                o1.examples[i].meaning == o4.examples[i].meaning;
  CHECK(!all_same);
}

TEST_CASE("multiple passes stack with distinct ids") {
  Dataset d = make_mini_alchemy_dataset(60, 6);
  LexicalAlgebra a = make_mini_alchemy_algebra(d);
  AugmentationConfig cfg;
  cfg.seed = 2;
  auto [out, stats] = augment_passes(d, a, cfg, 2);
  CHECK(out.examples.size() == 2 * d.examples.size());
  CHECK(stats.augmented == static_cast<long>(out.examples.size()));
  std::set<std::string> ids;
  for (const auto& e : out.examples) ids.insert(e.id);
  CHECK(ids.size() == out.examples.size());
  CHECK(out.examples.back().id == d.examples.back().id + "+aug2");

  auto [none, zero] = augment_passes(d, a, cfg, 0);
  CHECK(none.examples.empty());
  CHECK(zero.augmented == 0);
  CHECK(zero.novel == 0);
}

TEST_CASE("augment_pass requires a validated algebra") {
  Dataset d = make_mini_alchemy_dataset(20, 3);
  LexicalAlgebra a = make_mini_alchemy_algebra(d);
  a.validated = false;
  CHECK_THROWS_AS(augment_pass(d, a, {}), std::runtime_error);
}

TEST_CASE("the stream interleaves originals with fresh swaps") {
  Dataset d = make_scan_dataset();
  LexicalAlgebra a = make_scan_algebra(d);
  std::vector<size_t> train_idx;
  for (size_t i = 0; i < d.examples.size(); i++)
    if (d.examples[i].split == Split::train) train_idx.push_back(i);

  AugmentationConfig cfg;
  cfg.seed = 7;
  AugmentStream s1(d, a, cfg);
  AugmentStream s2(d, a, cfg);
  for (int k = 0; k < 400; k++) {
    Example e1 = s1.next();
    Example e2 = s2.next();
    CHECK(e1.id == e2.id);
    CHECK(e1.text == e2.text);
    CHECK(e1.meaning == e2.meaning);
    if (k % 2 == 0) {
      const Example& orig = d.examples[train_idx[k / 2]];
      CHECK(e1.id == orig.id);
      CHECK(e1.text == orig.text);
    } else {
      CHECK(e1.id.find("+aug") != std::string::npos);
    }
  }
}
