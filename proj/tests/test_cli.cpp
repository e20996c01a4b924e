#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

// LEXSYM_BIN is injected by the build; every case drives the real executable
#ifndef LEXSYM_BIN
#error "LEXSYM_BIN must point at the lexsym executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "lexsym_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args, const fs::path& log) {
  std::string cmd = "\"" LEXSYM_BIN "\" " + args + " > \"" + log.string() + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

int run_env(const std::string& env, const std::string& args, const fs::path& log) {
  std::string cmd = env + " \"" LEXSYM_BIN "\" " + args + " > \"" + log.string() + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  out << body;
}

long line_count(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  long n = 0;
  while (std::getline(in, line)) n++;
  return n;
}

// small corpus whose lexicon is obvious: jump/walk interchange
fs::path toy_corpus() {
  static fs::path p = [] {
    fs::path f = work_dir() / "toy.jsonl";
    std::ostringstream body;
    const char* verbs[] = {"jump", "walk"};
    int n = 0;
    for (const char* v : verbs) {
      std::string V = std::string("I_") + (v[0] == 'j' ? "JUMP" : "WALK");
      body << "{\"id\":\"t" << n++ << "\",\"text\":\"" << v << "\",\"meaning\":\"" << V << "\"}\n";
      body << "{\"id\":\"t" << n++ << "\",\"text\":\"" << v << " twice\",\"meaning\":\"" << V
           << " " << V << "\"}\n";
      body << "{\"id\":\"t" << n++ << "\",\"text\":\"" << v << " thrice\",\"meaning\":\"" << V
           << " " << V << " " << V << "\"}\n";
    }
    body << "{\"id\":\"t" << n++
         << "\",\"text\":\"jump twice\",\"meaning\":\"I_JUMP I_JUMP\",\"split\":\"test\"}\n";
    spit(f, body.str());
    return f;
  }();
  return p;
}

// induced once, reused by the enumerate/augment cases
fs::path toy_algebra() {
  static fs::path alg = [] {
    fs::path a = work_dir() / "toy_algebra.json";
    fs::path log = work_dir() / "induce_shared.log";
    REQUIRE(run("induce --data " + toy_corpus().string() + " --output " + a.string() +
                    " --aligner ibm1",
                log) == 0);
    return a;
  }();
  return alg;
}

}  // namespace

TEST_CASE("stats reports corpus shape") {
  fs::path out = work_dir() / "stats.json";
  fs::path log = work_dir() / "stats.log";
  REQUIRE(run("stats --data " + toy_corpus().string() + " --output " + out.string(), log) == 0);
  json s = json::parse(slurp(out));
  CHECK(s["examples"].get<long>() == 7);
  CHECK(s["splits"]["train"].get<long>() == 6);
  CHECK(s["splits"]["test"].get<long>() == 1);
  CHECK(s["vocab"]["text"].get<long>() == 4);     // jump walk twice thrice
  CHECK(s["vocab"]["meaning"].get<long>() == 2);  // I_JUMP I_WALK
  CHECK(s["max_length"]["meaning"].get<long>() == 3);
}

TEST_CASE("induce writes algebra, report and manifest") {
  fs::path alg = work_dir() / "toy_algebra.json";
  fs::path log = work_dir() / "induce.log";
  REQUIRE(run("induce --data " + toy_corpus().string() + " --output " + alg.string() +
                  " --aligner ibm1 --seed 3",
              log) == 0);
  REQUIRE(fs::exists(alg));

  json a = json::parse(slurp(alg));
  CHECK(a["correspondences"]["jump"] == json::array({"I_JUMP"}));
  CHECK(a["correspondences"]["walk"] == json::array({"I_WALK"}));
  CHECK(a["types"].size() == 1);  // shared contexts merge the two verbs

  json rep = json::parse(slurp(fs::path(alg.string() + ".report.json")));
  CHECK(rep["log_likelihood"].size() == 5);
  CHECK(rep["correspondence_entries"].get<long>() == 2);

  json man = json::parse(slurp(fs::path(alg.string() + ".manifest.json")));
  CHECK(man["subcommand"] == "induce");
  CHECK(man["aligner"] == "ibm1");
  CHECK(man["seed"].get<uint64_t>() == 3);
  CHECK(man["iterations"].get<int>() == 5);
}

TEST_CASE("missing and empty inputs exit with dedicated codes") {
  fs::path log = work_dir() / "bad.log";
  CHECK(run("induce --data " + (work_dir() / "absent.jsonl").string() + " --output " +
                (work_dir() / "x.json").string(),
            log) == 1);

  fs::path empty = work_dir() / "empty.jsonl";
  spit(empty, "\n\n");
  CHECK(run("induce --data " + empty.string() + " --output " + (work_dir() / "x.json").string(),
            log) == 2);
  CHECK(run("stats --data " + empty.string(), log) == 2);
}

TEST_CASE("enumerate lists maps or refuses oversized vocabularies") {
  fs::path alg = toy_algebra();
  fs::path out = work_dir() / "maps.json";
  fs::path log = work_dir() / "enum.log";
  REQUIRE(run("enumerate --algebra " + alg.string() + " --output " + out.string(), log) == 0);
  json maps = json::parse(slurp(out));
  REQUIRE(maps.is_array());
  // the verbs admit identity or the jump/walk exchange; "twice"/"thrice" are
  // untyped and unconstrained, free to land on either of themselves: 2 x 4
  CHECK(maps.size() == 8);

  fs::path iso = work_dir() / "iso_maps.json";
  REQUIRE(run("enumerate --algebra " + alg.string() + " --isomorphisms-only --output " +
                  iso.string(),
              log) == 0);
  CHECK(json::parse(slurp(iso)).size() == 4);  // bijections only: 2 x 2

  CHECK(run("enumerate --algebra " + alg.string() + " --max-vocab 3", log) == 5);
  CHECK(slurp(log).find("guard") != std::string::npos);
}

TEST_CASE("augment is reproducible and honors the seed override") {
  fs::path alg = toy_algebra();
  fs::path log = work_dir() / "aug.log";
  fs::path o1 = work_dir() / "aug1.jsonl";
  fs::path o2 = work_dir() / "aug2.jsonl";
  fs::path o3 = work_dir() / "aug3.jsonl";
  fs::path o4 = work_dir() / "aug4.jsonl";
  std::string base = "augment --data " + toy_corpus().string() + " --algebra " + alg.string();

  REQUIRE(run(base + " --seed 1 --output " + o1.string(), log) == 0);
  REQUIRE(run(base + " --seed 1 --output " + o2.string(), log) == 0);
  CHECK(slurp(o1) == slurp(o2));
  CHECK(line_count(o1) == 6);  // one output per train example

  REQUIRE(run(base + " --seed 2 --output " + o3.string(), log) == 0);
  REQUIRE(run_env("LEXSYM_SEED=2", base + " --seed 1 --output " + o4.string(), log) == 0);
  CHECK(slurp(o4) == slurp(o3));  // env wins over the flag
  json man4 = json::parse(slurp(fs::path(o4.string() + ".manifest.json")));
  CHECK(man4["seed"].get<uint64_t>() == 2);

  json stats = json::parse(slurp(fs::path(o1.string() + ".stats.json")));
  CHECK(stats["augmented"].get<long>() == 6);
  CHECK(stats["novel"].get<long>() >= 0);
  json man = json::parse(slurp(fs::path(o1.string() + ".manifest.json")));
  CHECK(man["subcommand"] == "augment");
  CHECK(man["novelty_key"] == "text+meaning");
}

TEST_CASE("augment respects jobs, passes and online mode") {
  fs::path alg = toy_algebra();
  fs::path log = work_dir() / "aug_modes.log";
  std::string base = "augment --data " + toy_corpus().string() + " --algebra " + alg.string();

  fs::path j1 = work_dir() / "jobs1.jsonl";
  fs::path j3 = work_dir() / "jobs3.jsonl";
  REQUIRE(run(base + " --seed 5 --jobs 1 --output " + j1.string(), log) == 0);
  REQUIRE(run(base + " --seed 5 --jobs 3 --output " + j3.string(), log) == 0);
  CHECK(slurp(j1) == slurp(j3));

  fs::path p0 = work_dir() / "p0.jsonl";
  REQUIRE(run(base + " --seed 5 --passes 0 --output " + p0.string(), log) == 0);
  CHECK(line_count(p0) == 0);
  json zeros = json::parse(slurp(fs::path(p0.string() + ".stats.json")));
  CHECK(zeros["augmented"].get<long>() == 0);
  CHECK(zeros["novel"].get<long>() == 0);

  fs::path p2 = work_dir() / "p2.jsonl";
  REQUIRE(run(base + " --seed 5 --passes 2 --output " + p2.string(), log) == 0);
  CHECK(line_count(p2) == 12);

  fs::path onl = work_dir() / "online.jsonl";
  REQUIRE(run(base + " --seed 5 --passes online --items 10 --output " + onl.string(), log) == 0);
  CHECK(line_count(onl) == 10);
  // online mode without a budget is a usage error
  CHECK(run(base + " --seed 5 --passes online --output " + onl.string(), log) == 1);
}

TEST_CASE("broken algebras are refused before any augmentation") {
  fs::path bad = work_dir() / "bad_algebra.json";
  spit(bad, R"({
  "types": {"t1": ["jump", "walk", "I_JUMP", "I_WALK"]},
  "correspondences": {"jump": ["I_JUMP"], "walk": ["I_JUMP"]},
  "relations": [],
  "streams": {"text": ["jump", "walk"], "meaning": ["I_JUMP", "I_WALK"]}
})");
  fs::path log = work_dir() / "bad_alg.log";
  fs::path out = work_dir() / "never.jsonl";
  CHECK(run("augment --data " + toy_corpus().string() + " --algebra " + bad.string() +
                " --output " + out.string(),
            log) == 3);
  CHECK(slurp(log).find("one-to-many") != std::string::npos);
}

TEST_CASE("verify scores corpora and flags adapter mismatches") {
  fs::path good = work_dir() / "arith.jsonl";
  spit(good,
       "{\"id\":\"a1\",\"text\":\"one plus two is three\"}\n"
       "{\"id\":\"a2\",\"text\":\"two plus two is four\"}\n"
       "{\"id\":\"a3\",\"text\":\"zero plus five is five\"}\n");
  fs::path log = work_dir() / "verify.log";
  REQUIRE(run("verify --data " + good.string() + " --domain arithmetic", log) == 0);
  CHECK(slurp(log).find("fraction 1.000000") != std::string::npos);

  fs::path mixed = work_dir() / "arith_mixed.jsonl";
  spit(mixed,
       "{\"id\":\"a1\",\"text\":\"one plus two is three\"}\n"
       "{\"id\":\"a2\",\"text\":\"two plus two is five\"}\n");
  CHECK(run("verify --data " + mixed.string() + " --domain arithmetic", log) == 1);
  CHECK(run("verify --data " + mixed.string() + " --domain arithmetic --min-valid 0.5", log) == 0);

  fs::path rep = work_dir() / "verify_report.json";
  REQUIRE(run("verify --data " + mixed.string() + " --domain arithmetic --min-valid 0.5 --output " +
                  rep.string(),
              log) == 0);
  json r = json::parse(slurp(rep));
  CHECK(r["valid"].get<long>() == 1);
  CHECK(r["invalid"].get<long>() == 1);

  CHECK(run("verify --data " + good.string() + " --domain mini_alchemy", log) == 4);
  CHECK(run("verify --data " + good.string() + " --domain chess", log) == 1);
}

TEST_CASE("usage errors never masquerade as results") {
  fs::path log = work_dir() / "usage.log";
  CHECK(run("", log) != 0);
  CHECK(run("frobnicate --data x", log) != 0);
  CHECK(run("induce", log) != 0);  // --data/--output are required
  CHECK(run("augment --data " + toy_corpus().string() + " --algebra " + toy_algebra().string() +
                " --passes=-1 --output " + (work_dir() / "neg.jsonl").string(),
            log) == 1);
}
