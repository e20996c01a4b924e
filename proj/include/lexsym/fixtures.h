#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lexsym/algebra.h"
#include "lexsym/corpus.h"

namespace lexsym {

// ---- SCAN -------------------------------------------------------------------

// All 20910 commands of the SCAN grammar in enumeration order
// (102 single clauses, then and-pairs, then after-pairs).
std::vector<std::vector<std::string>> scan_all_commands();

// The add-jump split: train = 13203 jump-free commands plus 1467 copies of the
// bare "jump" command (14670 total), test = the other 7706 jump commands.
Dataset make_scan_dataset();

// Published lexicon: t1 = {jump,walk,run,look} with their actions, t2 =
// {left,right} with the turn actions, 6 correspondence entries.
LexicalAlgebra make_scan_algebra(Dataset& d);

// ---- grid VQA ----------------------------------------------------------------

// Corpus built for lexicon induction: single-color 3x3 grids, each question
// naming exactly the color present, so alignment is unambiguous and the
// background code is dropped by one-to-many pruning. 8 colors x 3 question
// templates x reps examples.
Dataset make_grid_induction_dataset(int reps, uint64_t seed);

// Mixed-color random grids with count / any / name-hue questions (answers may
// be "0", "no" or "none"); exercises verification and augmentation broadly.
Dataset make_grid_verification_dataset(int n, uint64_t seed);

// One type over the 8 color words and their published image codes.
LexicalAlgebra make_cogent_algebra(Dataset& d);

// ---- mini-ALCHEMY -------------------------------------------------------------

// Random legal instruction sequences over 3 beakers of capacity 4; meaning =
// initial state ++ <sep> ++ final state.
Dataset make_mini_alchemy_dataset(int n, uint64_t seed);

// t1 = 7 mixable color words + their units, t2 = {brown, BROWN}, r_mix with
// all 64 mixing outcomes.
LexicalAlgebra make_mini_alchemy_algebra(Dataset& d);

// ---- COGS-like ----------------------------------------------------------------

// "the <nounA> <verbP> the <nounB>" -> "<verbstem> <nounA> <nounB>" over the
// published sample entries (3 verbs, 3 nouns, ordered noun pairs).
Dataset make_cogs_dataset();

// ---- arithmetic ----------------------------------------------------------------

// Every true "a plus b is c" with a+b <= max_n; empty meaning stream.
Dataset make_arithmetic_dataset(int max_n = 20);

// One type over the number words plus a ternary sum relation.
LexicalAlgebra make_arithmetic_algebra(Dataset& d, int max_n = 20);

// ---- random algebras ------------------------------------------------------------

// Small random algebra (|Sigma| <= 5) passing validate_algebra: random stream
// split, random type groups, correspondence respecting one-to-many and type
// inheritance, and an optional random extra relation.
LexicalAlgebra make_random_algebra(std::mt19937_64& rng);

}  // namespace lexsym
