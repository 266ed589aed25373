// Copyright 2026 The decimals Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef DECIMALS_CORPUS_HPP_
#define DECIMALS_CORPUS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "decimals/formula.hpp"

namespace decimals {

struct CorpusOptions {
  int max_quantifiers = 3;  // quantifier occurrences
  int min_free = 1;
  int max_free = 2;
  int max_vars = 3;  // free plus bound variables visible at any point
  int max_coeff = 4;
  int max_den = 6;
  int depth = 3;  // connective depth
  bool allow_dn = true;
  bool allow_constants = true;
};

Formula random_formula(std::mt19937_64& rng, const CorpusOptions& opt = {});
std::vector<Formula> random_corpus(uint64_t seed, int count, const CorpusOptions& opt = {});

struct GoldenSentence {
  std::string text;
  bool expected;
  std::string topic;
};

// Fixed decision suite: divisibility, torsion, regularity, order, and false
// sentences.
const std::vector<GoldenSentence>& golden_sentences();

}  // namespace decimals

#endif  // DECIMALS_CORPUS_HPP_
