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

// Three-valued model checking of sentences against a concrete structure.
// Universal quantifiers range over a finite universe (a grid or lattice
// sample); existential ones try constructed candidates: hints, the points
// where some atom switches, and one element inside each open cell between
// them. A quantifier-free body makes both directions exact.

#ifndef DECIMALS_MODEL_CHECK_HPP_
#define DECIMALS_MODEL_CHECK_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decimals/circle.hpp"
#include "decimals/formula.hpp"

namespace decimals {

enum class Structure {
  Circle,        // the group described by the descriptor, with rho interpreted
  PositiveCone,  // the non-negative part of Q^k under lex order (no wrap)
  H00,           // Q^k with 0 minimal and the negatives on top
};

struct ModelCheckConfig {
  int64_t grid = 720;          // rational descriptors: universe k/grid
  int64_t height = 40;         // quadratic: universe frac(b*sqrt(d)), |b| <= height
  int64_t search_limit = 4096;  // element search inside an open cell
  int64_t cone_radius = 4;     // cone / H00 universe: entries j/2 with |j| <= radius
  size_t rank = 2;
};

struct ModelCheckResult {
  Truth verdict = Truth::Undecided;
  // Values of the leading universal (on failure) or existential (on
  // success) variables, printed.
  std::vector<std::pair<std::string, std::string>> assignment;
  int64_t evaluations = 0;  // bodies evaluated under a quantifier
  bool scaled = false;      // ran on the integer-scaled fast path
  std::string note;
};

using WitnessHints = std::map<std::string, std::vector<CircleElement>>;

ModelCheckResult model_check(const Formula& sentence, const GroupDescriptor& m, Structure s,
                             const ModelCheckConfig& cfg = {}, const WitnessHints& hints = {});

}  // namespace decimals

#endif  // DECIMALS_MODEL_CHECK_HPP_
