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

// The acceptance criteria as runnable checks. Each criterion compares the
// library against an oracle written separately from the code under test.

#ifndef DECIMALS_ACCEPTANCE_HPP_
#define DECIMALS_ACCEPTANCE_HPP_

#include <cstdint>
#include <string>

namespace decimals {

struct AcceptanceConfig {
  uint64_t seed = 20261016;  // corpus and hyperreal samples
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;  // counts, and the first failure if any
};

inline constexpr int kCriterionCount = 8;

// Runs criterion id in 1..kCriterionCount. Throws std::out_of_range
// otherwise.
CriterionResult run_criterion(int id, const AcceptanceConfig& cfg = {});

}  // namespace decimals

#endif  // DECIMALS_ACCEPTANCE_HPP_
