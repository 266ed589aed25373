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

// Quantifier elimination and decision for the theory of [0,1) under
// addition mod 1. Mod-1 terms are opened into real linear terms with
// integer carries, quantifiers are removed by virtual substitution over the
// reals, and the result is folded back into mod-1 atoms.

#ifndef DECIMALS_QE_HPP_
#define DECIMALS_QE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decimals/circle.hpp"
#include "decimals/formula.hpp"

namespace decimals {

class UnsupportedModel : public std::invalid_argument {
 public:
  UnsupportedModel() : std::invalid_argument("QE unsupported for this descriptor") {}
};

struct QEStats {
  int64_t atoms_in = 0;
  int64_t atoms_out = 0;
  int64_t carry_cases = 0;   // carry assignments explored
  int64_t test_points = 0;   // virtual substitution points tried
  int64_t dn_rewritten = 0;  // D_n atoms replaced by true
  // lcm of the denominators in all test points; 0 after overflow.
  int64_t point_denominators = 1;
};

enum class QEMode { KeepConstants, PureL };

struct QEResult {
  Formula input;
  Formula output;
  QEMode mode = QEMode::KeepConstants;
  QEStats stats;
};

// One mod-1 term opened as sum k_i x_i + c - m for each carry m in range.
struct CarryRange {
  LinearTerm term;
  int64_t lo = 0, hi = 0;
};

struct CarryExpansion {
  std::vector<CarryRange> carries;
  std::string text;  // the real-linear formula, variables read in [0,1)
  // Evaluates the expansion with the variables read as reals in [0,1).
  bool holds(const std::map<std::string, Rational>& point) const;

  struct Impl;
  std::shared_ptr<const Impl> impl;
};

// Quantifier-free input; symbolic rho or f_n terms are rejected.
CarryExpansion carry_expand(const Formula& f);

QEResult eliminate(const Formula& f, QEMode mode = QEMode::KeepConstants);
// Throws UnsupportedModel unless m is the full circle.
QEResult eliminate(const Formula& f, const GroupDescriptor& m, QEMode mode = QEMode::KeepConstants);

// Rewrites a quantifier-free formula into one without constants or D_n.
Formula purge_constants(const Formula& f);

struct Decision {
  bool value = false;
  // For a true sentence of the form exists x ...: a value of x that makes
  // the body true, confirmed by deciding the instantiated body.
  std::optional<Rational> witness;
  std::string witness_var;
};

Decision decide(const Formula& sentence);

// Constant folding, flattening and duplicate removal on the formula level.
Formula simplify(const Formula& f);

}  // namespace decimals

#endif  // DECIMALS_QE_HPP_
