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


#ifndef DECIMALS_POINTWISE_HPP_
#define DECIMALS_POINTWISE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "decimals/formula.hpp"

namespace decimals {

// Integer-scaled evaluator over Q/Z. Values are k/L for a common scale L.
// The innermost quantifiers (quantifier-free body) are decided exactly by
// testing every point where an atom can switch plus one point per open
// cell; other quantifiers range over multiples of 1/grid.
class GridEvaluator {
 public:
  // With cells off every quantifier ranges over multiples of 1/grid only.
  // A quantifier under d others searches the finer grid * refine^d.
  GridEvaluator(const std::vector<Formula>& formulas, int64_t grid, bool cells = true, int64_t refine = 1);
  ~GridEvaluator();
  GridEvaluator(GridEvaluator&&) noexcept;
  GridEvaluator& operator=(GridEvaluator&&) noexcept;

  int64_t scale() const;
  int64_t grid() const;
  // exact is cleared when some quantifier fell back to grid search.
  bool eval(size_t which, const std::map<std::string, Rational>& point, bool* exact = nullptr) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Truth of f at point, with quantifiers read as above.
bool bounded_eval(const Formula& f, const std::map<std::string, Rational>& point, int64_t grid);

struct PointwiseMismatch {
  std::map<std::string, Rational> assignment;
  bool lhs = false, rhs = false;
};

// A disagreement is soft when the left side came from grid search (so a
// witness may sit off the grid) and says false; soft ones are searched
// again at retry_grid. Everything else is hard.
struct PointwiseReport {
  bool agree = true;  // no hard disagreement
  int64_t checked = 0;
  int64_t soft = 0;        // soft, gone at retry_grid
  int64_t unresolved = 0;  // soft, still there at retry_grid
  std::optional<PointwiseMismatch> first;       // first hard one
  std::optional<PointwiseMismatch> first_soft;  // first unresolved soft one
};

std::string format_assignment(const std::map<std::string, Rational>& a);

// Compares f and g at every assignment of their free variables to k/denom.
PointwiseReport pointwise_check(const Formula& f, const Formula& g, int64_t denom, int64_t retry_grid = 0);

}  // namespace decimals

#endif  // DECIMALS_POINTWISE_HPP_
