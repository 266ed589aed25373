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

// Constant-free definitions of the torsion points i/n and of the intervals
// [0, i/n), read off from the order of x, 2x, ..., nx mod 1.

#ifndef DECIMALS_TORSION_HPP_
#define DECIMALS_TORSION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "decimals/formula.hpp"
#include "decimals/rational.hpp"

namespace decimals {

struct Cell {
  Rational lo, hi;          // open interval ]lo, hi[
  std::vector<int64_t> sigma;  // sigma[0]*x < sigma[1]*x < ... on the cell
};

struct SubdivisionTable {
  int64_t n = 0;
  std::vector<Rational> breakpoints;  // sorted, inside ]0, 1[
  std::vector<Cell> cells;            // sorted, between consecutive breakpoints
};

// Throws std::logic_error if a cell fails validation.
const SubdivisionTable& build_subdivision(int64_t n);

// sigma[0]*x < sigma[1]*x & ... as a conjunction over `var`.
Formula chain_formula(const std::vector<int64_t>& sigma, const std::string& var = "x");

// Holds exactly at x = i/n. Requires 1 <= i < n; i/n is reduced first.
Formula theta(int64_t i, int64_t n, const std::string& var = "x");
// Holds exactly on [0, i/n). Requires 1 <= i < n.
Formula phi(int64_t i, int64_t n, const std::string& var = "x");

// theta/phi with the variable replaced by a term.
Formula theta_at(const Rational& c, const LinearTerm& t);
Formula phi_at(const Rational& c, const LinearTerm& t);

// Human-readable table plus the theta/phi formulas for 1 <= i < n.
std::string format_table(int64_t n);

}  // namespace decimals

#endif  // DECIMALS_TORSION_HPP_
