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

// Elements of a saturated model of Th(D) simulated as a standard part plus
// a lexicographically ordered vector of infinitesimals.

#ifndef DECIMALS_HYPERREAL_HPP_
#define DECIMALS_HYPERREAL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "decimals/circle.hpp"
#include "decimals/rational.hpp"

namespace decimals {

// (q1, ..., qk) over Q, compared lexicographically. Missing trailing
// entries read as zero.
class InfVec {
 public:
  InfVec() = default;
  explicit InfVec(std::vector<Rational> q);
  static InfVec unit(size_t i, size_t k = 2);  // e_i

  const std::vector<Rational>& entries() const { return q_; }
  size_t rank() const { return q_.size(); }
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  InfVec operator+(const InfVec& o) const;
  InfVec operator-(const InfVec& o) const;
  InfVec operator-() const;
  InfVec scaled(const Rational& k) const;

  std::string str() const;  // "0", "e1", "2*e1 - 1/3*e2"

  friend bool operator==(const InfVec& a, const InfVec& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const InfVec& a, const InfVec& b);

 private:
  std::vector<Rational> q_;
};

// (std + inf) mod 1. (0, negative) sits just below 1.
struct HyperElement {
  CircleElement std;
  InfVec inf;
  std::string str() const;
};

HyperElement h_add(const HyperElement& x, const HyperElement& y);
HyperElement h_neg(const HyperElement& x);
HyperElement h_sub(const HyperElement& x, const HyperElement& y);
HyperElement h_scale(int64_t k, const HyperElement& x);
std::strong_ordering h_cmp(const HyperElement& x, const HyperElement& y);
inline bool h_equal(const HyperElement& x, const HyperElement& y) { return h_cmp(x, y) == 0; }
CircleElement st(const HyperElement& x);

struct CutTag {
  enum class Kind { Standard, H00plus, H00minus, Cut } kind = Kind::Standard;
  int64_t i = 0, n = 0;  // for Cut
  int sign = 0;          // for Cut: sign of n*inf
  std::string str() const;
  friend bool operator==(const CutTag&, const CutTag&) = default;
};

CutTag classify(const HyperElement& x, const GroupDescriptor& m);

struct HyperSuiteResult {
  std::string name;
  bool pass = true;
  int64_t checked = 0;
  std::string detail;  // first failure
};

struct HyperSuiteConfig {
  int64_t samples = 10000;
  uint64_t seed = 20261016;
  size_t rank = 2;
  GroupDescriptor cut_model = GroupDescriptor::quadratic(2);
};

// Runs every property suite; one result per suite.
std::vector<HyperSuiteResult> hyper_check(const HyperSuiteConfig& cfg = {});

}  // namespace decimals

#endif  // DECIMALS_HYPERREAL_HPP_
