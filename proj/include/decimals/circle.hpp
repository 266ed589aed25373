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

// Concrete models of the decimals: the full circle [0,1), localized
// rational subgroups, quadratic modules Z + Z*sqrt(d) reduced mod 1, and
// their sums.

#ifndef DECIMALS_CIRCLE_HPP_
#define DECIMALS_CIRCLE_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decimals/rational.hpp"

namespace decimals {

// Sign of p + q*sqrt(d), exact. d must be a positive squarefree integer
// (or 0, in which case the result is sign(p)).
int quadratic_sign(const Rational& p, const Rational& q, int64_t d);

// floor(p + q*sqrt(d)), exact.
int64_t quadratic_floor(const Rational& p, const Rational& q, int64_t d);

// An element (a + b*sqrt(d)) mod 1, stored with 0 <= a + b*sqrt(d) < 1.
class CircleElement {
 public:
  CircleElement() = default;
  CircleElement(const Rational& r) : a_(r.frac()) {}  // NOLINT
  CircleElement(const Rational& a, const Rational& b, int64_t d);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  int64_t radicand() const { return b_.is_zero() ? 0 : d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  double to_double() const;
  std::string str() const;

  friend bool operator==(const CircleElement& x, const CircleElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const CircleElement& x, const CircleElement& y);

 private:
  Rational a_;
  Rational b_;
  int64_t d_ = 0;
};

// Throws std::invalid_argument when the two radicands differ.
CircleElement add_mod1(const CircleElement& x, const CircleElement& y);
CircleElement neg_mod1(const CircleElement& x);
CircleElement sub_mod1(const CircleElement& x, const CircleElement& y);
CircleElement mul_mod1(int64_t k, const CircleElement& x);
// Least y in the circle order with n*y = x.
CircleElement div_n(const CircleElement& x, int64_t n);
inline std::strong_ordering cmp(const CircleElement& x, const CircleElement& y) { return x <=> y; }

// Parses "p/q", "p" or "a+b*sqrt(d)"-style text ("sqrt(2)-1", "3-2*sqrt(2)").
CircleElement parse_element(const std::string& text);

enum class TorsionCase { I, II };

// Finite description of a dense subgroup of the circle.
class GroupDescriptor {
 public:
  GroupDescriptor() = default;  // the full circle
  static GroupDescriptor full() { return {}; }
  static GroupDescriptor localized(std::vector<int64_t> primes);
  static GroupDescriptor quadratic(int64_t d);
  static GroupDescriptor composite(std::vector<int64_t> primes, int64_t d);
  // "D", "loc:2,3", "quad:2", "loc:2+quad:2".
  static GroupDescriptor parse(const std::string& text);

  bool is_full() const { return full_; }
  const std::vector<int64_t>& primes() const { return primes_; }
  int64_t radicand() const { return d_; }
  TorsionCase torsion_case() const {
    return (full_ || !primes_.empty()) ? TorsionCase::I : TorsionCase::II;
  }
  // Infinite-order generator used for case II: sqrt(d) mod 1.
  CircleElement delta() const;

  bool is_smooth(int64_t n) const;  // all prime factors of n lie in P
  bool contains(const CircleElement& x) const;
  std::string str() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  bool full_ = true;
  std::vector<int64_t> primes_;
  int64_t d_ = 0;
};

// c_0 = 0 followed by the torsion elements of order <= bound, sorted by
// (order, value).
std::vector<CircleElement> enumerate_torsion(const GroupDescriptor& m, int64_t bound);

// rho_n in the model: c_n in case I, +-n*delta in case II.
// Throws std::out_of_range when case I needs torsion of order > max_order.
CircleElement rho_interpretation(const GroupDescriptor& m, int64_t n, int64_t max_order = 4096);

// rho_m for the least m with rho_m in ](i-1)/n, i/n]; returns that m.
int64_t rho_fraction_index(const GroupDescriptor& m, int64_t i, int64_t n, int64_t max_index = 1 << 20);

struct IndexReport {
  int64_t n = 0;
  int64_t value = 0;
  bool exact = false;  // false means "value is a lower bound"
  std::vector<CircleElement> certificate;  // one representative per coset
};

// [G : nG] by coset enumeration over elements of description size <= bound.
IndexReport index(const GroupDescriptor& m, int64_t n, int64_t bound = 64);

// True iff the group has no element of order exactly n.
bool in_NG(const GroupDescriptor& m, int64_t n);

enum class Truth { False = 0, True = 1, Undecided = 2 };

struct DnResult {
  Truth truth = Truth::Undecided;
  CircleElement z1, z2;  // x + n*z1 = y + n*z2 when truth is True
};

// D_n(x, y): x and y lie in the same coset of nG.
DnResult holds_Dn(const GroupDescriptor& m, int64_t n, const CircleElement& x,
                  const CircleElement& y);

struct DensityReport {
  bool dense = false;
  int64_t multiples_used = 0;  // J: multiples j*x with 1 <= j <= J were examined
};

// Checks that every [k/r, (k+1)/r) contains a multiple of x. x must have
// infinite order; throws std::invalid_argument for torsion elements.
DensityReport cyclic_density_check(const GroupDescriptor& m, const CircleElement& x,
                                   int64_t resolution);

// Some element of the group strictly between lo and hi, if one is found
// within the search limit. An empty hi stands for 1.
std::optional<CircleElement> find_in_interval(const GroupDescriptor& m, const CircleElement& lo,
                                              const std::optional<CircleElement>& hi,
                                              int64_t limit = 4096);

}  // namespace decimals

#endif  // DECIMALS_CIRCLE_HPP_
