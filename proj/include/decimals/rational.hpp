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

#ifndef DECIMALS_RATIONAL_HPP_
#define DECIMALS_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace decimals {

// Thrown when an exact computation leaves the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Exact rational with 64-bit numerator and positive denominator, always
// kept in lowest terms. Intermediate products go through __int128.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT
  Rational(int64_t n, int64_t d) { assign(n, d); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  int64_t floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  int64_t ceil() const { return -Rational(-num_, den_).floor(); }
  // Representative in [0, 1).
  Rational frac() const { return *this - Rational(floor()); }

  Rational operator-() const { return from128(-static_cast<__int128>(num_), den_); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from128(static_cast<__int128>(a.num_) + b.num_, a.den_);
    int64_t g = std::gcd(a.den_, b.den_);
    __int128 n = static_cast<__int128>(a.num_) * (b.den_ / g) +
                 static_cast<__int128>(b.num_) * (a.den_ / g);
    return from128(n, static_cast<__int128>(a.den_ / g) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    __int128 n = static_cast<__int128>(a.num_) * b.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.num_;
    if (d < 0) { n = -n; d = -d; }
    return from128(n, d);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "p/q", or "p" when the denominator is one.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p", "-p" and "p/q".
  static Rational parse(const std::string& s);

 private:
  void assign(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX)
      throw OverflowError("rational overflow");
    num_ = static_cast<int64_t>(n);
    den_ = static_cast<int64_t>(d);
  }
  static Rational from128(__int128 n, __int128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }

  int64_t num_ = 0;
  int64_t den_ = 1;
};

inline Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      int64_t n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(n);
    }
    int64_t n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(s);
    std::string ds = s.substr(slash + 1);
    int64_t d = std::stoll(ds, &used);
    if (used != ds.size()) throw std::invalid_argument(s);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline int64_t checked_lcm(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (r > INT64_MAX) throw OverflowError("lcm overflow");
  return static_cast<int64_t>(r);
}

}  // namespace decimals

template <>
struct std::hash<decimals::Rational> {
  size_t operator()(const decimals::Rational& r) const noexcept {
    return std::hash<int64_t>()(r.num()) * 1000003u ^ std::hash<int64_t>()(r.den());
  }
};

#endif  // DECIMALS_RATIONAL_HPP_
