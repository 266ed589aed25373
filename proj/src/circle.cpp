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

#include "decimals/circle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace decimals {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr int64_t kSmall = int64_t{1} << 28;

bool small(int64_t v) { return v < kSmall && v > -kSmall; }

int sign_of(const BigInt& v) { return v.sign(); }

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

bool is_squarefree(int64_t d) {
  for (int64_t q = 2; q * q <= d; ++q)
    if (d % (q * q) == 0) return false;
  return true;
}

}  // namespace

int quadratic_sign(const Rational& p, const Rational& q, int64_t d) {
  int sp = p.sign(), sq = q.sign();
  if (sq == 0 || d == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with q^2 d.
  int cmp;
  if (small(p.num()) && small(p.den()) && small(q.num()) && small(q.den()) && d < 256) {
    __int128 l = static_cast<__int128>(p.num()) * q.den();
    __int128 r = static_cast<__int128>(q.num()) * p.den();
    l *= l;
    r = r * r * d;
    cmp = (l > r) - (l < r);
  } else {
    BigInt l = BigInt(p.num()) * q.den();
    BigInt r = BigInt(q.num()) * p.den();
    l *= l;
    r = r * r * d;
    cmp = sign_of(l - r);
  }
  if (cmp == 0) throw std::logic_error("radicand is a perfect square");
  return cmp > 0 ? sp : sq;
}

int64_t quadratic_floor(const Rational& p, const Rational& q, int64_t d) {
  if (q.is_zero() || d == 0) return p.floor();
  double v = p.to_double() + q.to_double() * std::sqrt(static_cast<double>(d));
  auto k = static_cast<int64_t>(std::floor(v));
  while (quadratic_sign(p - Rational(k), q, d) < 0) --k;
  while (quadratic_sign(p - Rational(k + 1), q, d) >= 0) ++k;
  return k;
}

CircleElement::CircleElement(const Rational& a, const Rational& b, int64_t d) {
  if (b.is_zero() || d == 0) {
    a_ = a.frac();
    return;
  }
  if (d < 2) throw std::invalid_argument("radicand must be a non-square integer >= 2");
  b_ = b;
  d_ = d;
  a_ = a - Rational(quadratic_floor(a, b, d));
}

double CircleElement::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
}

std::string CircleElement::str() const {
  if (b_.is_zero()) return a_.str();
  std::string out;
  if (!a_.is_zero()) out = a_.str();
  Rational mag = b_.sign() < 0 ? -b_ : b_;
  if (b_.sign() < 0) out += "-";
  else if (!out.empty()) out += "+";
  if (mag != Rational(1)) out += mag.str() + "*";
  out += "sqrt(" + std::to_string(d_) + ")";
  return out;
}

std::strong_ordering operator<=>(const CircleElement& x, const CircleElement& y) {
  if (x.b_.is_zero() && y.b_.is_zero()) return x.a_ <=> y.a_;
  int64_t d = x.b_.is_zero() ? y.d_ : x.d_;
  if (!x.b_.is_zero() && !y.b_.is_zero() && x.d_ != y.d_)
    throw std::invalid_argument("incompatible radicands");
  int s = quadratic_sign(x.a_ - y.a_, x.b_ - y.b_, d);
  return s <=> 0;
}

namespace {

int64_t common_radicand(const CircleElement& x, const CircleElement& y) {
  int64_t dx = x.radicand(), dy = y.radicand();
  if (dx != 0 && dy != 0 && dx != dy) throw std::invalid_argument("incompatible radicands");
  return dx != 0 ? dx : dy;
}

}  // namespace

CircleElement add_mod1(const CircleElement& x, const CircleElement& y) {
  return CircleElement(x.a() + y.a(), x.b() + y.b(), common_radicand(x, y));
}

CircleElement neg_mod1(const CircleElement& x) {
  return CircleElement(-x.a(), -x.b(), x.radicand());
}

CircleElement sub_mod1(const CircleElement& x, const CircleElement& y) {
  return CircleElement(x.a() - y.a(), x.b() - y.b(), common_radicand(x, y));
}

CircleElement mul_mod1(int64_t k, const CircleElement& x) {
  return CircleElement(x.a() * Rational(k), x.b() * Rational(k), x.radicand());
}

CircleElement div_n(const CircleElement& x, int64_t n) {
  if (n < 1) throw std::invalid_argument("div_n needs n >= 1");
  return CircleElement(x.a() / Rational(n), x.b() / Rational(n), x.radicand());
}

CircleElement parse_element(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty element");
  Rational a, b;
  int64_t d = 0;
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string piece = s.substr(i, j - i);
    auto sq = piece.find("sqrt(");
    if (sq == std::string::npos) {
      a += Rational(sign) * Rational::parse(piece);
    } else {
      Rational coef(1);
      if (sq > 0) {
        if (piece[sq - 1] != '*') throw std::invalid_argument("bad element '" + text + "'");
        coef = Rational::parse(piece.substr(0, sq - 1));
      }
      if (piece.back() != ')') throw std::invalid_argument("bad element '" + text + "'");
      int64_t dd = std::stoll(piece.substr(sq + 5, piece.size() - sq - 6));
      if (d != 0 && dd != d) throw std::invalid_argument("mixed radicands in '" + text + "'");
      d = dd;
      b += Rational(sign) * coef;
    }
    i = j;
  }
  if (d != 0 && (d < 2 || !is_squarefree(d)))
    throw std::invalid_argument("radicand must be squarefree and >= 2");
  return CircleElement(a, b, d);
}

GroupDescriptor GroupDescriptor::localized(std::vector<int64_t> primes) {
  return composite(std::move(primes), 0);
}

GroupDescriptor GroupDescriptor::quadratic(int64_t d) { return composite({}, d); }

GroupDescriptor GroupDescriptor::composite(std::vector<int64_t> primes, int64_t d) {
  for (int64_t p : primes)
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (d != 0 && (d < 2 || !is_squarefree(d)))
    throw std::invalid_argument("radicand must be squarefree and >= 2");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (primes.empty() && d == 0) throw std::invalid_argument("descriptor is not dense");
  GroupDescriptor g;
  g.full_ = false;
  g.primes_ = std::move(primes);
  g.d_ = d;
  return g;
}

GroupDescriptor GroupDescriptor::parse(const std::string& text) {
  if (text == "D") return full();
  std::vector<int64_t> primes;
  int64_t d = 0;
  bool seen_loc = false, seen_quad = false;
  std::stringstream ss(text);
  std::string part;
  auto fail = [&]() { return std::invalid_argument("bad model descriptor '" + text + "'"); };
  while (std::getline(ss, part, '+')) {
    try {
      if (part.rfind("loc:", 0) == 0 && !seen_loc) {
        seen_loc = true;
        std::stringstream ps(part.substr(4));
        std::string p;
        while (std::getline(ps, p, ',')) {
          size_t used = 0;
          primes.push_back(std::stoll(p, &used));
          if (used != p.size()) throw fail();
        }
      } else if (part.rfind("quad:", 0) == 0 && !seen_quad) {
        seen_quad = true;
        size_t used = 0;
        std::string q = part.substr(5);
        d = std::stoll(q, &used);
        if (used != q.size()) throw fail();
      } else {
        throw fail();
      }
    } catch (const std::logic_error&) {
      throw fail();
    }
  }
  if (!seen_loc && !seen_quad) throw fail();
  return composite(primes, d);
}

CircleElement GroupDescriptor::delta() const {
  if (d_ == 0) throw std::logic_error("descriptor has no radicand");
  return CircleElement(Rational(0), Rational(1), d_);
}

bool GroupDescriptor::is_smooth(int64_t n) const {
  if (full_) return true;
  for (int64_t p : primes_)
    while (n % p == 0) n /= p;
  return n == 1;
}

bool GroupDescriptor::contains(const CircleElement& x) const {
  if (full_) return true;
  if (!x.b().is_zero()) {
    if (x.radicand() != d_ || !x.b().is_integer()) return false;
  }
  return is_smooth(x.a().den());
}

std::string GroupDescriptor::str() const {
  if (full_) return "D";
  std::string out;
  if (!primes_.empty()) {
    out = "loc:";
    for (size_t i = 0; i < primes_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(primes_[i]);
    }
  }
  if (d_ != 0) {
    if (!out.empty()) out += "+";
    out += "quad:" + std::to_string(d_);
  }
  return out;
}

std::vector<CircleElement> enumerate_torsion(const GroupDescriptor& m, int64_t bound) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<CircleElement> out{CircleElement()};
  if (m.torsion_case() == TorsionCase::II) return out;
  for (int64_t k = 2; k <= bound; ++k) {
    if (!m.is_smooth(k)) continue;
    for (int64_t i = 1; i < k; ++i)
      if (std::gcd(i, k) == 1) out.emplace_back(Rational(i, k));
  }
  return out;
}

namespace {

// Visits c_0, c_1, ... in enumeration order until f returns true.
template <class F>
int64_t scan_rho(const GroupDescriptor& m, int64_t max_index, int64_t max_order, F&& f) {
  if (m.torsion_case() == TorsionCase::II) {
    CircleElement delta = m.delta();
    for (int64_t k = 0; k <= max_index; ++k) {
      CircleElement r = mul_mod1(k % 2 == 1 ? k : -k, delta);
      if (f(k, r)) return k;
    }
    throw std::out_of_range("rho scan exhausted");
  }
  int64_t idx = 0;
  if (f(idx, CircleElement())) return idx;
  for (int64_t k = 2; k <= max_order; ++k) {
    if (!m.is_smooth(k)) continue;
    for (int64_t i = 1; i < k; ++i) {
      if (std::gcd(i, k) != 1) continue;
      if (++idx > max_index) throw std::out_of_range("rho scan exhausted");
      if (f(idx, CircleElement(Rational(i, k)))) return idx;
    }
  }
  throw std::out_of_range("torsion enumeration bound exceeded");
}

}  // namespace

CircleElement rho_interpretation(const GroupDescriptor& m, int64_t n, int64_t max_order) {
  if (n < 0) throw std::invalid_argument("rho index must be >= 0");
  CircleElement out;
  scan_rho(m, n, max_order, [&](int64_t k, const CircleElement& r) {
    if (k == n) out = r;
    return k == n;
  });
  return out;
}

int64_t rho_fraction_index(const GroupDescriptor& m, int64_t i, int64_t n, int64_t max_index) {
  if (n < 1 || i < 1 || i > n) throw std::invalid_argument("need 1 <= i <= n");
  Rational lo(i - 1, n), hi(i, n);
  return scan_rho(m, max_index, int64_t{1} << 20, [&](int64_t, const CircleElement& r) {
    if (i == n) return r > CircleElement(lo);
    return r > CircleElement(lo) && r <= CircleElement(hi);
  });
}

namespace {

// Elements of description size <= bound, small ones first.
std::vector<CircleElement> sample_elements(const GroupDescriptor& m, int64_t bound) {
  std::vector<CircleElement> out;
  std::vector<Rational> rats;
  if (m.torsion_case() == TorsionCase::I) {
    for (int64_t k = 1; k <= bound; ++k) {
      if (!m.is_smooth(k)) continue;
      for (int64_t i = 0; i < k; ++i)
        if (std::gcd(i, k) == 1 || (i == 0 && k == 1)) rats.emplace_back(i, k);
    }
  } else {
    rats.emplace_back(0);
  }
  if (m.radicand() == 0) {
    for (auto& r : rats) out.emplace_back(r);
    return out;
  }
  for (int64_t h = 0; h <= bound; ++h) {
    for (int64_t b : {h, -h}) {
      for (auto& r : rats) out.emplace_back(r, Rational(b), m.radicand());
      if (h == 0) break;
    }
  }
  return out;
}

bool in_multiples(const GroupDescriptor& m, int64_t n, const CircleElement& x) {
  for (int64_t i = 0; i < n; ++i) {
    CircleElement y((x.a() + Rational(i)) / Rational(n), x.b() / Rational(n), x.radicand());
    if (m.contains(y)) return true;
  }
  return false;
}

}  // namespace

IndexReport index(const GroupDescriptor& m, int64_t n, int64_t bound) {
  if (n < 2) throw std::invalid_argument("index needs n >= 2");
  IndexReport rep;
  rep.n = n;
  // Z[1/P]/Z is divisible, so the rank-one part Z*sqrt(d) carries the index.
  int64_t ceiling = m.radicand() == 0 || m.is_full() ? 1 : n;
  for (const CircleElement& x : sample_elements(m, bound)) {
    bool fresh = true;
    for (const CircleElement& r : rep.certificate) {
      if (in_multiples(m, n, sub_mod1(x, r))) {
        fresh = false;
        break;
      }
    }
    if (fresh) rep.certificate.push_back(x);
    if (static_cast<int64_t>(rep.certificate.size()) == ceiling) break;
  }
  rep.value = static_cast<int64_t>(rep.certificate.size());
  rep.exact = rep.value == ceiling;
  return rep;
}

bool in_NG(const GroupDescriptor& m, int64_t n) {
  if (n < 1) throw std::invalid_argument("in_NG needs n >= 1");
  if (n == 1) return false;
  if (m.torsion_case() == TorsionCase::II) return true;
  return !m.is_smooth(n);
}

DnResult holds_Dn(const GroupDescriptor& m, int64_t n, const CircleElement& x,
                  const CircleElement& y) {
  if (n < 1) throw std::invalid_argument("D_n needs n >= 1");
  DnResult res;
  CircleElement diff = sub_mod1(x, y);
  for (int64_t i = 0; i < n; ++i) {
    CircleElement z((diff.a() + Rational(i)) / Rational(n), diff.b() / Rational(n), diff.radicand());
    if (m.contains(z)) {
      res.truth = Truth::True;
      res.z1 = CircleElement();
      res.z2 = z;
      return res;
    }
  }
  res.truth = Truth::False;
  return res;
}

DensityReport cyclic_density_check(const GroupDescriptor& m, const CircleElement& x,
                                   int64_t resolution) {
  if (x.is_rational()) throw std::invalid_argument("element " + x.str() + " is torsion");
  if (!m.contains(x)) throw std::invalid_argument("element not in the model");
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  // Convergent denominators of x until q_k >= 2 * resolution; the three
  // distance theorem then bounds every gap of {j x : j < q_k + q_{k-1}} by
  // ||q_{k-1} x|| + ||q_k x|| < 2 / q_k.
  int64_t d = x.radicand();
  Rational p = x.a(), q = x.b();
  int64_t q_prev = 0, q_cur = 1;
  for (int guard = 0; q_cur < 2 * resolution; ++guard) {
    if (guard > 200) throw std::runtime_error("continued fraction did not converge");
    int64_t a = quadratic_floor(p, q, d);
    if (guard > 0) {
      int64_t next = a * q_cur + q_prev;
      q_prev = q_cur;
      q_cur = next;
    }
    p -= Rational(a);
    // 1 / (p + q sqrt d) = (p - q sqrt d) / (p^2 - q^2 d)
    Rational norm = p * p - q * q * Rational(d);
    p = p / norm;
    q = -q / norm;
  }
  DensityReport rep;
  rep.multiples_used = q_cur + q_prev - 1;
  std::vector<char> hit(resolution, 0);
  for (int64_t j = 0; j <= rep.multiples_used; ++j) {
    CircleElement y = mul_mod1(j, x);
    int64_t bucket = quadratic_floor(y.a() * Rational(resolution), y.b() * Rational(resolution),
                                     y.radicand());
    hit[bucket] = 1;
  }
  rep.dense = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  return rep;
}

std::optional<CircleElement> find_in_interval(const GroupDescriptor& m, const CircleElement& lo,
                                              const std::optional<CircleElement>& hi,
                                              int64_t limit) {
  auto below_hi = [&](const CircleElement& c) { return !hi || c < *hi; };
  if (hi && !(lo < *hi)) return std::nullopt;
  if (m.torsion_case() == TorsionCase::I) {
    if (m.is_full() && lo.is_rational() && (!hi || hi->is_rational())) {
      Rational top = hi ? hi->a() : Rational(1);
      return CircleElement((lo.a() + top) / Rational(2));
    }
    for (int64_t n = 2; n <= limit; ++n) {
      if (!m.is_smooth(n)) continue;
      int64_t k = quadratic_floor(lo.a() * Rational(n), lo.b() * Rational(n), lo.radicand()) + 1;
      if (k >= n) continue;
      CircleElement c(Rational(k, n));
      if (lo < c && below_hi(c)) return c;
    }
    return std::nullopt;
  }
  for (int64_t h = 0; h <= limit; ++h) {
    for (int64_t b : {h, -h}) {
      CircleElement c(Rational(0), Rational(b), m.radicand());
      if (lo < c && below_hi(c)) return c;
    }
  }
  return std::nullopt;
}

}  // namespace decimals
