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

#include "decimals/hyperreal.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace decimals {

InfVec::InfVec(std::vector<Rational> q) : q_(std::move(q)) {
  while (!q_.empty() && q_.back().is_zero()) q_.pop_back();
}

InfVec InfVec::unit(size_t i, size_t k) {
  std::vector<Rational> q(std::max(k, i + 1));
  q[i] = Rational(1);
  return InfVec(std::move(q));
}

int InfVec::sign() const {
  for (const auto& r : q_)
    if (!r.is_zero()) return r.sign();
  return 0;
}

InfVec InfVec::operator+(const InfVec& o) const {
  std::vector<Rational> q(std::max(q_.size(), o.q_.size()));
  for (size_t i = 0; i < q.size(); ++i) {
    if (i < q_.size()) q[i] += q_[i];
    if (i < o.q_.size()) q[i] += o.q_[i];
  }
  return InfVec(std::move(q));
}

InfVec InfVec::operator-() const { return scaled(Rational(-1)); }
InfVec InfVec::operator-(const InfVec& o) const { return *this + (-o); }

InfVec InfVec::scaled(const Rational& k) const {
  std::vector<Rational> q = q_;
  for (auto& r : q) r *= k;
  return InfVec(std::move(q));
}

std::strong_ordering operator<=>(const InfVec& a, const InfVec& b) {
  size_t n = std::max(a.q_.size(), b.q_.size());
  for (size_t i = 0; i < n; ++i) {
    Rational x = i < a.q_.size() ? a.q_[i] : Rational(0);
    Rational y = i < b.q_.size() ? b.q_[i] : Rational(0);
    if (auto c = x <=> y; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string InfVec::str() const {
  std::string out;
  for (size_t i = 0; i < q_.size(); ++i) {
    const Rational& r = q_[i];
    if (r.is_zero()) continue;
    Rational mag = r.sign() < 0 ? -r : r;
    if (out.empty()) {
      if (r.sign() < 0) out += "-";
    } else {
      out += r.sign() < 0 ? " - " : " + ";
    }
    if (mag != Rational(1)) out += mag.str() + "*";
    out += "e" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string HyperElement::str() const { return "(" + std.str() + ", " + inf.str() + ")"; }

HyperElement h_add(const HyperElement& x, const HyperElement& y) {
  return {add_mod1(x.std, y.std), x.inf + y.inf};
}

HyperElement h_neg(const HyperElement& x) { return {neg_mod1(x.std), -x.inf}; }

HyperElement h_sub(const HyperElement& x, const HyperElement& y) { return h_add(x, h_neg(y)); }

HyperElement h_scale(int64_t k, const HyperElement& x) {
  return {mul_mod1(k, x.std), x.inf.scaled(Rational(k))};
}

std::strong_ordering h_cmp(const HyperElement& x, const HyperElement& y) {
  auto top = [](const HyperElement& h) { return h.std.is_zero() && h.inf.sign() < 0 ? 1 : 0; };
  if (auto c = top(x) <=> top(y); c != 0) return c;
  if (auto c = x.std <=> y.std; c != 0) return c;
  return x.inf <=> y.inf;
}

CircleElement st(const HyperElement& x) { return x.std; }

std::string CutTag::str() const {
  switch (kind) {
    case Kind::Standard: return "Standard";
    case Kind::H00plus: return "H00+";
    case Kind::H00minus: return "H00-";
    case Kind::Cut:
      return "Cut(" + std::to_string(i) + "/" + std::to_string(n) + (sign > 0 ? ",+)" : ",-)");
  }
  return "?";
}

CutTag classify(const HyperElement& x, const GroupDescriptor& m) {
  CutTag t;
  int s = x.inf.sign();
  if (x.std.is_zero()) {
    if (s > 0) t.kind = CutTag::Kind::H00plus;
    if (s < 0) t.kind = CutTag::Kind::H00minus;
    return t;
  }
  if (s == 0 || !x.std.is_rational()) return t;
  const Rational& q = x.std.a();
  if (!in_NG(m, q.den())) return t;
  t.kind = CutTag::Kind::Cut;
  t.i = q.num();
  t.n = q.den();
  t.sign = s;
  return t;
}

namespace {

class Sampler {
 public:
  Sampler(uint64_t seed, size_t rank) : rng_(seed), rank_(rank) {}

  int64_t uniform(int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng_); }

  InfVec inf() {
    std::vector<Rational> q(rank_);
    for (auto& r : q) r = Rational(uniform(-20, 20), uniform(1, 12));
    return InfVec(std::move(q));
  }
  InfVec positive_inf() {
    InfVec v;
    do v = inf(); while (v.sign() <= 0);
    return v;
  }
  CircleElement standard() {
    int64_t q = uniform(1, 60);
    return CircleElement(Rational(uniform(0, q - 1), q));
  }
  HyperElement element() {
    // A third of the samples sit in H00 so both sides of each law get hit.
    CircleElement s = uniform(0, 2) == 0 ? CircleElement() : standard();
    return {s, uniform(0, 4) == 0 ? InfVec() : inf()};
  }
  HyperElement h00() { return {CircleElement(), uniform(0, 9) == 0 ? InfVec() : inf()}; }

 private:
  std::mt19937_64 rng_;
  size_t rank_;
};

struct Suite {
  HyperSuiteResult r;
  explicit Suite(std::string name) { r.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++r.checked;
    if (!ok && r.pass) {
      r.pass = false;
      r.detail = what();
    }
  }
};

bool in_kernel_tag(const CutTag& t, const HyperElement& x) {
  return t.kind == CutTag::Kind::H00plus || t.kind == CutTag::Kind::H00minus ||
         (t.kind == CutTag::Kind::Standard && x.std.is_zero());
}

bool is_h00(const HyperElement& x) { return x.std.is_zero(); }
bool is_h00_plus(const HyperElement& x) { return x.std.is_zero() && x.inf.sign() >= 0; }

}  // namespace

std::vector<HyperSuiteResult> hyper_check(const HyperSuiteConfig& cfg) {
  Sampler rnd(cfg.seed, cfg.rank);
  const GroupDescriptor full = GroupDescriptor::full();
  std::vector<HyperSuiteResult> out;
  const HyperElement zero;

  {
    Suite s("st is a morphism");
    for (int64_t k = 0; k < cfg.samples; ++k) {
      HyperElement x = rnd.element(), y = rnd.element();
      s.expect(st(h_add(x, y)) == add_mod1(st(x), st(y)), [&] { return x.str() + " + " + y.str(); });
      s.expect(st(h_neg(x)) == neg_mod1(st(x)), [&] { return "-" + x.str(); });
    }
    out.push_back(s.r);
  }
  {
    Suite s("kernel of st is H00");
    for (int64_t k = 0; k < cfg.samples; ++k) {
      HyperElement x = rnd.element();
      bool kern = st(x).is_zero();
      s.expect(kern == in_kernel_tag(classify(x, full), x), [&] { return x.str(); });
    }
    out.push_back(s.r);
  }
  {
    Suite s("H00 is a torsion-free subgroup");
    for (int64_t k = 0; k < cfg.samples; ++k) {
      HyperElement x = rnd.h00(), y = rnd.h00();
      s.expect(is_h00(h_add(x, y)) && is_h00(h_neg(x)) && is_h00(h_sub(x, y)),
               [&] { return x.str() + ", " + y.str(); });
      for (int64_t n = 1; n <= 20; ++n) {
        bool torsion = h_equal(h_scale(n, x), zero);
        s.expect(!torsion || h_equal(x, zero), [&] { return std::to_string(n) + " * " + x.str(); });
      }
    }
    out.push_back(s.r);
  }
  {
    Suite s("differences in H00+ stay in H00+");
    std::vector<HyperElement> pts;
    pts.push_back(zero);
    while (pts.size() < 50) pts.push_back({CircleElement(), rnd.positive_inf()});
    for (const auto& a : pts)
      for (const auto& b : pts) {
        if (h_cmp(a, b) >= 0) continue;
        s.expect(is_h00_plus(h_sub(b, a)), [&] { return a.str() + " < " + b.str(); });
      }
    out.push_back(s.r);
  }
  {
    Suite s("(x < -x & -y < y) -> x < y");
    for (int64_t k = 0; k < cfg.samples; ++k) {
      HyperElement x = rnd.element(), y = rnd.element();
      bool hyp = h_cmp(x, h_neg(x)) < 0 && h_cmp(h_neg(y), y) < 0;
      s.expect(!hyp || h_cmp(x, y) < 0, [&] { return x.str() + ", " + y.str(); });
    }
    out.push_back(s.r);
  }
  {
    Suite s("cut addition over " + cfg.cut_model.str());
    const GroupDescriptor& m = cfg.cut_model;
    // About 120 cut pairs per round.
    int64_t rounds = std::max<int64_t>(1, (cfg.samples + 99) / 100);
    for (int64_t r = 0; r < rounds; ++r)
      for (int64_t n = 2; n <= 6; ++n)
        for (int64_t i = 1; i < n; ++i) {
          if (std::gcd(i, n) != 1 || !in_NG(m, n)) continue;
          HyperElement x{CircleElement(Rational(i, n)), rnd.inf()};
          if (x.inf.is_zero()) continue;
          CutTag tx = classify(x, m);
          s.expect(tx.kind == CutTag::Kind::Cut && tx.i == i && tx.n == n,
                   [&] { return x.str() + " tagged " + tx.str(); });
          // nz lands in H00, -z in the cut of (n-i)/n with the sign flipped.
          HyperElement nx = h_scale(n, x);
          s.expect(is_h00(nx) && (nx.inf.sign() > 0) == (tx.sign > 0), [&] { return "n*" + x.str(); });
          CutTag tn = classify(h_neg(x), m);
          s.expect(tn.kind == CutTag::Kind::Cut && tn.i == n - i && tn.n == n && tn.sign == -tx.sign,
                   [&] { return "-" + x.str() + " tagged " + tn.str(); });
          if (nx.inf.sign() < 0) s.expect(is_h00_plus(h_neg(nx)), [&] { return "-n*" + x.str(); });
          for (int64_t mm = 2; mm <= 6; ++mm)
            for (int64_t j = 1; j < mm; ++j) {
              if (std::gcd(j, mm) != 1 || !in_NG(m, mm)) continue;
              HyperElement y{CircleElement(Rational(j, mm)), rnd.inf()};
              if (y.inf.is_zero()) continue;
              HyperElement sum = h_add(x, y);
              Rational expect = Rational(i * mm + j * n, n * mm).frac();
              CutTag t = classify(sum, m);
              bool ok;
              if (expect.is_zero()) {
                ok = in_kernel_tag(t, sum);
              } else if (sum.inf.is_zero()) {
                ok = t.kind == CutTag::Kind::Standard && sum.std == CircleElement(expect);
              } else {
                ok = t.kind == CutTag::Kind::Cut && Rational(t.i, t.n) == expect &&
                     t.sign == sum.inf.sign();
              }
              s.expect(ok, [&] { return x.str() + " + " + y.str() + " tagged " + t.str(); });
            }
        }
    out.push_back(s.r);
  }
  {
    Suite s("H00+ satisfies the positive monoid laws");
    auto le = [](const HyperElement& a, const HyperElement& b) { return h_cmp(a, b) <= 0; };
    for (int64_t k = 0; k < cfg.samples; ++k) {
      HyperElement a{CircleElement(), rnd.positive_inf()}, b{CircleElement(), rnd.positive_inf()},
          c{CircleElement(), rnd.positive_inf()};
      auto tag = [&] { return a.str() + ", " + b.str() + ", " + c.str(); };
      s.expect(h_equal(h_add(h_add(a, b), c), h_add(a, h_add(b, c))) && h_equal(h_add(a, b), h_add(b, a)) &&
                   h_equal(h_add(a, zero), a),
               tag);
      s.expect(le(h_add(a, c), h_add(b, c)) == le(a, b), tag);
      s.expect(le(a, h_add(a, b)) && is_h00_plus(h_add(a, b)), tag);
      if (h_cmp(a, b) < 0) {
        HyperElement d = h_sub(b, a);
        s.expect(is_h00_plus(d) && h_equal(h_add(a, d), b), tag);
        for (int64_t n = 2; n <= 6; ++n) {
          // z = (a + b) / 2n, exact since InfVec is divisible.
          HyperElement z{CircleElement(), (a.inf + b.inf).scaled(Rational(1, 2 * n))};
          HyperElement nz = h_scale(n, z);
          s.expect(h_cmp(a, nz) < 0 && h_cmp(nz, b) < 0, tag);
        }
      }
    }
    out.push_back(s.r);
  }
  return out;
}

}  // namespace decimals
