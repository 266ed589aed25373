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


#include "decimals/axioms.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "decimals/circle.hpp"

namespace decimals {

namespace {

using LT = LinearTerm;

LT V(const std::string& v, int64_t k = 1) { return LT::var(v, k); }
LT C(const Rational& q) { return LT::constant(q); }
LT R(int64_t n) { return LT::rho(n); }
LT zero() { return LT(); }

Formula lt(const LT& a, const LT& b) { return Formula::less(a, b); }
Formula eq(const LT& a, const LT& b) { return Formula::eq(a, b); }
Formula le(const LT& a, const LT& b) { return Formula::leq(a, b); }
Formula ne(const LT& a, const LT& b) { return Formula::neq(a, b); }
Formula imp(const Formula& a, const Formula& b) { return Formula::implies(a, b); }

Formula all(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}
Formula some(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = Formula::exists(*it, body);
  return body;
}

std::string xi(int64_t i) { return "x" + std::to_string(i); }

// A real number p + q*sqrt(d), used for sums of rho values before reduction.
struct Real {
  Rational p, q;
};
Real real_of(const CircleElement& c) { return {c.a(), c.b()}; }
Real operator+(const Real& a, const Real& b) { return {a.p + b.p, a.q + b.q}; }
int cmp_real(const Real& a, const Real& b, int64_t d) { return quadratic_sign(a.p - b.p, a.q - b.q, d); }

class Builder {
 public:
  Builder(Theory t, const GroupDescriptor& m, int64_t bound, const std::function<void(AxiomInstance&&)>& fn)
      : t_(t), m_(m), bound_(bound), fn_(fn) {}

  void emit(const std::string& scheme, std::vector<std::string> names, std::vector<int64_t> params,
            Formula f, WitnessHints hints = {}, std::string note = {}, bool skip = false) {
    AxiomInstance inst;
    inst.theory = t_;
    inst.scheme = scheme;
    inst.param_names = std::move(names);
    inst.params = std::move(params);
    inst.formula = std::move(f);
    inst.hints = std::move(hints);
    inst.note = std::move(note);
    inst.skip = skip;
    fn_(std::move(inst));
  }

  CircleElement rho(int64_t n) {
    auto it = rho_cache_.find(n);
    if (it != rho_cache_.end()) return it->second;
    return rho_cache_[n] = rho_interpretation(m_, n);
  }

  void group_axioms() {
    emit("(1)-associativity", {}, {}, all({"x", "y", "z"}, eq((V("x") + V("y")) + V("z"), V("x") + (V("y") + V("z")))));
    emit("(1)-commutativity", {}, {}, all({"x", "y"}, eq(V("x") + V("y"), V("y") + V("x"))));
    emit("(1)-identity", {}, {}, all({"x"}, eq(V("x") + zero(), V("x"))));
    emit("(1)-inverse", {}, {}, all({"x"}, eq(V("x") + (-V("x")), zero())));
  }

  void order_axioms(const std::string& tag, bool minimum) {
    emit(tag + "-irreflexive", {}, {}, all({"x"}, Formula::negate(lt(V("x"), V("x")))));
    emit(tag + "-transitive", {}, {},
         all({"x", "y", "z"}, imp(Formula::conj({lt(V("x"), V("y")), lt(V("y"), V("z"))}), lt(V("x"), V("z")))));
    emit(tag + "-total", {}, {},
         all({"x", "y"}, Formula::disj({lt(V("x"), V("y")), eq(V("x"), V("y")), lt(V("y"), V("x"))})));
    if (minimum) emit(tag + "-minimum", {}, {}, all({"x"}, le(zero(), V("x"))));
  }

  // x < y -> -y < -x, for x != 0 (at x = 0 both sides of the order meet).
  Formula negation_swaps() {
    return all({"x", "y"}, imp(Formula::conj({ne(V("x"), zero()), lt(V("x"), V("y"))}), lt(-V("y"), -V("x"))));
  }

  static Formula regularity(int64_t n) {
    return all({"x", "y"}, imp(lt(V("x"), V("y")),
                               Formula::exists("z", Formula::conj({lt(V("x"), V("z", n)), lt(V("z", n), V("y"))}))));
  }

  // z is the least nonzero element of order n: z != 0 & nz = 0 & z < jz.
  static Formula least_torsion(const std::string& z, int64_t n) {
    std::vector<Formula> parts = {ne(V(z), zero()), eq(V(z, n), zero())};
    for (int64_t j = 2; j <= n - 1; ++j) parts.push_back(lt(V(z), V(z, j)));
    return Formula::conj(std::move(parts));
  }

  // Representatives x1..xk of the cosets of n-multiples; with `fresh`, x2..xk
  // are not themselves n-multiples.
  static Formula indices(int64_t n, int64_t k, bool fresh) {
    std::vector<Formula> parts;
    std::vector<std::string> vs;
    for (int64_t i = 1; i <= k; ++i) {
      vs.push_back(xi(i));
      if (fresh && i >= 2) parts.push_back(Formula::negate(Formula::exists("y", eq(V(xi(i)), V("y", n)))));
    }
    for (int64_t i = 1; i <= k; ++i)
      for (int64_t j = i + 1; j <= k; ++j) parts.push_back(Formula::negate(Formula::dn(n, V(xi(i)), V(xi(j)))));
    std::vector<Formula> cover;
    for (int64_t i = 1; i <= k; ++i) cover.push_back(eq(V("x"), V(xi(i)) + V("z", n)));
    parts.push_back(Formula::forall("x", Formula::exists("z", Formula::disj(std::move(cover)))));
    return some(vs, Formula::conj(std::move(parts)));
  }

  void theory_T() {
    bool case1 = m_.torsion_case() == TorsionCase::I;
    group_axioms();

    for (int64_t n = 2; n <= bound_; ++n) {
      IndexReport ir = index(m_, n);
      if (!ir.exact) {
        emit("(2)", {"n"}, {n}, Formula::truth(true), {},
             "index of nG not determined (at least " + std::to_string(ir.value) + ")", true);
        continue;
      }
      WitnessHints h;
      for (size_t i = 0; i < ir.certificate.size(); ++i) h[xi(static_cast<int64_t>(i) + 1)] = {ir.certificate[i]};
      emit("(2)", {"n"}, {n}, indices(n, ir.value, false), h, "index " + std::to_string(ir.value));
    }

    for (int64_t n = 2; n <= bound_; ++n) {
      if (in_NG(m_, n)) {
        emit("(3)", {"n"}, {n}, all({"x", "y"}, imp(eq(V("x", n), V("y", n)), eq(V("x"), V("y")))), {},
             "no n-torsion");
        continue;
      }
      std::vector<Formula> roots = {eq(V("x"), zero())};
      for (int64_t j = 1; j <= n - 1; ++j) roots.push_back(eq(V("x"), V("z", j)));
      Formula f = Formula::exists(
          "z", Formula::conj({least_torsion("z", n),
                              Formula::forall("x", imp(eq(V("x", n), zero()), Formula::disj(std::move(roots))))}));
      emit("(3)", {"n"}, {n}, f, {{"z", {CircleElement(Rational(1, n))}}}, "n-torsion");
    }

    order_axioms("(4)", true);
    emit("(4)-no-maximum", {}, {}, all({"x"}, Formula::exists("y", lt(V("x"), V("y")))));
    emit("(5)", {}, {}, negation_swaps(), {}, "read with x != 0");

    if (case1) {
      for (int64_t n = 1; n <= bound_; ++n) {
        Rational c = rho(n).a();
        int64_t i = c.num(), mm = c.den();
        Formula f = Formula::exists("z", Formula::conj({eq(R(n), V("z", i)), least_torsion("z", mm)}));
        emit("(6)_I", {"n"}, {n}, f, {{"z", {CircleElement(Rational(1, mm))}}},
             "c_n = " + c.str());
      }
    } else {
      for (int64_t n = 1; n <= bound_; ++n) emit("(6)_II-nonzero", {"n"}, {n}, ne(R(1).scaled(n), zero()));
      for (int64_t n = 1; n <= bound_; ++n)
        emit("(6)_II-rho", {"n"}, {n}, eq(R(n), R(1).scaled(n % 2 == 1 ? n : -n)));
      // Torsion points squeezed between rho values; empty when the torsion is trivial.
      std::vector<CircleElement> tor = enumerate_torsion(m_, bound_);
      for (size_t k = 1; k < tor.size(); ++k) {
        Rational c = tor[k].a();
        int64_t i = c.num(), mm = c.den();
        int64_t lo = -1, hi = -1;
        for (int64_t j = 1; j <= bound_; ++j) {
          CircleElement r = rho(j);
          if (r < tor[k] && (lo < 0 || rho(lo) < r)) lo = j;
          if (tor[k] < r && (hi < 0 || r < rho(hi))) hi = j;
        }
        if (lo < 0 || hi < 0) continue;
        Formula f = Formula::exists(
            "z", Formula::conj({least_torsion("z", mm), lt(R(lo), V("z", i)), lt(V("z", i), R(hi))}));
        emit("(6)_II-torsion", {"k", "n1", "n2"}, {static_cast<int64_t>(k), lo, hi}, f,
             {{"z", {CircleElement(Rational(1, mm))}}}, "c_k = " + c.str());
      }
    }

    for (int64_t n = 2; n <= bound_; ++n) emit("(7)-regularity", {"n"}, {n}, regularity(n));
    for (int64_t n = 2; n <= bound_; ++n) {
      std::vector<int64_t> r(n + 1);
      for (int64_t i = 1; i <= n; ++i) r[i] = rho_fraction_index(m_, i, n);
      auto near = [&](const std::string& z) {
        return std::vector<Formula>{lt(V("a"), V(z, n)), lt(V(z, n), V("b"))};
      };
      std::vector<Formula> concl;
      for (int64_t i = 1; i <= n - 2; ++i) {
        std::string z = "z" + std::to_string(i);
        auto parts = near(z);
        parts.push_back(lt(R(r[i]), V(z)));
        parts.push_back(lt(V(z), R(r[i + 1])));
        concl.push_back(Formula::exists(z, Formula::conj(parts)));
      }
      auto p0 = near("z0");
      p0.push_back(lt(V("z0"), R(r[1])));
      concl.push_back(Formula::exists("z0", Formula::conj(p0)));
      std::string last = "z" + std::to_string(n - 1);
      auto pl = near(last);
      pl.push_back(lt(R(r[n - 1]), V(last)));
      concl.push_back(Formula::exists(last, Formula::conj(pl)));
      Formula f = all({"a", "b"}, imp(Formula::conj({lt(V("a"), V("b")), lt(V("b"), R(r[1]))}),
                                       Formula::conj(std::move(concl))));
      emit("(7)-fractions", {"n"}, {n}, f, {}, "rho_{1/n} = rho_" + std::to_string(r[1]));
    }

    for (int64_t n = 0; n <= bound_; ++n)
      for (int64_t k = 0; k <= bound_; ++k)
        if (rho(n) < rho(k)) emit("(8)", {"n", "m"}, {n, k}, lt(R(n), R(k)));

    int64_t d = m_.radicand();
    Real one{Rational(1), Rational(0)};
    for (int64_t n = 0; n <= bound_; ++n)
      for (int64_t k = 0; k <= bound_; ++k)
        for (int64_t n2 = 0; n2 <= bound_; ++n2)
          for (int64_t k2 = 0; k2 <= bound_; ++k2) {
            Real s = real_of(rho(n)) + real_of(rho(k));
            Real s2 = real_of(rho(n2)) + real_of(rho(k2));
            bool below = cmp_real(s2, s, d) <= 0 && cmp_real(s, one, d) < 0;
            bool above = cmp_real(one, s2, d) < 0 && cmp_real(s2, s, d) <= 0;
            if (!below && !above) continue;
            bool paren = cmp_real(s2, s, d) <= 0 && rho(n) < neg_mod1(rho(k)) && neg_mod1(rho(k2)) < rho(n2);
            Formula hyp = Formula::conj({le(R(n2), V("x")), le(V("x"), R(n)), le(R(k2), V("y")), le(V("y"), R(k))});
            Formula concl = Formula::conj({le(R(n2) + R(k2), V("x") + V("y")), le(V("x") + V("y"), R(n) + R(k))});
            emit("(9)", {"n", "m", "n'", "m'"}, {n, k, n2, k2}, all({"x", "y"}, imp(hyp, concl)), {},
                 paren ? "" : "parenthetical reading of the side condition excludes this tuple");
          }

    for (int64_t n = 0; n <= bound_; ++n)
      for (int64_t k = 0; k <= bound_; ++k)
        for (int64_t n2 = 0; n2 <= bound_; ++n2)
          for (int64_t k2 = 0; k2 <= bound_; ++k2) {
            if (!(rho(n2) == neg_mod1(rho(k2))) || rho(n2).is_zero()) continue;
            if (!(neg_mod1(rho(k)) < rho(n))) continue;
            Formula hyp = Formula::conj({le(R(n2), V("x")), le(V("x"), R(n)), le(R(k2), V("y")), le(V("y"), R(k))});
            emit("(9')", {"n", "m", "n'", "m'"}, {n, k, n2, k2},
                 all({"x", "y"}, imp(hyp, le(V("x") + V("y"), R(n) + R(k)))), {}, "rho_n' != 0");
          }

    for (int64_t n = 1; n <= bound_; ++n) {
      if (!(rho(n) < CircleElement(Rational(1, 2)))) continue;
      emit("(10)", {"n"}, {n}, small_additivity(R(n)));
    }
  }

  // Below r, + is order preserving and x <= x + y.
  static Formula small_additivity(const LT& r) {
    Formula hyp = Formula::conj({le(V("x"), r), le(V("y"), r), le(V("z"), r)});
    Formula concl = Formula::conj({Formula::iff(le(V("x"), V("y")), le(V("x") + V("z"), V("y") + V("z"))),
                                   le(V("x"), V("x") + V("y"))});
    return all({"x", "y", "z"}, imp(hyp, concl));
  }

  void theory_calT() {
    group_axioms();
    order_axioms("(2)", true);
    LT half = C(Rational(1, 2));
    {
      LT mid = V("x") + LT::div(2, V("y") - V("x"));
      Formula f = all({"x", "y"},
                      Formula::conj({imp(lt(V("x"), V("y")), Formula::conj({lt(V("x"), mid), lt(mid, V("y"))})),
                                     imp(ne(V("x"), zero()), lt(V("x"), V("x") + LT::div(2, -V("x"))))}));
      emit("(3)", {}, {}, f);
    }
    emit("(4)", {}, {}, negation_swaps(), {}, "read with x != 0");
    emit("(5)", {}, {},
         all({"x"}, Formula::conj({ne(half, zero()), eq(half.scaled(2), zero()),
                                   imp(eq(V("x", 2), zero()), Formula::disj({eq(V("x"), zero()), eq(V("x"), half)}))})));
    for (int64_t n = 2; n <= bound_; ++n) {
      LT fx = LT::div(n, V("x"));
      Formula f = all({"x", "y"}, Formula::conj({eq(LT::div(n, V("x"), n), V("x")), le(fx, V("x")),
                                                 imp(eq(V("y", n), V("x")), le(fx, V("y")))}));
      emit("(6)", {"n"}, {n}, f);
    }
    for (int64_t n = 2; n <= bound_; ++n) {
      std::vector<Formula> parts, roots;
      for (int64_t i = 1; i < n; ++i) {
        LT c = C(Rational(i, n));
        parts.push_back(ne(c, zero()));
        parts.push_back(eq(c.scaled(n), zero()));
      }
      for (int64_t i = 0; i < n; ++i) roots.push_back(eq(V("x"), C(Rational(i, n))));
      parts.push_back(imp(eq(V("x", n), zero()), Formula::disj(std::move(roots))));
      emit("(7)", {"n"}, {n}, all({"x"}, Formula::conj(std::move(parts))), {}, "i ranges over 1 <= i < n");
    }
    for (int64_t n = 2; n <= bound_; ++n) {
      std::vector<Formula> chain;
      for (int64_t i = 1; i + 1 < n; ++i) chain.push_back(lt(C(Rational(i, n)), C(Rational(i + 1, n))));
      emit("(8)", {"n"}, {n}, Formula::conj(std::move(chain)));
    }
    // One instance per distinct conjunct; conjuncts with an empty x or y
    // range are left out.
    std::set<Rational> fr;
    for (int64_t n = 2; n <= bound_; ++n)
      for (int64_t i = 0; i < n; ++i) fr.insert(Rational(i, n));
    auto num_den = [](const Rational& q, std::vector<int64_t>& out) {
      out.push_back(q.num());
      out.push_back(q.is_zero() ? 2 : q.den());
    };
    for (const Rational& a : fr)
      for (const Rational& b : fr) {
        Rational s = a + b;
        if (!(Rational(0) < s && s < Rational(1))) continue;
        for (const Rational& a2 : fr) {
          if (a < a2) break;
          for (const Rational& b2 : fr) {
            if (b < b2) break;
            Formula hyp = Formula::conj({le(C(a2), V("x")), le(V("x"), C(a)), le(C(b2), V("y")), le(V("y"), C(b))});
            Formula concl = Formula::conj({le(C(a2 + b2), V("x") + V("y")), le(V("x") + V("y"), C(s))});
            std::vector<int64_t> ps;
            num_den(a2, ps);
            num_den(a, ps);
            num_den(b2, ps);
            num_den(b, ps);
            emit("(9)", {"i'", "n'", "i", "n", "j'", "m'", "j", "m"}, std::move(ps), all({"x", "y"}, imp(hyp, concl)));
          }
        }
      }
    for (int64_t n = 3; n <= bound_; ++n) emit("(10)", {"n"}, {n}, small_additivity(C(Rational(1, n))));
  }

  void monoid_core() {
    emit("monoid-associativity", {}, {}, all({"a", "b", "c"}, eq((V("a") + V("b")) + V("c"), V("a") + (V("b") + V("c")))));
    emit("monoid-commutativity", {}, {}, all({"a", "b"}, eq(V("a") + V("b"), V("b") + V("a"))));
    emit("monoid-identity", {}, {}, all({"a"}, eq(V("a") + zero(), V("a"))));
    order_axioms("order", false);
    emit("cancellation", {}, {},
         all({"a", "b", "c"}, Formula::iff(le(V("a") + V("c"), V("b") + V("c")), le(V("a"), V("b")))));
    if (t_ == Theory::Tmo) return;
    emit("a<=a+b", {}, {}, all({"a", "b"}, le(V("a"), V("a") + V("b"))));
    emit("difference", {}, {},
         all({"a", "b"}, imp(lt(V("a"), V("b")), Formula::exists("c", eq(V("a") + V("c"), V("b"))))));
  }

  // Regularity and the index scheme of the non-negative part of H00.
  void regular_monoid(bool g_indices, const std::string& prefix = {},
                      const std::function<Formula(const Formula&)>& wrap = nullptr) {
    auto w = [&](const Formula& f) { return wrap ? wrap(f) : f; };
    for (int64_t n = 2; n <= bound_; ++n) emit(prefix + "(regularity)", {"n"}, {n}, w(regularity(n)));
    for (int64_t n = 2; n <= bound_; ++n) {
      IndexReport ir = index(m_, n);
      std::string scheme = prefix + (g_indices ? "(indices-G)" : "(indices)");
      if (!ir.exact) {
        emit(scheme, {"n"}, {n}, Formula::truth(true), {},
             "index of nG not determined (at least " + std::to_string(ir.value) + ")", true);
        continue;
      }
      int64_t k = ir.value;
      if (!g_indices && in_NG(m_, n)) k += n - 1;
      std::string note = "n~ = " + std::to_string(k);
      bool skip = k > 1;
      if (skip) note += "; the divisible vector model has a single coset, so this needs a non-divisible model";
      emit(scheme, {"n"}, {n}, w(indices(n, k, true)), {}, note, skip);
    }
  }

  static Formula positive(const std::string& v) {
    return Formula::disj({lt(V(v), -V(v)), eq(V(v), zero())});
  }

  static Formula relativize(const Formula& f) {
    switch (f.op()) {
      case Op::Forall:
        return Formula::forall(f.var(), imp(positive(f.var()), relativize(f.body())));
      case Op::Exists:
        return Formula::exists(f.var(), Formula::conj({positive(f.var()), relativize(f.body())}));
      case Op::Not:
        return Formula::negate(relativize(f.body()));
      case Op::And:
      case Op::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.kids()) kids.push_back(relativize(k));
        return f.op() == Op::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      }
      case Op::Implies:
        return imp(relativize(f.kids()[0]), relativize(f.kids()[1]));
      default:
        return f;
    }
  }

  void theory_TrG() {
    group_axioms();
    for (int64_t n = 2; n <= bound_; ++n)
      emit("torsion-free", {"n"}, {n}, all({"x"}, imp(eq(V("x", n), zero()), eq(V("x"), zero()))));
    order_axioms("order", false);
    emit("negation", {}, {}, negation_swaps(), {}, "read with x != 0");
    // The positive part {x : x < -x} u {0} satisfies the regular monoid axioms.
    Theory keep = t_;
    t_ = Theory::Tmr00;
    std::vector<AxiomInstance> inner;
    auto save = fn_;
    std::function<void(AxiomInstance&&)> collect = [&](AxiomInstance&& a) { inner.push_back(std::move(a)); };
    fn_ = collect;
    monoid_core();
    regular_monoid(false);
    fn_ = save;
    t_ = keep;
    for (auto& a : inner) {
      a.theory = keep;
      a.scheme = "P:" + a.scheme;
      a.formula = relativize(a.formula);
      fn_(std::move(a));
    }
    emit("positive-below-negative", {}, {},
         all({"x", "y"}, imp(Formula::conj({lt(V("x"), -V("x")), lt(-V("y"), V("y"))}), lt(V("x"), V("y")))));
  }

  void run() {
    switch (t_) {
      case Theory::T:
        theory_T();
        break;
      case Theory::TPrime:
        theory_TPrime();
        break;
      case Theory::CalT:
        if (!m_.is_full()) throw std::invalid_argument("calT is the theory of the full circle D");
        theory_calT();
        break;
      case Theory::Tmo:
      case Theory::Tmon:
        monoid_core();
        break;
      case Theory::Tmr00:
      case Theory::TmrG:
        monoid_core();
        regular_monoid(t_ == Theory::TmrG);
        break;
      case Theory::TrG:
        theory_TrG();
        break;
    }
  }

  // T with rho_n = i/m replaced by i*u_m, where u_m is pinned down by its
  // definition in an existential prefix.
  void theory_TPrime() {
    if (m_.torsion_case() != TorsionCase::I)
      throw std::invalid_argument("T' replaces torsion constants; the descriptor has no dense torsion");
    std::vector<AxiomInstance> base;
    Theory keep = t_;
    auto save = fn_;
    std::function<void(AxiomInstance&&)> collect = [&](AxiomInstance&& a) { base.push_back(std::move(a)); };
    fn_ = collect;
    t_ = Theory::T;
    theory_T();
    fn_ = save;
    t_ = keep;
    for (auto& a : base) {
      std::set<int64_t> orders;
      auto rewrite = [&](const LT& t) {
        LT out = C(t.constant_part());
        for (const auto& [v, k] : t.vars()) out = out + V(v, k);
        for (const auto& [dp, k] : t.divs()) out = out + LT::div(dp.n, *dp.arg, k);
        for (const auto& [n, k] : t.rhos()) {
          if (n == 0) continue;
          Rational c = rho(n).a();
          orders.insert(c.den());
          out = out + V("u" + std::to_string(c.den()), k * c.num());
        }
        return out;
      };
      Formula f = map_atoms(a.formula, [&](const Formula& at) {
        switch (at.op()) {
          case Op::Less: return Formula::less(rewrite(at.lhs()), rewrite(at.rhs()));
          case Op::Eq: return Formula::eq(rewrite(at.lhs()), rewrite(at.rhs()));
          case Op::Dn: return Formula::dn(at.n(), rewrite(at.lhs()), rewrite(at.rhs()));
          default: return at;
        }
      });
      for (auto it = orders.rbegin(); it != orders.rend(); ++it) {
        std::string u = "u" + std::to_string(*it);
        f = Formula::exists(u, Formula::conj({least_torsion(u, *it), f}));
        a.hints[u] = {CircleElement(Rational(1, *it))};
      }
      a.theory = keep;
      a.formula = f;
      fn_(std::move(a));
    }
  }

 private:
  Theory t_;
  const GroupDescriptor& m_;
  int64_t bound_;
  std::function<void(AxiomInstance&&)> fn_;
  std::map<int64_t, CircleElement> rho_cache_;
};

Verdict from_truth(Truth t) {
  switch (t) {
    case Truth::True: return Verdict::Holds;
    case Truth::False: return Verdict::Fails;
    default: return Verdict::Undecided;
  }
}

Structure structure_for(Theory t) {
  switch (t) {
    case Theory::Tmo:
    case Theory::Tmon:
    case Theory::Tmr00:
    case Theory::TmrG:
      return Structure::PositiveCone;
    case Theory::TrG:
      return Structure::H00;
    default:
      return Structure::Circle;
  }
}

CheckReport report_from(const AxiomInstance& inst, const ModelCheckResult& mr) {
  CheckReport r;
  r.instance = inst;
  r.verdict = from_truth(mr.verdict);
  r.evaluations = mr.evaluations;
  if (r.verdict == Verdict::Fails) r.counterexample = mr.assignment;
  if (r.verdict == Verdict::Holds) r.witness = mr.assignment;
  r.note = inst.note;
  if (!mr.note.empty()) r.note += (r.note.empty() ? "" : "; ") + mr.note;
  return r;
}

AxiomInstance make(const std::string& scheme, std::vector<std::string> names, std::vector<int64_t> params,
                   Formula f, std::string note = {}) {
  AxiomInstance a;
  a.theory = Theory::T;
  a.scheme = scheme;
  a.param_names = std::move(names);
  a.params = std::move(params);
  a.formula = std::move(f);
  a.note = std::move(note);
  return a;
}

}  // namespace

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::T: return "T";
    case Theory::TPrime: return "T'";
    case Theory::CalT: return "calT";
    case Theory::Tmo: return "Tmo";
    case Theory::Tmon: return "Tmon";
    case Theory::Tmr00: return "Tmr00";
    case Theory::TmrG: return "TmrG";
    case Theory::TrG: return "TrG";
  }
  return "?";
}

Theory parse_theory(const std::string& s) {
  for (Theory t : {Theory::T, Theory::TPrime, Theory::CalT, Theory::Tmo, Theory::Tmon, Theory::Tmr00,
                   Theory::TmrG, Theory::TrG})
    if (s == theory_name(t)) return t;
  if (s == "TPrime" || s == "Tprime") return Theory::TPrime;
  if (s == "CalT" || s == "caltT") return Theory::CalT;
  if (s == "TrG<") return Theory::TrG;
  throw std::invalid_argument("unknown theory '" + s + "'");
}

std::string AxiomInstance::params_str() const {
  std::string out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ",";
    out += (i < param_names.size() ? param_names[i] : "p" + std::to_string(i)) + "=" + std::to_string(params[i]);
  }
  return out.empty() ? "-" : out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Fails: return "FAILS";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

std::string CheckReport::witness_str() const {
  const auto& a = verdict == Verdict::Fails ? counterexample : witness;
  if (a.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + a[i].first + "=" + a[i].second;
  return out;
}

void for_each_instance(Theory t, const GroupDescriptor& m, int64_t bound,
                       const std::function<void(AxiomInstance&&)>& fn) {
  if (bound < 2) throw std::invalid_argument("bound must be at least 2");
  Builder(t, m, bound, fn).run();
}

std::vector<AxiomInstance> instantiate(Theory t, const GroupDescriptor& m, int64_t bound) {
  std::vector<AxiomInstance> out;
  for_each_instance(t, m, bound, [&](AxiomInstance&& a) { out.push_back(std::move(a)); });
  return out;
}

CheckReport check(const AxiomInstance& inst, const GroupDescriptor& m, const CheckConfig& cfg) {
  if (inst.skip) {
    CheckReport r;
    r.instance = inst;
    r.note = inst.note;
    return r;
  }
  return report_from(inst, model_check(inst.formula, m, structure_for(inst.theory), cfg.model, inst.hints));
}

CheckReport check_at(const AxiomInstance& inst, const GroupDescriptor& m, const Assignment& a,
                     const CheckConfig& cfg) {
  Formula f = inst.formula;
  std::vector<std::pair<std::string, std::string>> fixed;
  while (f.op() == Op::Forall && a.count(f.var())) {
    const CircleElement& v = a.at(f.var());
    if (!v.is_rational()) throw std::invalid_argument("check_at takes rational values");
    fixed.emplace_back(f.var(), v.str());
    f = substitute(f.body(), f.var(), C(v.a()));
  }
  CheckReport r = report_from(inst, model_check(f, m, structure_for(inst.theory), cfg.model, inst.hints));
  if (r.verdict == Verdict::Fails) r.counterexample.insert(r.counterexample.begin(), fixed.begin(), fixed.end());
  return r;
}

std::vector<CheckReport> consequences_suite(const GroupDescriptor& m, const CheckConfig& cfg, int64_t bound) {
  std::vector<AxiomInstance> insts;
  insts.push_back(make("(a)", {}, {},
                       all({"x", "y"}, imp(Formula::conj({lt(V("x"), -V("x")), lt(-V("y"), V("y"))}), lt(V("x"), V("y"))))));

  for (int64_t n = 1; n <= std::max<int64_t>(bound, 64); ++n) {
    if (CircleElement(Rational(1, 2)) < rho_interpretation(m, n)) continue;
    insts.push_back(make("(b)", {"n"}, {n},
                         all({"x", "y"}, imp(Formula::conj({lt(V("x"), V("y")), lt(V("y"), R(n))}),
                                             lt(V("x", 2), V("y", 2))))));
    break;
  }

  bool case1 = m.torsion_case() == TorsionCase::I;
  insts.push_back(make("(c)-zero", {}, {}, eq(R(0), zero())));
  // Index of an element among the rho values, up to sign in case II.
  auto find_rho = [&](const CircleElement& v, int64_t& sign) -> int64_t {
    int64_t limit = case1 ? 4096 : 4 * bound + 4;
    if (case1) {
      int64_t ord = v.a().den();
      std::vector<CircleElement> tor = enumerate_torsion(m, ord);
      for (size_t k = 0; k < tor.size(); ++k)
        if (tor[k] == v) {
          sign = 1;
          return static_cast<int64_t>(k);
        }
      return -1;
    }
    for (int64_t k = 0; k <= limit; ++k) {
      CircleElement r = rho_interpretation(m, k);
      if (r == v) {
        sign = 1;
        return k;
      }
      if (neg_mod1(r) == v) {
        sign = -1;
        return k;
      }
    }
    return -1;
  };
  std::string c_note = case1 ? "" : "closure of {rho_k} u {-rho_k}";
  for (int64_t n = 0; n <= bound; ++n)
    for (int64_t k = n; k <= bound; ++k) {
      int64_t sign = 1;
      int64_t j = find_rho(add_mod1(rho_interpretation(m, n), rho_interpretation(m, k)), sign);
      if (j < 0) {
        AxiomInstance a = make("(c)-sum", {"n", "m"}, {n, k}, Formula::truth(true), "sum not among the rho values searched");
        a.skip = true;
        insts.push_back(a);
        continue;
      }
      insts.push_back(make("(c)-sum", {"n", "m", "k"}, {n, k, j * sign}, eq(R(n) + R(k), R(j).scaled(sign)), c_note));
    }
  for (int64_t n = 0; n <= bound; ++n) {
    int64_t sign = 1;
    int64_t j = case1 ? find_rho(neg_mod1(rho_interpretation(m, n)), sign) : n;
    if (!case1) sign = -1;
    if (j < 0) continue;
    insts.push_back(make("(c)-neg", {"n", "k"}, {n, j * sign}, eq(-R(n), R(j).scaled(sign)), c_note));
  }

  for (int64_t n = 3; n <= bound; ++n) {
    int64_t r = rho_fraction_index(m, 1, n);
    insts.push_back(make("(d)", {"n"}, {n},
                         all({"x", "y"}, imp(Formula::conj({lt(V("x"), V("y")), lt(V("y"), R(r))}),
                                             lt(V("x", n), V("y", n))))));
  }
  for (int64_t n = 2; n <= bound; ++n) {
    int64_t r = rho_fraction_index(m, 1, n);
    Formula w = Formula::exists("z0", Formula::conj({lt(V("x"), V("z0", n)), lt(V("z0", n), V("y")), lt(V("z0"), V("y"))}));
    insts.push_back(make("(e)", {"n"}, {n},
                         all({"x", "y"}, imp(Formula::conj({lt(V("x"), V("y")), lt(V("y"), R(r))}), w))));
  }

  std::vector<CheckReport> out;
  for (const auto& a : insts) out.push_back(check(a, m, cfg));
  return out;
}

std::vector<CheckReport> corrupted_suite(const GroupDescriptor& m, const CheckConfig& cfg) {
  std::vector<AxiomInstance> insts;
  insts.push_back(make("(5)-reversed", {}, {}, all({"x", "y"}, imp(lt(V("x"), V("y")), lt(-V("x"), -V("y"))))));
  insts.push_back(make("irreflexive-reversed", {}, {}, all({"x"}, lt(V("x"), V("x")))));
  {
    Formula f = all({"x", "y", "z"}, Formula::conj({Formula::iff(le(V("x"), V("y")), le(V("x") + V("z"), V("y") + V("z"))),
                                                    le(V("x"), V("x") + V("y"))}));
    insts.push_back(make("(10)-unbounded", {}, {}, f));
  }
  insts.push_back(make("x<=x+y", {}, {}, all({"x", "y"}, le(V("x"), V("x") + V("y")))));
  insts.push_back(make("doubling-monotone", {}, {}, all({"x", "y"}, imp(lt(V("x"), V("y")), lt(V("x", 2), V("y", 2))))));
  if (m.torsion_case() == TorsionCase::I)
    insts.push_back(make("torsion-free", {"n"}, {2}, all({"x"}, imp(eq(V("x", 2), zero()), eq(V("x"), zero())))));
  insts.push_back(make("(7)-swapped", {"n"}, {2},
                       all({"x", "y"}, imp(lt(V("x"), V("y")),
                                           Formula::exists("z", Formula::conj({lt(V("y"), V("z", 2)), lt(V("z", 2), V("x"))}))))));
  std::vector<CheckReport> out;
  for (const auto& a : insts) out.push_back(check(a, m, cfg));
  return out;
}

}  // namespace decimals
