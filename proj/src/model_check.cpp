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

#include "decimals/model_check.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "decimals/hyperreal.hpp"

namespace decimals {

namespace {

// A value fell off the integer scale; the caller retries exactly.
struct ScaleError : std::runtime_error {
  ScaleError() : std::runtime_error("off the integer scale") {}
};

Truth tv(bool b) { return b ? Truth::True : Truth::False; }
Truth tnot(Truth t) { return t == Truth::Undecided ? t : tv(t == Truth::False); }

struct Program {
  struct Term {
    std::vector<std::pair<int, int64_t>> vars;  // slot, coefficient
    std::vector<std::pair<int, int64_t>> divs;  // index into divs, coefficient
    CircleElement c;
  };
  struct Div {
    int64_t n;
    int term;
  };
  struct Crit {
    int term;
    int64_t k;
  };
  struct Bound {
    int term;
    bool upper;
  };
  struct Node {
    Op op = Op::True;
    std::vector<int> kids;
    int a = -1, b = -1, diff = -1;
    int64_t n = 0;
    int slot = -1;
    std::vector<Crit> crits;
    std::vector<Bound> bounds;
    bool qf = true;
    bool exact = false;  // quantifier over a quantifier-free body, no f_n of its variable
  };
  std::vector<Term> terms;
  std::vector<Div> divs;
  std::vector<Node> nodes;
  std::vector<std::string> slot_names;
  std::vector<std::vector<CircleElement>> hints;
  int root = -1;
};

class Compiler {
 public:
  Compiler(const GroupDescriptor& m, Structure s, const WitnessHints& hints, Program& p)
      : m_(m), s_(s), hints_(hints), p_(p) {}

  void run(const Formula& f) {
    std::map<std::string, int> scope;
    std::vector<int> bound;
    p_.root = node(f, scope, bound);
  }

 private:
  int term(const LinearTerm& t, const std::map<std::string, int>& scope) {
    Program::Term out;
    for (const auto& [v, k] : t.vars()) {
      auto it = scope.find(v);
      if (it == scope.end()) throw std::invalid_argument("free variable " + v + " in a sentence");
      out.vars.emplace_back(it->second, k);
    }
    for (const auto& [d, k] : t.divs()) {
      int arg = term(*d.arg, scope);
      p_.divs.push_back({d.n, arg});
      out.divs.emplace_back(static_cast<int>(p_.divs.size()) - 1, k);
    }
    out.c = CircleElement(t.constant_part());
    if (!t.rhos().empty()) {
      if (s_ != Structure::Circle) throw std::invalid_argument("rho constants need the circle structure");
      for (const auto& [n, k] : t.rhos()) out.c = add_mod1(out.c, mul_mod1(k, rho_interpretation(m_, n)));
    }
    p_.terms.push_back(std::move(out));
    return static_cast<int>(p_.terms.size()) - 1;
  }

  // Slots read anywhere in the term, including f_n arguments.
  void slots_of(int t, std::set<int>& out, bool in_div, std::set<int>* div_slots) const {
    for (const auto& [s, k] : p_.terms[t].vars) {
      out.insert(s);
      if (in_div && div_slots) div_slots->insert(s);
    }
    for (const auto& [d, k] : p_.terms[t].divs) slots_of(p_.divs[d].term, out, true, div_slots);
  }

  static bool is_var(const LinearTerm& t, const std::string& v) {
    return t.vars().size() == 1 && t.vars().begin()->first == v && t.vars().begin()->second == 1 &&
           t.constant_part().is_zero() && !t.has_symbols();
  }

  void collect_bounds(const Formula& hyp, const std::string& v, std::vector<std::pair<LinearTerm, bool>>& out) {
    if (hyp.op() == Op::And) {
      for (const auto& k : hyp.kids()) collect_bounds(k, v, out);
      return;
    }
    auto pair_bound = [&](const LinearTerm& a, const LinearTerm& b) {
      if (is_var(a, v) && !b.has_var(v)) out.emplace_back(b, true);
      if (is_var(b, v) && !a.has_var(v)) out.emplace_back(a, false);
    };
    if (hyp.op() == Op::Less) pair_bound(hyp.lhs(), hyp.rhs());
    if (hyp.op() == Op::Eq) {
      pair_bound(hyp.lhs(), hyp.rhs());
      pair_bound(hyp.rhs(), hyp.lhs());
    }
    if (hyp.op() == Op::Or && hyp.kids().size() == 2 && hyp.kids()[0].op() == Op::Less &&
        hyp.kids()[1].op() == Op::Eq && hyp.kids()[0].lhs() == hyp.kids()[1].lhs() &&
        hyp.kids()[0].rhs() == hyp.kids()[1].rhs())
      pair_bound(hyp.kids()[0].lhs(), hyp.kids()[0].rhs());
  }

  void gather_atoms(int id, std::vector<int>& out) const {
    const auto& n = p_.nodes[id];
    if (n.op == Op::Less || n.op == Op::Eq) out.push_back(id);
    for (int k : n.kids) gather_atoms(k, out);
  }

  int node(const Formula& f, std::map<std::string, int>& scope, std::vector<int>& bound) {
    Program::Node n;
    n.op = f.op();
    switch (f.op()) {
      case Op::True:
      case Op::False:
        break;
      case Op::Less:
      case Op::Eq:
        n.a = term(f.lhs(), scope);
        n.b = term(f.rhs(), scope);
        n.diff = term(f.lhs() - f.rhs(), scope);
        break;
      case Op::Dn:
        n.a = term(f.lhs(), scope);
        n.b = term(f.rhs(), scope);
        n.n = f.n();
        break;
      case Op::Not:
      case Op::And:
      case Op::Or:
      case Op::Implies:
        for (const auto& k : f.kids()) {
          int id = node(k, scope, bound);
          n.qf = n.qf && p_.nodes[id].qf;
          n.kids.push_back(id);
        }
        break;
      case Op::Exists:
      case Op::Forall: {
        const std::string& v = f.var();
        n.qf = false;
        n.slot = static_cast<int>(p_.slot_names.size());
        p_.slot_names.push_back(v);
        auto h = hints_.find(v);
        p_.hints.push_back(h == hints_.end() ? std::vector<CircleElement>{} : h->second);
        std::optional<int> shadow;
        if (auto it = scope.find(v); it != scope.end()) shadow = it->second;
        scope[v] = n.slot;
        bound.push_back(n.slot);
        int body = node(f.body(), scope, bound);
        n.kids.push_back(body);
        if (f.op() == Op::Forall) {
          // A hypothesis under a block of universals prunes every variable
          // of the block whose bound is already known at this point.
          Formula inner = f.body();
          std::set<std::string> chain;
          while (inner.op() == Op::Forall) {
            chain.insert(inner.var());
            inner = inner.body();
          }
          if (inner.op() == Op::Implies && !chain.count(v)) {
            std::vector<std::pair<LinearTerm, bool>> bs;
            collect_bounds(inner.kids()[0], v, bs);
            for (auto& [t, upper] : bs) {
              std::set<std::string> tv;
              t.collect_vars(tv);
              if (std::all_of(tv.begin(), tv.end(),
                              [&](const std::string& x) { return scope.count(x) > 0 && !chain.count(x); }))
                n.bounds.push_back({term(t, scope), upper});
            }
          }
        }
        std::set<int> visible(bound.begin(), bound.end());
        std::vector<int> atoms;
        gather_atoms(body, atoms);
        bool var_in_div = false;
        for (int a : atoms) {
          const auto& an = p_.nodes[a];
          std::vector<int> cand = {an.diff};
          if (an.op == Op::Less) {
            cand.push_back(an.a);
            cand.push_back(an.b);
          }
          for (int t : cand) {
            std::set<int> all, in_div;
            slots_of(t, all, false, &in_div);
            if (!all.count(n.slot)) continue;
            if (in_div.count(n.slot)) {
              var_in_div = true;
              continue;
            }
            bool ok = std::all_of(all.begin(), all.end(), [&](int s) { return visible.count(s) > 0; });
            if (!ok) continue;
            int64_t k = 0;
            for (const auto& [s, c] : p_.terms[t].vars)
              if (s == n.slot) k = c;
            if (k != 0) n.crits.push_back({t, k});
          }
        }
        n.exact = p_.nodes[body].qf && !var_in_div;
        bound.pop_back();
        if (shadow) scope[v] = *shadow; else scope.erase(v);
        break;
      }
    }
    p_.nodes.push_back(std::move(n));
    return static_cast<int>(p_.nodes.size()) - 1;
  }

  const GroupDescriptor& m_;
  Structure s_;
  const WitnessHints& hints_;
  Program& p_;
};

// --- domains -------------------------------------------------------------

// Q/Z (or a localization) as integers mod L.
struct ScaledDomain {
  using V = int64_t;
  static constexpr bool kCells = true;
  int64_t L = 1, step = 1;
  GroupDescriptor m;
  bool full = true;
  int64_t search_limit = 4096;

  V zero() const { return 0; }
  V add(V a, V b) const {
    V r = a + b;
    return r >= L ? r - L : r;
  }
  V mul(int64_t k, V a) const {
    if (k == 1) return a;
    if (k == -1) return a == 0 ? 0 : L - a;
    if (k > -64 && k < 64 && L < (int64_t{1} << 56)) {
      V r = (k < 0 ? -k : k) * a % L;
      return k > 0 || r == 0 ? r : L - r;
    }
    __int128 r = static_cast<__int128>(k) * a % L;
    if (r < 0) r += L;
    return static_cast<V>(r);
  }
  V div(int64_t n, V a) const {
    if (a % n != 0) throw ScaleError();
    return a / n;
  }
  bool less(V a, V b) const { return a < b; }
  bool equal(V a, V b) const { return a == b; }
  Truth dn(int64_t, V, V) const { return Truth::True; }  // divisible
  bool member(V z) const { return full || m.is_smooth(L / std::gcd(z, L)); }
  V constant(const CircleElement& c) const {
    if (!c.is_rational() || L % c.a().den() != 0) throw ScaleError();
    return c.a().num() * (L / c.a().den());
  }
  void roots(int64_t k, V r, std::vector<V>& out, bool& exact) const {
    int64_t kk = k > 0 ? k : -k;
    V t = k > 0 ? (r == 0 ? 0 : L - r) : r;
    for (int64_t j = 0; j < kk; ++j) {
      __int128 num = t + static_cast<__int128>(j) * L;
      if (num % kk != 0) {
        exact = false;
        continue;
      }
      out.push_back(static_cast<V>(num / kk));
    }
  }
  std::optional<V> between(V a, std::optional<V> b) const {
    V hi = b ? *b : L;
    if (hi - a < 2) return std::nullopt;
    V mid = a + (hi - a) / 2;
    if (full) return mid;
    for (int64_t d = 0; d < search_limit && d < hi - a; ++d) {
      if (mid + d < hi && member(mid + d)) return mid + d;
      if (mid - d > a && member(mid - d)) return mid - d;
    }
    return std::nullopt;
  }
  bool in_universe(V z) const { return z % step == 0 && member(z); }
  std::optional<V> universe_after(V a, std::optional<V> b) const {
    V hi = b ? *b : L;
    for (V z = (a / step + 1) * step; z < hi; z += step)
      if (member(z)) return z;
    return std::nullopt;
  }
  template <class F>
  void for_universe(const std::optional<V>& lo, const std::optional<V>& hi, F&& f) const {
    V start = lo ? (*lo + step - 1) / step * step : 0;
    V end = hi ? *hi : L - 1;
    for (V z = start; z <= end; z += step)
      if (member(z) && !f(z)) return;
  }
  std::string str(V z) const { return Rational(z, L).str(); }
};

// Exact arithmetic on a + b*sqrt(d) mod 1; the universe is a fixed sample.
struct ExactDomain {
  using V = CircleElement;
  static constexpr bool kCells = false;
  GroupDescriptor m;
  std::vector<CircleElement> universe;
  int64_t search_limit = 4096;

  V zero() const { return {}; }
  V add(const V& a, const V& b) const { return add_mod1(a, b); }
  V mul(int64_t k, const V& a) const { return mul_mod1(k, a); }
  V div(int64_t n, const V& a) const { return div_n(a, n); }
  bool less(const V& a, const V& b) const { return a < b; }
  bool equal(const V& a, const V& b) const { return a == b; }
  Truth dn(int64_t n, const V& a, const V& b) const { return holds_Dn(m, n, a, b).truth; }
  V constant(const CircleElement& c) const { return c; }
  bool member(const V& z) const { return m.contains(z); }
  void roots(int64_t k, const V& r, std::vector<V>& out, bool&) const {
    int64_t kk = k > 0 ? k : -k;
    V t = k > 0 ? neg_mod1(r) : r;
    for (int64_t j = 0; j < kk; ++j) {
      out.emplace_back((t.a() + Rational(j)) / Rational(kk), t.b() / Rational(kk), t.radicand());
    }
  }
  std::optional<V> between(const V& a, const std::optional<V>& b) const {
    return find_in_interval(m, a, b, search_limit);
  }
  bool in_universe(const V& z) const { return std::binary_search(universe.begin(), universe.end(), z); }
  std::optional<V> universe_after(const V& a, const std::optional<V>& b) const {
    auto it = std::upper_bound(universe.begin(), universe.end(), a);
    if (it == universe.end() || (b && !(*it < *b))) return std::nullopt;
    return *it;
  }
  template <class F>
  void for_universe(const std::optional<V>& lo, const std::optional<V>& hi, F&& f) const {
    auto it = lo ? std::lower_bound(universe.begin(), universe.end(), *lo) : universe.begin();
    for (; it != universe.end(); ++it) {
      if (hi && *hi < *it) return;
      if (!f(*it)) return;
    }
  }
  std::string str(const V& z) const { return z.str(); }
};

// Q^k under lex order: the positive cone (no wrap) or H00 (negatives on top).
struct VecDomain {
  using V = InfVec;
  static constexpr bool kCells = false;
  bool cone = true;
  size_t rank = 2;
  std::vector<InfVec> universe;  // sorted by less()

  V zero() const { return {}; }
  V add(const V& a, const V& b) const { return a + b; }
  V mul(int64_t k, const V& a) const { return a.scaled(Rational(k)); }
  V div(int64_t n, const V& a) const { return a.scaled(Rational(1, n)); }
  bool less(const V& a, const V& b) const {
    if (cone) return a < b;
    int ta = a.sign() < 0, tb = b.sign() < 0;
    if (ta != tb) return ta < tb;
    return a < b;
  }
  bool equal(const V& a, const V& b) const { return a == b; }
  Truth dn(int64_t, const V&, const V&) const { return Truth::True; }  // divisible
  bool member(const V& z) const { return !cone || z.sign() >= 0; }
  V constant(const CircleElement& c) const {
    if (!c.is_zero()) throw std::invalid_argument("constants need the circle structure");
    return {};
  }
  void roots(int64_t k, const V& r, std::vector<V>& out, bool&) const {
    out.push_back((-r).scaled(Rational(1, k)));
  }
  std::optional<V> between(const V& a, const std::optional<V>& b) const {
    InfVec e = InfVec::unit(0, rank);
    if (cone) return b ? (a + *b).scaled(Rational(1, 2)) : a + e;
    if (!b) return a.sign() >= 0 ? -e : a.scaled(Rational(1, 2));
    if ((a.sign() < 0) == (b->sign() < 0)) return (a + *b).scaled(Rational(1, 2));
    return a + e;
  }
  bool in_universe(const V& z) const {
    return std::binary_search(universe.begin(), universe.end(), z,
                              [&](const V& x, const V& y) { return less(x, y); });
  }
  std::optional<V> universe_after(const V& a, const std::optional<V>& b) const {
    auto it = std::upper_bound(universe.begin(), universe.end(), a,
                               [&](const V& x, const V& y) { return less(x, y); });
    if (it == universe.end() || (b && !less(*it, *b))) return std::nullopt;
    return *it;
  }
  template <class F>
  void for_universe(const std::optional<V>& lo, const std::optional<V>& hi, F&& f) const {
    for (const auto& z : universe) {
      if (lo && less(z, *lo)) continue;
      if (hi && less(*hi, z)) return;
      if (!f(z)) return;
    }
  }
  std::string str(const V& z) const { return z.str(); }
};

// --- evaluation ----------------------------------------------------------

template <class D>
class Machine {
 public:
  using V = typename D::V;

  Machine(const Program& p, D d) : p_(p), d_(std::move(d)) {
    size_t slots = p.slot_names.size();
    env_.assign(slots, d_.zero());
    fail_.assign(slots, std::nullopt);
    wit_.assign(slots, std::nullopt);
    consts_.reserve(p.terms.size());
    for (const auto& t : p.terms) consts_.push_back(d_.constant(t.c));
    hints_.resize(slots);
    scratch_.resize(slots);
    cuts_.resize(slots);
    for (size_t s = 0; s < slots; ++s)
      for (const auto& h : p.hints[s]) {
        try {
          hints_[s].push_back(d_.constant(h));
        } catch (const std::exception&) {
          // hint not representable in this domain
        }
      }
  }

  Truth run() { return eval(p_.root); }
  int64_t evaluations() const { return evals_; }
  const std::optional<V>& failure(int slot) const { return fail_[slot]; }
  const std::optional<V>& witness(int slot) const { return wit_[slot]; }
  const D& domain() const { return d_; }

 private:
  V value(int t) {
    const auto& T = p_.terms[t];
    V v = consts_[t];
    for (const auto& [s, k] : T.vars) v = d_.add(v, d_.mul(k, env_[s]));
    for (const auto& [di, k] : T.divs) {
      const auto& dv = p_.divs[di];
      v = d_.add(v, d_.mul(k, d_.div(dv.n, value(dv.term))));
    }
    return v;
  }

  V value_at_zero(int t, int slot) {
    V keep = env_[slot];
    env_[slot] = d_.zero();
    V v = value(t);
    env_[slot] = keep;
    return v;
  }

  void sort_unique(std::vector<V>& pts) const {
    std::sort(pts.begin(), pts.end(), [&](const V& a, const V& b) { return d_.less(a, b); });
    pts.erase(std::unique(pts.begin(), pts.end(), [&](const V& a, const V& b) { return d_.equal(a, b); }),
              pts.end());
  }

  Truth eval(int id) {
    const auto& n = p_.nodes[id];
    switch (n.op) {
      case Op::True: return Truth::True;
      case Op::False: return Truth::False;
      case Op::Less: return tv(d_.less(value(n.a), value(n.b)));
      case Op::Eq: return tv(d_.equal(value(n.a), value(n.b)));
      case Op::Dn: return d_.dn(n.n, value(n.a), value(n.b));
      case Op::Not: return tnot(eval(n.kids[0]));
      case Op::And:
      case Op::Or: {
        Truth stop = n.op == Op::And ? Truth::False : Truth::True;
        bool undecided = false;
        for (int k : n.kids) {
          Truth t = eval(k);
          if (t == stop) return stop;
          if (t == Truth::Undecided) undecided = true;
        }
        return undecided ? Truth::Undecided : tnot(stop);
      }
      case Op::Implies: {
        Truth a = eval(n.kids[0]);
        if (a == Truth::False) return Truth::True;
        Truth b = eval(n.kids[1]);
        if (b == Truth::True) return Truth::True;
        return a == Truth::True ? b : Truth::Undecided;
      }
      case Op::Exists: return exists(n);
      case Op::Forall: return forall(n);
    }
    return Truth::Undecided;
  }

  Truth forall(const Program::Node& n) {
    std::optional<V> lo, hi;
    for (const auto& b : n.bounds) {
      V v = value(b.term);
      if (b.upper) {
        if (!hi || d_.less(v, *hi)) hi = v;
      } else if (!lo || d_.less(*lo, v)) {
        lo = v;
      }
    }
    if (lo && hi && d_.less(*hi, *lo)) return Truth::True;
    V keep = env_[n.slot];
    bool undecided = false, failed = false;
    auto test = [&](const V& x) {
      env_[n.slot] = x;
      ++evals_;
      Truth t = eval(n.kids[0]);
      if (t == Truth::False) {
        fail_[n.slot] = x;
        failed = true;
        return false;
      }
      if (t == Truth::Undecided) undecided = true;
      return true;
    };
    bool done = false;
    if constexpr (D::kCells) {
      if (n.exact) {
        std::vector<V>& pts = scratch_[n.slot];
        pts.clear();
        bool exact = true;
        for (const auto& c : n.crits) d_.roots(c.k, value_at_zero(c.term, n.slot), pts, exact);
        if (exact) {
          // One universe point per cell between switching points suffices.
          std::vector<V>& cut = cuts_[n.slot];
          cut.clear();
          cut.push_back(lo ? *lo : d_.zero());
          for (const auto& x : pts)
            if ((!lo || !d_.less(x, *lo)) && (!hi || !d_.less(*hi, x))) cut.push_back(x);
          if (hi) cut.push_back(*hi);
          sort_unique(cut);
          for (size_t i = 0; i < cut.size() && !failed; ++i) {
            if (d_.in_universe(cut[i]) && !test(cut[i])) break;
            std::optional<V> next = i + 1 < cut.size() ? std::optional<V>(cut[i + 1]) : std::nullopt;
            if (auto z = d_.universe_after(cut[i], next)) test(*z);
          }
          done = true;
        }
      }
    }
    if (!done) d_.for_universe(lo, hi, test);
    env_[n.slot] = keep;
    if (failed) return Truth::False;
    return undecided ? Truth::Undecided : Truth::True;
  }

  Truth exists(const Program::Node& n) {
    V keep = env_[n.slot];
    bool undecided = false, exact = n.exact, found = false;
    auto test = [&](const V& x) {
      env_[n.slot] = x;
      ++evals_;
      Truth t = eval(n.kids[0]);
      if (t == Truth::True) {
        wit_[n.slot] = x;
        found = true;
      } else if (t == Truth::Undecided) {
        undecided = true;
      }
      return found;
    };
    for (const auto& h : hints_[n.slot])
      if (test(h)) break;
    if (!found) {
      std::vector<V>& pts = scratch_[n.slot];
      pts.assign(1, d_.zero());
      for (const auto& c : n.crits) d_.roots(c.k, value_at_zero(c.term, n.slot), pts, exact);
      sort_unique(pts);
      // Roots outside the group still bound the cells; only members are tried.
      for (size_t i = 0; i < pts.size() && !found; ++i) {
        if (d_.member(pts[i]) && test(pts[i])) break;
        auto mid = d_.between(pts[i], i + 1 < pts.size() ? std::optional<V>(pts[i + 1]) : std::nullopt);
        if (!mid) {
          exact = false;
          continue;
        }
        if (d_.member(*mid)) test(*mid);
      }
    }
    env_[n.slot] = keep;
    if (found) return Truth::True;
    return undecided || !exact ? Truth::Undecided : Truth::False;
  }

  const Program& p_;
  D d_;
  std::vector<V> env_, consts_;
  std::vector<std::vector<V>> hints_, scratch_, cuts_;
  std::vector<std::optional<V>> fail_, wit_;
  int64_t evals_ = 0;
};

template <class D>
ModelCheckResult finish(const Program& p, Machine<D>& mc) {
  ModelCheckResult r;
  r.verdict = mc.run();
  r.evaluations = mc.evaluations();
  if (r.verdict == Truth::Undecided) return r;
  bool fail = r.verdict == Truth::False;
  for (int id = p.root;;) {
    const auto& n = p.nodes[id];
    if (!fail && n.op == Op::Implies) {
      id = n.kids[1];
      continue;
    }
    if (n.op != (fail ? Op::Forall : Op::Exists)) break;
    const auto& v = fail ? mc.failure(n.slot) : mc.witness(n.slot);
    if (!v) break;
    r.assignment.emplace_back(p.slot_names[n.slot], mc.domain().str(*v));
    id = n.kids[0];
  }
  return r;
}

int64_t mul_checked(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > (int64_t{1} << 61)) throw OverflowError("scale");
  return static_cast<int64_t>(r);
}

int64_t term_div_factor(const Program& p, int t) {
  int64_t f = 1;
  for (const auto& [d, k] : p.terms[t].divs)
    f = mul_checked(f, mul_checked(p.divs[d].n, term_div_factor(p, p.divs[d].term)));
  return f;
}

// Product along the deepest chain of the divisions each quantifier needs.
// Hinted existentials are left off the scale when `trust_hints` is set; a
// failing hint then shows up as an inexact root and an undecided verdict.
int64_t path_factor(const Program& p, int id, bool trust_hints) {
  const auto& n = p.nodes[id];
  int64_t own = 1;
  bool hinted = n.op == Op::Exists && trust_hints && !p.hints[n.slot].empty();
  if ((n.op == Op::Exists || n.op == Op::Forall) && !hinted) {
    int64_t l = 1;
    for (const auto& c : n.crits) l = checked_lcm(l, c.k < 0 ? -c.k : c.k);
    own = n.op == Op::Exists ? mul_checked(2, l) : (n.exact ? l : 1);
  }
  for (int t : {n.a, n.b, n.diff})
    if (t >= 0) own = mul_checked(own, term_div_factor(p, t));
  int64_t best = 1;
  for (int k : n.kids) best = std::max(best, path_factor(p, k, trust_hints));
  return mul_checked(own, best);
}

std::vector<CircleElement> rational_universe(const GroupDescriptor& m, int64_t grid) {
  std::vector<CircleElement> u;
  for (int64_t k = 0; k < grid; ++k) {
    Rational q(k, grid);
    if (m.is_full() || m.is_smooth(q.den())) u.emplace_back(q);
  }
  return u;
}

std::vector<CircleElement> lattice_universe(const GroupDescriptor& m, const ModelCheckConfig& cfg) {
  std::set<CircleElement> u;
  if (m.primes().empty()) {
    for (int64_t b = -cfg.height; b <= cfg.height; ++b) u.insert(CircleElement(Rational(0), Rational(b), m.radicand()));
  } else {
    // Rational parts k/q for the largest smooth q dividing the grid.
    int64_t q = 1;
    for (int64_t g = 1; g <= cfg.grid; ++g)
      if (cfg.grid % g == 0 && m.is_smooth(g)) q = g;
    q = std::min<int64_t>(q, 16);
    int64_t h = std::min<int64_t>(cfg.height, 6);
    for (int64_t k = 0; k < q; ++k)
      for (int64_t b = -h; b <= h; ++b) u.insert(CircleElement(Rational(k, q), Rational(b), m.radicand()));
  }
  return {u.begin(), u.end()};
}

}  // namespace

ModelCheckResult model_check(const Formula& sentence, const GroupDescriptor& m, Structure s,
                             const ModelCheckConfig& cfg, const WitnessHints& hints) {
  Program p;
  Compiler(m, s, hints, p).run(sentence);

  if (s != Structure::Circle) {
    VecDomain d;
    d.cone = s == Structure::PositiveCone;
    d.rank = cfg.rank;
    int64_t r = cfg.cone_radius;
    std::vector<int64_t> idx(cfg.rank, -r);
    while (true) {
      std::vector<Rational> q;
      for (int64_t j : idx) q.emplace_back(j, 2);
      InfVec v(std::move(q));
      if (!d.cone || v.sign() >= 0) d.universe.push_back(v);
      size_t i = 0;
      while (i < idx.size() && idx[i] == r) idx[i++] = -r;
      if (i == idx.size()) break;
      ++idx[i];
    }
    std::sort(d.universe.begin(), d.universe.end(), [&](const InfVec& a, const InfVec& b) { return d.less(a, b); });
    Machine<VecDomain> mc(p, std::move(d));
    return finish(p, mc);
  }

  if (m.radicand() == 0) {
    bool any_hint = std::any_of(p.hints.begin(), p.hints.end(), [](const auto& h) { return !h.empty(); });
    for (bool trust : {true, false}) {
      if (trust && !any_hint) continue;
      try {
        int64_t base = cfg.grid;
        for (const auto& t : p.terms) base = checked_lcm(base, t.c.a().den());
        for (const auto& hs : p.hints)
          for (const auto& h : hs)
            if (h.is_rational()) base = checked_lcm(base, h.a().den());
        ScaledDomain d;
        d.L = mul_checked(base, path_factor(p, p.root, trust));
        d.step = d.L / cfg.grid;
        d.m = m;
        d.full = m.is_full();
        d.search_limit = cfg.search_limit;
        Machine<ScaledDomain> mc(p, d);
        ModelCheckResult r = finish(p, mc);
        r.scaled = true;
        if (r.verdict != Truth::Undecided || !trust) return r;
      } catch (const ScaleError&) {
      } catch (const OverflowError&) {
      }
    }
  }
  ExactDomain d;
  d.m = m;
  d.search_limit = cfg.search_limit;
  d.universe = m.radicand() == 0 ? rational_universe(m, cfg.grid) : lattice_universe(m, cfg);
  Machine<ExactDomain> mc(p, std::move(d));
  return finish(p, mc);
}

}  // namespace decimals
