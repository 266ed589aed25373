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

#include "decimals/qe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "decimals/torsion.hpp"

namespace decimals {

namespace {

// ------------------------------------------------------------------------
// Real linear forms over "slots". A slot stands for the value in [0,1) of a
// mod-1 term; the variable being eliminated is the slot of its own term.

enum class Rel : uint8_t { LT, LE, EQ, NE };

struct Lin {
  std::vector<std::pair<int, Rational>> c;  // sorted by slot, nonzero
  Rational k;

  Rational coef(int s) const {
    for (const auto& [slot, v] : c)
      if (slot == s) return v;
    return Rational(0);
  }
  bool operator==(const Lin& o) const = default;
};

Lin lin_const(const Rational& k) { return Lin{{}, k}; }
Lin lin_slot(int s, const Rational& v = Rational(1)) { return Lin{{{s, v}}, Rational(0)}; }

Lin lin_add(const Lin& a, const Lin& b) {
  Lin r;
  r.k = a.k + b.k;
  size_t i = 0, j = 0;
  while (i < a.c.size() || j < b.c.size()) {
    if (j == b.c.size() || (i < a.c.size() && a.c[i].first < b.c[j].first)) {
      r.c.push_back(a.c[i++]);
    } else if (i == a.c.size() || b.c[j].first < a.c[i].first) {
      r.c.push_back(b.c[j++]);
    } else {
      Rational v = a.c[i].second + b.c[j].second;
      if (!v.is_zero()) r.c.emplace_back(a.c[i].first, v);
      ++i;
      ++j;
    }
  }
  return r;
}

Lin lin_scale(const Lin& a, const Rational& f) {
  if (f.is_zero()) return Lin{};
  Lin r;
  r.k = a.k * f;
  r.c.reserve(a.c.size());
  for (const auto& [s, v] : a.c) r.c.emplace_back(s, v * f);
  return r;
}

Lin lin_drop(const Lin& a, int s) {
  Lin r = a;
  r.c.erase(std::remove_if(r.c.begin(), r.c.end(), [s](const auto& p) { return p.first == s; }), r.c.end());
  return r;
}

// Positive rescaling to integer coefficients with gcd 1; equalities also get
// a positive leading coefficient.
Lin canonical(const Lin& a, Rel rel) {
  if (a.c.empty()) return a;
  int64_t l = 1;
  for (const auto& [s, v] : a.c) l = checked_lcm(l, v.den());
  int64_t g = 0;
  for (const auto& [s, v] : a.c) g = std::gcd(g, (v * Rational(l)).num());
  Rational f(l, g);
  if ((rel == Rel::EQ || rel == Rel::NE) && a.c.front().second.sign() < 0) f = -f;
  return lin_scale(a, f);
}

struct Node;
using RF = std::shared_ptr<const Node>;

struct Node {
  enum Kind : uint8_t { T, F, Atom, And, Or };
  Kind kind = T;
  Rel rel = Rel::LT;
  Lin lin;
  std::vector<RF> kids;
  size_t hash = 0;
};

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

size_t hash_lin(const Lin& l) {
  size_t h = std::hash<Rational>()(l.k);
  for (const auto& [s, v] : l.c) h = mix(mix(h, static_cast<size_t>(s)), std::hash<Rational>()(v));
  return h;
}

bool same(const RF& a, const RF& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->rel != b->rel) return false;
  if (a->kind == Node::Atom) return a->lin == b->lin;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!same(a->kids[i], b->kids[i])) return false;
  return true;
}

const RF& rf_true() {
  static const RF t = std::make_shared<const Node>(Node{Node::T, Rel::LT, {}, {}, 1});
  return t;
}
const RF& rf_false() {
  static const RF f = std::make_shared<const Node>(Node{Node::F, Rel::LT, {}, {}, 2});
  return f;
}

// Raw atom, without simplification.
RF rf_atom(const Lin& lin, Rel rel) {
  Node n;
  n.kind = Node::Atom;
  n.rel = rel;
  n.lin = canonical(lin, rel);
  n.hash = mix(hash_lin(n.lin), static_cast<size_t>(rel) + 3);
  return std::make_shared<const Node>(std::move(n));
}

RF rf_nary(Node::Kind kind, std::vector<RF> kids) {
  Node n;
  n.kind = kind;
  n.hash = kind;
  for (const auto& k : kids) n.hash = mix(n.hash, k->hash);
  n.kids = std::move(kids);
  return std::make_shared<const Node>(std::move(n));
}

RF rf_negate(const RF& f) {
  switch (f->kind) {
    case Node::T:
      return rf_false();
    case Node::F:
      return rf_true();
    case Node::Atom:
      switch (f->rel) {
        case Rel::LT:
          return rf_atom(lin_scale(f->lin, Rational(-1)), Rel::LE);
        case Rel::LE:
          return rf_atom(lin_scale(f->lin, Rational(-1)), Rel::LT);
        case Rel::EQ:
          return rf_atom(f->lin, Rel::NE);
        case Rel::NE:
          return rf_atom(f->lin, Rel::EQ);
      }
      break;
    default: {
      std::vector<RF> kids;
      for (const auto& k : f->kids) kids.push_back(rf_negate(k));
      return rf_nary(f->kind == Node::And ? Node::Or : Node::And, std::move(kids));
    }
  }
  return f;
}

// ------------------------------------------------------------- boxes

struct Bound {
  Rational v;
  bool open = false;
};

struct Interval {
  Bound lo{Rational(0), false};
  Bound hi{Rational(1), true};
  bool empty() const { return lo.v > hi.v || (lo.v == hi.v && (lo.open || hi.open)); }
};

using Box = std::map<int, Interval>;

Interval box_of(const Box& box, int s) {
  auto it = box.find(s);
  return it == box.end() ? Interval{} : it->second;
}

// Range of lin over the box.
Interval range_of(const Lin& lin, const Box& box) {
  Interval r{{lin.k, false}, {lin.k, false}};
  for (const auto& [s, v] : lin.c) {
    Interval b = box_of(box, s);
    const Bound& lo = v.sign() > 0 ? b.lo : b.hi;
    const Bound& hi = v.sign() > 0 ? b.hi : b.lo;
    r.lo.v += v * lo.v;
    r.lo.open = r.lo.open || lo.open;
    r.hi.v += v * hi.v;
    r.hi.open = r.hi.open || hi.open;
  }
  return r;
}

// 1 true, 0 false, -1 unknown.
int decide_range(const Interval& r, Rel rel) {
  bool pos = r.lo.v > Rational(0) || (r.lo.v.is_zero() && r.lo.open);
  bool nonneg = r.lo.v >= Rational(0);
  bool neg = r.hi.v < Rational(0) || (r.hi.v.is_zero() && r.hi.open);
  bool nonpos = r.hi.v <= Rational(0);
  switch (rel) {
    case Rel::LT:
      if (neg) return 1;
      if (nonneg) return 0;
      return -1;
    case Rel::LE:
      if (nonpos) return 1;
      if (pos) return 0;
      return -1;
    case Rel::EQ:
      if (pos || neg) return 0;
      if (r.lo.v.is_zero() && r.hi.v.is_zero()) return 1;
      return -1;
    case Rel::NE:
      if (pos || neg) return 1;
      if (r.lo.v.is_zero() && r.hi.v.is_zero()) return 0;
      return -1;
  }
  return -1;
}

// Tightens box[s] with the single-slot atom; returns false if it empties.
bool tighten(Box& box, const RF& a) {
  const Lin& l = a->lin;
  int s = l.c.front().first;
  Rational v = l.c.front().second;
  Rational r = -l.k / v;
  Interval b = box_of(box, s);
  auto lower = [&](bool open) {
    if (r > b.lo.v || (r == b.lo.v && open && !b.lo.open)) b.lo = {r, open};
  };
  auto upper = [&](bool open) {
    if (r < b.hi.v || (r == b.hi.v && open && !b.hi.open)) b.hi = {r, open};
  };
  switch (a->rel) {
    case Rel::LT:
      if (v.sign() > 0) upper(true);
      else lower(true);
      break;
    case Rel::LE:
      if (v.sign() > 0) upper(false);
      else lower(false);
      break;
    case Rel::EQ:
      lower(false);
      upper(false);
      break;
    case Rel::NE:
      return true;
  }
  box[s] = b;
  return !b.empty();
}

// ---------------------------------------------------------- simplifier

RF simplify_rf(const RF& f, const Box& box);

RF simplify_atom(const RF& a, const Box& box) {
  int d = decide_range(range_of(a->lin, box), a->rel);
  if (d == 1) return rf_true();
  if (d == 0) return rf_false();
  return a;
}

void push_unique(std::vector<RF>& out, const RF& f) {
  for (const auto& g : out)
    if (same(g, f)) return;
  out.push_back(f);
}

RF simplify_and(const std::vector<RF>& kids_in, const Box& outer) {
  // Flatten and simplify atoms under the inherited box.
  std::vector<RF> atoms, rest;
  std::function<void(const RF&)> collect = [&](const RF& k) {
    if (k->kind == Node::And) {
      for (const auto& g : k->kids) collect(g);
    } else {
      (k->kind == Node::Atom ? atoms : rest).push_back(k);
    }
  };
  for (const auto& k : kids_in) collect(k);
  if (std::any_of(rest.begin(), rest.end(), [](const RF& k) { return k->kind == Node::F; }))
    return rf_false();
  Box box = outer;
  std::vector<RF> single, multi;
  for (const auto& a : atoms) {
    RF s = simplify_atom(a, box);
    if (s->kind == Node::F) return rf_false();
    if (s->kind == Node::T) continue;
    if (s->lin.c.size() == 1) {
      if (!tighten(box, s)) return rf_false();
      single.push_back(s);
    } else {
      multi.push_back(s);
    }
  }
  std::vector<RF> out;
  // Re-check single-slot disequalities and multi-slot atoms against the
  // tightened box; keep only the strongest single-slot bounds.
  std::map<int, std::vector<RF>> by_slot;
  for (const auto& s : single) by_slot[s->lin.c.front().first].push_back(s);
  for (auto& [slot, list] : by_slot) {
    Interval b = box_of(box, slot), o = box_of(outer, slot);
    for (const auto& s : list) {
      if (s->rel != Rel::NE) continue;
      RF t = simplify_atom(s, box);
      if (t->kind == Node::F) return rf_false();
      if (t->kind == Node::Atom) push_unique(out, t);
    }
    if (b.lo.v == b.hi.v) {
      // Pinned: one equality says it all.
      if (!(o.lo.v == o.hi.v)) push_unique(out, rf_atom(Lin{{{slot, Rational(1)}}, -b.lo.v}, Rel::EQ));
      continue;
    }
    bool lo_new = b.lo.v != o.lo.v || b.lo.open != o.lo.open;
    bool hi_new = b.hi.v != o.hi.v || b.hi.open != o.hi.open;
    if (lo_new)
      push_unique(out, rf_atom(Lin{{{slot, Rational(-1)}}, b.lo.v}, b.lo.open ? Rel::LT : Rel::LE));
    if (hi_new)
      push_unique(out, rf_atom(Lin{{{slot, Rational(1)}}, -b.hi.v}, b.hi.open ? Rel::LT : Rel::LE));
  }
  for (const auto& m : multi) {
    RF t = simplify_atom(m, box);
    if (t->kind == Node::F) return rf_false();
    if (t->kind == Node::Atom) push_unique(out, t);
  }
  bool again = false;
  for (const auto& r : rest) {
    RF t = simplify_rf(r, box);
    if (t->kind == Node::F) return rf_false();
    if (t->kind == Node::T) continue;
    // A disjunction that collapsed feeds new bounds back into the box.
    if (t->kind != Node::Or) again = true;
    if (t->kind == Node::And) {
      for (const auto& g : t->kids) push_unique(out, g);
    } else {
      push_unique(out, t);
    }
  }
  if (again) return simplify_and(out, outer);
  if (out.empty()) return rf_true();
  if (out.size() == 1) return out.front();
  return rf_nary(Node::And, std::move(out));
}

// True when the single-slot atoms among the disjuncts already cover the box.
bool covers(const std::vector<RF>& kids, const Box& box) {
  std::map<int, std::vector<RF>> by_slot;
  for (const auto& k : kids)
    if (k->kind == Node::Atom && k->lin.c.size() == 1) by_slot[k->lin.c.front().first].push_back(k);
  for (const auto& [slot, atoms] : by_slot) {
    Box b = box;
    std::vector<RF> eqs;
    bool empty = false;
    for (const auto& a : atoms) {
      RF n = rf_negate(a);
      if (n->rel == Rel::NE) eqs.push_back(a);
      else if (!tighten(b, n)) empty = true;
    }
    if (empty) return true;
    Interval i = box_of(b, slot);
    if (i.lo.v == i.hi.v)
      for (const auto& e : eqs)
        if (decide_range(range_of(e->lin, b), Rel::EQ) == 1) return true;
  }
  return false;
}

bool contains_all(const RF& big, const RF& small) {
  auto has = [&](const RF& x) {
    return std::any_of(big->kids.begin(), big->kids.end(), [&](const RF& y) { return same(x, y); });
  };
  if (small->kind == Node::And) return std::all_of(small->kids.begin(), small->kids.end(), has);
  return has(small);
}

// a | (a & b) -> a
void absorb(std::vector<RF>& kids) {
  if (kids.size() > 256) return;
  std::vector<bool> drop(kids.size(), false);
  for (size_t i = 0; i < kids.size(); ++i) {
    if (kids[i]->kind != Node::And) continue;
    for (size_t j = 0; j < kids.size() && !drop[i]; ++j)
      if (j != i && !drop[j] && contains_all(kids[i], kids[j]) &&
          !(kids[j]->kind == Node::And && kids[j]->kids.size() == kids[i]->kids.size()))
        drop[i] = true;
  }
  size_t w = 0;
  for (size_t i = 0; i < kids.size(); ++i)
    if (!drop[i]) kids[w++] = kids[i];
  kids.resize(w);
}

RF simplify_or(const std::vector<RF>& kids_in, const Box& box) {
  std::vector<RF> out;
  std::function<bool(const RF&)> add = [&](const RF& k) {
    RF t = k->kind == Node::Or ? k : simplify_rf(k, box);
    if (t->kind == Node::T) return true;
    if (t->kind == Node::F) return false;
    if (t->kind == Node::Or) {
      for (const auto& g : t->kids)
        if (add(g)) return true;
      return false;
    }
    push_unique(out, t);
    return false;
  };
  for (const auto& k : kids_in)
    if (add(k)) return rf_true();
  if (covers(out, box)) return rf_true();
  absorb(out);
  if (out.empty()) return rf_false();
  if (out.size() == 1) return out.front();
  return rf_nary(Node::Or, std::move(out));
}

RF simplify_rf(const RF& f, const Box& box) {
  switch (f->kind) {
    case Node::T:
    case Node::F:
      return f;
    case Node::Atom:
      return simplify_atom(f, box);
    case Node::And:
      return simplify_and(f->kids, box);
    case Node::Or:
      return simplify_or(f->kids, box);
  }
  return f;
}

RF simplify_rf(const RF& f) { return simplify_rf(f, Box{}); }

RF rf_and(std::vector<RF> kids) { return simplify_and(kids, Box{}); }
RF rf_or(std::vector<RF> kids) { return simplify_or(kids, Box{}); }

// Applies fn to each atom; fn returns the replacement.
template <class Fn>
RF map_rf(const RF& f, Fn&& fn) {
  switch (f->kind) {
    case Node::T:
    case Node::F:
      return f;
    case Node::Atom:
      return fn(f);
    default: {
      std::vector<RF> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(map_rf(k, fn));
      return rf_nary(f->kind, std::move(kids));
    }
  }
}

template <class Fn>
void visit_atoms(const RF& f, Fn&& fn) {
  if (f->kind == Node::Atom) {
    fn(f);
    return;
  }
  for (const auto& k : f->kids) visit_atoms(k, fn);
}

// --------------------------------------------- formula level simplify

bool ground_value(const LinearTerm& t, Rational& out) {
  if (!t.is_ground() || t.has_symbols()) return false;
  out = t.constant_part();
  return true;
}

struct Simplifier {
  // Keys stay alive through the stored source formula.
  std::unordered_map<const void*, std::pair<Formula, Formula>> memo;

  Formula run(const Formula& f) {
    if (f.is_atom()) return step(f);
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second.second;
    Formula r = step(f);
    memo.emplace(f.id(), std::make_pair(f, r));
    return r;
  }

  Formula step(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Less: {
      Rational a, b;
      if (f.lhs() == f.rhs()) return Formula::truth(false);
      if (ground_value(f.lhs(), a) && ground_value(f.rhs(), b)) return Formula::truth(a < b);
      if (ground_value(f.rhs(), b) && b.is_zero()) return Formula::truth(false);
      return f;
    }
    case Op::Eq: {
      Rational a;
      if (ground_value(f.lhs() - f.rhs(), a)) return Formula::truth(a.is_zero());
      return f;
    }
    case Op::Dn:
      if (f.lhs() == f.rhs() || f.n() == 1) return Formula::truth(true);
      return f;
    case Op::Not: {
      Formula b = run(f.body());
      if (b.op() == Op::True) return Formula::truth(false);
      if (b.op() == Op::False) return Formula::truth(true);
      if (b.op() == Op::Not) return b.body();
      return Formula::negate(b);
    }
    case Op::And:
    case Op::Or: {
      bool is_and = f.op() == Op::And;
      std::vector<Formula> kids;
      std::function<bool(const Formula&)> add = [&](const Formula& k) {
        Formula s = run(k);
        if (s.op() == (is_and ? Op::False : Op::True)) return true;
        if (s.op() == (is_and ? Op::True : Op::False)) return false;
        if (s.op() == f.op()) {
          for (const auto& g : s.kids())
            if (add(g)) return true;
          return false;
        }
        bool dup = std::any_of(kids.begin(), kids.end(), [&](const Formula& k) {
          return k.id() == s.id() || (s.is_atom() && k == s);
        });
        if (!dup) kids.push_back(s);
        return false;
      };
      for (const auto& k : f.kids())
        if (add(k)) return Formula::truth(!is_and);
      return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Op::Implies: {
      Formula a = run(f.kids()[0]);
      Formula b = run(f.kids()[1]);
      if (a.op() == Op::False || b.op() == Op::True) return Formula::truth(true);
      if (a.op() == Op::True) return b;
      if (b.op() == Op::False) return run(Formula::negate(a));
      return Formula::implies(a, b);
    }
    case Op::Exists:
    case Op::Forall: {
      Formula b = run(f.body());
      if (b.op() == Op::True || b.op() == Op::False) return b;
      return f.op() == Op::Exists ? Formula::exists(f.var(), b) : Formula::forall(f.var(), b);
    }
  }
  return f;
}
};

// ------------------------------------------------------------- context

class Engine {
 public:
  QEStats stats;

  int slot(const LinearTerm& t) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    int s = static_cast<int>(terms_.size());
    terms_.push_back(t);
    index_.emplace(t, s);
    return s;
  }
  const LinearTerm& term(int s) const { return terms_[s]; }

  // Real value of a mod-1 term: a constant, or its slot.
  Lin value(const LinearTerm& t) {
    if (t.has_symbols()) throw std::invalid_argument("symbolic rho or f_n term in QE input");
    if (t.is_ground()) return lin_const(t.constant_part());
    return lin_slot(slot(t));
  }

  RF convert(const Formula& f, bool neg) {
    switch (f.op()) {
      case Op::True:
        return neg ? rf_false() : rf_true();
      case Op::False:
        return neg ? rf_true() : rf_false();
      case Op::Less: {
        ++stats.atoms_in;
        Lin l = lin_add(value(f.lhs()), lin_scale(value(f.rhs()), Rational(-1)));
        RF a = neg ? rf_atom(lin_scale(l, Rational(-1)), Rel::LE) : rf_atom(l, Rel::LT);
        return simplify_rf(a);
      }
      case Op::Eq: {
        ++stats.atoms_in;
        // u = 0 mod 1 iff val(u0) = 1 - c, with c the constant of u
        LinearTerm u = f.lhs() - f.rhs();
        Rational c = u.constant_part();
        Lin l = value(u - LinearTerm::constant(c));
        if (!c.is_zero()) l = lin_add(l, lin_const(c - Rational(1)));
        RF a = rf_atom(l, neg ? Rel::NE : Rel::EQ);
        return simplify_rf(a);
      }
      case Op::Dn:
        ++stats.atoms_in;
        ++stats.dn_rewritten;
        return neg ? rf_false() : rf_true();
      case Op::Not:
        return convert(f.body(), !neg);
      case Op::And:
      case Op::Or: {
        std::vector<RF> kids;
        for (const auto& k : f.kids()) kids.push_back(convert(k, neg));
        bool as_and = (f.op() == Op::And) != neg;
        return as_and ? rf_and(std::move(kids)) : rf_or(std::move(kids));
      }
      case Op::Implies: {
        RF a = convert(f.kids()[0], !neg);
        RF b = convert(f.kids()[1], neg);
        return neg ? rf_and({a, b}) : rf_or({a, b});
      }
      case Op::Exists: {
        RF r = open_single(eliminate(f.var(), convert(f.body(), false)));
        return neg ? simplify_rf(rf_negate(r)) : r;
      }
      case Op::Forall: {
        RF r = open_single(eliminate(f.var(), convert(f.body(), true)));
        return neg ? r : simplify_rf(rf_negate(r));
      }
    }
    return rf_true();
  }

  bool mentions(const RF& f, const std::string& v) {
    bool hit = false;
    visit_atoms(f, [&](const RF& a) {
      for (const auto& [s, c] : a->lin.c)
        if (!hit && terms_[s].has_var(v)) hit = true;
    });
    return hit;
  }

  // exists v. f
  RF eliminate(const std::string& v, const RF& f) {
    if (f->kind == Node::Or) {
      std::vector<RF> parts;
      for (const auto& k : f->kids) parts.push_back(eliminate(v, k));
      return rf_or(std::move(parts));
    }
    if (!mentions(f, v)) return f;
    if (f->kind == Node::And) {
      std::vector<RF> keep, inner;
      for (const auto& k : f->kids) (mentions(k, v) ? inner : keep).push_back(k);
      if (!keep.empty()) {
        keep.push_back(eliminate_core(v, rf_and(std::move(inner))));
        return rf_and(std::move(keep));
      }
    }
    return eliminate_core(v, f);
  }

 private:
  struct Opened {
    int slot;
    int64_t k;
    Lin rest;  // value of the term with v removed
    int64_t lo, hi;
  };

  RF eliminate_core(const std::string& v, const RF& f) {
    int zs = slot(LinearTerm::var(v));
    std::set<int> seen;
    std::vector<Opened> open;
    visit_atoms(f, [&](const RF& a) {
      for (const auto& [s, c] : a->lin.c) {
        if (s == zs || seen.count(s) || !terms_[s].has_var(v)) continue;
        seen.insert(s);
        const LinearTerm t = terms_[s];
        int64_t k = t.coeff(v);
        LinearTerm r = t.without_var(v);
        bool ground = r.is_ground();
        Lin rest = value(r);
        // k z + rest ranges over [min, sup); carries are the floors in there.
        Rational rmin = ground ? r.constant_part() : Rational(0);
        Rational rsup = ground ? r.constant_part() : Rational(1);
        Rational mn = Rational(std::min<int64_t>(k, 0)) + rmin;
        Rational sup = Rational(std::max<int64_t>(k, 0)) + rsup;
        bool sup_attained = k < 0 && ground;
        int64_t hi = sup_attained ? sup.floor() : sup.ceil() - 1;
        open.push_back(Opened{s, k, rest, mn.floor(), hi});
      }
    });
    // Ground remainders first: they pin z to intervals and prune early.
    std::stable_sort(open.begin(), open.end(), [](const Opened& a, const Opened& b) {
      return a.rest.c.size() < b.rest.c.size();
    });
    RF base = rf_and({f, rf_atom(lin_slot(zs, Rational(-1)), Rel::LE),
                      rf_atom(lin_add(lin_slot(zs), lin_const(Rational(-1))), Rel::LT)});
    std::vector<RF> results;
    expand(zs, open, 0, base, results, true);
    return rf_or(std::move(results));
  }

 public:
  // Rewrites slots of one-variable terms k x + c through the slot of x, so
  // that their mutual constraints become plain bounds on x.
  RF open_single(const RF& f) {
    std::map<std::string, std::vector<Opened>> by_var;
    std::set<int> seen;
    visit_atoms(f, [&](const RF& a) {
      for (const auto& [s, c] : a->lin.c) {
        if (seen.count(s)) continue;
        seen.insert(s);
        const LinearTerm t = terms_[s];
        if (t.vars().size() != 1) continue;
        auto [v, k] = *t.vars().begin();
        Rational c0 = t.constant_part();
        if (k == 1 && c0.is_zero()) continue;
        Rational mn = Rational(std::min<int64_t>(k, 0)) + c0;
        Rational sup = Rational(std::max<int64_t>(k, 0)) + c0;
        int64_t hi = k < 0 ? sup.floor() : sup.ceil() - 1;
        by_var[v].push_back(Opened{s, k, lin_const(c0), mn.floor(), hi});
      }
    });
    RF r = f;
    for (const auto& [v, open] : by_var) {
      std::vector<RF> results;
      expand(slot(LinearTerm::var(v)), open, 0, r, results, false);
      r = rf_or(std::move(results));
    }
    return r;
  }

 private:
  void expand(int zs, const std::vector<Opened>& open, size_t i, const RF& f, std::vector<RF>& out, bool vs) {
    if (f->kind == Node::F) return;
    if (i == open.size()) {
      out.push_back(vs ? substitute_points(zs, f) : f);
      return;
    }
    const Opened& o = open[i];
    for (int64_t m = o.lo; m <= o.hi; ++m) {
      ++stats.carry_cases;
      // value = k z + rest - m, constrained to [0, 1)
      Lin e = lin_add(lin_add(lin_slot(zs, Rational(o.k)), o.rest), lin_const(Rational(-m)));
      RF g = map_rf(f, [&](const RF& a) {
        Rational c = a->lin.coef(o.slot);
        if (c.is_zero()) return a;
        return rf_atom(lin_add(lin_drop(a->lin, o.slot), lin_scale(e, c)), a->rel);
      });
      RF ranged = rf_and({g, rf_atom(lin_scale(e, Rational(-1)), Rel::LE),
                          rf_atom(lin_add(e, lin_const(Rational(-1))), Rel::LT)});
      expand(zs, open, i + 1, ranged, out, vs);
    }
  }

  // Virtual substitution of the test points for slot zs.
  RF substitute_points(int zs, const RF& g) {
    if (g->kind == Node::F || g->kind == Node::T) return g;
    // The simplifier drops 0 <= z < 1 as implied; the test points need it.
    RF f = rf_nary(Node::And, {g, rf_atom(lin_slot(zs, Rational(-1)), Rel::LE),
                               rf_atom(lin_add(lin_slot(zs), lin_const(Rational(-1))), Rel::LT)});
    struct Point {
      Lin e;
      bool eps;
    };
    std::vector<Point> lower, upper;
    auto add = [](std::vector<Point>& v, Point p) {
      for (const auto& q : v)
        if (q.eps == p.eps && q.e == p.e) return;
      v.push_back(std::move(p));
    };
    visit_atoms(f, [&](const RF& a) {
      Rational c = a->lin.coef(zs);
      if (c.is_zero()) return;
      Lin e = lin_scale(lin_drop(a->lin, zs), -Rational(1) / c);
      switch (a->rel) {
        case Rel::EQ:
          add(lower, {e, false});
          add(upper, {e, false});
          break;
        case Rel::NE:
          add(lower, {e, true});
          add(upper, {e, true});
          break;
        case Rel::LE:
          add(c.sign() < 0 ? lower : upper, {e, false});
          break;
        case Rel::LT:
          add(c.sign() < 0 ? lower : upper, {e, true});
          break;
      }
    });
    if (lower.empty() && upper.empty()) return f;
    bool use_lower = lower.size() <= upper.size();
    const auto& pts = use_lower ? lower : upper;
    // The conjunct 0 <= z < 1 kills the infinite test points.
    std::vector<RF> parts;
    for (const auto& p : pts) {
      ++stats.test_points;
      note_denominators(p.e);
      RF g = map_rf(f, [&](const RF& a) -> RF {
        Rational c = a->lin.coef(zs);
        if (c.is_zero()) return a;
        Lin l = lin_add(lin_drop(a->lin, zs), lin_scale(p.e, c));
        if (!p.eps) return rf_atom(l, a->rel);
        // z = e + eps (lower) or e - eps (upper): the sign of c*eps decides.
        bool moves_up = (c.sign() > 0) == use_lower;
        switch (a->rel) {
          case Rel::EQ:
            return rf_false();
          case Rel::NE:
            return rf_true();
          case Rel::LT:
          case Rel::LE:
            return rf_atom(l, moves_up ? Rel::LT : Rel::LE);
        }
        return a;
      });
      parts.push_back(simplify_rf(g));
      if (parts.back()->kind == Node::T) break;
    }
    return rf_or(std::move(parts));
  }

  void note_denominators(const Lin& e) {
    if (stats.point_denominators == 0) return;
    try {
      stats.point_denominators = checked_lcm(stats.point_denominators, e.k.den());
      for (const auto& [s, c] : e.c) stats.point_denominators = checked_lcm(stats.point_denominators, c.den());
    } catch (const OverflowError&) {
      stats.point_denominators = 0;
    }
  }

  std::vector<LinearTerm> terms_;
  std::map<LinearTerm, int> index_;

  using Parts = std::vector<std::pair<LinearTerm, int64_t>>;
  std::unordered_map<RF, Formula> back_memo_;
  std::map<std::pair<Parts, int64_t>, Formula> at_least_memo_;
  Simplifier simplifier_;

 public:
  // ------------------------------------------------------ map back

  Formula map_back(const RF& f) {
    auto it = back_memo_.find(f);
    if (it != back_memo_.end()) return it->second;
    Formula r = map_back_node(f);
    back_memo_.emplace(f, r);
    return r;
  }

  Formula map_back_node(const RF& f) {
    switch (f->kind) {
      case Node::T:
        return Formula::truth(true);
      case Node::F:
        return Formula::truth(false);
      case Node::Atom:
        return atom_back(f->lin, f->rel);
      default: {
        std::vector<Formula> kids;
        for (const auto& k : f->kids) kids.push_back(map_back(k));
        return f->kind == Node::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      }
    }
  }

  Formula atom_back(const Lin& lin, Rel rel) {
    std::vector<std::pair<LinearTerm, int64_t>> parts;
    for (const auto& [s, v] : lin.c) {
      if (!v.is_integer()) throw std::logic_error("non-canonical atom");
      parts.emplace_back(terms_[s], v.num());
    }
    return compare_sum(parts, rel, -lin.k);
  }

  // sum b_j val(T_j) rel c, as a mod-1 formula.
  Formula compare_sum(std::vector<std::pair<LinearTerm, int64_t>> parts, Rel rel, const Rational& c) {
    if (rel == Rel::NE) return Formula::negate(compare_sum(parts, Rel::EQ, c));
    if (parts.empty()) {
      switch (rel) {
        case Rel::LT: return Formula::truth(Rational(0) < c);
        case Rel::LE: return Formula::truth(Rational(0) <= c);
        default: return Formula::truth(c.is_zero());
      }
    }
    if (parts.size() == 1) {
      auto [t, b] = parts.front();
      Rational r = c / Rational(b);
      if (rel == Rel::EQ) return in_range(t, r, true, r, true);
      bool strict = rel == Rel::LT;
      if (b > 0) return in_range(t, Rational(-1), false, r, !strict);
      return in_range(t, r, !strict, Rational(2), false);
    }
    if (parts.size() == 2 && parts[0].second == -parts[1].second) {
      int64_t b = parts[0].second;
      const LinearTerm& t1 = b > 0 ? parts[0].first : parts[1].first;
      const LinearTerm& t2 = b > 0 ? parts[1].first : parts[0].first;
      return compare_difference(t1, t2, rel, c / Rational(b > 0 ? b : -b));
    }
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
      return std::abs(a.second) < std::abs(b.second);
    });
    LinearTerm v;
    for (const auto& [t, b] : parts) v = v + t.scaled(b);
    int64_t q = c.floor();
    Rational theta = c - Rational(q);
    Formula below_q = Formula::negate(at_least(parts, q));
    Formula below_q1 = Formula::negate(at_least(parts, q + 1));
    LinearTerm th = LinearTerm::constant(theta);
    switch (rel) {
      case Rel::LT:
        if (theta.is_zero()) return below_q;
        return Formula::disj({below_q, Formula::conj({below_q1, Formula::less(v, th)})});
      case Rel::LE:
        return Formula::disj({below_q, Formula::conj({below_q1, Formula::leq(v, th)})});
      default:
        return Formula::conj({at_least(parts, q), below_q1, Formula::eq(v, th)});
    }
  }

  // val(t) in the interval with the given ends, read inside [0, 1).
  static Formula in_range(const LinearTerm& t, const Rational& lo, bool lo_closed, const Rational& hi,
                          bool hi_closed) {
    std::vector<Formula> parts;
    Rational zero(0), one(1);
    if (lo > hi || (lo == hi && !(lo_closed && hi_closed))) return Formula::truth(false);
    if (lo == hi) {
      if (lo < zero || lo >= one) return Formula::truth(false);
      return Formula::eq(t, LinearTerm::constant(lo));
    }
    // lower end
    if (lo >= one) return Formula::truth(false);
    if (lo > zero || (lo == zero && !lo_closed)) {
      Formula below = Formula::less(t, LinearTerm::constant(lo));
      if (lo_closed) parts.push_back(Formula::negate(below));
      else parts.push_back(Formula::less(LinearTerm::constant(lo), t));
    }
    // upper end
    if (hi < zero || (hi == zero && !hi_closed)) return Formula::truth(false);
    if (hi < one) {
      if (hi_closed) parts.push_back(Formula::leq(t, LinearTerm::constant(hi)));
      else parts.push_back(Formula::less(t, LinearTerm::constant(hi)));
    }
    return Formula::conj(std::move(parts));
  }

  // val(t1) - val(t2) rel d
  static Formula compare_difference(const LinearTerm& t1, const LinearTerm& t2, Rel rel, const Rational& d) {
    Rational one(1);
    switch (rel) {
      case Rel::LT:
        if (d <= -one) return Formula::truth(false);
        if (d >= one) return Formula::truth(true);
        if (d.is_zero()) return Formula::less(t1, t2);
        if (d.sign() > 0)
          return Formula::disj({Formula::negate(Formula::less(t2, LinearTerm::constant(one - d))),
                                Formula::less(t1, t2 + LinearTerm::constant(d))});
        return Formula::conj({Formula::less(t1, LinearTerm::constant(one + d)),
                              Formula::less(t1 + LinearTerm::constant(-d), t2)});
      case Rel::LE:
        return Formula::negate(compare_difference(t2, t1, Rel::LT, -d));
      case Rel::EQ:
        if (d <= -one || d >= one) return Formula::truth(false);
        if (d.is_zero()) return Formula::eq(t1, t2);
        if (d.sign() > 0)
          return Formula::conj({Formula::less(t2, LinearTerm::constant(one - d)),
                                Formula::eq(t1, t2 + LinearTerm::constant(d))});
        return Formula::conj({Formula::less(t1, LinearTerm::constant(one + d)),
                              Formula::eq(t1 + LinearTerm::constant(-d), t2)});
      case Rel::NE:
        return Formula::negate(compare_difference(t1, t2, Rel::EQ, d));
    }
    return Formula::truth(false);
  }

  // sum b_j val(T_j) >= M for an integer M.
  Formula at_least(const Parts& parts, int64_t m) {
    auto key = std::make_pair(parts, m);
    auto it = at_least_memo_.find(key);
    if (it != at_least_memo_.end()) return it->second;
    Formula r = at_least_node(parts, m);
    at_least_memo_.emplace(std::move(key), r);
    return r;
  }

  Formula at_least_node(const Parts& parts, int64_t m) {
    int64_t neg = 0, pos = 0;
    for (const auto& [t, b] : parts) (b < 0 ? neg : pos) += b;
    if (m <= neg) return Formula::truth(true);
    if (pos > 0 ? m >= pos : m > 0) return Formula::truth(false);
    if (parts.size() == 1) {
      auto [t, b] = parts.front();
      Rational r(m, b);
      if (b > 0) return in_range(t, r, true, Rational(2), false);
      return in_range(t, Rational(-1), false, r, true);
    }
    const auto& [t1, b1] = parts.front();
    std::vector<std::pair<LinearTerm, int64_t>> rest(parts.begin() + 1, parts.end());
    LinearTerm w = t1.scaled(b1), v = w;
    for (const auto& [t, b] : rest) v = v + t.scaled(b);
    Formula carry = Formula::less(v, w);
    std::vector<Formula> cases;
    int64_t plo = b1 > 0 ? 0 : b1, phi = b1 > 0 ? b1 - 1 : 0;
    for (int64_t p = plo; p <= phi; ++p) {
      Formula piece = b1 > 0 ? in_range(t1, Rational(p, b1), true, Rational(p + 1, b1), false)
                             : in_range(t1, Rational(p + 1, b1), false, Rational(p, b1), true);
      Formula sub = Formula::disj({at_least(rest, m - p), Formula::conj({carry, at_least(rest, m - p - 1)})});
      cases.push_back(Formula::conj({piece, sub}));
    }
    return simplifier_.run(Formula::disj(std::move(cases)));
  }

  // ------------------------------------------------------ evaluation

  bool eval(const RF& f, const std::vector<Rational>& slot_values) const {
    switch (f->kind) {
      case Node::T:
        return true;
      case Node::F:
        return false;
      case Node::Atom: {
        Rational v = f->lin.k;
        for (const auto& [s, c] : f->lin.c) v += c * slot_values[s];
        switch (f->rel) {
          case Rel::LT: return v < Rational(0);
          case Rel::LE: return v <= Rational(0);
          case Rel::EQ: return v.is_zero();
          case Rel::NE: return !v.is_zero();
        }
        return false;
      }
      case Node::And:
        for (const auto& k : f->kids)
          if (!eval(k, slot_values)) return false;
        return true;
      case Node::Or:
        for (const auto& k : f->kids)
          if (eval(k, slot_values)) return true;
        return false;
    }
    return false;
  }

  // Slot values at a point (variables as rationals in [0,1)).
  std::vector<Rational> slot_values(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> out;
    for (const auto& t : terms_) {
      Rational v = t.constant_part();
      for (const auto& [x, k] : t.vars()) {
        auto it = point.find(x);
        if (it != point.end()) v += Rational(k) * it->second;
      }
      out.push_back(v.frac());  // slots outside the point are never read
    }
    return out;
  }

  size_t slot_count() const { return terms_.size(); }
};

int64_t count_formula_atoms(const Formula& f, std::unordered_map<const void*, int64_t>& memo) {
  if (f.is_atom()) return f.op() == Op::True || f.op() == Op::False ? 0 : 1;
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  int64_t n = 0;
  for (const auto& k : f.kids()) n = std::min<int64_t>(n + count_formula_atoms(k, memo), int64_t(1) << 60);
  memo.emplace(f.id(), n);
  return n;
}

int64_t count_formula_atoms(const Formula& f) {
  std::unordered_map<const void*, int64_t> memo;
  return count_formula_atoms(f, memo);
}

}  // namespace

Formula simplify(const Formula& f) { return Simplifier().run(f); }

// ---------------------------------------------------------- carry expand

struct CarryExpansion::Impl {
  Engine engine;
  RF formula;
  std::vector<std::string> slot_names;
};

bool CarryExpansion::holds(const std::map<std::string, Rational>& point) const {
  std::vector<Rational> vals(impl->engine.slot_count());
  for (size_t s = 0; s < impl->slot_names.size(); ++s)
    if (!impl->slot_names[s].empty()) vals[s] = point.at(impl->slot_names[s]);
  return impl->engine.eval(impl->formula, vals);
}

namespace {

std::string lin_text(const Lin& l, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [s, v] : l.c) {
    bool neg = v.sign() < 0;
    Rational mag = neg ? -v : v;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (mag != Rational(1)) out += mag.str() + "*";
    out += names[s];
  }
  if (!l.k.is_zero() || out.empty()) {
    bool neg = l.k.sign() < 0;
    Rational mag = neg ? -l.k : l.k;
    if (out.empty()) out = l.k.str();
    else out += (neg ? " - " : " + ") + mag.str();
  }
  return out;
}

std::string rf_text(const RF& f, const std::vector<std::string>& names, bool top) {
  switch (f->kind) {
    case Node::T:
      return "true";
    case Node::F:
      return "false";
    case Node::Atom: {
      static const char* rel[] = {" < 0", " <= 0", " = 0", " != 0"};
      return lin_text(f->lin, names) + rel[static_cast<int>(f->rel)];
    }
    default: {
      std::string out, sep = f->kind == Node::And ? " & " : " | ";
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += sep;
        out += rf_text(f->kids[i], names, false);
      }
      return top ? out : "(" + out + ")";
    }
  }
}

}  // namespace

CarryExpansion carry_expand(const Formula& f) {
  if (!f.is_quantifier_free()) throw std::invalid_argument("carry_expand needs a quantifier-free formula");
  auto impl = std::make_shared<CarryExpansion::Impl>();
  Engine& e = impl->engine;
  RF r = e.convert(f, false);
  CarryExpansion out;
  // Open every non-variable slot into its variables with a carry.
  std::vector<int> to_open;
  visit_atoms(r, [&](const RF& a) {
    for (const auto& [s, c] : a->lin.c) {
      const LinearTerm& t = e.term(s);
      bool plain = t.vars().size() == 1 && t.vars().begin()->second == 1 && t.constant_part().is_zero();
      if (!plain && std::find(to_open.begin(), to_open.end(), s) == to_open.end()) to_open.push_back(s);
    }
  });
  for (int s : to_open) {
    LinearTerm t = e.term(s);
    Lin body = lin_const(t.constant_part());
    int64_t neg = 0, pos = 0;
    for (const auto& [v, k] : t.vars()) {
      body = lin_add(body, lin_slot(e.slot(LinearTerm::var(v)), Rational(k)));
      (k < 0 ? neg : pos) += k;
    }
    Rational mn = Rational(neg) + t.constant_part();
    Rational sup = Rational(pos) + t.constant_part();
    int64_t lo = mn.floor(), hi = pos > 0 ? sup.ceil() - 1 : sup.floor();
    out.carries.push_back({t, lo, hi});
    std::vector<RF> cases;
    for (int64_t m = lo; m <= hi; ++m) {
      Lin ex = lin_add(body, lin_const(Rational(-m)));
      RF g = map_rf(r, [&](const RF& a) {
        Rational c = a->lin.coef(s);
        if (c.is_zero()) return a;
        return rf_atom(lin_add(lin_drop(a->lin, s), lin_scale(ex, c)), a->rel);
      });
      cases.push_back(rf_and({rf_atom(lin_scale(ex, Rational(-1)), Rel::LE),
                              rf_atom(lin_add(ex, lin_const(Rational(-1))), Rel::LT), g}));
    }
    r = rf_or(std::move(cases));
  }
  impl->formula = r;
  impl->slot_names.resize(e.slot_count());
  for (size_t s = 0; s < e.slot_count(); ++s) {
    const LinearTerm& t = e.term(static_cast<int>(s));
    if (t.vars().size() == 1 && t.vars().begin()->second == 1 && t.constant_part().is_zero())
      impl->slot_names[s] = t.vars().begin()->first;
  }
  out.text = rf_text(r, impl->slot_names, true);
  out.impl = impl;
  return out;
}

// ------------------------------------------------------------ eliminate

QEResult eliminate(const Formula& f, QEMode mode) {
  Engine e;
  QEResult res;
  res.input = f;
  res.mode = mode;
  RF r = e.convert(normalize(f), false);
  Formula out = simplify(e.map_back(r));
  if (mode == QEMode::PureL) out = purge_constants(out);
  res.stats = e.stats;
  res.stats.atoms_out = count_formula_atoms(out);
  res.output = out;
  return res;
}

QEResult eliminate(const Formula& f, const GroupDescriptor& m, QEMode mode) {
  if (!m.is_full()) throw UnsupportedModel();
  return eliminate(f, mode);
}

// ---------------------------------------------------------------- purge

namespace {

// Thresholds with denominator up to this use the subdivision tables.
constexpr int64_t kTableLimit = 6;

struct Purger {
  std::map<std::pair<Rational, LinearTerm>, Formula> below_memo, theta_memo;
  std::unordered_map<const void*, std::pair<Formula, Formula>> memo;

  // val(d) < e for a constant-free term d.
  Formula below(const LinearTerm& d, const Rational& e) {
    if (e <= Rational(0)) return Formula::truth(false);
    if (e >= Rational(1)) return Formula::truth(true);
    if (d.is_zero()) return Formula::truth(true);
    auto key = std::make_pair(e, d);
    auto it = below_memo.find(key);
    if (it != below_memo.end()) return it->second;
    Formula r = e.den() <= kTableLimit ? phi_at(e, d) : farey_below(d, e);
    below_memo.emplace(std::move(key), r);
    return r;
  }

  // With Farey parents a/b < j/n < c/e (b + e = n, c*b - a*e = 1), the
  // only fraction of denominator <= n strictly between the parents is j/n,
  // and there val(b*d) + val(e*d) carries exactly when val(d) >= j/n.
  Formula farey_below(const LinearTerm& d, const Rational& x) {
    int64_t j = x.num(), n = x.den();
    int64_t b = 1;
    while ((static_cast<__int128>(j) * b) % n != 1) ++b;
    int64_t a = static_cast<int64_t>((static_cast<__int128>(j) * b - 1) / n);
    Rational left(a, b), right(j - a, n - b);
    Formula carry = Formula::less(d.scaled(n), d.scaled(b));
    return Formula::disj({below(d, left), equal(d, left),
                          Formula::conj({below(d, right), Formula::negate(carry)})});
  }

  // val(d) = e
  Formula equal(const LinearTerm& d, const Rational& e) {
    if (e < Rational(0) || e >= Rational(1)) return Formula::truth(false);
    if (e.is_zero()) return Formula::eq(d, LinearTerm());
    auto key = std::make_pair(e, d);
    auto it = theta_memo.find(key);
    if (it != theta_memo.end()) return it->second;
    Formula r = theta_at(e, d);
    theta_memo.emplace(std::move(key), r);
    return r;
  }

  Formula less(const LinearTerm& s, const LinearTerm& t) {
    Rational cs = s.constant_part(), ct = t.constant_part();
    if (cs.is_zero() && ct.is_zero()) return Formula::less(s, t);
    LinearTerm s0 = s - LinearTerm::constant(cs), t0 = t - LinearTerm::constant(ct);
    LinearTerm diff = s0 - t0;
    Formula order = Formula::less(s0, t0);
    std::vector<Formula> cases;
    for (int ws = 0; ws <= (cs.is_zero() ? 0 : 1); ++ws) {
      for (int wt = 0; wt <= (ct.is_zero() ? 0 : 1); ++wt) {
        std::vector<Formula> parts;
        // ws = 1 iff val(s0) >= 1 - cs
        if (!cs.is_zero()) {
          Formula wrap = Formula::negate(below(s0, Rational(1) - cs));
          parts.push_back(ws ? wrap : Formula::negate(wrap));
        }
        if (!ct.is_zero()) {
          Formula wrap = Formula::negate(below(t0, Rational(1) - ct));
          parts.push_back(wt ? wrap : Formula::negate(wrap));
        }
        // val(s0) - val(t0) < d, and val(s0) - val(t0) = val(diff) - [s0 < t0]
        Rational d = ct - cs + Rational(ws - wt);
        if (t0.is_zero()) {
          parts.push_back(below(s0, d));
        } else if (s0.is_zero()) {
          // -val(t0) < d  <=>  val(t0) > -d
          if (-d < Rational(0)) parts.push_back(Formula::truth(true));
          else parts.push_back(Formula::negate(Formula::disj({below(t0, -d), equal(t0, -d)})));
        } else {
          parts.push_back(Formula::disj({Formula::conj({order, below(diff, d + Rational(1))}),
                                         Formula::conj({Formula::negate(order), below(diff, d)})}));
        }
        cases.push_back(Formula::conj(std::move(parts)));
      }
    }
    return Formula::disj(std::move(cases));
  }

  Formula eq(const LinearTerm& s, const LinearTerm& t) {
    LinearTerm u = s - t;
    Rational c = u.constant_part();
    LinearTerm u0 = u - LinearTerm::constant(c);
    if (c.is_zero())
      return Formula::eq(s - LinearTerm::constant(s.constant_part()), t - LinearTerm::constant(t.constant_part()));
    if (u0.is_zero()) return Formula::truth(false);
    // val(u0) = 1 - c
    return equal(u0, Rational(1) - c);
  }

  Formula run(const Formula& f) {
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second.second;
    Formula r = step(f);
    memo.emplace(f.id(), std::make_pair(f, r));
    return r;
  }

  Formula step(const Formula& f) {
    switch (f.op()) {
      case Op::Less:
        if (f.lhs().has_symbols() || f.rhs().has_symbols())
          throw std::invalid_argument("symbolic term in purge input");
        return less(f.lhs(), f.rhs());
      case Op::Eq:
        return eq(f.lhs(), f.rhs());
      case Op::Dn:
        return Formula::truth(true);
      case Op::Not:
        return Formula::negate(run(f.body()));
      case Op::And:
      case Op::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.kids()) kids.push_back(run(k));
        return f.op() == Op::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      }
      case Op::Implies:
        return Formula::implies(run(f.kids()[0]), run(f.kids()[1]));
      default:
        return f;
    }
  }
};

}  // namespace

Formula purge_constants(const Formula& f) {
  if (!f.is_quantifier_free()) throw std::invalid_argument("purge_constants needs a quantifier-free formula");
  return simplify(Purger().run(f));
}

// --------------------------------------------------------------- decide

namespace {

// Points where the truth of r (over slots mentioning only v) can change,
// plus points between them.
std::vector<Rational> critical_points(const Engine& e, const RF& r, const std::string& v) {
  std::set<Rational> pts{Rational(0)};
  std::set<int> slots;
  visit_atoms(r, [&](const RF& a) {
    for (const auto& [s, c] : a->lin.c) slots.insert(s);
  });
  // Carry breakpoints of each slot: k v + c crosses an integer.
  for (int s : slots) {
    const LinearTerm& t = e.term(s);
    int64_t k = t.coeff(v);
    if (k == 0) continue;
    for (int64_t m = -std::abs(k) - 1; m <= std::abs(k) + 1; ++m) {
      Rational x = (Rational(m) - t.constant_part()) / Rational(k);
      if (x >= Rational(0) && x < Rational(1)) pts.insert(x);
    }
  }
  // Within each piece every atom is affine in v: add its root.
  std::vector<Rational> base(pts.begin(), pts.end());
  base.push_back(Rational(1));
  for (size_t i = 0; i + 1 < base.size(); ++i) {
    Rational mid = (base[i] + base[i + 1]) / Rational(2);
    visit_atoms(r, [&](const RF& a) {
      Rational slope, offset = a->lin.k;
      for (const auto& [s, c] : a->lin.c) {
        const LinearTerm& t = e.term(s);
        int64_t k = t.coeff(v);
        Rational val_mid = (Rational(k) * mid + t.constant_part());
        int64_t carry = val_mid.floor();
        slope += c * Rational(k);
        offset += c * (t.constant_part() - Rational(carry));
      }
      if (slope.is_zero()) return;
      Rational x = -offset / slope;
      if (x > base[i] && x < base[i + 1]) pts.insert(x);
    });
  }
  std::vector<Rational> sorted(pts.begin(), pts.end());
  std::vector<Rational> out;
  for (size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    Rational next = i + 1 < sorted.size() ? sorted[i + 1] : Rational(1);
    out.push_back((sorted[i] + next) / Rational(2));
  }
  return out;
}

bool ground_truth(const Formula& f) {
  Formula s = simplify(f);
  if (s.op() == Op::True) return true;
  if (s.op() == Op::False) return false;
  return evaluate(s, GroupDescriptor::full(), {});
}

}  // namespace

Decision decide(const Formula& sentence) {
  Formula f = normalize(sentence);
  if (!f.is_sentence()) throw std::invalid_argument("decide needs a sentence");
  Decision d;
  d.value = ground_truth(eliminate(f).output);
  if (!d.value || f.op() != Op::Exists) return d;
  Engine e;
  RF body = e.convert(f.body(), false);
  for (const Rational& x : critical_points(e, body, f.var())) {
    if (!e.eval(body, e.slot_values({{f.var(), x}}))) continue;
    Formula inst = substitute(f.body(), f.var(), LinearTerm::constant(x));
    if (ground_truth(eliminate(inst).output)) {
      d.witness = x;
      d.witness_var = f.var();
    }
    break;
  }
  return d;
}

}  // namespace decimals
