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

#include "decimals/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace decimals {

// ---------------------------------------------------------------- terms

namespace {

std::strong_ordering cmp_div(const DivPart& a, const DivPart& b) {
  if (auto c = a.n <=> b.n; c != 0) return c;
  return *a.arg <=> *b.arg;
}

}  // namespace

LinearTerm LinearTerm::var(const std::string& name, int64_t k) {
  LinearTerm t;
  if (k != 0) t.vars_[name] = k;
  return t;
}

LinearTerm LinearTerm::constant(const Rational& c) {
  LinearTerm t;
  t.c_ = c.frac();
  return t;
}

LinearTerm LinearTerm::rho(int64_t n, int64_t k) {
  LinearTerm t;
  if (k != 0) t.rhos_[n] = k;
  return t;
}

LinearTerm LinearTerm::div(int64_t n, const LinearTerm& arg, int64_t k) {
  if (n < 1) throw std::invalid_argument("f_n needs n >= 1");
  if (n == 1) return arg.scaled(k);
  LinearTerm t;
  t.add_div(DivPart{n, std::make_shared<const LinearTerm>(arg)}, k);
  return t;
}

void LinearTerm::add_div(const DivPart& d, int64_t k) {
  if (k == 0) return;
  auto it = std::lower_bound(divs_.begin(), divs_.end(), d,
                             [](const auto& e, const DivPart& key) { return cmp_div(e.first, key) < 0; });
  if (it != divs_.end() && cmp_div(it->first, d) == 0) {
    it->second += k;
    if (it->second == 0) divs_.erase(it);
  } else {
    divs_.insert(it, {d, k});
  }
}

int64_t LinearTerm::coeff(const std::string& v) const {
  auto it = vars_.find(v);
  return it == vars_.end() ? 0 : it->second;
}

bool LinearTerm::has_var(const std::string& v) const {
  if (vars_.count(v)) return true;
  for (const auto& [d, k] : divs_)
    if (d.arg->has_var(v)) return true;
  return false;
}

bool LinearTerm::is_ground() const {
  if (!vars_.empty()) return false;
  for (const auto& [d, k] : divs_)
    if (!d.arg->is_ground()) return false;
  return true;
}

void LinearTerm::collect_vars(std::set<std::string>& out) const {
  for (const auto& [v, k] : vars_) out.insert(v);
  for (const auto& [d, k] : divs_) d.arg->collect_vars(out);
}

LinearTerm LinearTerm::operator+(const LinearTerm& o) const {
  LinearTerm t = *this;
  for (const auto& [v, k] : o.vars_) {
    int64_t& c = t.vars_[v];
    c += k;
    if (c == 0) t.vars_.erase(v);
  }
  for (const auto& [r, k] : o.rhos_) {
    int64_t& c = t.rhos_[r];
    c += k;
    if (c == 0) t.rhos_.erase(r);
  }
  for (const auto& [d, k] : o.divs_) t.add_div(d, k);
  t.c_ = (t.c_ + o.c_).frac();
  return t;
}

LinearTerm LinearTerm::operator-(const LinearTerm& o) const { return *this + o.scaled(-1); }

LinearTerm LinearTerm::scaled(int64_t k) const {
  LinearTerm t;
  if (k == 0) return t;
  for (const auto& [v, c] : vars_) t.vars_[v] = c * k;
  for (const auto& [r, c] : rhos_) t.rhos_[r] = c * k;
  for (const auto& [d, c] : divs_) t.divs_.push_back({d, c * k});
  t.c_ = (c_ * Rational(k)).frac();
  return t;
}

LinearTerm LinearTerm::without_var(const std::string& v) const {
  LinearTerm t = *this;
  t.vars_.erase(v);
  return t;
}

LinearTerm LinearTerm::substitute(const std::string& v, const LinearTerm& s) const {
  if (!has_var(v)) return *this;
  LinearTerm t = without_var(v);
  t.divs_.clear();
  for (const auto& [d, k] : divs_) {
    LinearTerm arg = d.arg->substitute(v, s);
    t = t + LinearTerm::div(d.n, arg, k);
  }
  return t + s.scaled(coeff(v));
}

LinearTerm LinearTerm::rename(const std::string& from, const std::string& to) const {
  return substitute(from, LinearTerm::var(to));
}

std::strong_ordering operator<=>(const LinearTerm& a, const LinearTerm& b) {
  if (auto c = a.vars_ <=> b.vars_; c != 0) return c;
  if (auto c = a.rhos_ <=> b.rhos_; c != 0) return c;
  if (auto c = a.divs_.size() <=> b.divs_.size(); c != 0) return c;
  for (size_t i = 0; i < a.divs_.size(); ++i) {
    if (auto c = cmp_div(a.divs_[i].first, b.divs_[i].first); c != 0) return c;
    if (auto c = a.divs_[i].second <=> b.divs_[i].second; c != 0) return c;
  }
  return a.c_ <=> b.c_;
}

std::string LinearTerm::str() const {
  std::vector<std::pair<std::string, int64_t>> parts;
  for (const auto& [v, k] : vars_) parts.emplace_back(v, k);
  for (const auto& [r, k] : rhos_) parts.emplace_back("rho_" + std::to_string(r), k);
  for (const auto& [d, k] : divs_) parts.emplace_back("f_" + std::to_string(d.n) + "(" + d.arg->str() + ")", k);
  std::string out;
  auto piece = [](const std::string& name, int64_t k) {
    return k == 1 ? name : std::to_string(k) + "*" + name;
  };
  bool any_pos = false;
  for (const auto& [name, k] : parts) {
    if (k < 0) continue;
    if (any_pos) out += " + ";
    out += piece(name, k);
    any_pos = true;
  }
  bool lead_const = !any_pos && !c_.is_zero();
  if (lead_const) out = c_.str();
  bool any_neg = false;
  for (const auto& [name, k] : parts) {
    if (k > 0) continue;
    if (out.empty()) out = "0";
    out += " - " + piece(name, -k);
    any_neg = true;
  }
  if (!c_.is_zero() && !lead_const) out += " + " + c_.str();
  if (out.empty()) out = "0";
  (void)any_neg;
  return out;
}

// ------------------------------------------------------------- formulas

Formula::Formula() : Formula(truth(true)) {}

Formula Formula::make(Node n) {
  n.qf = n.op != Op::Exists && n.op != Op::Forall &&
         std::all_of(n.kids.begin(), n.kids.end(), [](const Formula& k) { return k.node_->qf; });
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::truth(bool v) {
  static const Formula t = make(Node{Op::True, {}, {}, 0, {}, {}});
  static const Formula f = make(Node{Op::False, {}, {}, 0, {}, {}});
  return v ? t : f;
}

Formula Formula::less(const LinearTerm& a, const LinearTerm& b) {
  return make(Node{Op::Less, a, b, 0, {}, {}});
}

Formula Formula::eq(const LinearTerm& a, const LinearTerm& b) {
  return make(Node{Op::Eq, a, b, 0, {}, {}});
}

Formula Formula::leq(const LinearTerm& a, const LinearTerm& b) {
  return disj({less(a, b), eq(a, b)});
}

Formula Formula::dn(int64_t n, const LinearTerm& a, const LinearTerm& b) {
  if (n < 1) throw std::invalid_argument("D_n needs n >= 1");
  return make(Node{Op::Dn, a, b, n, {}, {}});
}

Formula Formula::negate(const Formula& f) { return make(Node{Op::Not, {}, {}, 0, {f}, {}}); }

Formula Formula::conj(std::vector<Formula> kids) {
  if (kids.empty()) return truth(true);
  if (kids.size() == 1) return kids.front();
  return make(Node{Op::And, {}, {}, 0, std::move(kids), {}});
}

Formula Formula::disj(std::vector<Formula> kids) {
  if (kids.empty()) return truth(false);
  if (kids.size() == 1) return kids.front();
  return make(Node{Op::Or, {}, {}, 0, std::move(kids), {}});
}

Formula Formula::implies(const Formula& a, const Formula& b) {
  return make(Node{Op::Implies, {}, {}, 0, {a, b}, {}});
}

Formula Formula::iff(const Formula& a, const Formula& b) {
  return conj({implies(a, b), implies(b, a)});
}

Formula Formula::exists(const std::string& v, const Formula& body) {
  return make(Node{Op::Exists, {}, {}, 0, {body}, v});
}

Formula Formula::forall(const std::string& v, const Formula& body) {
  return make(Node{Op::Forall, {}, {}, 0, {body}, v});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  if (a.is_atom()) return a.n() == b.n() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  if (a.var() != b.var()) return false;
  return a.kids() == b.kids();
}

namespace {

void atom_vars(const Formula& f, std::set<const void*>& seen, std::set<std::string>& out) {
  if (!seen.insert(f.id()).second) return;
  if (f.is_atom()) {
    f.lhs().collect_vars(out);
    f.rhs().collect_vars(out);
    return;
  }
  for (const auto& k : f.kids()) atom_vars(k, seen, out);
}

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out,
                   std::set<const void*>& seen) {
  if (f.is_quantifier_free()) {
    std::set<std::string> vs;
    atom_vars(f, seen, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.is_quantifier()) {
    bool fresh = bound.insert(f.var()).second;
    std::set<const void*> inner;
    free_vars_rec(f.body(), bound, out, inner);
    if (fresh) bound.erase(f.var());
    return;
  }
  for (const auto& k : f.kids()) free_vars_rec(k, bound, out, seen);
}

int64_t tree_size(const Formula& f, std::unordered_map<const void*, int64_t>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  int64_t s = 1;
  for (const auto& k : f.kids()) s = std::min<int64_t>(s + tree_size(k, memo), int64_t(1) << 60);
  memo.emplace(f.id(), s);
  return s;
}

void collect_nodes(const Formula& f, std::unordered_set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return;
  for (const auto& k : f.kids()) collect_nodes(k, seen);
}

}  // namespace

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> bound, out;
  std::set<const void*> seen;
  free_vars_rec(*this, bound, out, seen);
  return out;
}

int64_t Formula::size() const {
  std::unordered_map<const void*, int64_t> memo;
  return tree_size(*this, memo);
}

int64_t Formula::dag_size() const {
  std::unordered_set<const void*> seen;
  collect_nodes(*this, seen);
  return static_cast<int64_t>(seen.size());
}

int64_t Formula::quantifier_count() const {
  int64_t s = is_quantifier() ? 1 : 0;
  for (const auto& k : kids()) s += k.quantifier_count();
  return s;
}

// -------------------------------------------------------------- printer

namespace {

// Binding strength: quantifier < implies < or < and < literal.
int level(const Formula& f) {
  switch (f.op()) {
    case Op::Exists:
    case Op::Forall:
      return 0;
    case Op::Implies:
      return 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    default:
      return 4;
  }
}

void print_rec(const Formula& f, bool tail, std::string& out);

// Prints f in a slot that needs at least binding strength `need`. A
// quantifier may stay bare when nothing follows it.
void print_operand(const Formula& f, int need, bool tail, std::string& out) {
  int l = level(f);
  bool bare = l >= need || (l == 0 && tail);
  if (bare) {
    print_rec(f, tail, out);
  } else {
    out += "(";
    print_rec(f, true, out);
    out += ")";
  }
}

void print_rec(const Formula& f, bool tail, std::string& out) {
  switch (f.op()) {
    case Op::True:
      out += "true";
      return;
    case Op::False:
      out += "false";
      return;
    case Op::Less:
      out += f.lhs().str() + " < " + f.rhs().str();
      return;
    case Op::Eq:
      out += f.lhs().str() + " = " + f.rhs().str();
      return;
    case Op::Dn:
      out += "D_" + std::to_string(f.n()) + "(" + f.lhs().str() + ", " + f.rhs().str() + ")";
      return;
    case Op::Not: {
      const Formula& b = f.body();
      if (b.op() == Op::Eq) {
        out += b.lhs().str() + " != " + b.rhs().str();
      } else if (b.op() == Op::Less || b.op() == Op::Dn || b.op() == Op::True || b.op() == Op::False) {
        out += "!";
        print_rec(b, tail, out);
      } else {
        out += "!(";
        print_rec(b, true, out);
        out += ")";
      }
      return;
    }
    case Op::And:
    case Op::Or: {
      const char* sep = f.op() == Op::And ? " & " : " | ";
      int need = f.op() == Op::And ? 4 : 3;
      for (size_t i = 0; i < f.kids().size(); ++i) {
        if (i) out += sep;
        bool last = i + 1 == f.kids().size();
        print_operand(f.kids()[i], need, tail && last, out);
      }
      return;
    }
    case Op::Implies:
      print_operand(f.kids()[0], 2, false, out);
      out += " -> ";
      print_operand(f.kids()[1], 1, tail, out);
      return;
    case Op::Exists:
    case Op::Forall: {
      out += f.op() == Op::Exists ? "exists " : "forall ";
      out += f.var();
      out += " ";
      const Formula& b = f.body();
      if (b.is_quantifier()) {
        print_rec(b, tail, out);
      } else {
        out += "(";
        print_rec(b, true, out);
        out += ")";
      }
      return;
    }
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, true, out);
  return out;
}

std::string Formula::str() const { return print(*this); }

// --------------------------------------------------------------- parser

namespace {

enum class Tok { Ident, Nat, Dn, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
  int64_t value = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      std::string digits = s.substr(start, i - start);
      if (digits.size() > 17) throw ParseError("number too large", start);
      out.push_back({Tok::Nat, digits, start, std::stoll(digits)});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word = s.substr(start, i - start);
      if (word.size() > 2 && word[0] == 'D' && word[1] == '_' &&
          std::all_of(word.begin() + 2, word.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        if (word.size() - 2 > 17) throw ParseError("number too large", start + 2);
        out.push_back({Tok::Dn, word, start, std::stoll(word.substr(2))});
      } else {
        out.push_back({Tok::Ident, word, start});
      }
      continue;
    }
    if (s.compare(i, 2, "->") == 0 || s.compare(i, 2, "!=") == 0) {
      out.push_back({Tok::Sym, s.substr(i, 2), start});
      i += 2;
      continue;
    }
    if (std::string("<=!&|()+-*/,").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), start});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "exists" || w == "forall" || w == "true" || w == "false";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Formula formula() {
    if (peek_word("exists") || peek_word("forall")) return quant();
    return bin();
  }

  LinearTerm term() {
    LinearTerm t = prod();
    while (peek_sym("+") || peek_sym("-")) {
      bool minus = next().text == "-";
      LinearTerm p = prod();
      t = minus ? t - p : t + p;
    }
    return t;
  }

  void expect_end() {
    if (cur().kind != Tok::End) throw ParseError("unexpected '" + cur().text + "'", cur().pos);
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool peek_sym(const char* s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool peek_word(const char* w) const { return cur().kind == Tok::Ident && cur().text == w; }
  void expect_sym(const char* s) {
    if (!peek_sym(s)) throw ParseError(std::string("expected '") + s + "'", cur().pos);
    ++pos_;
  }

  Formula quant() {
    bool ex = next().text == "exists";
    if (cur().kind != Tok::Ident || is_keyword(cur().text))
      throw ParseError("expected variable name", cur().pos);
    std::string v = next().text;
    Formula body = formula();
    return ex ? Formula::exists(v, body) : Formula::forall(v, body);
  }

  Formula bin() {
    Formula a = disj();
    if (peek_sym("->")) {
      ++pos_;
      Formula b = (peek_word("exists") || peek_word("forall")) ? quant() : bin();
      return Formula::implies(a, b);
    }
    return a;
  }

  Formula disj() {
    std::vector<Formula> kids{conj()};
    while (peek_sym("|")) {
      ++pos_;
      kids.push_back(conj());
    }
    return Formula::disj(std::move(kids));
  }

  Formula conj() {
    std::vector<Formula> kids{lit()};
    while (peek_sym("&")) {
      ++pos_;
      kids.push_back(lit());
    }
    return Formula::conj(std::move(kids));
  }

  Formula lit() {
    if (peek_word("exists") || peek_word("forall")) return quant();
    if (peek_sym("(")) {
      ++pos_;
      Formula f = formula();
      expect_sym(")");
      return f;
    }
    if (peek_sym("!")) {
      ++pos_;
      if (peek_sym("(")) {
        ++pos_;
        Formula f = formula();
        expect_sym(")");
        return Formula::negate(f);
      }
      return Formula::negate(atom());
    }
    return atom();
  }

  Formula atom() {
    if (peek_word("true")) {
      ++pos_;
      return Formula::truth(true);
    }
    if (peek_word("false")) {
      ++pos_;
      return Formula::truth(false);
    }
    if (cur().kind == Tok::Dn) {
      const Token& t = next();
      if (t.value < 1) throw ParseError("D_n needs n >= 1", t.pos + 2);
      expect_sym("(");
      LinearTerm a = term();
      expect_sym(",");
      LinearTerm b = term();
      expect_sym(")");
      return Formula::dn(t.value, a, b);
    }
    LinearTerm a = term();
    if (peek_sym("<")) {
      ++pos_;
      return Formula::less(a, term());
    }
    if (peek_sym("=")) {
      ++pos_;
      return Formula::eq(a, term());
    }
    if (peek_sym("!=")) {
      ++pos_;
      return Formula::neq(a, term());
    }
    throw ParseError("expected '<', '=' or '!='", cur().pos);
  }

  // prod := [nat "*"] (ident | frac | "0")
  LinearTerm prod() {
    int64_t k = 1;
    if (cur().kind == Tok::Nat && toks_[pos_ + 1].kind == Tok::Sym && toks_[pos_ + 1].text == "*") {
      k = next().value;
      ++pos_;
    }
    const Token& t = cur();
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      ++pos_;
      return LinearTerm::var(t.text, k);
    }
    if (t.kind == Tok::Nat) {
      ++pos_;
      if (peek_sym("/")) {
        ++pos_;
        if (cur().kind != Tok::Nat) throw ParseError("expected denominator", cur().pos);
        const Token& d = next();
        if (d.value == 0) throw ParseError("zero denominator", d.pos);
        if (t.value >= d.value) throw ParseError("constant " + t.text + "/" + d.text + " not below 1", t.pos);
        if (std::gcd(t.value, d.value) != 1)
          throw ParseError("constant " + t.text + "/" + d.text + " not reduced", t.pos);
        return LinearTerm::constant(Rational(t.value, d.value) * Rational(k));
      }
      if (t.value == 0) return LinearTerm();
      throw ParseError("bare integer " + t.text + " (constants are written i/n)", t.pos);
    }
    throw ParseError("expected term", t.pos);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return normalize(f);
}

LinearTerm parse_term(const std::string& text) {
  Parser p(text);
  LinearTerm t = p.term();
  p.expect_end();
  return t;
}

// ----------------------------------------------------- transformations

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to);

Formula normalize_rec(const Formula& f, std::set<std::string>& used) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Less:
    case Op::Eq:
    case Op::Dn:
      return f;
    case Op::Not:
      return Formula::negate(normalize_rec(f.body(), used));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids()) {
        Formula nk = normalize_rec(k, used);
        if (nk.op() == f.op()) kids.insert(kids.end(), nk.kids().begin(), nk.kids().end());
        else kids.push_back(nk);
      }
      return f.op() == Op::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Op::Implies: {
      Formula a = normalize_rec(f.kids()[0], used);
      Formula b = normalize_rec(f.kids()[1], used);
      return Formula::implies(a, b);
    }
    case Op::Exists:
    case Op::Forall: {
      std::string v = f.var();
      Formula body = f.body();
      if (used.count(v)) {
        std::string w = fresh_name(v, used);
        body = rename_free(body, v, w);
        v = w;
      }
      used.insert(v);
      Formula nb = normalize_rec(body, used);
      return f.op() == Op::Exists ? Formula::exists(v, nb) : Formula::forall(v, nb);
    }
  }
  return f;
}

Formula subst_rec(const Formula& f, const std::string& v, const LinearTerm& t,
                  const std::set<std::string>& tvars) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Less:
      return Formula::less(f.lhs().substitute(v, t), f.rhs().substitute(v, t));
    case Op::Eq:
      return Formula::eq(f.lhs().substitute(v, t), f.rhs().substitute(v, t));
    case Op::Dn:
      return Formula::dn(f.n(), f.lhs().substitute(v, t), f.rhs().substitute(v, t));
    case Op::Not:
      return Formula::negate(subst_rec(f.body(), v, t, tvars));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids()) kids.push_back(subst_rec(k, v, t, tvars));
      return f.op() == Op::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Op::Implies:
      return Formula::implies(subst_rec(f.kids()[0], v, t, tvars), subst_rec(f.kids()[1], v, t, tvars));
    case Op::Exists:
    case Op::Forall: {
      if (f.var() == v) return f;
      std::string w = f.var();
      Formula body = f.body();
      if (tvars.count(w)) {
        std::set<std::string> used = tvars;
        for (const auto& fv : body.free_vars()) used.insert(fv);
        used.insert(v);
        std::string nw = fresh_name(w, used);
        body = rename_free(body, w, nw);
        w = nw;
      }
      Formula nb = subst_rec(body, v, t, tvars);
      return f.op() == Op::Exists ? Formula::exists(w, nb) : Formula::forall(w, nb);
    }
  }
  return f;
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  LinearTerm t = LinearTerm::var(to);
  return subst_rec(f, from, t, {to});
}

}  // namespace

Formula normalize(const Formula& f) {
  std::set<std::string> used = f.free_vars();
  return normalize_rec(f, used);
}

Formula substitute(const Formula& f, const std::string& v, const LinearTerm& t) {
  std::set<std::string> tvars;
  t.collect_vars(tvars);
  return subst_rec(f, v, t, tvars);
}

namespace {

Formula nnf_rec(const Formula& f, bool neg) {
  switch (f.op()) {
    case Op::True:
      return Formula::truth(!neg);
    case Op::False:
      return Formula::truth(neg);
    case Op::Less:
    case Op::Eq:
    case Op::Dn:
      return neg ? Formula::negate(f) : f;
    case Op::Not:
      return nnf_rec(f.body(), !neg);
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids()) kids.push_back(nnf_rec(k, neg));
      bool as_and = (f.op() == Op::And) != neg;
      return as_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Op::Implies: {
      Formula a = nnf_rec(f.kids()[0], !neg);
      Formula b = nnf_rec(f.kids()[1], neg);
      return neg ? Formula::conj({a, b}) : Formula::disj({a, b});
    }
    case Op::Exists:
    case Op::Forall: {
      Formula b = nnf_rec(f.body(), neg);
      bool ex = (f.op() == Op::Exists) != neg;
      return ex ? Formula::exists(f.var(), b) : Formula::forall(f.var(), b);
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_rec(f, false); }

// ------------------------------------------------------------ evaluation

CircleElement evaluate_term(const LinearTerm& t, const GroupDescriptor& m, const Assignment& a) {
  Rational ra = t.constant_part(), rb;
  int64_t d = 0;
  auto absorb = [&](const CircleElement& e, int64_t k) {
    if (!e.b().is_zero()) {
      if (d != 0 && d != e.radicand()) throw EvalError("incompatible radicands");
      d = e.radicand();
      rb += e.b() * Rational(k);
    }
    ra += e.a() * Rational(k);
  };
  for (const auto& [v, k] : t.vars()) {
    auto it = a.find(v);
    if (it == a.end()) throw EvalError("unbound variable '" + v + "'");
    absorb(it->second, k);
  }
  for (const auto& [r, k] : t.rhos()) absorb(rho_interpretation(m, r), k);
  for (const auto& [dp, k] : t.divs()) absorb(div_n(evaluate_term(*dp.arg, m, a), dp.n), k);
  return CircleElement(ra, rb, d);
}

namespace {

bool eval_rec(const Formula& f, const GroupDescriptor& m, Assignment& a, const EvalOptions& opts) {
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Less:
      return evaluate_term(f.lhs(), m, a) < evaluate_term(f.rhs(), m, a);
    case Op::Eq:
      return evaluate_term(f.lhs(), m, a) == evaluate_term(f.rhs(), m, a);
    case Op::Dn:
      return holds_Dn(m, f.n(), evaluate_term(f.lhs(), m, a), evaluate_term(f.rhs(), m, a)).truth ==
             Truth::True;
    case Op::Not:
      return !eval_rec(f.body(), m, a, opts);
    case Op::And:
      for (const auto& k : f.kids())
        if (!eval_rec(k, m, a, opts)) return false;
      return true;
    case Op::Or:
      for (const auto& k : f.kids())
        if (eval_rec(k, m, a, opts)) return true;
      return false;
    case Op::Implies:
      return !eval_rec(f.kids()[0], m, a, opts) || eval_rec(f.kids()[1], m, a, opts);
    case Op::Exists:
    case Op::Forall: {
      if (!opts.search_set) throw EvalError("quantifier over '" + f.var() + "' without a search set");
      bool ex = f.op() == Op::Exists;
      auto saved = a.find(f.var()) == a.end() ? std::nullopt : std::optional(a[f.var()]);
      bool result = !ex;
      for (const auto& e : *opts.search_set) {
        a[f.var()] = e;
        if (eval_rec(f.body(), m, a, opts) == ex) {
          result = ex;
          break;
        }
      }
      if (saved) a[f.var()] = *saved;
      else a.erase(f.var());
      return result;
    }
  }
  return false;
}

}  // namespace

bool evaluate(const Formula& f, const GroupDescriptor& m, const Assignment& a, const EvalOptions& opts) {
  Assignment work = a;
  return eval_rec(f, m, work, opts);
}

}  // namespace decimals
