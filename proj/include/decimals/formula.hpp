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

// First-order formulas over {+, -, 0, <, D_n, i/n}: terms, AST, the text
// grammar, normalization, substitution and evaluation in a model.

#ifndef DECIMALS_FORMULA_HPP_
#define DECIMALS_FORMULA_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decimals/circle.hpp"
#include "decimals/rational.hpp"

namespace decimals {

class LinearTerm;

// f_n(arg): the least y with n*y = arg. Only produced internally.
struct DivPart {
  int64_t n = 2;
  std::shared_ptr<const LinearTerm> arg;
};

// sum k_i x_i + sum k_j rho_j + sum k_l f_n(t_l) + c, read mod 1.
// Coefficients are nonzero integers; the constant lies in [0, 1).
class LinearTerm {
 public:
  LinearTerm() = default;
  static LinearTerm var(const std::string& name, int64_t k = 1);
  static LinearTerm constant(const Rational& c);
  static LinearTerm rho(int64_t n, int64_t k = 1);
  static LinearTerm div(int64_t n, const LinearTerm& arg, int64_t k = 1);

  const std::map<std::string, int64_t>& vars() const { return vars_; }
  const std::map<int64_t, int64_t>& rhos() const { return rhos_; }
  const std::vector<std::pair<DivPart, int64_t>>& divs() const { return divs_; }
  const Rational& constant_part() const { return c_; }

  int64_t coeff(const std::string& v) const;
  bool has_var(const std::string& v) const;  // also looks inside f_n arguments
  bool is_zero() const { return vars_.empty() && rhos_.empty() && divs_.empty() && c_.is_zero(); }
  bool is_ground() const;  // no variables anywhere
  bool has_symbols() const { return !rhos_.empty() || !divs_.empty(); }
  void collect_vars(std::set<std::string>& out) const;

  LinearTerm operator+(const LinearTerm& o) const;
  LinearTerm operator-(const LinearTerm& o) const;
  LinearTerm operator-() const { return scaled(-1); }
  LinearTerm scaled(int64_t k) const;
  LinearTerm without_var(const std::string& v) const;
  LinearTerm substitute(const std::string& v, const LinearTerm& t) const;
  LinearTerm rename(const std::string& from, const std::string& to) const;

  std::string str() const;

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const LinearTerm& a, const LinearTerm& b);

 private:
  void add_div(const DivPart& d, int64_t k);

  std::map<std::string, int64_t> vars_;
  std::map<int64_t, int64_t> rhos_;
  std::vector<std::pair<DivPart, int64_t>> divs_;
  Rational c_;
};

enum class Op { True, False, Less, Eq, Dn, Not, And, Or, Implies, Exists, Forall };

class Formula {
 public:
  Formula();  // true

  static Formula truth(bool v);
  static Formula less(const LinearTerm& a, const LinearTerm& b);
  static Formula eq(const LinearTerm& a, const LinearTerm& b);
  static Formula neq(const LinearTerm& a, const LinearTerm& b) { return negate(eq(a, b)); }
  static Formula leq(const LinearTerm& a, const LinearTerm& b);  // a < b | a = b
  static Formula dn(int64_t n, const LinearTerm& a, const LinearTerm& b);
  static Formula negate(const Formula& f);
  static Formula conj(std::vector<Formula> kids);  // empty -> true, single -> itself
  static Formula disj(std::vector<Formula> kids);  // empty -> false
  static Formula implies(const Formula& a, const Formula& b);
  static Formula iff(const Formula& a, const Formula& b);  // (a -> b) & (b -> a)
  static Formula exists(const std::string& v, const Formula& body);
  static Formula forall(const std::string& v, const Formula& body);

  Op op() const { return node_->op; }
  bool is_atom() const { return op() <= Op::Dn; }
  bool is_quantifier() const { return op() == Op::Exists || op() == Op::Forall; }
  const LinearTerm& lhs() const { return node_->lhs; }
  const LinearTerm& rhs() const { return node_->rhs; }
  int64_t n() const { return node_->n; }
  const std::vector<Formula>& kids() const { return node_->kids; }
  const Formula& body() const { return node_->kids.front(); }
  const std::string& var() const { return node_->var; }

  // Identity of the shared node; equal ids mean the same subformula.
  const void* id() const { return node_.get(); }

  std::set<std::string> free_vars() const;
  bool is_quantifier_free() const { return node_->qf; }
  bool is_sentence() const { return free_vars().empty(); }
  int64_t size() const;  // node count of the tree, saturating
  int64_t dag_size() const;  // distinct nodes
  int64_t quantifier_count() const;

  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op = Op::True;
    LinearTerm lhs, rhs;
    int64_t n = 0;
    std::vector<Formula> kids;
    std::string var;
    bool qf = true;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

// Parses the text grammar and normalizes the result.
Formula parse(const std::string& text);
LinearTerm parse_term(const std::string& text);
std::string print(const Formula& f);

// Flattens nested and/or and renames bound variables apart from each other
// and from the free variables.
Formula normalize(const Formula& f);

// Capture-avoiding substitution of t for the free occurrences of v.
Formula substitute(const Formula& f, const std::string& v, const LinearTerm& t);

// Negation normal form: no Implies, Not only directly above atoms.
Formula to_nnf(const Formula& f);

// Applies fn to every atom (Less, Eq, Dn, True, False) and rebuilds.
template <class Fn>
Formula map_atoms(const Formula& f, Fn&& fn);

using Assignment = std::map<std::string, CircleElement>;

struct EvalOptions {
  // Quantifiers range over this set when given; otherwise quantifiers are an
  // error.
  std::optional<std::vector<CircleElement>> search_set;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CircleElement evaluate_term(const LinearTerm& t, const GroupDescriptor& m, const Assignment& a);
bool evaluate(const Formula& f, const GroupDescriptor& m, const Assignment& a,
              const EvalOptions& opts = {});

template <class Fn>
Formula map_atoms(const Formula& f, Fn&& fn) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Less:
    case Op::Eq:
    case Op::Dn:
      return fn(f);
    case Op::Not:
      return Formula::negate(map_atoms(f.body(), fn));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.kids().size());
      for (const auto& k : f.kids()) kids.push_back(map_atoms(k, fn));
      return f.op() == Op::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Op::Implies:
      return Formula::implies(map_atoms(f.kids()[0], fn), map_atoms(f.kids()[1], fn));
    case Op::Exists:
      return Formula::exists(f.var(), map_atoms(f.body(), fn));
    case Op::Forall:
      return Formula::forall(f.var(), map_atoms(f.body(), fn));
  }
  return f;
}

}  // namespace decimals

#endif  // DECIMALS_FORMULA_HPP_
