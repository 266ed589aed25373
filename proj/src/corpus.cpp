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


#include "decimals/corpus.hpp"

#include <algorithm>

namespace decimals {

namespace {

class Gen {
 public:
  Gen(std::mt19937_64& rng, const CorpusOptions& opt) : rng_(rng), opt_(opt) {}

  Formula top() {
    int free = pick(opt_.min_free, opt_.max_free);
    std::vector<std::string> scope;
    static const char* names[] = {"x", "y", "z"};
    for (int i = 0; i < free; ++i) scope.emplace_back(names[i]);
    qleft_ = pick(0, opt_.max_quantifiers);
    return formula(scope, opt_.depth, "");
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  int64_t coeff() {
    int64_t k = 0;
    while (k == 0) k = pick(-opt_.max_coeff, opt_.max_coeff);
    return k;
  }

  LinearTerm term(const std::vector<std::string>& scope, const std::string& must) {
    LinearTerm t;
    if (!scope.empty()) {
      int n = pick(1, std::min<int>(2, static_cast<int>(scope.size())));
      for (int i = 0; i < n; ++i) t = t + LinearTerm::var(scope[pick(0, static_cast<int>(scope.size()) - 1)], coeff());
    }
    if (!must.empty() && t.coeff(must) == 0) t = t + LinearTerm::var(must, coeff());
    if (opt_.allow_constants && coin(0.3)) {
      int d = pick(2, opt_.max_den);
      t = t + LinearTerm::constant(Rational(pick(1, d - 1), d));
    }
    return t;
  }

  Formula atom(const std::vector<std::string>& scope, const std::string& must) {
    LinearTerm a = term(scope, must);
    LinearTerm b = coin(0.5) || scope.empty() ? LinearTerm() : term(scope, "");
    if (coin(0.5)) std::swap(a, b);
    double p = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (p < 0.25) return Formula::eq(a, b);
    if (p < 0.32) return Formula::neq(a, b);
    if (opt_.allow_dn && p < 0.37) return Formula::dn(pick(2, 4), a, b);
    return Formula::less(a, b);
  }

  Formula formula(std::vector<std::string> scope, int depth, const std::string& must) {
    bool can_quantify = qleft_ > 0 && static_cast<int>(scope.size()) < opt_.max_vars;
    if (can_quantify && (scope.empty() || coin(0.45))) {
      --qleft_;
      static const char* names[] = {"u", "v", "w", "s", "t"};
      std::string v;
      for (const char* n : names)
        if (std::find(scope.begin(), scope.end(), n) == scope.end()) {
          v = n;
          break;
        }
      scope.push_back(v);
      Formula body = formula(scope, depth, v);
      return coin(0.5) ? Formula::exists(v, body) : Formula::forall(v, body);
    }
    if (depth > 0 && coin(0.55)) {
      Formula a = formula(scope, depth - 1, must);
      Formula b = formula(scope, depth - 1, "");
      double p = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (p < 0.4) return Formula::conj({a, b});
      if (p < 0.8) return Formula::disj({a, b});
      if (p < 0.9) return Formula::implies(a, b);
      return Formula::negate(Formula::conj({a, b}));
    }
    return atom(scope, must);
  }

  std::mt19937_64& rng_;
  const CorpusOptions& opt_;
  int qleft_ = 0;
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const CorpusOptions& opt) { return normalize(Gen(rng, opt).top()); }

std::vector<Formula> random_corpus(uint64_t seed, int count, const CorpusOptions& opt) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_formula(rng, opt));
  return out;
}

const std::vector<GoldenSentence>& golden_sentences() {
  static const std::vector<GoldenSentence> suite = {
      // divisibility
      {"forall x exists y (2*y = x)", true, "divisibility"},
      {"forall x exists y (3*y = x)", true, "divisibility"},
      {"forall x exists y (y + y + y + y + y = x)", true, "divisibility"},
      {"forall x (x = 0 | exists y (y != 0 & y + y = x))", true, "divisibility"},
      {"forall x exists y (2*y = x & y < 1/2)", true, "divisibility"},
      // torsion
      {"exists x (x != 0 & 2*x = 0)", true, "torsion"},
      {"exists x (x != 0 & 3*x = 0 & x < 2*x)", true, "torsion"},
      {"forall x forall y (x != 0 & 2*x = 0 & y != 0 & 2*y = 0 -> x = y)", true, "torsion"},
      {"exists x (x != 0 & 7*x = 0 & 6*x < x)", true, "torsion"},
      {"forall x (5*x = 0 -> x = 0 | x = 1/5 | x = 2/5 | x = 3/5 | x = 4/5)", true, "torsion"},
      // regularity
      {"forall x forall y (x < y -> exists z (x < 2*z & 2*z < y))", true, "regularity"},
      {"forall x forall y (x < y -> exists z (x < 3*z & 3*z < y))", true, "regularity"},
      {"forall x forall y (x < y -> exists z (x < z & z < y))", true, "regularity"},
      {"forall x forall y (x < y -> exists z (x < 4*z & 4*z < y))", true, "regularity"},
      // order
      {"forall x (x = 0 | 0 < x)", true, "order"},
      {"forall x forall y (x < y | x = y | y < x)", true, "order"},
      {"forall x forall y forall z (x < y & y < z -> x < z)", true, "order"},
      {"forall x (0 < x -> 0 - x != x | 2*x = 0)", true, "order"},
      {"forall x forall y (x != 0 & x < y -> 0 - y < 0 - x)", true, "order"},
      {"exists x forall y (x < y | x = y)", true, "order"},
      // false sentences
      {"exists x (x < 2*x & 2*x < x)", false, "false"},
      {"exists x (x != 0 & x + x = 0 & x < 1/3)", false, "false"},
      {"forall x exists y (y < x)", false, "false"},
      {"exists x forall y (y < x | y = x)", false, "false"},
      {"exists x (3*x = 0 & 1/3 < x & x < 2/3)", false, "false"},
  };
  return suite;
}

}  // namespace decimals
