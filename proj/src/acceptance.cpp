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

#include "decimals/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "decimals/axioms.hpp"
#include "decimals/circle.hpp"
#include "decimals/corpus.hpp"
#include "decimals/formula.hpp"
#include "decimals/hyperreal.hpp"
#include "decimals/pointwise.hpp"
#include "decimals/qe.hpp"
#include "decimals/torsion.hpp"

namespace decimals {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Long formulas are cut down for the one-line report.
std::string clip(const std::string& s, size_t limit = 200) {
  return s.size() <= limit ? s : s.substr(0, limit) + "...";
}

CriterionResult named(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << s << "s";
  return out.str();
}

// ---------------------------------------------------------------- axioms

struct TheoryTally {
  int64_t holds = 0, fails = 0, undecided = 0;
  std::string first_bad;
};

TheoryTally tally_theory(Theory t, const GroupDescriptor& m, int64_t bound, const CheckConfig& cfg) {
  TheoryTally out;
  for_each_instance(t, m, bound, [&](AxiomInstance&& inst) {
    CheckReport r = check(inst, m, cfg);
    switch (r.verdict) {
      case Verdict::Holds: ++out.holds; return;
      case Verdict::Fails: ++out.fails; break;
      case Verdict::Undecided: ++out.undecided; break;
    }
    if (out.first_bad.empty())
      out.first_bad = inst.scheme + " " + inst.params_str() + " " + verdict_name(r.verdict) + " " +
                      r.witness_str();
  });
  return out;
}

CriterionResult axioms_in_D() {
  CriterionResult r = named(1, "axiom instances of T, T' and calT hold in D (bound 12, grid 720)");
  auto t0 = Clock::now();
  GroupDescriptor d = GroupDescriptor::full();
  CheckConfig cfg;
  cfg.model.grid = 720;
  std::ostringstream detail;
  bool clean = true;
  std::string first;
  for (Theory t : {Theory::T, Theory::TPrime, Theory::CalT}) {
    TheoryTally k = tally_theory(t, d, 12, cfg);
    int64_t total = k.holds + k.fails + k.undecided;
    detail << theory_name(t) << " " << k.holds << "/" << total << " ";
    if (k.fails || k.undecided) {
      clean = false;
      if (first.empty()) first = k.first_bad;
    }
  }
  r.seconds = since(t0);
  detail << "in " << fmt_seconds(r.seconds) << " (limit 60s)";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = clean && r.seconds <= 60;
  return r;
}

CriterionResult axioms_case_two() {
  CriterionResult r = named(2, "axiom instances of T case II hold in quad:2 (bound 6)");
  auto t0 = Clock::now();
  GroupDescriptor q = GroupDescriptor::quadratic(2);
  CheckConfig cfg;
  std::ostringstream detail;
  int64_t holds = 0, fails = 0, undecided = 0;
  std::vector<std::string> bad;
  for_each_instance(Theory::T, q, 6, [&](AxiomInstance&& inst) {
    CheckReport rep = check(inst, q, cfg);
    if (rep.verdict == Verdict::Holds) {
      ++holds;
      return;
    }
    (rep.verdict == Verdict::Fails ? fails : undecided)++;
    bad.push_back(inst.scheme + " " + inst.params_str() + " " + verdict_name(rep.verdict) + " at " +
                  rep.witness_str());
  });
  r.seconds = since(t0);
  detail << holds << " hold, " << fails << " fail, " << undecided << " undecided";
  for (const auto& b : bad) detail << "; " << b;
  r.detail = detail.str();
  r.pass = fails == 0 && undecided == 0;
  return r;
}

// ---------------------------------------------------------------- tables

// True when every atom compares multiples k*x with |k| <= kmax and no
// constant, so the truth value depends only on how the values k*x mod 1
// are ordered.
bool multiples_only(const Formula& f, const std::string& var, int64_t kmax) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Less:
    case Op::Eq:
      for (const LinearTerm* t : {&f.lhs(), &f.rhs()}) {
        if (t->has_symbols() || !t->constant_part().is_zero()) return false;
        for (const auto& [v, k] : t->vars())
          if (v != var || k > kmax || k < -kmax) return false;
      }
      return true;
    case Op::Dn:
    case Op::Exists:
    case Op::Forall:
      return false;
    default:
      for (const auto& k : f.kids())
        if (!multiples_only(k, var, kmax)) return false;
      return true;
  }
}

CriterionResult torsion_tables() {
  CriterionResult r = named(3, "theta/phi exact for n <= 10 at all denominators <= 2520");
  auto t0 = Clock::now();
  constexpr int64_t kMaxN = 10, kMaxDen = 2520;
  struct Entry {
    int64_t i, n;
    Formula theta, phi;
  };
  std::vector<Entry> entries;
  bool cacheable = true;
  for (int64_t n = 2; n <= kMaxN; ++n)
    for (int64_t i = 1; i < n; ++i) {
      Entry e{i, n, theta(i, n), phi(i, n)};
      cacheable = cacheable && multiples_only(e.theta, "x", kMaxN) && multiples_only(e.phi, "x", kMaxN);
      entries.push_back(std::move(e));
    }

  // Truth values per order type of (k*x mod 1) for -10 <= k <= 10.
  std::unordered_map<std::string, std::vector<char>> memo;
  GroupDescriptor d = GroupDescriptor::full();
  int64_t points = 0, mismatches = 0;
  std::string first;
  std::vector<int64_t> vals(2 * kMaxN + 1);
  std::vector<int> idx(vals.size());
  std::string key(vals.size(), '\0');
  auto truth_at = [&](int64_t p, int64_t q) {
    Assignment a{{"x", CircleElement(Rational(p, q))}};
    std::vector<char> out;
    out.reserve(2 * entries.size());
    for (const Entry& e : entries) {
      out.push_back(evaluate(e.theta, d, a));
      out.push_back(evaluate(e.phi, d, a));
    }
    return out;
  };
  for (int64_t q = 1; q <= kMaxDen; ++q) {
    for (int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++points;
      std::vector<char> fresh;
      const std::vector<char>* truth = nullptr;
      if (cacheable) {
        for (int64_t k = -kMaxN; k <= kMaxN; ++k) vals[k + kMaxN] = ((k * p) % q + q) % q;
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        char rank = 0;
        for (size_t j = 0; j < idx.size(); ++j) {
          if (j > 0 && vals[idx[j]] != vals[idx[j - 1]]) ++rank;
          key[idx[j]] = rank;
        }
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, truth_at(p, q)).first;
        truth = &it->second;
      } else {
        fresh = truth_at(p, q);
        truth = &fresh;
      }
      for (size_t e = 0; e < entries.size(); ++e) {
        // Direct comparison with i/n by cross multiplication.
        const Entry& en = entries[e];
        bool eq = p * en.n == en.i * q, lt = p * en.n < en.i * q;
        if ((*truth)[2 * e] != eq || (*truth)[2 * e + 1] != lt) {
          if (first.empty())
            first = "x=" + Rational(p, q).str() + " against " + std::to_string(en.i) + "/" +
                    std::to_string(en.n);
          ++mismatches;
        }
      }
    }
  }

  // Displayed forms for n = 2 and 3, compared after parsing and printing.
  struct Shape {
    Formula got;
    const char* want;
  };
  std::vector<Shape> shapes = {
      {theta(1, 2), "x != 0 & 2*x = 0"},
      {theta(1, 3), "x != 0 & 3*x = 0 & x < 2*x"},
      {theta(2, 3), "x != 0 & 3*x = 0 & 2*x < x"},
      {chain_formula({1, 2}), "x < 2*x"},
      {chain_formula({1, 2, 3}), "x < 2*x & 2*x < 3*x"},
      {phi(1, 2), "x < 2*x | x = 0"},
      {phi(1, 3), "x < 2*x & 2*x < 3*x | x = 0"},
  };
  int64_t shape_bad = 0;
  for (const Shape& s : shapes) {
    if (print(s.got) != print(parse(s.want))) {
      ++shape_bad;
      if (first.empty()) first = "shape " + print(s.got) + " vs " + s.want;
    }
  }

  r.seconds = since(t0);
  std::ostringstream detail;
  detail << points << " points x " << 2 * entries.size() << " formulas, " << mismatches
         << " mismatches, " << memo.size() << " order types; " << shapes.size() - shape_bad << "/"
         << shapes.size() << " displayed forms match";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = mismatches == 0 && shape_bad == 0;
  return r;
}

// ---------------------------------------------------------------- QE

// Fraction literals and D_n atoms left in a formula.
int64_t impure_atoms(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return 0;
    case Op::Dn:
      return 1;
    case Op::Less:
    case Op::Eq:
      return (!f.lhs().constant_part().is_zero() || !f.rhs().constant_part().is_zero() ||
              f.lhs().has_symbols() || f.rhs().has_symbols())
                 ? 1
                 : 0;
    default: {
      int64_t n = 0;
      for (const auto& k : f.kids()) n += impure_atoms(k);
      return n;
    }
  }
}

constexpr int kCorpusSize = 200;
constexpr int64_t kGrid = 504;

CriterionResult qe_soundness(const AcceptanceConfig& cfg) {
  CriterionResult r = named(4, "QE output quantifier-free and pointwise equivalent (200 formulas, grid 504)");
  auto t0 = Clock::now();
  std::vector<Formula> corpus = random_corpus(cfg.seed, kCorpusSize);
  std::vector<double> times;
  int64_t shape_bad = 0, not_qf = 0, hard = 0, soft = 0, unresolved = 0, checked = 0;
  std::string first;
  for (const Formula& f : corpus) {
    if (f.quantifier_count() > 3 || f.free_vars().size() > 3) ++shape_bad;
    auto s = Clock::now();
    QEResult q = eliminate(f);
    times.push_back(since(s));
    if (!q.output.is_quantifier_free()) ++not_qf;
    PointwiseReport rep = pointwise_check(f, q.output, kGrid, 12 * kGrid);
    checked += rep.checked;
    soft += rep.soft;
    unresolved += rep.unresolved;
    if (!rep.agree) {
      ++hard;
      if (first.empty()) first = print(f) + " at " + format_assignment(rep.first->assignment);
    }
  }
  std::sort(times.begin(), times.end());
  double median = (times[kCorpusSize / 2 - 1] + times[kCorpusSize / 2]) / 2;
  r.seconds = since(t0);
  std::ostringstream detail;
  detail << corpus.size() << " formulas, " << checked << " points, " << hard << " hard mismatches, "
         << soft << " soft resolved at grid " << 12 * kGrid << ", " << unresolved << " soft unresolved, "
         << not_qf << " not quantifier-free; median " << median * 1000 << "ms, max "
         << times.back() * 1000 << "ms";
  if (shape_bad) detail << "; " << shape_bad << " corpus formulas outside the size limits";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = hard == 0 && not_qf == 0 && shape_bad == 0 && median <= 1.0;
  return r;
}

CriterionResult purge(const AcceptanceConfig& cfg) {
  CriterionResult r = named(5, "pure-L purge has no constants or D_n and is pointwise equivalent");
  auto t0 = Clock::now();
  std::vector<Formula> corpus = random_corpus(cfg.seed, kCorpusSize);
  int64_t impure = 0, hard = 0, checked = 0;
  std::string first;
  for (const Formula& f : corpus) {
    Formula qf = eliminate(f).output;
    Formula pure = purge_constants(qf);
    int64_t left = impure_atoms(pure);
    impure += left;
    if (left && first.empty()) first = "impure atoms in purge of " + print(qf);
    PointwiseReport rep = pointwise_check(qf, pure, kGrid);
    checked += rep.checked;
    if (!rep.agree) {
      ++hard;
      if (first.empty()) first = print(qf) + " at " + format_assignment(rep.first->assignment);
    }
  }
  r.seconds = since(t0);
  std::ostringstream detail;
  detail << corpus.size() << " formulas, " << checked << " points, " << impure
         << " fraction or D_n atoms left, " << hard << " mismatches";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = impure == 0 && hard == 0;
  return r;
}

CriterionResult golden() {
  CriterionResult r = named(6, "golden decision suite with checked witnesses");
  auto t0 = Clock::now();
  const auto& suite = golden_sentences();
  int64_t right = 0, falses = 0, witnesses = 0, bad_witness = 0;
  std::string first;
  for (const auto& g : suite) {
    if (!g.expected) ++falses;
    Formula f = parse(g.text);
    Decision d = decide(f);
    if (d.value == g.expected) {
      ++right;
    } else if (first.empty()) {
      first = g.text;
    }
    Formula n = normalize(f);
    if (d.value && n.op() == Op::Exists) {
      // Witness checked by bounded search, not by the decision procedure.
      bool ok = d.witness && d.witness_var == n.var() &&
                bounded_eval(substitute(n.body(), n.var(), LinearTerm::constant(*d.witness)), {}, kGrid);
      ++witnesses;
      if (!ok) {
        ++bad_witness;
        if (first.empty()) first = "witness for " + g.text;
      }
    }
  }
  r.seconds = since(t0);
  std::ostringstream detail;
  detail << right << "/" << suite.size() << " verdicts (" << falses << " false sentences), "
         << witnesses - bad_witness << "/" << witnesses << " witnesses confirmed";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = right == static_cast<int64_t>(suite.size()) && suite.size() == 25 && falses == 5 &&
           bad_witness == 0;
  return r;
}

CriterionResult hyper(const AcceptanceConfig& cfg) {
  CriterionResult r = named(7, "hyperreal property suites (10^4 samples)");
  auto t0 = Clock::now();
  HyperSuiteConfig hc;
  hc.samples = 10000;
  hc.seed = cfg.seed;
  hc.cut_model = GroupDescriptor::quadratic(2);
  std::vector<HyperSuiteResult> res = hyper_check(hc);
  r.seconds = since(t0);
  int64_t passed = 0;
  std::string first;
  for (const auto& s : res) {
    if (s.pass) {
      ++passed;
    } else if (first.empty()) {
      first = s.name + ": " + s.detail;
    }
  }
  std::ostringstream detail;
  detail << passed << "/" << res.size() << " suites pass in " << fmt_seconds(r.seconds) << " (limit 30s)";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = passed == static_cast<int64_t>(res.size()) && !res.empty() && r.seconds <= 30;
  return r;
}

// ---------------------------------------------------------------- indices

// Orders of the elements j/2^e of Z[1/2]/Z with e <= 5, found by adding
// the element to itself until it returns to 0. Any element of order
// n <= 20 has denominator n < 32, so the list is complete up to 20.
std::set<int64_t> loc2_orders() {
  std::set<int64_t> orders;
  for (int64_t j = 0; j < 32; ++j) {
    CircleElement x(Rational(j, 32)), acc = x;
    int64_t order = 1;
    while (!acc.is_zero()) {
      acc = add_mod1(acc, x);
      ++order;
    }
    orders.insert(order);
  }
  return orders;
}

CriterionResult indices() {
  CriterionResult r = named(8, "indices of quad:2, N_G for loc:2, multiplicative closure");
  auto t0 = Clock::now();
  std::string first;
  auto fail = [&](const std::string& s) {
    if (first.empty()) first = s;
  };

  GroupDescriptor q = GroupDescriptor::quadratic(2);
  int64_t index_ok = 0;
  for (int64_t n = 2; n <= 8; ++n) {
    IndexReport rep = index(q, n);
    // The group is {b*sqrt(2) mod 1}; nG is b = 0 mod n, so certificates
    // must hit every residue of b mod n exactly once.
    std::set<int64_t> residues;
    bool ok = rep.exact && rep.value == n && static_cast<int64_t>(rep.certificate.size()) == n;
    for (const CircleElement& c : rep.certificate) {
      if (!q.contains(c) || !c.b().is_integer() || !c.a().is_integer()) {
        ok = false;
        break;
      }
      residues.insert(((c.b().num() % n) + n) % n);
    }
    ok = ok && static_cast<int64_t>(residues.size()) == n;
    if (ok) {
      ++index_ok;
    } else {
      fail("index(quad:2, " + std::to_string(n) + ") = " + std::to_string(rep.value));
    }
  }

  GroupDescriptor loc2 = GroupDescriptor::localized({2});
  std::set<int64_t> orders = loc2_orders();
  int64_t ng_ok = 0;
  for (int64_t n = 1; n <= 20; ++n) {
    if (in_NG(loc2, n) == !orders.count(n)) {
      ++ng_ok;
    } else {
      fail("in_NG(loc:2, " + std::to_string(n) + ")");
    }
  }

  int64_t pairs = 0, closure_bad = 0;
  for (const char* text : {"D", "loc:2", "loc:3", "loc:2,3", "quad:2", "quad:3", "loc:2+quad:2"}) {
    GroupDescriptor m = GroupDescriptor::parse(text);
    for (int64_t a = 1; a <= 20; ++a)
      for (int64_t b = 1; b <= 20; ++b) {
        if (!in_NG(m, a) || !in_NG(m, b)) continue;
        ++pairs;
        if (!in_NG(m, a * b)) {
          ++closure_bad;
          fail(std::string("closure in ") + text + " at " + std::to_string(a) + "*" + std::to_string(b));
        }
      }
  }

  r.seconds = since(t0);
  std::ostringstream detail;
  detail << index_ok << "/7 indices certified (n = 2..8), " << ng_ok << "/20 N_G memberships, " << pairs
         << " closure pairs, " << closure_bad << " violations";
  if (!first.empty()) detail << "; first: " << clip(first);
  r.detail = detail.str();
  r.pass = index_ok == 7 && ng_ok == 20 && closure_bad == 0;
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  switch (id) {
    case 1: return axioms_in_D();
    case 2: return axioms_case_two();
    case 3: return torsion_tables();
    case 4: return qe_soundness(cfg);
    case 5: return purge(cfg);
    case 6: return golden();
    case 7: return hyper(cfg);
    case 8: return indices();
    default: throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  }
}

}  // namespace decimals
