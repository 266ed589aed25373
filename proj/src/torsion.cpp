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

#include "decimals/torsion.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace decimals {

namespace {

// Order of k*x mod 1 for k = 1..n at a point with no ties.
std::vector<int64_t> order_at(const Rational& x, int64_t n) {
  std::vector<std::pair<Rational, int64_t>> vals;
  for (int64_t k = 1; k <= n; ++k) vals.emplace_back((x * Rational(k)).frac(), k);
  std::sort(vals.begin(), vals.end());
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i].first == vals[i + 1].first) throw std::logic_error("tie inside a cell");
  if (vals.front().first.is_zero()) throw std::logic_error("wrap inside a cell");
  std::vector<int64_t> sigma;
  for (const auto& v : vals) sigma.push_back(v.second);
  return sigma;
}

// True if some t/m lies strictly inside ]lo, hi[.
bool hits(const Rational& lo, const Rational& hi, int64_t m) {
  int64_t t = (lo * Rational(m)).floor() + 1;
  return Rational(t, m) < hi;
}

SubdivisionTable compute(int64_t n) {
  SubdivisionTable tab;
  tab.n = n;
  std::set<Rational> pts;
  for (int64_t k = 2; k <= n; ++k)
    for (int64_t i = 1; i < k; ++i) pts.insert(Rational(i, k));
  tab.breakpoints.assign(pts.begin(), pts.end());
  std::vector<Rational> ends{Rational(0)};
  ends.insert(ends.end(), tab.breakpoints.begin(), tab.breakpoints.end());
  ends.push_back(Rational(1));
  for (size_t c = 0; c + 1 < ends.size(); ++c) {
    Cell cell{ends[c], ends[c + 1], {}};
    cell.sigma = order_at((cell.lo + cell.hi) / Rational(2), n);
    Rational second = cell.lo + (cell.hi - cell.lo) / Rational(3);
    if (order_at(second, n) != cell.sigma) throw std::logic_error("sigma not constant on cell");
    // jx - kx and kx can only change sign at multiples of 1/m, m <= n.
    for (int64_t m = 1; m <= n; ++m)
      if (hits(cell.lo, cell.hi, m)) throw std::logic_error("crossing inside a cell");
    if (!tab.cells.empty() && tab.cells.back().sigma == cell.sigma)
      throw std::logic_error("adjacent cells share a permutation");
    tab.cells.push_back(std::move(cell));
  }
  return tab;
}

}  // namespace

const SubdivisionTable& build_subdivision(int64_t n) {
  if (n < 2) throw std::invalid_argument("subdivision needs n >= 2");
  static std::mutex mu;
  static std::map<int64_t, std::unique_ptr<SubdivisionTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SubdivisionTable>(compute(n));
  return *slot;
}

Formula chain_formula(const std::vector<int64_t>& sigma, const std::string& var) {
  std::vector<Formula> atoms;
  for (size_t i = 0; i + 1 < sigma.size(); ++i)
    atoms.push_back(Formula::less(LinearTerm::var(var, sigma[i]), LinearTerm::var(var, sigma[i + 1])));
  return Formula::conj(std::move(atoms));
}

Formula theta(int64_t i, int64_t n, const std::string& var) {
  if (n < 2 || i < 1 || i >= n) throw std::invalid_argument("theta needs 1 <= i < n");
  Rational c(i, n);
  int64_t q = c.den();
  std::vector<std::pair<Rational, int64_t>> mult;
  for (int64_t k = 1; k < q; ++k) mult.emplace_back((c * Rational(k)).frac(), k);
  std::sort(mult.begin(), mult.end());
  std::vector<int64_t> sigma;
  for (const auto& m : mult) sigma.push_back(m.second);
  std::vector<Formula> parts{Formula::neq(LinearTerm::var(var), LinearTerm()),
                             Formula::eq(LinearTerm::var(var, q), LinearTerm())};
  Formula chain = chain_formula(sigma, var);
  if (chain.op() == Op::And) parts.insert(parts.end(), chain.kids().begin(), chain.kids().end());
  else if (chain.op() != Op::True) parts.push_back(chain);
  return Formula::conj(std::move(parts));
}

Formula phi(int64_t i, int64_t n, const std::string& var) {
  if (n < 2 || i < 1 || i >= n) throw std::invalid_argument("phi needs 1 <= i < n");
  Rational c(i, n);
  const SubdivisionTable& tab = build_subdivision(c.den());
  std::vector<Formula> parts;
  size_t b = 0;
  for (const Cell& cell : tab.cells) {
    if (cell.hi > c) break;
    if (cell.lo > Rational(0)) {
      const Rational& bp = tab.breakpoints[b++];
      parts.push_back(theta(bp.num(), bp.den(), var));
    }
    parts.push_back(chain_formula(cell.sigma, var));
  }
  parts.push_back(Formula::eq(LinearTerm::var(var), LinearTerm()));
  return Formula::disj(std::move(parts));
}

Formula theta_at(const Rational& c, const LinearTerm& t) {
  if (c.is_zero()) return Formula::eq(t, LinearTerm());
  return substitute(theta(c.num(), c.den(), "x"), "x", t);
}

Formula phi_at(const Rational& c, const LinearTerm& t) {
  if (c.is_zero()) return Formula::truth(false);
  return substitute(phi(c.num(), c.den(), "x"), "x", t);
}

std::string format_table(int64_t n) {
  const SubdivisionTable& tab = build_subdivision(n);
  std::ostringstream out;
  out << "n = " << n << "\n";
  out << "breakpoints:";
  for (const auto& b : tab.breakpoints) out << " " << b.str();
  out << "\n";
  for (size_t c = 0; c < tab.cells.size(); ++c) {
    const Cell& cell = tab.cells[c];
    out << "cell " << c << " ]" << cell.lo.str() << ", " << cell.hi.str() << "[ sigma=(";
    for (size_t k = 0; k < cell.sigma.size(); ++k) out << (k ? "," : "") << cell.sigma[k];
    out << ") " << print(chain_formula(cell.sigma)) << "\n";
  }
  for (int64_t i = 1; i < n; ++i) out << "theta(" << i << "," << n << "): " << print(theta(i, n)) << "\n";
  for (int64_t i = 1; i < n; ++i) out << "phi(" << i << "," << n << "): " << print(phi(i, n)) << "\n";
  return out.str();
}

}  // namespace decimals
