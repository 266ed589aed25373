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


#include "decimals/pointwise.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>
#include <stdexcept>

namespace decimals {

namespace {

struct CTerm {
  std::vector<std::pair<int, int64_t>> k;
  int64_t c = 0;  // scaled constant in [0, L)
};

struct CNode {
  Op op = Op::True;
  int t1 = -1, t2 = -1;
  std::vector<int> kids;
  int var = -1;
  bool cells = false;            // quantifier decided by critical points
  int depth = 0;                 // enclosing quantifiers
  std::vector<int> criticals;    // terms whose zeros bound the cells
  bool qf = false;
};

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

struct GridEvaluator::Impl {
  int64_t grid = 1, L = 1;
  bool use_cells = true;
  std::map<std::string, int> var_index;
  std::vector<CTerm> terms;
  std::map<std::pair<std::vector<std::pair<int, int64_t>>, int64_t>, int> term_index;
  std::vector<LinearTerm> pending;  // source terms, scaled once L is known
  std::vector<CNode> nodes;
  std::vector<int> roots;

  int var(const std::string& v) {
    auto [it, fresh] = var_index.emplace(v, static_cast<int>(var_index.size()));
    return it->second;
  }

  int term(const LinearTerm& t) {
    if (t.has_symbols()) throw std::invalid_argument("symbolic term in grid evaluation");
    auto it = pending_index.find(t);
    if (it != pending_index.end()) return it->second;
    for (const auto& [v, k] : t.vars()) var(v);
    pending.push_back(t);
    pending_index.emplace(t, static_cast<int>(pending.size()) - 1);
    return static_cast<int>(pending.size()) - 1;
  }

  std::map<LinearTerm, int> pending_index;
  std::unordered_map<const void*, int> shared;  // quantifier-free nodes already compiled
  // Per-node cache for quantifier-free nodes, valid while stamp matches.
  mutable std::vector<uint64_t> stamp;
  mutable std::vector<char> cached;
  mutable uint64_t now = 1;

  int depth = 0, max_depth = 0;
  int64_t refine = 1;

  int compile(const Formula& f) {
    bool qf = f.is_quantifier_free();
    if (qf) {
      auto it = shared.find(f.id());
      if (it != shared.end()) return it->second;
    }
    CNode n;
    n.op = f.op();
    n.depth = depth;
    n.qf = qf;
    switch (f.op()) {
      case Op::Less:
      case Op::Eq:
      case Op::Dn:
        n.t1 = term(f.lhs());
        n.t2 = term(f.rhs());
        break;
      case Op::Exists:
      case Op::Forall: {
        n.var = var(f.var());
        ++depth;
        max_depth = std::max(max_depth, depth);
        n.kids.push_back(compile(f.body()));
        --depth;
        n.cells = use_cells && f.body().is_quantifier_free();
        if (n.cells) {
          std::set<LinearTerm> crit;
          std::set<const void*> seen;
          std::function<void(const Formula&)> walk = [&](const Formula& g) {
            if (!seen.insert(g.id()).second) return;
            if (g.op() == Op::Less) {
              for (const LinearTerm& t : {g.lhs(), g.rhs(), g.lhs() - g.rhs()})
                if (t.coeff(f.var()) != 0) crit.insert(t);
            } else if (g.op() == Op::Eq) {
              LinearTerm t = g.lhs() - g.rhs();
              if (t.coeff(f.var()) != 0) crit.insert(t);
            } else if (!g.is_atom()) {
              for (const auto& k : g.kids()) walk(k);
            }
          };
          walk(f.body());
          for (const auto& t : crit) n.criticals.push_back(term(t));
        }
        break;
      }
      case Op::Not:
      case Op::And:
      case Op::Or:
      case Op::Implies:
        for (const auto& k : f.kids()) n.kids.push_back(compile(k));
        break;
      default:
        break;
    }
    nodes.push_back(std::move(n));
    int id = static_cast<int>(nodes.size()) - 1;
    if (qf) shared.emplace(f.id(), id);
    return id;
  }

  void finish(int64_t g) {
    grid = g;
    // L: common denominator of the grid and constants, times every
    // critical coefficient (so zeros are grid points) and 2 for midpoints.
    int64_t l0 = g, kl = 1;
    for (int d = 0; d < max_depth; ++d) l0 = checked_lcm(l0, g * ipow(refine, d));
    for (const auto& t : pending) l0 = checked_lcm(l0, t.constant_part().den());
    for (const auto& n : nodes)
      for (int c : n.criticals)
        for (const auto& [v, k] : pending[c].vars())
          if (var_index.at(v) == n.var) kl = checked_lcm(kl, std::abs(k));
    L = checked_lcm(l0, 1) * kl * 2;
    stamp.assign(nodes.size(), 0);
    cached.assign(nodes.size(), 0);
    if (L > (int64_t(1) << 50)) throw OverflowError("grid scale too large");
    terms.clear();
    for (const auto& t : pending) {
      CTerm c;
      for (const auto& [v, k] : t.vars()) c.k.emplace_back(var_index.at(v), k);
      Rational sc = t.constant_part() * Rational(L);
      c.c = mod(sc.num(), L);
      terms.push_back(std::move(c));
    }
  }

  int64_t value(int t, const std::vector<int64_t>& env) const {
    const CTerm& c = terms[t];
    __int128 s = c.c;
    for (const auto& [v, k] : c.k) s += static_cast<__int128>(k) * env[v];
    int64_t r = static_cast<int64_t>(s % L);
    return r < 0 ? r + L : r;
  }

  // value of t with var v zeroed, and the coefficient of v.
  std::pair<int64_t, int64_t> split(int t, int v, const std::vector<int64_t>& env) const {
    const CTerm& c = terms[t];
    __int128 s = c.c;
    int64_t kv = 0;
    for (const auto& [w, k] : c.k) {
      if (w == v) kv += k;
      else s += static_cast<__int128>(k) * env[w];
    }
    int64_t r = static_cast<int64_t>(s % L);
    return {r < 0 ? r + L : r, kv};
  }

  bool eval(int id, std::vector<int64_t>& env, bool& exact) const {
    const CNode& n = nodes[id];
    if (n.qf && n.kids.size() > 0) {
      if (stamp[id] == now) return cached[id];
      bool v = eval_node(n, env, exact);
      stamp[id] = now;
      cached[id] = v;
      return v;
    }
    return eval_node(n, env, exact);
  }

  bool eval_node(const CNode& n, std::vector<int64_t>& env, bool& exact) const {
    switch (n.op) {
      case Op::True:
        return true;
      case Op::False:
        return false;
      case Op::Less:
        return value(n.t1, env) < value(n.t2, env);
      case Op::Eq:
        return value(n.t1, env) == value(n.t2, env);
      case Op::Dn:
        return true;  // Q/Z is divisible
      case Op::Not:
        return !eval(n.kids[0], env, exact);
      case Op::And:
        for (int k : n.kids)
          if (!eval(k, env, exact)) return false;
        return true;
      case Op::Or:
        for (int k : n.kids)
          if (eval(k, env, exact)) return true;
        return false;
      case Op::Implies:
        return !eval(n.kids[0], env, exact) || eval(n.kids[1], env, exact);
      case Op::Exists:
      case Op::Forall: {
        bool want = n.op == Op::Exists;
        int64_t saved = env[n.var];
        bool result = !want;
        auto test = [&](int64_t z) {
          env[n.var] = z;
          ++now;
          if (eval(n.kids[0], env, exact) == want) {
            result = want;
            return true;
          }
          return false;
        };
        if (n.cells) {
          std::vector<int64_t> pts{0};
          for (int c : n.criticals) {
            auto [r, k] = split(c, n.var, env);
            if (k == 0) continue;
            int64_t kk = std::abs(k), rr = k > 0 ? r : mod(-r, L);
            // kk z + rr = j L, 0 <= z < L
            for (int64_t j = 0; j <= kk; ++j) {
              __int128 num = static_cast<__int128>(j) * L - rr;
              if (num < 0 || num >= static_cast<__int128>(kk) * L) continue;
              if (num % kk != 0) {
                exact = false;
                continue;
              }
              pts.push_back(static_cast<int64_t>(num / kk));
            }
          }
          std::sort(pts.begin(), pts.end());
          pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
          size_t m = pts.size();
          for (size_t i = 0; i < m; ++i) {
            int64_t next = i + 1 < m ? pts[i + 1] : L;
            if (next - pts[i] >= 2) pts.push_back(pts[i] + (next - pts[i]) / 2);
            if ((next - pts[i]) % 2 != 0 && next - pts[i] > 1) exact = false;
          }
          for (int64_t z : pts)
            if (test(z)) break;
        } else {
          exact = false;
          int64_t step = L / (grid * ipow(refine, n.depth));
          for (int64_t z = 0; z < L; z += step)
            if (test(z)) break;
        }
        env[n.var] = saved;
        ++now;
        return result;
      }
    }
    return false;
  }
};

GridEvaluator::GridEvaluator(const std::vector<Formula>& formulas, int64_t grid, bool cells, int64_t refine)
    : impl_(std::make_unique<Impl>()) {
  if (grid < 1 || refine < 1) throw std::invalid_argument("grid must be positive");
  impl_->use_cells = cells;
  impl_->refine = refine;
  for (const auto& f : formulas) impl_->roots.push_back(impl_->compile(f));
  impl_->finish(grid);
}
GridEvaluator::~GridEvaluator() = default;
GridEvaluator::GridEvaluator(GridEvaluator&&) noexcept = default;
GridEvaluator& GridEvaluator::operator=(GridEvaluator&&) noexcept = default;

int64_t GridEvaluator::scale() const { return impl_->L; }
int64_t GridEvaluator::grid() const { return impl_->grid; }

bool GridEvaluator::eval(size_t which, const std::map<std::string, Rational>& point, bool* exact) const {
  std::vector<int64_t> env(impl_->var_index.size(), 0);
  for (const auto& [v, x] : point) {
    auto it = impl_->var_index.find(v);
    if (it == impl_->var_index.end()) continue;
    Rational s = x.frac() * Rational(impl_->L);
    if (!s.is_integer()) throw std::invalid_argument("assignment off the evaluation scale: " + x.str());
    env[it->second] = s.num();
  }
  bool ex = true;
  ++impl_->now;
  bool r = impl_->eval(impl_->roots.at(which), env, ex);
  if (exact) *exact = ex;
  return r;
}

bool bounded_eval(const Formula& f, const std::map<std::string, Rational>& point, int64_t grid) {
  for (const auto& [v, x] : point) grid = checked_lcm(grid, x.den());
  return GridEvaluator({f}, grid).eval(0, point);
}

std::string format_assignment(const std::map<std::string, Rational>& a) {
  std::string out;
  for (const auto& [v, x] : a) {
    if (!out.empty()) out += ", ";
    out += v + "=" + x.str();
  }
  return out.empty() ? "(no variables)" : out;
}

PointwiseReport pointwise_check(const Formula& f, const Formula& g, int64_t denom, int64_t retry_grid) {
  std::set<std::string> fv = f.free_vars();
  for (const auto& v : g.free_vars()) fv.insert(v);
  std::vector<std::string> vars(fv.begin(), fv.end());
  GridEvaluator ev({f, g}, denom);
  std::optional<GridEvaluator> retry;
  PointwiseReport rep;
  std::vector<int64_t> idx(vars.size(), 0);
  while (true) {
    std::map<std::string, Rational> point;
    for (size_t i = 0; i < vars.size(); ++i) point[vars[i]] = Rational(idx[i], denom);
    ++rep.checked;
    bool fx = true, gx = true;
    bool a = ev.eval(0, point, &fx), b = ev.eval(1, point, &gx);
    if (a != b) {
      bool soft = !a && !fx && gx;
      if (soft && retry_grid > 0) {
        if (!retry) retry.emplace(std::vector<Formula>{f, g}, checked_lcm(retry_grid, denom));
        a = retry->eval(0, point);
      }
      if (a != b) {
        if (soft) {
          ++rep.unresolved;
          if (!rep.first_soft) rep.first_soft = PointwiseMismatch{point, a, b};
        } else {
          rep.agree = false;
          rep.first = PointwiseMismatch{point, a, b};
          return rep;
        }
      } else {
        ++rep.soft;
      }
    }
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == denom) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return rep;
}

}  // namespace decimals
