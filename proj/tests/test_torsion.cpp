#include <fstream>
#include <sstream>

#include "decimals/torsion.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

const GroupDescriptor kD = GroupDescriptor::full();

bool at(const Formula& f, const Rational& x) { return evaluate(f, kD, {{"x", CircleElement(x)}}); }

// Atoms are j*x < k*x, j*x = k*x or x = 0 style: one variable, no constant.
bool constant_free_single_var(const Formula& f) {
  if (f.op() == Op::Less || f.op() == Op::Eq) {
    for (const LinearTerm* t : {&f.lhs(), &f.rhs()}) {
      if (!t->constant_part().is_zero() || t->has_symbols()) return false;
      for (const auto& [v, k] : t->vars())
        if (v != "x") return false;
    }
    return true;
  }
  if (f.op() == Op::Dn || f.is_quantifier()) return false;
  for (const auto& k : f.kids())
    if (!constant_free_single_var(k)) return false;
  return true;
}

}  // namespace

TEST_CASE("subdivision for n = 2 and n = 3") {
  const SubdivisionTable& t2 = build_subdivision(2);
  REQUIRE(t2.cells.size() == 2);
  CHECK(t2.cells[0].hi == Rational(1, 2));
  CHECK(t2.cells[0].sigma == std::vector<int64_t>{1, 2});
  CHECK(t2.cells[1].sigma == std::vector<int64_t>{2, 1});
  const SubdivisionTable& t3 = build_subdivision(3);
  CHECK(t3.breakpoints == std::vector<Rational>{Rational(1, 3), Rational(1, 2), Rational(2, 3)});
  REQUIRE(t3.cells.size() == 4);
  CHECK(t3.cells[0].sigma == std::vector<int64_t>{1, 2, 3});
  // Midpoint oracle for each cell.
  for (const Cell& c : t3.cells) {
    Rational mid = (c.lo + c.hi) / Rational(2);
    for (size_t k = 0; k + 1 < c.sigma.size(); ++k)
      CHECK((mid * Rational(c.sigma[k])).frac() < (mid * Rational(c.sigma[k + 1])).frac());
  }
  for (size_t i = 0; i + 1 < t3.cells.size(); ++i) CHECK(t3.cells[i].sigma != t3.cells[i + 1].sigma);
}

TEST_CASE("cells are strictly ordered at interior samples") {
  for (int64_t n = 2; n <= 12; ++n) {
    const SubdivisionTable& t = build_subdivision(n);
    for (const Cell& c : t.cells) {
      for (int64_t s = 1; s <= 7; ++s) {
        Rational x = c.lo + (c.hi - c.lo) * Rational(s, 8);
        for (size_t k = 0; k + 1 < c.sigma.size(); ++k)
          CHECK((x * Rational(c.sigma[k])).frac() < (x * Rational(c.sigma[k + 1])).frac());
      }
    }
  }
}

TEST_CASE("cells adjacent at k/(n+1) are split by x versus (n+1)x") {
  for (int64_t n = 2; n <= 10; ++n) {
    const SubdivisionTable& t = build_subdivision(n + 1);
    for (size_t c = 0; c + 1 < t.cells.size(); ++c) {
      const Rational& b = t.cells[c].hi;
      if (b.den() != n + 1) continue;
      Rational left = (t.cells[c].lo + b) / Rational(2), right = (b + t.cells[c + 1].hi) / Rational(2);
      CHECK(left < (left * Rational(n + 1)).frac());
      CHECK((right * Rational(n + 1)).frac() < right);
    }
  }
}

TEST_CASE("theta and phi formulas") {
  CHECK(print(theta(1, 2)) == "x != 0 & 2*x = 0");
  CHECK(print(theta(1, 3)) == "x != 0 & 3*x = 0 & x < 2*x");
  CHECK(print(theta(2, 4)) == "x != 0 & 2*x = 0");
  CHECK(print(phi(1, 2)) == "x < 2*x | x = 0");
  CHECK(print(phi(1, 3)) == "x < 2*x & 2*x < 3*x | x = 0");
  CHECK(print(phi(1, 4)) == "x < 2*x & 2*x < 3*x & 3*x < 4*x | x = 0");
  // theta(2,3) against exhaustive rationals with denominator <= 60.
  Formula t23 = theta(2, 3);
  CHECK(at(t23, Rational(2, 3)));
  CHECK_FALSE(at(t23, Rational(1, 3)));
  CHECK_FALSE(at(t23, Rational(1, 6)));
  CHECK_FALSE(at(t23, Rational(5, 6)));
  for (int64_t d = 1; d <= 60; ++d)
    for (int64_t k = 0; k < d; ++k) CHECK(at(t23, Rational(k, d)) == (Rational(k, d) == Rational(2, 3)));
  // phi(1,2) and phi(2,3) against direct comparison at k/720.
  Formula p12 = phi(1, 2), p23 = phi(2, 3);
  for (int64_t k = 0; k < 720; ++k) {
    CHECK(at(p12, Rational(k, 720)) == (Rational(k, 720) < Rational(1, 2)));
    CHECK(at(p23, Rational(k, 720)) == (Rational(k, 720) < Rational(2, 3)));
  }
}

TEST_CASE("emitted formulas are constant-free and quantifier-free") {
  for (int64_t n = 2; n <= 12; ++n)
    for (int64_t i = 1; i < n; ++i) {
      CHECK(constant_free_single_var(theta(i, n)));
      CHECK(constant_free_single_var(phi(i, n)));
      CHECK(theta(i, n).is_quantifier_free());
    }
}

TEST_CASE("theta and phi exact for n <= 12 at denominators <= 240") {
  for (int64_t n = 2; n <= 12; ++n) {
    for (int64_t i = 1; i < n; ++i) {
      Formula t = theta(i, n), p = phi(i, n);
      Rational c(i, n);
      for (int64_t d = 1; d <= 240; d += (d < 60 ? 1 : 7)) {
        for (int64_t k = 0; k < d; ++k) {
          Rational x(k, d);
          CHECK(at(t, x) == (x == c));
          CHECK(at(p, x) == (x < c));
        }
      }
    }
  }
}

TEST_CASE("tables match the golden files") {
  for (int64_t n = 2; n <= 6; ++n) {
    CAPTURE(n);
    std::ifstream in(std::string(DECIMALS_TABLES_DIR) + "/torsion_n" + std::to_string(n) + ".txt");
    REQUIRE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(format_table(n) == golden.str());
  }
}
