#include <random>
#include <set>

#include "decimals/circle.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

CircleElement q(int64_t n, int64_t d) { return CircleElement(Rational(n, d)); }
CircleElement el(const char* s) { return parse_element(s); }

}  // namespace

TEST_CASE("add and negate mod 1") {
  CHECK(add_mod1(q(2, 3), q(2, 3)) == q(1, 3));
  CHECK(add_mod1(el("sqrt(2)-1"), el("2-sqrt(2)")) == CircleElement());
  CHECK(add_mod1(CircleElement(), q(3, 7)) == q(3, 7));
  CHECK(neg_mod1(q(1, 3)) == q(2, 3));
  CHECK(neg_mod1(CircleElement()) == CircleElement());
  CHECK_THROWS_AS(add_mod1(el("sqrt(2)"), el("sqrt(3)")), std::invalid_argument);
}

TEST_CASE("div_n returns the least part") {
  CHECK(div_n(q(1, 2), 2) == q(1, 4));
  CHECK(div_n(CircleElement(), 3) == CircleElement());
  CircleElement x = el("sqrt(2)");
  CircleElement y = div_n(x, 3);
  CHECK(mul_mod1(3, y) == x);
  for (int i = 1; i < 3; ++i) CHECK(y < add_mod1(y, q(i, 3)));
}

TEST_CASE("quadratic normalization and exact order") {
  CircleElement a = el("sqrt(2)");
  CHECK(a.a() == Rational(-1));
  CHECK(a.b() == Rational(1));
  CHECK(a.str() == "-1+sqrt(2)");
  // -2 sqrt 2 mod 1 = 3 - 2 sqrt 2
  CircleElement b = mul_mod1(-2, a);
  CHECK(b == el("3-2*sqrt(2)"));
  CHECK(b < a);
  CHECK(quadratic_sign(Rational(99, 70), Rational(-1), 2) == 1);  // 99/70 > sqrt 2
  CHECK(quadratic_sign(Rational(140, 99), Rational(-1), 2) == -1);
  CHECK(quadratic_floor(Rational(0), Rational(1000), 2) == 1414);
}

TEST_CASE("group laws at random triples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> num(0, 719), coef(-30, 30);
  auto sample = [&]() {
    if (rng() % 2) return q(num(rng), 720);
    return CircleElement(Rational(num(rng), 720), Rational(coef(rng)), 2);
  };
  for (int i = 0; i < 10000; ++i) {
    CircleElement x = sample(), y = sample(), z = sample();
    CHECK(add_mod1(add_mod1(x, y), z) == add_mod1(x, add_mod1(y, z)));
    CHECK(add_mod1(x, y) == add_mod1(y, x));
    CHECK(add_mod1(x, neg_mod1(x)) == CircleElement());
    CHECK(!(x < CircleElement()));
    CHECK(((x < y) + (y < x) + (x == y)) == 1);
    if (x < y && y < z) CHECK(x < z);
    if (x < y && !x.is_zero()) CHECK(neg_mod1(y) < neg_mod1(x));
  }
}

TEST_CASE("div_n on the full circle") {
  for (int64_t n = 2; n <= 7; ++n) {
    for (int64_t k = 0; k < 60; ++k) {
      CircleElement x = q(k, 60);
      CircleElement y = div_n(x, n);
      CHECK(mul_mod1(n, y) == x);
      for (int64_t i = 0; i < n; ++i) CHECK(y <= add_mod1(y, q(i, n)));
    }
  }
}

TEST_CASE("descriptor text forms") {
  CHECK(GroupDescriptor::parse("D").is_full());
  CHECK(GroupDescriptor::parse("loc:2,3").primes() == std::vector<int64_t>{2, 3});
  CHECK(GroupDescriptor::parse("quad:2").radicand() == 2);
  CHECK(GroupDescriptor::parse("loc:2+quad:2").str() == "loc:2+quad:2");
  CHECK(GroupDescriptor::parse("quad:2").torsion_case() == TorsionCase::II);
  CHECK(GroupDescriptor::parse("loc:2+quad:2").torsion_case() == TorsionCase::I);
  CHECK_THROWS(GroupDescriptor::parse("loc:4"));
  CHECK_THROWS(GroupDescriptor::parse("quad:4"));
  CHECK_THROWS(GroupDescriptor::parse("E"));
}

TEST_CASE("torsion enumeration") {
  auto to_str = [](const std::vector<CircleElement>& v) {
    std::string s;
    for (auto& e : v) s += e.str() + " ";
    return s;
  };
  CHECK(to_str(enumerate_torsion(GroupDescriptor::full(), 3)) == "0 1/2 1/3 2/3 ");
  CHECK(to_str(enumerate_torsion(GroupDescriptor::parse("quad:2"), 9)) == "0 ");
  // Oracle: scan all k/8 and keep those of order <= 8, sorted by (order, value).
  auto loc2 = GroupDescriptor::parse("loc:2");
  std::vector<CircleElement> oracle{CircleElement()};
  for (int64_t order = 2; order <= 8; ++order)
    for (int64_t k = 1; k < 8; ++k)
      if (Rational(k, 8).den() == order) oracle.push_back(q(k, 8));
  CHECK(enumerate_torsion(loc2, 8) == oracle);
  CHECK(to_str(oracle) == "0 1/2 1/4 3/4 1/8 3/8 5/8 7/8 ");
}

TEST_CASE("rho interpretation") {
  auto D = GroupDescriptor::full();
  CHECK(rho_interpretation(D, 0) == CircleElement());
  CHECK(rho_interpretation(D, 1) == q(1, 2));
  CHECK(rho_interpretation(D, 3) == q(2, 3));
  CHECK(rho_interpretation(D, 12) == q(1, 7));
  auto Q = GroupDescriptor::parse("quad:2");
  CHECK(rho_interpretation(Q, 0) == CircleElement());
  CHECK(rho_interpretation(Q, 1) == el("sqrt(2)-1"));
  CHECK(rho_interpretation(Q, 2) == el("3-2*sqrt(2)"));
  CHECK(rho_interpretation(Q, 3) == el("3*sqrt(2)-4"));
  // rho_{i/n}: least index landing in ](i-1)/n, i/n].
  CHECK(rho_fraction_index(D, 1, 2) == 1);  // 1/2
  CHECK(rho_fraction_index(D, 2, 2) == 3);  // 2/3
  CHECK(rho_fraction_index(D, 2, 3) == 1);  // 1/2
  CHECK_THROWS_AS(rho_interpretation(D, 100000, 50), std::out_of_range);
}

TEST_CASE("indices") {
  CHECK(index(GroupDescriptor::full(), 7).value == 1);
  auto loc2 = GroupDescriptor::parse("loc:2");
  IndexReport r3 = index(loc2, 3);
  CHECK(r3.value == 1);
  CHECK(r3.exact);
  // Oracle: every k/2^j is 3 * (k'/2^j) for some k'.
  for (int64_t j = 1; j <= 5; ++j) {
    int64_t den = int64_t{1} << j;
    for (int64_t k = 0; k < den; ++k) {
      bool found = false;
      for (int64_t kk = 0; kk < den && !found; ++kk) found = (3 * kk - k) % den == 0;
      CHECK(found);
    }
  }
  auto Q = GroupDescriptor::parse("quad:2");
  IndexReport r5 = index(Q, 5);
  CHECK(r5.value == 5);
  CHECK(r5.exact);
  // Oracle: cosets of b*sqrt2 modulo 5Z are the residues b mod 5.
  std::set<int64_t> residues;
  for (const auto& c : r5.certificate) residues.insert(((c.b().num() % 5) + 5) % 5);
  CHECK(residues.size() == 5);
  // [G:nG] <= [Z+Z sqrt2 : n(Z+Z sqrt2)] = n^2 <= n [G:nG]
  for (int64_t n = 2; n <= 6; ++n) {
    int64_t g = index(Q, n).value;
    int64_t lattice = n * n;
    CHECK(g <= lattice);
    CHECK(lattice <= n * g);
  }
}

TEST_CASE("N_G membership") {
  auto D = GroupDescriptor::full();
  for (int64_t n = 1; n <= 30; ++n) CHECK_FALSE(in_NG(D, n));
  auto loc2 = GroupDescriptor::parse("loc:2");
  CHECK(in_NG(loc2, 3));
  CHECK_FALSE(in_NG(loc2, 4));
  CHECK(in_NG(loc2, 6));
  auto Q = GroupDescriptor::parse("quad:2");
  for (int64_t n = 2; n <= 30; ++n) CHECK(in_NG(Q, n));
  for (const char* model : {"D", "loc:2", "loc:3,5", "quad:2", "loc:2+quad:3"}) {
    auto m = GroupDescriptor::parse(model);
    for (int64_t a = 1; a <= 20; ++a)
      for (int64_t b = 1; b <= 20; ++b)
        if (in_NG(m, a) && in_NG(m, b)) CHECK(in_NG(m, a * b));
  }
}

TEST_CASE("D_n evaluation") {
  auto D = GroupDescriptor::full();
  DnResult r = holds_Dn(D, 3, q(1, 2), q(1, 5));
  CHECK(r.truth == Truth::True);
  CHECK(r.z2 == q(1, 10));
  CHECK(add_mod1(q(1, 2), mul_mod1(3, r.z1)) == add_mod1(q(1, 5), mul_mod1(3, r.z2)));
  auto loc2 = GroupDescriptor::parse("loc:2");
  DnResult s = holds_Dn(loc2, 3, q(1, 2), q(1, 4));
  CHECK(s.truth == Truth::True);
  CHECK(loc2.contains(s.z2));
  CHECK(add_mod1(q(1, 2), mul_mod1(3, s.z1)) == add_mod1(q(1, 4), mul_mod1(3, s.z2)));
  auto Q = GroupDescriptor::parse("quad:2");
  CircleElement x = el("sqrt(2)");
  DnResult t = holds_Dn(Q, 4, x, x);
  CHECK(t.truth == Truth::True);
  CHECK(t.z1.is_zero());
  CHECK(t.z2.is_zero());
  CHECK(holds_Dn(Q, 2, x, CircleElement()).truth == Truth::False);
  CHECK(holds_Dn(Q, 2, mul_mod1(2, x), CircleElement()).truth == Truth::True);
}

TEST_CASE("cyclic density") {
  auto Q = GroupDescriptor::parse("quad:2");
  CHECK(cyclic_density_check(Q, el("sqrt(2)"), 100).dense);
  auto C = GroupDescriptor::parse("loc:2+quad:2");
  CHECK(cyclic_density_check(C, add_mod1(q(1, 2), el("sqrt(2)")), 50).dense);
  CHECK_THROWS_AS(cyclic_density_check(GroupDescriptor::full(), q(1, 3), 10), std::invalid_argument);
}

TEST_CASE("elements in intervals") {
  auto Q = GroupDescriptor::parse("quad:2");
  auto w = find_in_interval(Q, q(1, 10), q(1, 7));
  REQUIRE(w);
  CHECK(Q.contains(*w));
  CHECK(q(1, 10) < *w);
  CHECK(*w < q(1, 7));
  auto loc3 = GroupDescriptor::parse("loc:3");
  auto v = find_in_interval(loc3, q(1, 2), std::nullopt);
  REQUIRE(v);
  CHECK(loc3.contains(*v));
  CHECK(q(1, 2) < *v);
}
