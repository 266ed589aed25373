#include "decimals/hyperreal.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

const GroupDescriptor kQuad = GroupDescriptor::quadratic(2);

HyperElement h(const Rational& s, std::vector<Rational> inf = {}) {
  return HyperElement{CircleElement(s), InfVec(std::move(inf))};
}

}  // namespace

TEST_CASE("addition cancels standard parts mod 1") {
  HyperElement a = h_add(h(Rational(1, 3), {1}), h(Rational(2, 3), {1}));
  CHECK(a.std.is_zero());
  CHECK(a.inf == InfVec({2}));
  CHECK(classify(a, kQuad).kind == CutTag::Kind::H00plus);

  HyperElement b = h_add(h(Rational(1, 3), {1}), h(Rational(2, 3), {-2}));
  CHECK(b.std.is_zero());
  CHECK(b.inf == InfVec({-1}));
  CHECK(classify(b, kQuad).kind == CutTag::Kind::H00minus);

  HyperElement x = h(Rational(3, 7));
  CHECK(h_equal(h_add(x, h(0)), x));
}

TEST_CASE("comparison") {
  CHECK(h_cmp(h(0, {-1}), h(Rational(9, 10), {5})) > 0);
  CHECK(h_cmp(h(Rational(1, 2), {-1}), h(Rational(1, 2))) < 0);
  CHECK(h_cmp(h(Rational(1, 2)), h(Rational(1, 2), {1})) < 0);
  CHECK(h_cmp(h(Rational(1, 5), {100}), h(Rational(1, 4), {-100})) < 0);
  // e2 is below every positive multiple of e1.
  CHECK(h_cmp(h(0, {0, 1000}), h(0, {Rational(1, 1000)})) < 0);
}

TEST_CASE("standard part") {
  CHECK(st(h(Rational(1, 4), {1})) == CircleElement(Rational(1, 4)));
  CHECK(st(h(0, {-1})).is_zero());
  CHECK(st(h(Rational(2, 3))) == CircleElement(Rational(2, 3)));
}

TEST_CASE("cuts over quad:2") {
  HyperElement z = h(Rational(1, 3), {1});
  CutTag t = classify(z, kQuad);
  CHECK(t.kind == CutTag::Kind::Cut);
  CHECK(t.i == 1);
  CHECK(t.n == 3);
  CHECK(t.sign > 0);
  HyperElement z3 = h_scale(3, z);
  CHECK(z3.std.is_zero());
  CHECK(z3.inf == InfVec({3}));

  HyperElement w = h(Rational(1, 3), {-1});
  CutTag tw = classify(w, kQuad);
  CHECK(tw.kind == CutTag::Kind::Cut);
  CHECK(tw.sign < 0);
  CutTag neg = classify(h_neg(w), kQuad);
  CHECK(neg.kind == CutTag::Kind::Cut);
  CHECK(neg.i == 2);
  CHECK(neg.n == 3);
  CHECK(neg.sign > 0);
}

TEST_CASE("no cuts in D") {
  const GroupDescriptor d = GroupDescriptor::full();
  for (int64_t n = 2; n <= 12; ++n)
    for (int64_t i = 1; i < n; ++i)
      for (int s : {-1, 1}) CHECK(classify(h(Rational(i, n), {s}), d).kind != CutTag::Kind::Cut);
}

TEST_CASE("wrap convention") {
  // (0, -e) is the largest element below 1; adding e returns to 0.
  HyperElement top = h(0, {-1});
  CHECK(h_equal(h_add(top, h(0, {1})), h(0)));
  CHECK(h_equal(h_neg(h(0, {1})), top));
  CHECK(h_cmp(h(Rational(999, 1000)), top) < 0);
}

TEST_CASE("property suites pass and are reproducible") {
  HyperSuiteConfig cfg;
  cfg.samples = 2000;
  auto a = hyper_check(cfg), b = hyper_check(cfg);
  REQUIRE(a.size() == 7);
  for (size_t i = 0; i < a.size(); ++i) {
    CAPTURE(a[i].name);
    CHECK(a[i].pass);
    CHECK(a[i].checked > 0);
    CHECK(a[i].checked == b[i].checked);
  }
}
