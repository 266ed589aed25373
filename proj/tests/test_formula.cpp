#include <random>

#include "decimals/formula.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

CircleElement q(int64_t n, int64_t d) { return CircleElement(Rational(n, d)); }
const GroupDescriptor kD = GroupDescriptor::full();

}  // namespace

TEST_CASE("parse builds the expected tree") {
  Formula f = parse("exists z (x < 2*z & 2*z < y)");
  REQUIRE(f.op() == Op::Exists);
  CHECK(f.var() == "z");
  REQUIRE(f.body().op() == Op::And);
  CHECK(f.body().kids()[0] == Formula::less(LinearTerm::var("x"), LinearTerm::var("z", 2)));
  CHECK(f.body().kids()[1] == Formula::less(LinearTerm::var("z", 2), LinearTerm::var("y")));

  Formula half = parse("y != 0 & 2*y = 0");
  REQUIRE(half.op() == Op::And);
  CHECK(half.kids()[0] == Formula::neq(LinearTerm::var("y"), LinearTerm()));
  CHECK(half.kids()[1] == Formula::eq(LinearTerm::var("y", 2), LinearTerm()));
  CHECK(evaluate(half, kD, {{"y", q(1, 2)}}));
  CHECK_FALSE(evaluate(half, kD, {{"y", q(1, 4)}}));

  Formula d = parse("D_3(x, y)");
  CHECK(d.op() == Op::Dn);
  CHECK(d.n() == 3);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("x < 5/3");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("x < 2/4"), ParseError);
  CHECK_THROWS_AS(parse("x < 1"), ParseError);
  CHECK_THROWS_AS(parse("x < y &"), ParseError);
  CHECK_THROWS_AS(parse("exists (x < y)"), ParseError);
  CHECK_THROWS_AS(parse("x # y"), ParseError);
}

TEST_CASE("printing") {
  LinearTerm x = LinearTerm::var("x");
  CHECK(print(Formula::less(x, x + x)) == "x < 2*x");
  CHECK(print(parse("x + 2/3 < y")) == "x + 2/3 < y");
  CHECK(print(parse("x - y < 0")) == "x - y < 0");
  CHECK(print(parse("0 - y < 1/3")) == "0 - y < 1/3");
  CHECK(print(parse("1/3 - y < x")) == "1/3 - y < x");
  CHECK(print(parse("forall x forall y (x<y -> exists z (x < 3*z & 3*z < y))")) ==
        "forall x forall y (x < y -> exists z (x < 3*z & 3*z < y))");
  CHECK(print(parse("(exists z x < z) & y < x")) == "(exists z (x < z)) & y < x");
  CHECK(print(parse("!(x < y | y < x)")) == "!(x < y | y < x)");
  CHECK(print(parse("(a < b -> b < c) -> c < a")) == "(a < b -> b < c) -> c < a");
  CHECK(print(parse("2*1/3 < x")) == "2/3 < x");
}

TEST_CASE("substitution") {
  Formula f = parse("x < y");
  LinearTerm t = LinearTerm::var("u", 2) + LinearTerm::constant(Rational(1, 2));
  CHECK(print(substitute(f, "x", t)) == "2*u + 1/2 < y");
  // Capture avoidance: the bound y is renamed before x := y is pushed in.
  Formula g = parse("exists y (x < y)");
  Formula h = substitute(g, "x", LinearTerm::var("y"));
  CHECK(h.free_vars() == std::set<std::string>{"y"});
  CHECK(print(h) == "exists y1 (y < y1)");
  // Substituting 0 collapses coefficients.
  CHECK(print(substitute(parse("x + 2*y < 3*x"), "x", LinearTerm())) == "2*y < 0");
}

TEST_CASE("evaluation") {
  Formula f = parse("x < 2*x");
  CHECK(evaluate(f, kD, {{"x", q(1, 3)}}));
  CHECK_FALSE(evaluate(f, kD, {{"x", q(2, 3)}}));
  Formula third = parse("z != 0 & 3*z = 0 & z < 2*z");
  CHECK(evaluate(third, kD, {{"z", q(1, 3)}}));
  CHECK_FALSE(evaluate(third, kD, {{"z", q(2, 3)}}));
  CHECK_THROWS_AS(evaluate(f, kD, {}), EvalError);
  CHECK_THROWS_AS(evaluate(parse("exists y (x < y)"), kD, {{"x", q(0, 1)}}), EvalError);
  EvalOptions opts;
  opts.search_set = std::vector<CircleElement>{q(0, 1), q(1, 2)};
  CHECK(evaluate(parse("exists y (y != 0 & 2*y = 0)"), kD, {}, opts));
  CHECK(evaluate(parse("D_3(x, y)"), kD, {{"x", q(1, 2)}, {"y", q(1, 5)}}));
}

TEST_CASE("normalization renames bound variables apart") {
  Formula f = parse("(exists x (x < y)) & (exists x (y < x)) & x = 0");
  CHECK(print(f) == "(exists x1 (x1 < y)) & (exists x2 (y < x2)) & x = 0");
  CHECK(normalize(f) == f);
}

namespace {

// Random formulas for the round-trip and connective properties.
struct Gen {
  std::mt19937_64 rng;
  std::vector<std::string> vars{"x", "y", "z"};
  int64_t pick(int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); }
  LinearTerm term() {
    LinearTerm t;
    for (const auto& v : vars)
      if (pick(0, 2) == 0) t = t + LinearTerm::var(v, pick(-3, 3));
    if (pick(0, 2) == 0) {
      int64_t d = pick(2, 6);
      t = t + LinearTerm::constant(Rational(pick(1, d - 1), d));
    }
    return t;
  }
  Formula formula(int depth) {
    int64_t k = depth <= 0 ? pick(0, 2) : pick(0, 8);
    switch (k) {
      case 0: return Formula::less(term(), term());
      case 1: return Formula::eq(term(), term());
      case 2: return pick(0, 4) == 0 ? Formula::truth(pick(0, 1)) : Formula::dn(pick(1, 4), term(), term());
      case 3: return Formula::negate(formula(depth - 1));
      case 4: return Formula::conj({formula(depth - 1), formula(depth - 1), formula(depth - 1)});
      case 5: return Formula::disj({formula(depth - 1), formula(depth - 1)});
      case 6: return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 7: return Formula::exists(vars[pick(0, 2)], formula(depth - 1));
      default: return Formula::forall(vars[pick(0, 2)], formula(depth - 1));
    }
  }
};

}  // namespace

TEST_CASE("parse(print(f)) equals normalize(f)") {
  Gen g{std::mt19937_64(11)};
  for (int i = 0; i < 2000; ++i) {
    Formula f = g.formula(4);
    Formula back = parse(print(f));
    CHECK_MESSAGE(back == normalize(f), print(f));
  }
}

TEST_CASE("connectives evaluate compositionally") {
  Gen g{std::mt19937_64(12)};
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    Formula a = g.formula(1), b = g.formula(1);
    if (!a.is_quantifier_free() || !b.is_quantifier_free()) continue;
    Assignment as;
    for (const auto& v : g.vars) as[v] = q(static_cast<int64_t>(rng() % 60), 60);
    bool va = evaluate(a, kD, as), vb = evaluate(b, kD, as);
    CHECK(evaluate(Formula::conj({a, b}), kD, as) == (va && vb));
    CHECK(evaluate(Formula::disj({a, b}), kD, as) == (va || vb));
    CHECK(evaluate(Formula::implies(a, b), kD, as) == (!va || vb));
    CHECK(evaluate(Formula::negate(a), kD, as) == !va);
    CHECK(evaluate(to_nnf(Formula::implies(a, b)), kD, as) == (!va || vb));
  }
}

TEST_CASE("term normalization is sound") {
  // Raw term trees evaluated node by node against the collected normal form.
  std::mt19937_64 rng(5);
  auto pick = [&](int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); };
  for (int i = 0; i < 1000; ++i) {
    Assignment as{{"x", q(pick(0, 99), 100)}, {"y", q(pick(0, 99), 100)}};
    CircleElement raw;
    LinearTerm t;
    for (int k = 0; k < 6; ++k) {
      int64_t c = pick(-4, 4);
      std::string v = pick(0, 1) ? "x" : "y";
      CircleElement part = mul_mod1(c, as[v]);
      if (pick(0, 1)) {
        raw = add_mod1(raw, part);
        t = t + LinearTerm::var(v, c);
      } else {
        raw = sub_mod1(raw, part);
        t = t - LinearTerm::var(v, c);
      }
    }
    CHECK(evaluate_term(t, kD, as) == raw);
  }
}
