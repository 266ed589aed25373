#include <chrono>
#include <map>
#include <set>

#include "decimals/axioms.hpp"
#include "decimals/qe.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

const GroupDescriptor kD = GroupDescriptor::full();
const GroupDescriptor kQuad = GroupDescriptor::quadratic(2);

std::optional<AxiomInstance> find(Theory t, const GroupDescriptor& m, int64_t bound, const std::string& scheme,
                                  const std::string& params) {
  for (auto& a : instantiate(t, m, bound))
    if (a.scheme == scheme && a.params_str() == params) return a;
  return std::nullopt;
}

int64_t leading_exists(Formula f) {
  int64_t n = 0;
  while (f.op() == Op::Exists) {
    ++n;
    f = f.body();
  }
  return n;
}

}  // namespace

TEST_CASE("regularity instance for n = 3") {
  auto a = find(Theory::T, kD, 3, "(7)-regularity", "n=3");
  REQUIRE(a);
  CHECK(print(a->formula) == print(parse("forall x forall y (x<y -> exists z (x < 3*z & 3*z < y))")));
}

TEST_CASE("torsion axiom for n = 2 names a unique nonzero z with 2z = 0") {
  auto a = find(Theory::T, kD, 2, "(3)", "n=2");
  REQUIRE(a);
  CHECK(print(a->formula) == "exists z ((z != 0 & 2*z = 0) & forall x (2*x = 0 -> x = 0 | x = z))");
  CheckReport r = check(*a, kD);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.witness_str() == "z=1/2");
}

TEST_CASE("indices scheme of Tmr00 in quad:2 at n = 3 has five representatives") {
  // quad:2 is Z as a group: [G : 3G] = 3, and 3 has no torsion, so 3 + 3 - 1.
  IndexReport idx = index(kQuad, 3);
  REQUIRE(idx.exact);
  REQUIRE(in_NG(kQuad, 3));
  auto a = find(Theory::Tmr00, kQuad, 3, "(indices)", "n=3");
  REQUIRE(a);
  CHECK(leading_exists(a->formula) == idx.value + 3 - 1);
  CHECK(a->skip);
  CHECK(check(*a, kQuad).verdict == Verdict::Undecided);
}

TEST_CASE("regularity witness at x = 1/10, y = 1/7 for n = 2") {
  auto a = find(Theory::T, kD, 2, "(7)-regularity", "n=2");
  REQUIRE(a);
  CheckReport r = check_at(*a, kD, {{"x", Rational(1, 10)}, {"y", Rational(1, 7)}});
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.witness_str() == "z=17/280");
  // Independent: 1/10 < 2z < 1/7.
  Rational z(17, 280);
  CHECK(Rational(1, 10) < z * Rational(2));
  CHECK(z * Rational(2) < Rational(1, 7));
}

TEST_CASE("axiom (10) holds on the grid 1/120") {
  CheckConfig cfg;
  cfg.model.grid = 120;
  int64_t seen = 0;
  for (auto& a : instantiate(Theory::T, kD, 6)) {
    if (a.scheme != "(10)") continue;
    ++seen;
    CHECK(check(a, kD, cfg).verdict == Verdict::Holds);
  }
  CHECK(seen > 0);
}

TEST_CASE("every T instance up to 6 holds in D") {
  std::map<Verdict, int64_t> count;
  for_each_instance(Theory::T, kD, 6, [&](AxiomInstance&& a) { ++count[check(a, kD).verdict]; });
  CHECK(count[Verdict::Fails] == 0);
  CHECK(count[Verdict::Undecided] == 0);
  CHECK(count[Verdict::Holds] > 500);
}

TEST_CASE("corrupted suite always finds counterexamples") {
  for (const GroupDescriptor& m : {kD, GroupDescriptor::localized({2, 3})}) {
    for (const CheckReport& r : corrupted_suite(m)) {
      CAPTURE(r.instance.scheme);
      CHECK(r.verdict == Verdict::Fails);
      CHECK_FALSE(r.counterexample.empty());
      // The reported values refute the body when re-evaluated.
      Formula body = r.instance.formula;
      Assignment a;
      for (const auto& [v, text] : r.counterexample) {
        REQUIRE(body.op() == Op::Forall);
        REQUIRE(body.var() == v);
        a[v] = parse_element(text);
        body = body.body();
      }
      if (body.is_quantifier_free()) CHECK_FALSE(evaluate(body, m, a));
    }
  }
}

TEST_CASE("reversed order axiom fails at (1/4, 1/3)") {
  for (const CheckReport& r : corrupted_suite(kD)) {
    if (r.instance.scheme != "(5)-reversed") continue;
    CheckReport at = check_at(r.instance, kD, {{"x", Rational(1, 4)}, {"y", Rational(1, 3)}});
    CHECK(at.verdict == Verdict::Fails);
    return;
  }
  FAIL("no (5)-reversed entry");
}

TEST_CASE("consequences hold at the stated grids") {
  auto run = [](int64_t grid) {
    CheckConfig cfg;
    cfg.model.grid = grid;
    return consequences_suite(kD, cfg, 6);
  };
  for (const CheckReport& r : run(60))
    if (r.instance.scheme == "(a)") CHECK(r.verdict == Verdict::Holds);
  bool d4 = false, e2 = false;
  for (const CheckReport& r : run(80)) {
    if (r.instance.scheme == "(d)" && r.instance.params_str() == "n=4") {
      d4 = true;
      CHECK(r.verdict == Verdict::Holds);
    }
    if (r.instance.scheme == "(e)" && r.instance.params_str() == "n=2") {
      e2 = true;
      CHECK(r.verdict == Verdict::Holds);
    }
  }
  CHECK(d4);
  CHECK(e2);
  for (const CheckReport& r : consequences_suite(kQuad)) {
    CAPTURE(r.instance.scheme);
    CHECK(r.verdict == Verdict::Holds);
  }
}

TEST_CASE("decide proves every T' instance at bound 3") {
  int64_t n = 0;
  for_each_instance(Theory::TPrime, kD, 3, [&](AxiomInstance&& a) {
    CAPTURE(print(a.formula));
    CHECK(decide(a.formula).value);
    ++n;
  });
  CHECK(n > 0);
}

TEST_CASE("monoid and group companions hold in their structures") {
  for (Theory t : {Theory::Tmo, Theory::Tmon, Theory::Tmr00, Theory::TmrG, Theory::TrG}) {
    for_each_instance(t, kD, 4, [&](AxiomInstance&& a) {
      CAPTURE(theory_name(t));
      CAPTURE(a.scheme);
      CheckReport r = check(a, kD);
      CHECK(r.verdict == (a.skip ? Verdict::Undecided : Verdict::Holds));
    });
  }
}

TEST_CASE("theory names round-trip") {
  for (Theory t : {Theory::T, Theory::TPrime, Theory::CalT, Theory::Tmo, Theory::Tmon, Theory::Tmr00,
                   Theory::TmrG, Theory::TrG})
    CHECK(parse_theory(theory_name(t)) == t);
  CHECK_THROWS(parse_theory("S"));
  CHECK_THROWS(instantiate(Theory::TPrime, kQuad, 3));
  CHECK_THROWS(instantiate(Theory::CalT, GroupDescriptor::localized({2}), 3));
  CHECK_THROWS(instantiate(Theory::T, kD, 1));
}

TEST_CASE("instance order is fixed") {
  auto a = instantiate(Theory::T, kD, 5), b = instantiate(Theory::T, kD, 5);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(print(a[i].formula) == print(b[i].formula));
}
