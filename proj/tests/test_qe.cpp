#include <functional>
#include <set>

#include "decimals/corpus.hpp"
#include "decimals/pointwise.hpp"
#include "decimals/qe.hpp"
#include "decimals/torsion.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

const GroupDescriptor kD = GroupDescriptor::full();

std::vector<CircleElement> grid(int64_t n) {
  std::vector<CircleElement> out;
  for (int64_t k = 0; k < n; ++k) out.emplace_back(Rational(k, n));
  return out;
}

// Brute force: free variables over k/denom, quantifiers over k/search.
bool brute(const Formula& f, const std::map<std::string, Rational>& point, int64_t search) {
  Assignment a;
  for (const auto& [v, x] : point) a[v] = CircleElement(x);
  EvalOptions o;
  o.search_set = grid(search);
  return evaluate(f, kD, a, o);
}

bool has_constant_or_dn(const Formula& f, std::set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return false;
  if (f.op() == Op::Dn) return true;
  if (f.op() == Op::Less || f.op() == Op::Eq)
    return !f.lhs().constant_part().is_zero() || !f.rhs().constant_part().is_zero();
  if (f.is_atom()) return false;
  for (const auto& k : f.kids())
    if (has_constant_or_dn(k, seen)) return true;
  return false;
}

bool has_constant_or_dn(const Formula& f) {
  std::set<const void*> seen;
  return has_constant_or_dn(f, seen);
}

}  // namespace

TEST_CASE("carry expansion of x + y < z") {
  CarryExpansion e = carry_expand(parse("x + y < z"));
  REQUIRE(e.carries.size() == 1);
  CHECK(e.carries[0].term.str() == "x + y");
  CHECK(e.carries[0].lo == 0);
  CHECK(e.carries[0].hi == 1);
  Formula f = parse("x + y < z");
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b)
      for (int c = 0; c < 12; ++c) {
        std::map<std::string, Rational> p{{"x", Rational(a, 12)}, {"y", Rational(b, 12)}, {"z", Rational(c, 12)}};
        CHECK(e.holds(p) == brute(f, p, 1));
        // the two carry cases written out
        Rational s = p["x"] + p["y"];
        bool direct = (s < Rational(1) && s < p["z"]) || (s >= Rational(1) && s - Rational(1) < p["z"]);
        CHECK(e.holds(p) == direct);
      }
}

TEST_CASE("carry expansion of 2x = 0 picks 0 and 1/2") {
  CarryExpansion e = carry_expand(parse("2*x = 0"));
  REQUIRE(e.carries.size() == 1);
  CHECK(e.carries[0].lo == 0);
  CHECK(e.carries[0].hi == 1);
  std::set<Rational> sols;
  for (int k = 0; k < 720; ++k)
    if (e.holds({{"x", Rational(k, 720)}})) sols.insert(Rational(k, 720));
  CHECK(sols == std::set<Rational>{Rational(0), Rational(1, 2)});
}

TEST_CASE("carry range of 3x + 2/3") {
  CarryExpansion e = carry_expand(parse("3*x + 2/3 < y"));
  REQUIRE(e.carries.size() == 1);
  std::set<int64_t> seen;
  for (int k = 0; k < 360; ++k) seen.insert((Rational(3 * k, 360) + Rational(2, 3)).floor());
  CHECK(e.carries[0].lo == *seen.begin());
  CHECK(e.carries[0].hi == *seen.rbegin());
  CHECK(e.carries[0].hi - e.carries[0].lo + 1 == 4);
}

TEST_CASE("carry expansion refuses symbols") {
  CHECK_THROWS(carry_expand(Formula::less(LinearTerm::rho(3), LinearTerm::var("x"))));
  CHECK_THROWS(carry_expand(parse("exists y (x < y)")));
}

TEST_CASE("regularity formula eliminates to x < y") {
  Formula f = parse("exists z (x < 2*z & 2*z < y)");
  QEResult r = eliminate(f);
  CHECK(r.output.is_quantifier_free());
  CHECK(r.output == parse("x < y"));
  for (int a = 0; a < 60; ++a)
    for (int b = 0; b < 60; ++b) {
      std::map<std::string, Rational> p{{"x", Rational(a, 60)}, {"y", Rational(b, 60)}};
      CHECK(brute(f, p, 240) == brute(r.output, p, 1));
    }
  CHECK(pointwise_check(f, r.output, 60).agree);
}

TEST_CASE("decide examples") {
  Decision d = decide(parse("exists x (x != 0 & 2*x = 0)"));
  CHECK(d.value);
  REQUIRE(d.witness);
  CHECK(*d.witness == Rational(1, 2));
  CHECK(decide(parse("forall x exists y (3*y = x)")).value);
  CHECK(decide(parse("forall x forall y (x<y -> exists z (x < 2*z & 2*z < y))")).value);
  CHECK_FALSE(decide(parse("exists x (x < 2*x & 2*x < x)")).value);
  Formula f = parse("forall x (x = 0 | exists y (y != 0 & y + y = x))");
  CHECK(decide(f).value);
  // oracle: every x = k/504 has a witness y among the k/1008
  Formula inner = parse("x = 0 | exists y (y != 0 & y + y = x)");
  for (int k = 0; k < 504; ++k) CHECK(brute(inner, {{"x", Rational(k, 504)}}, 1008));
}

TEST_CASE("golden sentences and their witnesses") {
  for (const auto& g : golden_sentences()) {
    CAPTURE(g.text);
    Formula f = parse(g.text);
    Decision d = decide(f);
    CHECK(d.value == g.expected);
    Formula n = normalize(f);
    if (d.value && n.op() == Op::Exists) {
      REQUIRE(d.witness);
      Formula inst = substitute(n.body(), n.var(), LinearTerm::constant(*d.witness));
      CHECK(bounded_eval(inst, {}, 504));
    }
  }
}

TEST_CASE("decide rejects open formulas") { CHECK_THROWS(decide(parse("x < y"))); }

TEST_CASE("purge of x = 2/3 is theta(2,3)") {
  Formula p = purge_constants(parse("x = 2/3"));
  CHECK(p == normalize(theta(2, 3)));
  CHECK_FALSE(has_constant_or_dn(p));
  CHECK(pointwise_check(p, parse("x = 2/3"), 720).agree);
}

TEST_CASE("purge of x < 1/4 is phi(1,4)") {
  Formula p = purge_constants(parse("x < 1/4"));
  CHECK(p == simplify(phi(1, 4)));
  CHECK(pointwise_check(p, parse("x < 1/4"), 720).agree);
}

TEST_CASE("purge of x + 1/3 < y") {
  Formula f = parse("x + 1/3 < y");
  Formula p = purge_constants(f);
  CHECK_FALSE(has_constant_or_dn(p));
  CHECK(pointwise_check(f, p, 504).agree);
}

TEST_CASE("purge handles constants on both sides and D_n") {
  for (const char* s : {"x + 1/2 < y + 1/3", "1/5 < x", "2*x + 1/6 = y + 1/2", "D_3(x, y + 1/2) & x < 1/6",
                        "3*x - y + 2/3 < 1/4", "1/3 < 1/2", "x + 3/4 < x",
                        "x + 1/5 = y + 1/5", "1/5 - 3*x - 4*y = 1/5"}) {
    CAPTURE(s);
    Formula f = parse(s);
    Formula p = purge_constants(f);
    CHECK_FALSE(has_constant_or_dn(p));
    CHECK(pointwise_check(f, p, 360).agree);
  }
}

TEST_CASE("purge of thresholds beyond the tables") {
  for (int64_t n = 7; n <= 30; ++n) {
    for (int64_t i = 1; i < n; ++i) {
      Rational c(i, n);
      if (c.den() != n) continue;
      for (const std::string& rel : {" < ", " = "}) {
        std::string s = "x" + rel + c.str();
        CAPTURE(s);
        Formula f = parse(s);
        Formula p = purge_constants(f);
        CHECK_FALSE(has_constant_or_dn(p));
        CHECK(pointwise_check(f, p, n * 72).agree);
      }
    }
  }
  std::vector<std::pair<std::string, int64_t>> cases{
      {"2*x + y < 13/17", 17 * 6}, {"x + 52/105 < y", 210}, {"3*x = y + 5/19", 19 * 6}};
  for (const auto& [s, denom] : cases) {
    CAPTURE(s);
    Formula f = parse(s);
    Formula p = purge_constants(f);
    CHECK_FALSE(has_constant_or_dn(p));
    CHECK(pointwise_check(f, p, denom).agree);
  }
}

TEST_CASE("pointwise check sanity") {
  CHECK(pointwise_check(normalize(theta(1, 2)), parse("x = 1/2"), 720).agree);
  PointwiseReport r = pointwise_check(parse("x < 1/2"), parse("x < 1/3"), 12);
  CHECK_FALSE(r.agree);
  REQUIRE(r.first);
  CHECK(r.first->assignment.at("x") == Rational(1, 3));
  CHECK(r.first->lhs);
  CHECK_FALSE(r.first->rhs);
}

TEST_CASE("grid evaluator agrees with brute force search") {
  auto corpus = random_corpus(7, 40, CorpusOptions{2, 1, 1, 2, 3, 4, 2, true, true});
  for (const auto& f : corpus) {
    CAPTURE(f.str());
    GridEvaluator ev({f}, 24);
    for (int a = 0; a < 24; ++a) {
      std::map<std::string, Rational> p;
      for (const auto& v : f.free_vars()) p[v] = Rational(a, 24);
      // cells are exact; a fine brute-force search must agree
      CHECK(ev.eval(0, p) == brute(f, p, 24 * 840));
    }
  }
}

TEST_CASE("refuses descriptors other than the full circle") {
  Formula f = parse("exists y (2*y = x)");
  CHECK_THROWS_AS(eliminate(f, GroupDescriptor::localized({2})), UnsupportedModel);
  CHECK_THROWS_WITH(eliminate(f, GroupDescriptor::quadratic(2)), "QE unsupported for this descriptor");
  CHECK(eliminate(f, kD).output.op() == Op::True);
}

TEST_CASE("D_n atoms are rewritten to true and counted") {
  QEResult r = eliminate(parse("exists y (D_2(x, y) & y < x)"));
  CHECK(r.stats.dn_rewritten == 1);
  CHECK(r.output == parse("0 < x"));
}

TEST_CASE("elimination is idempotent on quantifier-free input") {
  auto corpus = random_corpus(11, 30, CorpusOptions{0, 1, 2, 2, 4, 6, 3, true, true});
  for (const auto& f : corpus) {
    CAPTURE(f.str());
    QEResult r = eliminate(f);
    CHECK(r.output.is_quantifier_free());
    CHECK(pointwise_check(f, r.output, 504).agree);
    QEResult again = eliminate(r.output);
    CHECK(pointwise_check(r.output, again.output, 504).agree);
  }
}

TEST_CASE("random soundness sample") {
  auto corpus = random_corpus(5, 40);
  for (const auto& f : corpus) {
    CAPTURE(f.str());
    QEResult r = eliminate(f);
    REQUIRE(r.output.is_quantifier_free());
    PointwiseReport rep = pointwise_check(f, r.output, 504, 5040);
    CHECK(rep.agree);
    Formula p = purge_constants(r.output);
    CHECK_FALSE(has_constant_or_dn(p));
    CHECK(pointwise_check(r.output, p, 504).agree);
  }
}

TEST_CASE("verdicts agree between Q/Z and the {2,3}-localization") {
  // Sentences without D_n whose test points only use 2,3-smooth
  // denominators; loc:2,3 is read by search over k/6^m.
  CorpusOptions opt{2, 0, 0, 2, 4, 6, 2, false, true};
  auto smooth = [](int64_t d) {
    if (d == 0) return false;
    for (int64_t p : {2, 3})
      while (d % p == 0) d /= p;
    return d == 1;
  };
  int compared = 0;
  for (const auto& f : random_corpus(17, 120, opt)) {
    CAPTURE(f.str());
    QEResult r = eliminate(f);
    bool verdict = simplify(r.output).op() == Op::True;
    CHECK(verdict == bounded_eval(f, {}, 504));
    if (!smooth(r.stats.point_denominators)) continue;
    bool consts_smooth = true;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
      if (g.op() == Op::Less || g.op() == Op::Eq) {
        consts_smooth = consts_smooth && smooth(g.lhs().constant_part().den()) && smooth(g.rhs().constant_part().den());
      } else if (!g.is_atom()) {
        for (const auto& k : g.kids()) scan(k);
      }
    };
    scan(f);
    if (!consts_smooth) continue;
    ++compared;
    CHECK(verdict == GridEvaluator({f}, 216, false, 36).eval(0, {}));
  }
  CHECK(compared >= 40);
}
