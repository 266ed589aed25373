#include "decimals/model_check.hpp"
#include "doctest.h"

using namespace decimals;

namespace {

Truth mc(const char* text, const GroupDescriptor& m = GroupDescriptor::full(), Structure s = Structure::Circle,
         const ModelCheckConfig& cfg = {}) {
  return model_check(parse(text), m, s, cfg).verdict;
}

}  // namespace

TEST_CASE("simple sentences in D") {
  CHECK(mc("exists x (x != 0 & 2*x = 0)") == Truth::True);
  CHECK(mc("forall x (2*x = 0 -> x = 0)") == Truth::False);
  CHECK(mc("forall x exists y (2*y = x)") == Truth::True);
  CHECK(mc("forall x forall y (x < y -> exists z (x < z & z < y))") == Truth::True);
  // The grid has a largest point, so a maximum cannot be ruled out or confirmed.
  CHECK(mc("exists x forall y (y < x | y = x)") == Truth::Undecided);
}

TEST_CASE("counterexample and witness values") {
  ModelCheckResult r = model_check(parse("forall x (x < 2*x | x = 0)"), GroupDescriptor::full(), Structure::Circle);
  REQUIRE(r.verdict == Truth::False);
  REQUIRE(r.assignment.size() == 1);
  Rational x = Rational::parse(r.assignment[0].second);
  CHECK(!(x < (x * Rational(2)).frac()));
  ModelCheckResult w = model_check(parse("exists z (z != 0 & 3*z = 0 & z < 2*z)"), GroupDescriptor::full(),
                                   Structure::Circle);
  REQUIRE(w.verdict == Truth::True);
  CHECK(w.assignment[0].second == "1/3");
}

TEST_CASE("torsion differs between descriptors") {
  const char* third = "exists z (z != 0 & 3*z = 0)";
  CHECK(mc(third, GroupDescriptor::localized({2})) == Truth::False);
  CHECK(mc(third, GroupDescriptor::localized({3})) == Truth::True);
  CHECK(mc(third, GroupDescriptor::quadratic(2)) == Truth::False);
}

TEST_CASE("regularity in quad:2 uses irrational witnesses") {
  CHECK(mc("forall x forall y (x < y -> exists z (x < 2*z & 2*z < y))", GroupDescriptor::quadratic(2)) ==
        Truth::True);
  // Not 2-divisible: no y with 2y = sqrt(2) - 1 exists in Z + Z sqrt(2).
  CHECK(mc("forall x exists y (2*y = x)", GroupDescriptor::quadratic(2)) == Truth::False);
}

TEST_CASE("cone and H00 structures") {
  const GroupDescriptor d = GroupDescriptor::full();
  CHECK(mc("forall a forall b (a < a + b | a = a + b)", d, Structure::PositiveCone) == Truth::True);
  CHECK(mc("forall a forall b (a < a + b | a = a + b)", d, Structure::H00) == Truth::False);
  CHECK(mc("forall a forall b (a < b -> exists c (a + c = b))", d, Structure::PositiveCone) == Truth::True);
  CHECK(mc("forall x (x != 0 -> exists y (0 < y & y < x))", d, Structure::PositiveCone) == Truth::True);
}

TEST_CASE("coarser grid still decides universal sentences") {
  ModelCheckConfig cfg;
  cfg.grid = 12;
  CHECK(mc("forall x forall y (x + y = y + x)", GroupDescriptor::full(), Structure::Circle, cfg) == Truth::True);
  CHECK(mc("forall x (x < 1/2 -> x < 2*x | x = 0)", GroupDescriptor::full(), Structure::Circle, cfg) ==
        Truth::True);
}
