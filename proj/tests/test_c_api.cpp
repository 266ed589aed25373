#include <string>

#include "decimals/c_api.h"
#include "doctest.h"

namespace {

std::string get(const dec_report* r, size_t row, const char* col) {
  const char* v = dec_report_get(r, row, col);
  return v ? v : "<none>";
}

}  // namespace

TEST_CASE("handles and errors") {
  dec_model* m = nullptr;
  CHECK(dec_model_parse("loc:2,3", &m) == DEC_OK);
  CHECK(std::string(dec_model_name(m)) == "loc:2,3");
  dec_model_free(m);

  CHECK(dec_model_parse("loc:4", &m) == DEC_E_PARSE);
  CHECK(std::string(dec_last_error()).size() > 0);

  dec_formula* f = nullptr;
  CHECK(dec_formula_parse("x <", &f) == DEC_E_PARSE);
  CHECK(dec_formula_parse(nullptr, &f) == DEC_E_ARGUMENT);
  CHECK(dec_formula_parse("x + x < 1/2", &f) == DEC_OK);
  CHECK(std::string(dec_formula_text(f)) == "2*x < 1/2");
  dec_formula_free(f);

  dec_report* r = nullptr;
  CHECK(dec_torsion_table(1, &r) == DEC_E_ARGUMENT);
  CHECK(dec_selftest(0, 1, &r) == DEC_E_ARGUMENT);
  CHECK(dec_axioms("nope", nullptr, 3, 0, nullptr, &r) == DEC_E_ARGUMENT);
  dec_report_free(nullptr);
  dec_model_free(nullptr);
  dec_formula_free(nullptr);
}

TEST_CASE("decide and qe through the C interface") {
  dec_formula* f = nullptr;
  REQUIRE(dec_formula_parse("exists x (x != 0 & 2*x = 0)", &f) == DEC_OK);
  dec_report* r = nullptr;
  REQUIRE(dec_decide(f, &r) == DEC_OK);
  CHECK(dec_report_rows(r) == 1);
  CHECK(get(r, 0, "verdict") == "TRUE");
  CHECK(get(r, 0, "witness") == "1/2");
  CHECK(dec_report_get(r, 0, "missing") == nullptr);
  CHECK(dec_report_cell(r, 5, 0) == nullptr);
  dec_report_free(r);
  dec_formula_free(f);

  REQUIRE(dec_formula_parse("x < y", &f) == DEC_OK);
  CHECK(dec_decide(f, &r) == DEC_E_ARGUMENT);
  dec_formula_free(f);

  dec_model* d = nullptr;
  dec_model* q = nullptr;
  REQUIRE(dec_model_parse("D", &d) == DEC_OK);
  REQUIRE(dec_model_parse("quad:2", &q) == DEC_OK);
  REQUIRE(dec_formula_parse("x < 1/3", &f) == DEC_OK);
  REQUIRE(dec_qe(f, d, 1, &r) == DEC_OK);
  CHECK(get(r, 0, "output") == "x < 2*x & 2*x < 3*x | x = 0");
  dec_report_free(r);
  CHECK(dec_qe(f, q, 0, &r) == DEC_E_UNSUPPORTED);
  dec_formula_free(f);
  dec_model_free(d);
  dec_model_free(q);
}

TEST_CASE("eval through the C interface") {
  dec_model* q = nullptr;
  REQUIRE(dec_model_parse("quad:2", &q) == DEC_OK);
  dec_formula* f = nullptr;
  REQUIRE(dec_formula_parse("x < 2*x", &f) == DEC_OK);
  dec_report* r = nullptr;
  // sqrt(2) - 1 is about 0.414, 2x about 0.828.
  REQUIRE(dec_eval(f, q, "x=sqrt(2)-1", nullptr, &r) == DEC_OK);
  CHECK(get(r, 0, "verdict") == "TRUE");
  CHECK(get(r, 0, "method") == "exact");
  dec_report_free(r);
  CHECK(dec_eval(f, q, "x=1/3", nullptr, &r) == DEC_E_ARGUMENT);
  CHECK(dec_eval(f, q, "", nullptr, &r) == DEC_E_EVAL);
  dec_formula_free(f);

  REQUIRE(dec_formula_parse("exists y (2*y = x)", &f) == DEC_OK);
  dec_model* d = nullptr;
  REQUIRE(dec_model_parse("loc:3", &d) == DEC_OK);
  REQUIRE(dec_eval(f, d, "x=1/3", nullptr, &r) == DEC_OK);
  CHECK(get(r, 0, "verdict") == "TRUE");
  CHECK(get(r, 0, "method") == "model-check");
  dec_report_free(r);
  dec_formula_free(f);
  dec_model_free(d);
  dec_model_free(q);
}

TEST_CASE("axioms and tables through the C interface") {
  dec_model* d = nullptr;
  REQUIRE(dec_model_parse("D", &d) == DEC_OK);
  dec_report* r = nullptr;
  dec_check_options o;
  dec_check_options_default(&o);
  CHECK(o.grid == 720);
  REQUIRE(dec_axioms("T", d, 4, 1, &o, &r) == DEC_OK);
  CHECK(dec_report_rows(r) > 50);
  for (size_t i = 0; i < dec_report_rows(r); ++i) CHECK(get(r, i, "verdict") == "HOLDS");
  dec_report_free(r);
  REQUIRE(dec_axioms("T", d, 4, 0, nullptr, &r) == DEC_OK);
  CHECK(get(r, 0, "verdict") == "-");
  CHECK(get(r, 0, "formula").size() > 0);
  dec_report_free(r);
  dec_model_free(d);

  REQUIRE(dec_torsion_table(2, &r) == DEC_OK);
  CHECK(dec_report_rows(r) == 4);
  CHECK(get(r, 0, "value") == "1,2");
  CHECK(get(r, 1, "value") == "2,1");
  dec_report_free(r);
  char* text = nullptr;
  REQUIRE(dec_torsion_table_text(2, &text) == DEC_OK);
  CHECK(std::string(text).find("sigma=(2,1)") != std::string::npos);
  dec_string_free(text);
}
