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

#include "decimals/c_api.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "decimals/acceptance.hpp"
#include "decimals/axioms.hpp"
#include "decimals/circle.hpp"
#include "decimals/formula.hpp"
#include "decimals/hyperreal.hpp"
#include "decimals/model_check.hpp"
#include "decimals/qe.hpp"
#include "decimals/torsion.hpp"

struct dec_model {
  decimals::GroupDescriptor m;
  std::string name;
};

struct dec_formula {
  decimals::Formula f;
  std::string text;
};

struct dec_report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

namespace {

using namespace decimals;

thread_local std::string g_last_error;

dec_status fail(dec_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs fn and turns exceptions into status codes. parse_status is used
// for std::invalid_argument, which the text parsers throw.
template <class Fn>
dec_status guarded(Fn&& fn, dec_status parse_status = DEC_E_ARGUMENT) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ParseError& e) {
    return fail(DEC_E_PARSE, e.what());
  } catch (const UnsupportedModel& e) {
    return fail(DEC_E_UNSUPPORTED, e.what());
  } catch (const OverflowError& e) {
    return fail(DEC_E_OVERFLOW, e.what());
  } catch (const EvalError& e) {
    return fail(DEC_E_EVAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(parse_status, e.what());
  } catch (const std::out_of_range& e) {
    return fail(DEC_E_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(DEC_E_INTERNAL, e.what());
  } catch (...) {
    return fail(DEC_E_INTERNAL, "unknown error");
  }
}

dec_report* make_report(std::vector<std::string> columns) {
  auto* r = new dec_report;
  r->columns = std::move(columns);
  return r;
}

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "TRUE";
    case Truth::False: return "FALSE";
    default: return "UNDECIDED";
  }
}

ModelCheckConfig to_config(const dec_check_options* o) {
  ModelCheckConfig c;
  if (!o) return c;
  if (o->grid > 0) c.grid = o->grid;
  if (o->height > 0) c.height = o->height;
  if (o->search_limit > 0) c.search_limit = o->search_limit;
  return c;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

Assignment parse_assignment(const std::string& text) {
  Assignment a;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!item.empty()) {
      size_t eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + item + "'");
      a[trim(item.substr(0, eq))] = parse_element(trim(item.substr(eq + 1)));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return a;
}

}  // namespace

extern "C" {

const char* dec_version(void) { return "1.0.0"; }

const char* dec_status_name(dec_status s) {
  switch (s) {
    case DEC_OK: return "ok";
    case DEC_E_ARGUMENT: return "invalid argument";
    case DEC_E_PARSE: return "parse error";
    case DEC_E_UNSUPPORTED: return "unsupported";
    case DEC_E_OVERFLOW: return "overflow";
    case DEC_E_EVAL: return "evaluation error";
    case DEC_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dec_last_error(void) { return g_last_error.c_str(); }

dec_status dec_model_parse(const char* text, dec_model** out) {
  if (!text || !out) return fail(DEC_E_ARGUMENT, "null argument");
  return guarded(
      [&] {
        auto* m = new dec_model{GroupDescriptor::parse(text), {}};
        m->name = m->m.str();
        *out = m;
        return DEC_OK;
      },
      DEC_E_PARSE);
}

void dec_model_free(dec_model* m) { delete m; }

const char* dec_model_name(const dec_model* m) { return m ? m->name.c_str() : ""; }

dec_status dec_formula_parse(const char* text, dec_formula** out) {
  if (!text || !out) return fail(DEC_E_ARGUMENT, "null argument");
  return guarded(
      [&] {
        auto* f = new dec_formula{parse(text), {}};
        f->text = print(f->f);
        *out = f;
        return DEC_OK;
      },
      DEC_E_PARSE);
}

void dec_formula_free(dec_formula* f) { delete f; }

const char* dec_formula_text(const dec_formula* f) { return f ? f->text.c_str() : ""; }

size_t dec_report_columns(const dec_report* r) { return r ? r->columns.size() : 0; }

const char* dec_report_column(const dec_report* r, size_t col) {
  if (!r || col >= r->columns.size()) return nullptr;
  return r->columns[col].c_str();
}

size_t dec_report_rows(const dec_report* r) { return r ? r->rows.size() : 0; }

const char* dec_report_cell(const dec_report* r, size_t row, size_t col) {
  if (!r || row >= r->rows.size() || col >= r->rows[row].size()) return nullptr;
  return r->rows[row][col].c_str();
}

const char* dec_report_get(const dec_report* r, size_t row, const char* column) {
  if (!r || !column) return nullptr;
  for (size_t c = 0; c < r->columns.size(); ++c)
    if (r->columns[c] == column) return dec_report_cell(r, row, c);
  return nullptr;
}

void dec_report_free(dec_report* r) { delete r; }

void dec_string_free(char* s) { std::free(s); }

void dec_check_options_default(dec_check_options* o) {
  if (!o) return;
  ModelCheckConfig c;
  o->grid = c.grid;
  o->height = c.height;
  o->search_limit = c.search_limit;
}

dec_status dec_decide(const dec_formula* sentence, dec_report** out) {
  if (!sentence || !out) return fail(DEC_E_ARGUMENT, "null argument");
  return guarded([&] {
    if (!sentence->f.is_sentence()) return fail(DEC_E_ARGUMENT, "decide needs a sentence");
    Decision d = decide(sentence->f);
    dec_report* r = make_report({"verdict", "witness_var", "witness"});
    r->rows.push_back({d.value ? "TRUE" : "FALSE", d.witness ? d.witness_var : "-",
                       d.witness ? d.witness->str() : "-"});
    *out = r;
    return DEC_OK;
  });
}

dec_status dec_qe(const dec_formula* f, const dec_model* m, int pure_l, dec_report** out) {
  if (!f || !m || !out) return fail(DEC_E_ARGUMENT, "null argument");
  return guarded([&] {
    QEResult q = eliminate(f->f, m->m, pure_l ? QEMode::PureL : QEMode::KeepConstants);
    dec_report* r = make_report({"output", "atoms_in", "atoms_out", "carry_cases", "test_points", "dn_rewritten"});
    const QEStats& s = q.stats;
    r->rows.push_back({print(q.output), std::to_string(s.atoms_in), std::to_string(s.atoms_out),
                       std::to_string(s.carry_cases), std::to_string(s.test_points),
                       std::to_string(s.dn_rewritten)});
    *out = r;
    return DEC_OK;
  });
}

dec_status dec_eval(const dec_formula* f, const dec_model* m, const char* assignment,
                    const dec_check_options* opts, dec_report** out) {
  if (!f || !m || !out) return fail(DEC_E_ARGUMENT, "null argument");
  return guarded([&] {
    Assignment a = parse_assignment(assignment ? assignment : "");
    for (const auto& [v, x] : a)
      if (!m->m.contains(x)) return fail(DEC_E_ARGUMENT, v + " = " + x.str() + " is not in " + m->name);
    dec_report* r = make_report({"verdict", "method"});
    if (f->f.is_quantifier_free()) {
      bool v = evaluate(f->f, m->m, a);
      r->rows.push_back({v ? "TRUE" : "FALSE", "exact"});
    } else {
      Formula s = f->f;
      for (const auto& [v, x] : a) {
        if (!x.is_rational()) {
          delete r;
          return fail(DEC_E_UNSUPPORTED, "quantified formulas take rational values only");
        }
        s = substitute(s, v, LinearTerm::constant(x.a()));
      }
      if (!s.is_sentence()) {
        delete r;
        return fail(DEC_E_EVAL, "unbound variable '" + *s.free_vars().begin() + "'");
      }
      ModelCheckResult res = model_check(s, m->m, Structure::Circle, to_config(opts));
      r->rows.push_back({truth_name(res.verdict), "model-check"});
    }
    *out = r;
    return DEC_OK;
  });
}

dec_status dec_torsion_table(int64_t n, dec_report** out) {
  if (!out) return fail(DEC_E_ARGUMENT, "null argument");
  if (n < 2) return fail(DEC_E_ARGUMENT, "torsion tables need n >= 2");
  return guarded([&] {
    const SubdivisionTable& t = build_subdivision(n);
    dec_report* r = make_report({"kind", "a", "b", "value"});
    for (const Cell& c : t.cells) {
      std::string sigma;
      for (size_t k = 0; k < c.sigma.size(); ++k) sigma += (k ? "," : "") + std::to_string(c.sigma[k]);
      r->rows.push_back({"CELL", c.lo.str(), c.hi.str(), sigma});
    }
    for (int64_t i = 1; i < n; ++i)
      r->rows.push_back({"THETA", std::to_string(i), std::to_string(n), print(theta(i, n))});
    for (int64_t i = 1; i < n; ++i)
      r->rows.push_back({"PHI", std::to_string(i), std::to_string(n), print(phi(i, n))});
    *out = r;
    return DEC_OK;
  });
}

dec_status dec_torsion_table_text(int64_t n, char** out) {
  if (!out) return fail(DEC_E_ARGUMENT, "null argument");
  if (n < 2) return fail(DEC_E_ARGUMENT, "torsion tables need n >= 2");
  return guarded([&] {
    std::string text = format_table(n);
    char* s = static_cast<char*>(std::malloc(text.size() + 1));
    if (!s) return fail(DEC_E_INTERNAL, "out of memory");
    std::memcpy(s, text.c_str(), text.size() + 1);
    *out = s;
    return DEC_OK;
  });
}

dec_status dec_axioms(const char* theory, const dec_model* m, int64_t bound, int check,
                      const dec_check_options* opts, dec_report** out) {
  if (!theory || !m || !out) return fail(DEC_E_ARGUMENT, "null argument");
  return guarded([&] {
    Theory t = parse_theory(theory);
    CheckConfig cfg;
    cfg.model = to_config(opts);
    dec_report* r = make_report({"scheme", "params", "verdict", "witness", "formula", "note"});
    try {
      for_each_instance(t, m->m, bound, [&](AxiomInstance&& inst) {
        if (!check) {
          r->rows.push_back({inst.scheme, inst.params_str(), "-", "-", print(inst.formula), inst.note});
          return;
        }
        CheckReport rep = decimals::check(inst, m->m, cfg);
        r->rows.push_back({inst.scheme, inst.params_str(), verdict_name(rep.verdict), rep.witness_str(), "",
                           rep.note});
      });
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    return DEC_OK;
  });
}

dec_status dec_hyper_check(const dec_model* m, int64_t samples, uint64_t seed, dec_report** out) {
  if (!m || !out) return fail(DEC_E_ARGUMENT, "null argument");
  if (samples < 1) return fail(DEC_E_ARGUMENT, "samples must be positive");
  return guarded([&] {
    HyperSuiteConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.cut_model = m->m;
    dec_report* r = make_report({"suite", "result", "checked", "detail"});
    for (const HyperSuiteResult& s : hyper_check(cfg))
      r->rows.push_back({s.name, s.pass ? "PASS" : "FAIL", std::to_string(s.checked), s.detail});
    *out = r;
    return DEC_OK;
  });
}

int dec_selftest_count(void) { return kCriterionCount; }

dec_status dec_selftest(int criterion, uint64_t seed, dec_report** out) {
  if (!out) return fail(DEC_E_ARGUMENT, "null argument");
  if (criterion < 1 || criterion > kCriterionCount) return fail(DEC_E_ARGUMENT, "no such criterion");
  return guarded([&] {
    AcceptanceConfig cfg;
    cfg.seed = seed;
    CriterionResult c = run_criterion(criterion, cfg);
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", c.seconds);
    dec_report* r = make_report({"id", "name", "result", "seconds", "detail"});
    r->rows.push_back({std::to_string(c.id), c.name, c.pass ? "PASS" : "FAIL", secs, c.detail});
    *out = r;
    return DEC_OK;
  });
}

}  // extern "C"
