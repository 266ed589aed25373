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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "decimals/c_api.h"

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
  std::string model = "D";
  std::string format = "text";
  uint64_t seed = 20261016;
  int64_t bound = 6;
  int64_t grid = 720;
  int64_t search = 4096;
  int64_t height = 40;
  int64_t samples = 10000;
  bool lines() const { return format == "lines"; }
};

class Failure : public std::runtime_error {
 public:
  explicit Failure(dec_status s)
      : std::runtime_error(std::string(dec_status_name(s)) + ": " + dec_last_error()), status(s) {}
  dec_status status;
};

void ok(dec_status s) {
  if (s != DEC_OK) throw Failure(s);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Model = std::unique_ptr<dec_model, Deleter<dec_model, dec_model_free>>;
using FormulaH = std::unique_ptr<dec_formula, Deleter<dec_formula, dec_formula_free>>;
using Report = std::unique_ptr<dec_report, Deleter<dec_report, dec_report_free>>;

Model load_model(const std::string& text) {
  dec_model* m = nullptr;
  ok(dec_model_parse(text.c_str(), &m));
  return Model(m);
}

FormulaH load_formula(const std::string& text) {
  dec_formula* f = nullptr;
  ok(dec_formula_parse(text.c_str(), &f));
  return FormulaH(f);
}

std::string cell(const Report& r, size_t row, const char* col) {
  const char* v = dec_report_get(r.get(), row, col);
  return v ? v : "";
}

dec_check_options check_options(const RunConfig& c) {
  dec_check_options o;
  dec_check_options_default(&o);
  o.grid = c.grid;
  o.height = c.height;
  o.search_limit = c.search;
  return o;
}

int cmd_decide(const RunConfig& c, const std::string& text) {
  FormulaH f = load_formula(text);
  dec_report* raw = nullptr;
  ok(dec_decide(f.get(), &raw));
  Report r(raw);
  std::string verdict = cell(r, 0, "verdict"), var = cell(r, 0, "witness_var"), w = cell(r, 0, "witness");
  if (c.lines()) {
    std::cout << verdict << ";" << var << ";" << w << "\n";
  } else {
    std::cout << verdict << "\n";
    if (w != "-") std::cout << "witness " << var << " = " << w << "\n";
  }
  return verdict == "TRUE" ? kOk : kFalse;
}

int cmd_qe(const RunConfig& c, const std::string& text, bool pure) {
  FormulaH f = load_formula(text);
  Model m = load_model(c.model);
  dec_report* raw = nullptr;
  ok(dec_qe(f.get(), m.get(), pure ? 1 : 0, &raw));
  Report r(raw);
  if (c.lines()) {
    std::cout << "OUTPUT;" << cell(r, 0, "output") << "\n";
    std::cout << "STATS;" << cell(r, 0, "atoms_in") << ";" << cell(r, 0, "atoms_out") << ";"
              << cell(r, 0, "carry_cases") << ";" << cell(r, 0, "test_points") << ";"
              << cell(r, 0, "dn_rewritten") << "\n";
  } else {
    std::cout << cell(r, 0, "output") << "\n";
  }
  return kOk;
}

int cmd_eval(const RunConfig& c, const std::string& text, const std::string& at) {
  FormulaH f = load_formula(text);
  Model m = load_model(c.model);
  dec_check_options o = check_options(c);
  dec_report* raw = nullptr;
  ok(dec_eval(f.get(), m.get(), at.c_str(), &o, &raw));
  Report r(raw);
  if (c.lines())
    std::cout << cell(r, 0, "verdict") << ";" << cell(r, 0, "method") << "\n";
  else
    std::cout << cell(r, 0, "verdict") << "\n";
  return kOk;
}

int cmd_axioms(const RunConfig& c, const std::string& theory, bool check) {
  Model m = load_model(c.model);
  dec_check_options o = check_options(c);
  dec_report* raw = nullptr;
  ok(dec_axioms(theory.c_str(), m.get(), c.bound, check ? 1 : 0, &o, &raw));
  Report r(raw);
  size_t rows = dec_report_rows(r.get());
  int64_t holds = 0, fails = 0, undecided = 0;
  for (size_t i = 0; i < rows; ++i) {
    std::string scheme = cell(r, i, "scheme"), params = cell(r, i, "params");
    if (!check) {
      std::cout << scheme << ";" << params << ";" << cell(r, i, "formula") << "\n";
      continue;
    }
    std::string v = cell(r, i, "verdict");
    (v == "HOLDS" ? holds : v == "FAILS" ? fails : undecided)++;
    std::cout << scheme << ";" << params << ";" << v << ";" << cell(r, i, "witness") << "\n";
  }
  if (check && !c.lines())
    std::cout << "# " << rows << " instances: " << holds << " HOLDS, " << fails << " FAILS, " << undecided
              << " UNDECIDED\n";
  return fails ? kFalse : kOk;
}

int cmd_torsion(const RunConfig& c, int64_t n) {
  if (!c.lines()) {
    char* text = nullptr;
    ok(dec_torsion_table_text(n, &text));
    std::cout << text;
    dec_string_free(text);
    return kOk;
  }
  dec_report* raw = nullptr;
  ok(dec_torsion_table(n, &raw));
  Report r(raw);
  for (size_t i = 0; i < dec_report_rows(r.get()); ++i)
    std::cout << cell(r, i, "kind") << ";" << cell(r, i, "a") << ";" << cell(r, i, "b") << ";"
              << cell(r, i, "value") << "\n";
  return kOk;
}

int cmd_hyper(const RunConfig& c, bool model_given) {
  // Cuts need missing torsion, so the default here is quad:2.
  Model m = load_model(model_given ? c.model : "quad:2");
  dec_report* raw = nullptr;
  ok(dec_hyper_check(m.get(), c.samples, c.seed, &raw));
  Report r(raw);
  bool all = true;
  for (size_t i = 0; i < dec_report_rows(r.get()); ++i) {
    std::string res = cell(r, i, "result");
    all = all && res == "PASS";
    if (c.lines()) {
      std::cout << "SUITE;" << cell(r, i, "suite") << ";" << res << ";" << cell(r, i, "checked") << ";"
                << cell(r, i, "detail") << "\n";
    } else {
      std::cout << res << "  " << cell(r, i, "suite") << " (" << cell(r, i, "checked") << " checked)";
      if (!cell(r, i, "detail").empty()) std::cout << ": " << cell(r, i, "detail");
      std::cout << "\n";
    }
  }
  return all ? kOk : kFalse;
}

int cmd_selftest(const RunConfig& c, int only) {
  bool all = true;
  for (int id = 1; id <= dec_selftest_count(); ++id) {
    if (only && id != only) continue;
    dec_report* raw = nullptr;
    ok(dec_selftest(id, c.seed, &raw));
    Report r(raw);
    std::string res = cell(r, 0, "result");
    all = all && res == "PASS";
    if (c.lines())
      std::cout << "CRITERION;" << id << ";" << res << ";" << cell(r, 0, "name") << ";" << cell(r, 0, "detail")
                << "\n";
    else
      std::cout << "criterion " << id << ": " << res << "  " << cell(r, 0, "name") << " ["
                << cell(r, 0, "seconds") << "s] " << cell(r, 0, "detail") << "\n";
    std::cout.flush();
  }
  return all ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures and model checks for the group of decimals [0,1) under addition mod 1."};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  auto* model_opt = app.add_option("--model", c.model, "model descriptor: D, loc:2,3, quad:2, loc:2+quad:2")->capture_default_str();
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "lines"}))->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--bound", c.bound, "axiom scheme bound")->check(CLI::Range(int64_t{2}, int64_t{64}))->capture_default_str();
  app.add_option("--grid", c.grid, "universe denominator for model checks")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--search", c.search, "witness search bound")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--height", c.height, "quadratic universe height")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--samples", c.samples, "hyperreal samples per suite")->check(CLI::PositiveNumber)->capture_default_str();

  std::string formula, at, theory;
  bool pure = false, check = false;
  int64_t n = 2;
  int only = 0;

  auto* decide = app.add_subcommand("decide", "decide a sentence; exit 1 when it is false");
  decide->add_option("sentence", formula, "sentence")->required();
  auto* qe = app.add_subcommand("qe", "eliminate quantifiers");
  qe->add_option("formula", formula, "formula")->required();
  qe->add_flag("--pure-L", pure, "also remove constants and D_n");
  auto* eval = app.add_subcommand("eval", "evaluate a formula in the model");
  eval->add_option("formula", formula, "formula")->required();
  eval->add_option("--at", at, "assignment, e.g. x=1/3,y=sqrt(2)-1");
  auto* axioms = app.add_subcommand("axioms", "list or check axiom instances");
  axioms->add_option("--theory", theory, "T, T', calT, Tmo, Tmon, Tmr00, TmrG, TrG")->required();
  axioms->add_flag("--check", check, "model-check every instance");
  auto* torsion = app.add_subcommand("torsion-table", "subdivision table and theta/phi formulas");
  torsion->add_option("--n", n, "order")->check(CLI::Range(int64_t{2}, int64_t{64}))->required();
  auto* hyper = app.add_subcommand("hyper", "hyperreal simulator");
  hyper->require_subcommand(1);
  auto* hyper_check = hyper->add_subcommand("check", "run the property suites");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--criterion", only, "run only this criterion")->check(CLI::Range(1, dec_selftest_count()));
  (void)hyper_check;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*decide) return cmd_decide(c, formula);
    if (*qe) return cmd_qe(c, formula, pure);
    if (*eval) return cmd_eval(c, formula, at);
    if (*axioms) return cmd_axioms(c, theory, check);
    if (*torsion) return cmd_torsion(c, n);
    if (*hyper) return cmd_hyper(c, model_opt->count() > 0);
    if (*selftest) return cmd_selftest(c, only);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.status) {
      case DEC_E_OVERFLOW:
      case DEC_E_INTERNAL:
        return kInternal;
      default:
        return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
