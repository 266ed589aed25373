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

/* C interface to the decimals library. Every object is an opaque handle
 * released with its _free function. Functions return a dec_status; on
 * failure dec_last_error() describes the problem for the calling thread.
 * Strings returned through const char* stay valid until the owning handle
 * is freed. */

#ifndef DECIMALS_C_API_H_
#define DECIMALS_C_API_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DEC_API __declspec(dllexport)
#else
#define DEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dec_status {
  DEC_OK = 0,
  DEC_E_ARGUMENT = 1,    /* null handle, bad option value, unknown theory */
  DEC_E_PARSE = 2,       /* formula, model or element text rejected */
  DEC_E_UNSUPPORTED = 3, /* operation not available for this model */
  DEC_E_OVERFLOW = 4,    /* exact arithmetic left the 64-bit range */
  DEC_E_EVAL = 5,        /* unbound variable and similar evaluation errors */
  DEC_E_INTERNAL = 6     /* invariant violation */
} dec_status;

typedef struct dec_model dec_model;
typedef struct dec_formula dec_formula;
typedef struct dec_report dec_report;

DEC_API const char* dec_version(void);
DEC_API const char* dec_status_name(dec_status s);
DEC_API const char* dec_last_error(void);

/* "D", "loc:2,3", "quad:2", "loc:2+quad:2". */
DEC_API dec_status dec_model_parse(const char* text, dec_model** out);
DEC_API void dec_model_free(dec_model* m);
DEC_API const char* dec_model_name(const dec_model* m);

DEC_API dec_status dec_formula_parse(const char* text, dec_formula** out);
DEC_API void dec_formula_free(dec_formula* f);
/* Normalized text form. */
DEC_API const char* dec_formula_text(const dec_formula* f);

/* A report is a table: named columns and rows of string cells. */
DEC_API size_t dec_report_columns(const dec_report* r);
DEC_API const char* dec_report_column(const dec_report* r, size_t col);
DEC_API size_t dec_report_rows(const dec_report* r);
DEC_API const char* dec_report_cell(const dec_report* r, size_t row, size_t col);
/* Cell by column name; NULL when the column does not exist. */
DEC_API const char* dec_report_get(const dec_report* r, size_t row, const char* column);
DEC_API void dec_report_free(dec_report* r);

/* One row: verdict (TRUE/FALSE), witness_var, witness ("-" when absent). */
DEC_API dec_status dec_decide(const dec_formula* sentence, dec_report** out);

/* One row: output, atoms_in, atoms_out, carry_cases, test_points,
 * dn_rewritten. pure_l nonzero also purges constants and D_n. */
DEC_API dec_status dec_qe(const dec_formula* f, const dec_model* m, int pure_l, dec_report** out);

typedef struct dec_check_options {
  int64_t grid;         /* universe k/grid for rational models */
  int64_t height;       /* quadratic universe: frac(b*sqrt(d)), |b| <= height */
  int64_t search_limit; /* element search inside an open cell */
} dec_check_options;

DEC_API void dec_check_options_default(dec_check_options* o);

/* Truth of f under an assignment "x=1/3,y=sqrt(2)-1". Quantifier-free
 * formulas are evaluated exactly; quantified ones (rational assignments
 * only) go through the model checker. One row: verdict
 * (TRUE/FALSE/UNDECIDED), method. opts may be NULL. */
DEC_API dec_status dec_eval(const dec_formula* f, const dec_model* m, const char* assignment,
                            const dec_check_options* opts, dec_report** out);

/* Rows of kind CELL (lo, hi, sigma), THETA and PHI (i, n, formula). */
DEC_API dec_status dec_torsion_table(int64_t n, dec_report** out);
/* The human-readable table. Caller frees with dec_string_free. */
DEC_API dec_status dec_torsion_table_text(int64_t n, char** out);
DEC_API void dec_string_free(char* s);

/* Axiom instances up to bound. Columns: scheme, params, verdict, witness,
 * formula, note. Without check the verdict is "-". opts may be NULL. */
DEC_API dec_status dec_axioms(const char* theory, const dec_model* m, int64_t bound, int check,
                              const dec_check_options* opts, dec_report** out);

/* Hyperreal property suites with cut addition over m. Columns: suite,
 * result (PASS/FAIL), checked, detail. */
DEC_API dec_status dec_hyper_check(const dec_model* m, int64_t samples, uint64_t seed,
                                   dec_report** out);

/* Acceptance criteria, numbered from 1. Columns: id, name, result,
 * seconds, detail. */
DEC_API int dec_selftest_count(void);
DEC_API dec_status dec_selftest(int criterion, uint64_t seed, dec_report** out);

#ifdef __cplusplus
}
#endif

#endif /* DECIMALS_C_API_H_ */
