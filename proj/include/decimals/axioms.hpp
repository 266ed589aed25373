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

// Axiom schemes for the decimals and their monoid and group companions,
// instantiated up to a bound and checked in a concrete structure.

#ifndef DECIMALS_AXIOMS_HPP_
#define DECIMALS_AXIOMS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "decimals/circle.hpp"
#include "decimals/formula.hpp"
#include "decimals/model_check.hpp"

namespace decimals {

enum class Theory {
  T,       // L_rho, case I or II by the descriptor
  TPrime,  // T with every torsion constant replaced through the definition of 1/m
  CalT,    // universal axioms with f_n and the constants i/n
  Tmo,
  Tmon,
  Tmr00,
  TmrG,
  TrG,  // ordered torsion-free groups whose positive part models Tmr00
};

std::string theory_name(Theory t);
// "T", "T'", "calT", "Tmo", "Tmon", "Tmr00", "TmrG", "TrG".
Theory parse_theory(const std::string& s);

struct AxiomInstance {
  Theory theory = Theory::T;
  std::string scheme;           // "(7)-regularity", "(9)", ...
  std::vector<int64_t> params;  // scheme parameters in scheme order
  Formula formula;              // a sentence
  WitnessHints hints;           // preferred witnesses for existential variables
  std::string note;
  bool skip = false;            // not checkable in the simulated structure; note says why

  std::string params_str() const;  // "n=3", "n=1,m=2,n'=0,m'=1", ...
  std::vector<std::string> param_names;
};

// Calls fn once per instance, in a fixed order. Throws std::invalid_argument
// when the theory does not fit the descriptor (T' and calT need torsion
// constants of every order, i.e. the full circle for calT and case I for T').
void for_each_instance(Theory t, const GroupDescriptor& m, int64_t bound,
                       const std::function<void(AxiomInstance&&)>& fn);
std::vector<AxiomInstance> instantiate(Theory t, const GroupDescriptor& m, int64_t bound);

enum class Verdict { Holds, Fails, Undecided };
std::string verdict_name(Verdict v);  // HOLDS, FAILS, UNDECIDED

struct CheckConfig {
  ModelCheckConfig model;
};

struct CheckReport {
  AxiomInstance instance;
  Verdict verdict = Verdict::Undecided;
  // Values of the leading universal variables at the first failure.
  std::vector<std::pair<std::string, std::string>> counterexample;
  // Values of the leading existential variables when the sentence holds.
  std::vector<std::pair<std::string, std::string>> witness;
  int64_t evaluations = 0;
  std::string note;

  std::string witness_str() const;  // "z=1/2" or "-"
};

// T, T' and calT are read in the circle group of m; the monoid theories in
// the non-negative cone of the infinitesimal vectors; TrG in H00.
CheckReport check(const AxiomInstance& inst, const GroupDescriptor& m, const CheckConfig& cfg = {});

// Checks the instance with its leading universal variables fixed; the
// witness of the first existential reached is reported.
CheckReport check_at(const AxiomInstance& inst, const GroupDescriptor& m, const Assignment& a,
                     const CheckConfig& cfg = {});

// Derived properties: negatives order, a doubling-monotone segment, the rho
// values closing up under + and -, monotonicity of n*x below rho_{1/n}, and
// the witness z0 < y.
std::vector<CheckReport> consequences_suite(const GroupDescriptor& m, const CheckConfig& cfg = {},
                                            int64_t bound = 6);

// Deliberately broken axioms; each should fail with a counterexample.
std::vector<CheckReport> corrupted_suite(const GroupDescriptor& m, const CheckConfig& cfg = {});

}  // namespace decimals

#endif  // DECIMALS_AXIOMS_HPP_
