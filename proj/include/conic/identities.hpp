#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conic/combinatorics.hpp"
#include "conic/formulas.hpp"

namespace conic::checks {

struct CheckResult {
  std::string name;
  bool pass = true;
  long cases = 0;
  std::string detail;  // first failing case, empty on success
};

// Calls visit(parts) for every composition of total into exactly `count`
// positive parts.
void for_each_composition(int total, int count,
                          const std::function<void(const std::vector<int>&)>& visit);

// Recurrences, boundary values, polynomial expansions, row sums and the four
// Stirling convolution identities for n <= max_n.
std::vector<CheckResult> stirling_identities(const comb::StirlingTables& tables, long max_n = 30);

// The P and Q composition convolutions, by exhaustive enumeration for n <= max_n.
std::vector<CheckResult> composition_convolutions(const comb::StirlingTables& tables,
                                                  long max_n = 8);

// Cross-identities among the closed forms for every valid model with
// n <= max_n, d <= max_d and every valid index.
std::vector<CheckResult> formula_consistency(const formulas::Evaluator& ev, long max_n = 10,
                                             long max_d = 5);

CheckResult wendel_check();
// Conditioned E f_1 for the bridge at n=500, d=3 is within 10% of 2!{3 2} = 6.
CheckResult large_n_check(const formulas::Evaluator& ev);

// Everything above.
std::vector<CheckResult> identity_suite(const formulas::Evaluator& ev);

}  // namespace conic::checks
