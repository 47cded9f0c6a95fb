#pragma once

#include <string>

#include "yf/numbers.hpp"

namespace yf {

struct SuiteResult {
  std::string suite;
  bool pass = true;
  long long checks = 0;
  std::string counterexample;  // first failing instance, empty when pass
};

// Identity suites, each sweeping exhaustively up to the given weight.
SuiteResult verify_d1_closed(int max_weight);                    // r = 1: DP count vs d1_closed
SuiteResult verify_dr_closed(int r, int max_weight);            // DP count vs dr_closed
SuiteResult verify_suffix_class(int r, int max_weight);         // class counts + telescoping
SuiteResult verify_fiber_sum(int r, int max_u, int max_v);      // fiber sums, both sides
SuiteResult verify_differential(int r, int max_weight);         // degree gap + level sizes
SuiteResult verify_f_normalization(int max_weight);             // f(v,0,z) = d1(eps,v)/|v|!
SuiteResult verify_g_characterization(int r, int max_weight);   // suffix-weight reading of g
SuiteResult verify_inequalities(int r, int max_weight);
SuiteResult verify_plancherel(int r, int max_weight);           // masses and harmonicity

// Dispatch by suite name (d1-closed, dr-closed, suffix-class, fiber-sum,
// differential, f-normalization, g-characterization, inequalities,
// plancherel), applying per-suite default budgets when max_weight <= 0.
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, int r, int max_weight);

std::string suite_result_json(const SuiteResult& s);

}  // namespace yf
