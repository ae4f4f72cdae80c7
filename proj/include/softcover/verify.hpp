#ifndef SOFTCOVER_VERIFY_HPP
#define SOFTCOVER_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace softcover {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;
};

// Self-contained verification suites behind `softcover verify`. Each draws its
// own seeded random instances, so results are reproducible.
SuiteResult verify_lemma1();         // exact binomial expectation vs bound
SuiteResult verify_lemma2();         // backward-channel divergence identities
SuiteResult verify_gibbs();          // closed form vs simplex-grid minimization
SuiteResult verify_corollary1();     // tilted inner min vs conditional grid
SuiteResult verify_dual_primal();    // Renyi dual vs primal oracle
SuiteResult verify_tilted_family();  // inner_min_out vs 400x400 grid
SuiteResult verify_type_bounds();    // type-class sandwich + partition check

std::vector<SuiteResult> run_verify_suites(const std::string& filter = "");

}  // namespace softcover

#endif
