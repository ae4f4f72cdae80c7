#ifndef SOFTCOVER_SIM_HPP
#define SOFTCOVER_SIM_HPP

#include <cstdint>
#include <vector>

#include "softcover/prob.hpp"
#include "softcover/types.hpp"

namespace softcover {

// Explicit codebook of M length-n input sequences.
struct Code {
  std::vector<std::vector<int>> codewords;
  int n = 0;
  int M = 0;
};

struct SimReport {
  int n = 0;
  int M = 0;
  int trial = 0;
  int trials = 0;
  double rate = 0.0;
  double tv = 0.0;                 // in [0, 1]
  double exponent_estimate = 0.0;  // -(1/n) log2 (1 - tv)
  std::uint64_t seed = 0;
};

// Exact half-L1 distance between the code-induced n-letter output and the
// product target; exhaustive over |Y|^n <= 2^22 outputs.
double induced_output_tv(const Code& code, const Channel& w, const Pmf& p_y);

// i.i.d.-per-symbol codebook, deterministic in (seed).
Code sample_code(const Pmf& p, int n, int M, std::uint64_t seed);

// Uniform sampling from the type class of t.
Code sample_code(const TypeHistogram& t, int M, std::uint64_t seed);

// For each n: sample `trials` codes at M = round(2^{nR}), exact tv each.
std::vector<SimReport> empirical_exponent(const Channel& w, const Pmf& p_y,
                                          const Pmf& p, double rate,
                                          const std::vector<int>& n_list,
                                          int trials, std::uint64_t seed);

struct BinomialCheck {
  double lhs = 0.0;  // exact (1/2) E|K/M - p|
  double rhs = 0.0;  // p - (1/2) p min(Mp, 1)
  bool ok = false;
};

BinomialCheck binomial_bound_check(int M, double p);

}  // namespace softcover

#endif
