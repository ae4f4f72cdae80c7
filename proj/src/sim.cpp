#include "softcover/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softcover/errors.hpp"
#include "softcover/rng.hpp"

namespace softcover {

double induced_output_tv(const Code& code, const Channel& w, const Pmf& p_y) {
  const int n = code.n;
  const int ny = w.out_size();
  double states = std::pow(static_cast<double>(ny), n);
  if (states > 4194304.0)
    throw BudgetExceeded("induced_output_tv: |Y|^n exceeds 2^22; reduce n");

  std::vector<std::vector<double>> log2_w(w.in_size(), std::vector<double>(ny));
  for (int x = 0; x < w.in_size(); ++x)
    for (int y = 0; y < ny; ++y)
      log2_w[x][y] = w(y, x) > 0.0 ? std::log2(w(y, x)) : -kInfinity;
  std::vector<double> log2_py(ny);
  for (int y = 0; y < ny; ++y)
    log2_py[y] = p_y[y] > 0.0 ? std::log2(p_y[y]) : -kInfinity;

  const double log2_m = std::log2(static_cast<double>(code.M));
  std::vector<int> yseq(n, 0);
  std::vector<double> per_codeword(code.M);
  double tv = 0.0;
  while (true) {
    for (int i = 0; i < code.M; ++i) {
      double lp = 0.0;
      const std::vector<int>& cw = code.codewords[i];
      for (int t = 0; t < n; ++t) {
        lp += log2_w[cw[t]][yseq[t]];
        if (lp == -kInfinity) break;
      }
      per_codeword[i] = lp;
    }
    double induced = std::exp2(log2_sum_exp2(per_codeword) - log2_m);
    double product_lp = 0.0;
    for (int t = 0; t < n; ++t) product_lp += log2_py[yseq[t]];
    tv += std::abs(induced - std::exp2(product_lp));

    int t = n - 1;
    while (t >= 0 && yseq[t] == ny - 1) yseq[t--] = 0;
    if (t < 0) break;
    ++yseq[t];
  }
  return std::min(tv / 2.0, 1.0);
}

Code sample_code(const Pmf& p, int n, int M, std::uint64_t seed) {
  if (M < 1 || n < 1) throw std::invalid_argument("sample_code: M, n must be positive");
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  Code code;
  code.n = n;
  code.M = M;
  code.codewords.resize(M);
  for (int i = 0; i < M; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    code.codewords[i].resize(n);
    for (int t = 0; t < n; ++t) code.codewords[i][t] = rng.next_categorical(cdf);
  }
  return code;
}

Code sample_code(const TypeHistogram& t, int M, std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("sample_code: M must be positive");
  Code code;
  code.n = t.n;
  code.M = M;
  code.codewords.resize(M);
  for (int i = 0; i < M; ++i) {
    // Fisher-Yates shuffle of the canonical sequence of the type
    std::vector<int> seq;
    for (std::size_t sym = 0; sym < t.counts.size(); ++sym)
      seq.insert(seq.end(), t.counts[sym], static_cast<int>(sym));
    CounterRng rng(seed, 0x7000 + static_cast<std::uint64_t>(i));
    for (int j = t.n - 1; j > 0; --j)
      std::swap(seq[j], seq[rng.next_below(j + 1)]);
    code.codewords[i] = std::move(seq);
  }
  return code;
}

std::vector<SimReport> empirical_exponent(const Channel& w, const Pmf& p_y,
                                          const Pmf& p, double rate,
                                          const std::vector<int>& n_list,
                                          int trials, std::uint64_t seed) {
  std::vector<SimReport> reports;
  for (int n : n_list) {
    const int m = std::max(1, static_cast<int>(std::llround(std::exp2(n * rate))));
    for (int trial = 0; trial < trials; ++trial) {
      std::uint64_t trial_seed =
          seed ^ (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(trial);
      Code code = sample_code(p, n, m, trial_seed);
      SimReport rep;
      rep.n = n;
      rep.M = m;
      rep.trial = trial;
      rep.trials = trials;
      rep.rate = rate;
      rep.seed = trial_seed;
      rep.tv = induced_output_tv(code, w, p_y);
      rep.exponent_estimate =
          rep.tv < 1.0 ? -std::log2(1.0 - rep.tv) / n : kInfinity;
      reports.push_back(rep);
    }
  }
  return reports;
}

BinomialCheck binomial_bound_check(int M, double p) {
  if (M < 2) throw std::invalid_argument("binomial_bound_check: M >= 2 required");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("binomial_bound_check: p outside [0,1]");

  BinomialCheck out;
  out.rhs = p - 0.5 * p * std::min(M * p, 1.0);
  if (p == 0.0 || p == 1.0) {
    out.lhs = 0.0;  // K/M is deterministic
    out.ok = out.lhs <= out.rhs + 1e-12;
    return out;
  }
  double lhs = 0.0;
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgm = std::lgamma(M + 1.0);
  for (int k = 0; k <= M; ++k) {
    double log_pmf = lgm - std::lgamma(k + 1.0) - std::lgamma(M - k + 1.0) +
                     k * lp + (M - k) * lq;
    lhs += std::exp(log_pmf) * std::abs(static_cast<double>(k) / M - p);
  }
  out.lhs = 0.5 * lhs;
  out.ok = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace softcover
