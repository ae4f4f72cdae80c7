#ifndef SOFTCOVER_RNG_HPP
#define SOFTCOVER_RNG_HPP

#include <cstdint>
#include <cmath>
#include <vector>

namespace softcover {

// SplitMix64 run in counter mode: output i of stream (seed, stream_id) is a
// pure function of (seed, stream_id, i), so trials can be fanned out in any
// order and still reproduce bit-identically.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix(seed ^ mix(stream_id + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in {0, ..., n-1}
  int next_below(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // index sampled from a pmf given as cumulative weights
  int next_categorical(const std::vector<double>& cdf) {
    double u = next_double() * cdf.back();
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
      if (u < cdf[i]) return static_cast<int>(i);
    return static_cast<int>(cdf.size()) - 1;
  }

  // Dirichlet(1,...,1) point on the k-simplex via normalized exponentials
  std::vector<double> next_simplex(int k) {
    std::vector<double> v(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      double u = next_double();
      if (u <= 0.0) u = 0x1.0p-53;
      v[i] = -std::log(u);
      sum += v[i];
    }
    for (double& x : v) x /= sum;
    return v;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace softcover

#endif
