#ifndef SOFTCOVER_CONVERSE_HPP
#define SOFTCOVER_CONVERSE_HPP

#include <array>
#include <utility>
#include <vector>

#include "softcover/curve.hpp"
#include "softcover/prob.hpp"

namespace softcover {

struct ConverseInstance {
  Channel channel;   // W
  Pmf target;        // P_Y
  int qx_resolution = 33;
  int v_resolution = 64;
  double s_tolerance = 1e-6;  // bits
};

struct InnerOutResult {
  double value = kInfinity;
  Channel minimizer;
  bool feasible = false;  // false: no V outside V^s (slack s unattainable)
};

struct InnerInResult {
  double value = kInfinity;
  Channel minimizer;
  bool on_boundary = false;
};

// min D(V||W|q) over channels with H(V|q) >= H(W|q) + s, via the tilted
// family V_mu proportional to W^{1/(1+mu)} (entropy bisection on mu).
InnerOutResult inner_min_out(const Pmf& q, const Channel& w, double s);

// min D(qV||P_Y) + |I(q;V) - R|^+ over channels with H(V|q) <= H(W|q) + s.
InnerInResult inner_min_in(const Pmf& q, const Channel& w, const Pmf& p_y,
                           double s, double rate, int v_resolution = 64);

struct BalancedSolution {
  Pmf qx;
  double s_star = 0.0;
  double value = 0.0;
  double inner_in_value = 0.0;
  double inner_out_value = 0.0;
  Channel v_in, v_out;
  // (s, f(s), g(s)) at each bisection iterate, for monotonicity diagnostics
  std::vector<std::array<double, 3>> trace;
};

// Bisects the slack s until the in-set and out-of-set minima cross.
BalancedSolution balance_s(const Pmf& q, const Channel& w, const Pmf& p_y,
                           double rate, double tol = 1e-6, int v_resolution = 64);

// Outer minimization over the full Q_X simplex (lattice + local refinement).
ExponentCurve ec_curve(const ConverseInstance& instance,
                       const std::vector<double>& rates);

// Single-rate variant; returns the best balanced solution over the lattice.
BalancedSolution ec_at_rate(const ConverseInstance& instance, double rate);

}  // namespace softcover

#endif
