#ifndef SOFTCOVER_ACHIEVABILITY_HPP
#define SOFTCOVER_ACHIEVABILITY_HPP

#include <cstdint>
#include <vector>

#include "softcover/curve.hpp"
#include "softcover/feasible.hpp"
#include "softcover/prob.hpp"

namespace softcover {

struct AchievabilityResult {
  double rate = 0.0;
  double value = 0.0;
  double optimizer_alpha = 1.0;  // in [1/2, 1]
  double optimizer_lambda = 0.0;
  Pmf optimizer_px;
  long evaluations = 0;
  double refine_delta = 0.0;  // |golden result - best scan point|
  bool clamped_negative = false;
};

// Renyi dual: max over lambda in [0,1] of lambda * (I_{1/(1+lambda)}(p, w) - R),
// found by golden-section search with a 64-point unimodality scan.
AchievabilityResult ea_renyi(const Pmf& p, const Channel& w, double rate,
                             double lambda_tol = 1e-7);

// Direct minimization over the joint simplex of
// D(Q||P_XY) + |D(Q||P_X Q_Y) - R|^+. Oracle-grade only: |X||Y| <= 9.
double ea_primal_oracle(const Pmf& p, const Channel& w, double rate,
                        std::uint64_t seed = 7, int scan_points = 120000);

// Closed form of min_Q { D(Q||P_Y) + E_Q[f] } = -log2 E_{P_Y}[2^{-f}].
double gibbs_min(const std::vector<double>& f, const Pmf& p_y);

// Closed form of min_Vbar { D(Vbar||Wbar|Q_Y) + lambda E[iota] } over backward
// channels, evaluated at the given backward reference and info density.
double tilted_inner_min(double lambda, const Pmf& q_y, const Channel& backward,
                        const InfoDensity& iota);

// Per-rate E_a over the feasible polytope.
ExponentCurve ea_curve(const Channel& w, const Pmf& p_y,
                       const std::vector<double>& rates, int polytope_resolution = 33,
                       double lambda_tol = 1e-7);

}  // namespace softcover

#endif
