#include "softcover/achievability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "softcover/errors.hpp"
#include "softcover/rng.hpp"

namespace softcover {
namespace {

double positive_part(double a) { return a > 0.0 ? a : 0.0; }

// Objective for the primal oracle on a flattened joint table.
class PrimalObjective {
 public:
  PrimalObjective(const Pmf& p, const Channel& w, double rate)
      : nx_(p.size()), ny_(w.out_size()), rate_(rate) {
    log2_pxy_.resize(nx_ * ny_);
    log2_px_.resize(nx_);
    for (int x = 0; x < nx_; ++x) {
      log2_px_[x] = p[x] > 0.0 ? std::log2(p[x]) : -kInfinity;
      for (int y = 0; y < ny_; ++y) {
        double v = p[x] * w(y, x);
        log2_pxy_[x * ny_ + y] = v > 0.0 ? std::log2(v) : -kInfinity;
      }
    }
  }

  double operator()(const std::vector<double>& q) const {
    std::vector<double> qy(ny_, 0.0);
    for (int x = 0; x < nx_; ++x)
      for (int y = 0; y < ny_; ++y) qy[y] += q[x * ny_ + y];
    double d1 = 0.0, d2 = 0.0;
    for (int x = 0; x < nx_; ++x)
      for (int y = 0; y < ny_; ++y) {
        double v = q[x * ny_ + y];
        if (v <= 0.0) continue;
        double lv = std::log2(v);
        d1 += v * (lv - log2_pxy_[x * ny_ + y]);
        d2 += v * (lv - log2_px_[x] - (qy[y] > 0.0 ? std::log2(qy[y]) : -kInfinity));
      }
    if (!std::isfinite(d1) || !std::isfinite(d2)) return kInfinity;
    return d1 + positive_part(d2 - rate_);
  }

  int dim() const { return nx_ * ny_; }

 private:
  int nx_, ny_;
  double rate_;
  std::vector<double> log2_pxy_, log2_px_;
};

// Coordinate-pair descent on the simplex: move mass between two cells with a
// ternary line search. Keeps the iterate exactly on the simplex.
double pairwise_descent(const PrimalObjective& obj, std::vector<double>& q) {
  const int k = obj.dim();
  double best = obj(q);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double before = best;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        // transfer t from cell j to cell i, t in [0, q[j]]
        double lo = 0.0, hi = q[j];
        if (hi < 1e-15) continue;
        auto at = [&](double t) {
          std::vector<double> qq(q);
          qq[j] -= t;
          qq[i] += t;
          return obj(qq);
        };
        for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
          double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
          if (at(m1) < at(m2)) hi = m2;
          else lo = m1;
        }
        double t = 0.5 * (lo + hi);
        double v = at(t);
        if (v < best - 1e-15) {
          q[j] -= t;
          q[i] += t;
          best = v;
        }
      }
    }
    if (before - best < 1e-13) break;
  }
  return best;
}

}  // namespace

AchievabilityResult ea_renyi(const Pmf& p, const Channel& w, double rate,
                             double lambda_tol) {
  if (rate < 0.0) throw std::invalid_argument("ea_renyi: negative rate");

  AchievabilityResult res;
  res.rate = rate;
  res.optimizer_px = p;

  long evals = 0;
  auto g = [&](double lambda) {
    ++evals;
    return lambda * (renyi_mi(1.0 / (1.0 + lambda), p, w) - rate);
  };

  // 64-point fallback scan: asserts unimodality and brackets the maximum.
  constexpr int kScan = 64;
  std::vector<double> scan(kScan + 1);
  int best_i = 0;
  for (int i = 0; i <= kScan; ++i) {
    scan[i] = g(static_cast<double>(i) / kScan);
    if (scan[i] > scan[best_i]) best_i = i;
  }
  int rises_after_fall = 0;
  for (int i = 1; i < kScan; ++i)
    if (scan[i] < scan[i - 1] - 1e-9 && scan[i + 1] > scan[i] + 1e-9) ++rises_after_fall;
  if (rises_after_fall > 0)
    std::fprintf(stderr, "ea_renyi: lambda scan shows %d interior valleys\n",
                 rises_after_fall);

  double lo = static_cast<double>(std::max(best_i - 1, 0)) / kScan;
  double hi = static_cast<double>(std::min(best_i + 1, kScan)) / kScan;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = g(c), fd = g(d);
  while (hi - lo > lambda_tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = g(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = g(d);
    }
  }
  double lambda_star = 0.5 * (lo + hi);
  double value = g(lambda_star);
  if (scan[best_i] > value) {
    res.refine_delta = scan[best_i] - value;
    value = scan[best_i];
    lambda_star = static_cast<double>(best_i) / kScan;
  } else {
    res.refine_delta = value - scan[best_i];
  }

  // prefer the smallest maximizing lambda on plateaus
  if (scan[0] >= value - 1e-12) {
    lambda_star = 0.0;
    value = scan[0];
  }
  if (value < 0.0) {
    if (value < -1e-12)
      std::fprintf(stderr, "ea_renyi: clamping negative dual value %.3e\n", value);
    value = 0.0;
    lambda_star = 0.0;
    res.clamped_negative = true;
  }

  res.value = value;
  res.optimizer_lambda = lambda_star;
  res.optimizer_alpha = 1.0 / (1.0 + lambda_star);
  res.evaluations = evals;
  return res;
}

double ea_primal_oracle(const Pmf& p, const Channel& w, double rate,
                        std::uint64_t seed, int scan_points) {
  const int k = p.size() * w.out_size();
  if (k > 9)
    throw BudgetExceeded("ea_primal_oracle: alphabet too large for oracle mode");

  PrimalObjective obj(p, w, rate);
  CounterRng rng(seed, 0x9a1);

  // starts: P_XY itself plus the best points of the Dirichlet scan
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> pxy(k);
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < w.out_size(); ++y) pxy[x * w.out_size() + y] = p[x] * w(y, x);
    starts.push_back(pxy);
  }
  std::vector<std::pair<double, std::vector<double>>> top;
  for (int i = 0; i < scan_points; ++i) {
    std::vector<double> q = rng.next_simplex(k);
    double v = obj(q);
    top.emplace_back(v, std::move(q));
    if (top.size() > 6) {
      std::sort(top.begin(), top.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      top.resize(6);
    }
  }
  for (auto& [v, q] : top) starts.push_back(std::move(q));

  double best = kInfinity;
  for (auto& q : starts) best = std::min(best, pairwise_descent(obj, q));
  return std::max(best, 0.0);
}

double gibbs_min(const std::vector<double>& f, const Pmf& p_y) {
  if (static_cast<int>(f.size()) != p_y.size())
    throw std::invalid_argument("gibbs_min: size mismatch");
  std::vector<double> terms;
  terms.reserve(f.size());
  for (int y = 0; y < p_y.size(); ++y) {
    if (p_y[y] <= 0.0) continue;
    terms.push_back(std::log2(p_y[y]) - f[y]);
  }
  return -log2_sum_exp2(terms);
}

double tilted_inner_min(double lambda, const Pmf& q_y, const Channel& backward,
                        const InfoDensity& iota) {
  if (q_y.size() != backward.in_size())
    throw std::invalid_argument("tilted_inner_min: shape mismatch");
  double total = 0.0;
  for (int y = 0; y < q_y.size(); ++y) {
    if (q_y[y] <= 0.0) continue;
    std::vector<double> terms;
    for (int x = 0; x < backward.out_size(); ++x) {
      double wb = backward(x, y);
      if (wb <= 0.0) continue;
      terms.push_back(std::log2(wb) - lambda * iota.value[x][y]);
    }
    total -= q_y[y] * log2_sum_exp2(terms);
  }
  return total;
}

ExponentCurve ea_curve(const Channel& w, const Pmf& p_y,
                       const std::vector<double>& rates, int polytope_resolution,
                       double lambda_tol) {
  auto poly = build_feasible(w, p_y);
  if (!poly)
    throw std::invalid_argument("ea_curve: target output not reachable under channel");

  ExponentCurve curve;
  for (double rate : rates) {
    SimplexMin m = minimize_over(
        *poly,
        [&](const Pmf& px) { return ea_renyi(px, w, rate, lambda_tol).value; },
        polytope_resolution);
    AchievabilityResult best = ea_renyi(m.argmin, w, rate, lambda_tol);
    ExponentRow row;
    row.rate = rate;
    row.e_a = best.value;
    row.alpha_star = best.optimizer_alpha;
    row.px_digest = pmf_digest(m.argmin.probs());
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

std::string pmf_digest(const std::vector<double>& probs) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6f", probs[i]);
    if (i) out += '|';
    out += buf;
  }
  return out;
}

}  // namespace softcover
