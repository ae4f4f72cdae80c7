#include "softcover/converse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "softcover/errors.hpp"

namespace softcover {
namespace {

double positive_part(double a) { return a > 0.0 ? a : 0.0; }

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Raw-vector channel workspace; rows for q(x)=0 are pinned to W and ignored.
struct VWork {
  std::vector<std::vector<double>> rows;
};

double row_entropy(const std::vector<double>& r) {
  double h = 0.0;
  for (double v : r) h -= xlog2x(v);
  return h;
}

double work_cond_entropy(const VWork& v, const Pmf& q) {
  double h = 0.0;
  for (int x = 0; x < q.size(); ++x)
    if (q[x] > 0.0) h += q[x] * row_entropy(v.rows[x]);
  return h;
}

double work_cond_kl(const VWork& v, const Channel& w, const Pmf& q) {
  double d = 0.0;
  for (int x = 0; x < q.size(); ++x) {
    if (q[x] == 0.0) continue;
    for (std::size_t y = 0; y < v.rows[x].size(); ++y) {
      double p = v.rows[x][y];
      if (p <= 0.0) continue;
      if (w(static_cast<int>(y), x) <= 0.0) return kInfinity;
      d += q[x] * p * std::log2(p / w(static_cast<int>(y), x));
    }
  }
  return d;
}

// F(V) = D(qV || P_Y) + |I(q;V) - R|^+
double work_objective(const VWork& v, const Pmf& q, const Pmf& p_y, double rate) {
  const int ny = static_cast<int>(v.rows[0].size());
  std::vector<double> out(ny, 0.0);
  for (int x = 0; x < q.size(); ++x)
    for (int y = 0; y < ny; ++y) out[y] += q[x] * v.rows[x][y];
  double d = 0.0, hy = 0.0;
  for (int y = 0; y < ny; ++y) {
    if (out[y] <= 0.0) continue;
    if (p_y[y] <= 0.0) return kInfinity;
    d += out[y] * std::log2(out[y] / p_y[y]);
    hy -= xlog2x(out[y]);
  }
  double mi = hy - work_cond_entropy(v, q);
  return std::max(d, 0.0) + positive_part(mi - rate);
}

Channel to_channel(const VWork& v) {
  std::vector<std::vector<double>> rows = v.rows;
  for (auto& r : rows) {
    double sum = 0.0;
    for (double& x : r) {
      x = std::max(x, 0.0);
      sum += x;
    }
    for (double& x : r) x /= sum;
  }
  return Channel(std::move(rows));
}

// All compositions of `total` into `parts` cells.
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == parts - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= rem; ++c) {
      cur[pos] = c;
      rec(pos + 1, rem - c);
    }
  };
  rec(0, total);
  return out;
}

struct LatticePoint {
  VWork v;
  double h;  // H(V|q)
  double f;  // in-set objective
  double d;  // D(V||W|q)
};

// Shared lattice scan over conditional simplices; feeds both inner solvers'
// oracle paths and balance_s's discrete envelopes.
std::vector<LatticePoint> scan_lattice(const Pmf& q, const Channel& w,
                                       const Pmf& p_y, double rate,
                                       int v_resolution) {
  const int nx = q.size(), ny = w.out_size();
  std::vector<int> active;
  for (int x = 0; x < nx; ++x)
    if (q[x] > 0.0) active.push_back(x);

  int res = std::max(v_resolution, 8);
  auto count_rows = [&](int r) {
    double c = 1.0;
    for (int i = 2; i < ny; ++i) c *= (r + i) / static_cast<double>(i);
    return c * (r + 1);
  };
  while (std::pow(count_rows(res), static_cast<double>(active.size())) > 2e5 && res > 4)
    res = res * 3 / 4;

  std::vector<std::vector<double>> row_cands;
  for (const auto& comp : compositions(res, ny)) {
    std::vector<double> r(ny);
    for (int y = 0; y < ny; ++y) r[y] = static_cast<double>(comp[y]) / res;
    row_cands.push_back(std::move(r));
  }

  VWork base;
  base.rows.resize(nx);
  for (int x = 0; x < nx; ++x) base.rows[x] = w.row(x);

  std::vector<LatticePoint> points;
  const int na = static_cast<int>(active.size());
  std::vector<std::size_t> idx(na, 0);
  while (true) {
    VWork v = base;
    for (int i = 0; i < na; ++i) v.rows[active[i]] = row_cands[idx[i]];
    LatticePoint pt{v, work_cond_entropy(v, q), work_objective(v, q, p_y, rate),
                    work_cond_kl(v, w, q)};
    points.push_back(std::move(pt));
    int i = na - 1;
    while (i >= 0 && idx[i] == row_cands.size() - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  // W itself, exactly
  points.push_back({base, work_cond_entropy(base, q),
                    work_objective(base, q, p_y, rate), 0.0});
  return points;
}

// Mass-transfer coordinate descent on F, rejecting moves past the entropy cap.
double refine_in(VWork& v, const Pmf& q, const Channel& w, const Pmf& p_y,
                 double rate, double cap, int max_sweeps) {
  const int nx = q.size(), ny = w.out_size();
  double best = work_objective(v, q, p_y, rate);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double before = best;
    for (int x = 0; x < nx; ++x) {
      if (q[x] == 0.0) continue;
      for (int y1 = 0; y1 < ny; ++y1) {
        for (int y2 = 0; y2 < ny; ++y2) {
          if (y1 == y2 || v.rows[x][y1] < 1e-15) continue;
          double lo = 0.0, hi = v.rows[x][y1];
          auto at = [&](double t) {
            VWork vv = v;
            vv.rows[x][y1] -= t;
            vv.rows[x][y2] += t;
            if (work_cond_entropy(vv, q) > cap + 1e-12) return kInfinity;
            return work_objective(vv, q, p_y, rate);
          };
          for (int it = 0; it < 40 && hi - lo > 1e-13; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (at(m1) < at(m2)) hi = m2;
            else lo = m1;
          }
          double t = 0.5 * (lo + hi);
          double val = at(t);
          if (val < best - 1e-14) {
            v.rows[x][y1] -= t;
            v.rows[x][y2] += t;
            best = val;
          }
        }
      }
    }
    if (before - best < 1e-13) break;
  }
  return best;
}

}  // namespace

InnerOutResult inner_min_out(const Pmf& q, const Channel& w, double s) {
  const int nx = q.size(), ny = w.out_size();
  if (nx != w.in_size()) throw std::invalid_argument("inner_min_out: shape mismatch");

  const double h_w = cond_entropy(w, q);
  if (s <= 1e-15) return {0.0, w, true};

  // maximal slack: each active row can reach uniform on its support
  double h_max = 0.0;
  for (int x = 0; x < nx; ++x) {
    if (q[x] == 0.0) continue;
    int supp = 0;
    for (int y = 0; y < ny; ++y)
      if (w(y, x) > 0.0) ++supp;
    h_max += q[x] * std::log2(static_cast<double>(supp));
  }
  const double target = h_w + s;

  auto tilted = [&](double mu) {
    VWork v;
    v.rows.resize(nx);
    for (int x = 0; x < nx; ++x) {
      v.rows[x].assign(ny, 0.0);
      double sum = 0.0;
      for (int y = 0; y < ny; ++y) {
        if (w(y, x) > 0.0) {
          v.rows[x][y] = std::exp2(std::log2(w(y, x)) / (1.0 + mu));
          sum += v.rows[x][y];
        }
      }
      for (double& p : v.rows[x]) p /= sum;
    }
    return v;
  };

  if (target > h_max + 1e-12) return {kInfinity, w, false};

  double lo = 0.0, hi = 1.0;
  while (work_cond_entropy(tilted(hi), q) < target - 1e-12) {
    hi *= 2.0;
    if (hi > 1e15) break;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, lo); ++it) {
    double mid = 0.5 * (lo + hi);
    if (work_cond_entropy(tilted(mid), q) < target) lo = mid;
    else hi = mid;
  }
  VWork v = tilted(0.5 * (lo + hi));
  double achieved = work_cond_entropy(v, q);
  if (achieved < target - 1e-6) return {kInfinity, w, false};
  return {work_cond_kl(v, w, q), to_channel(v), true};
}

InnerInResult inner_min_in(const Pmf& q, const Channel& w, const Pmf& p_y,
                           double s, double rate, int v_resolution) {
  if (s < 0.0) throw std::invalid_argument("inner_min_in: negative slack");
  const double cap = cond_entropy(w, q) + s;

  auto points = scan_lattice(q, w, p_y, rate, v_resolution);

  // best feasible lattice starts
  std::vector<const LatticePoint*> feasible;
  for (const auto& pt : points)
    if (pt.h <= cap + 1e-12) feasible.push_back(&pt);
  std::sort(feasible.begin(), feasible.end(),
            [](const LatticePoint* a, const LatticePoint* b) { return a->f < b->f; });
  if (feasible.empty()) throw std::logic_error("inner_min_in: empty feasible set");

  double best = kInfinity;
  VWork best_v;
  const int starts = std::min<std::size_t>(8, feasible.size());
  for (int i = 0; i < starts; ++i) {
    VWork v = feasible[i]->v;
    double val = refine_in(v, q, w, p_y, rate, cap, 100);
    if (val < best) {
      best = val;
      best_v = v;
    }
  }
  bool boundary = work_cond_entropy(best_v, q) >= cap - 1e-9;
  return {best, to_channel(best_v), boundary};
}

BalancedSolution balance_s(const Pmf& q, const Channel& w, const Pmf& p_y,
                           double rate, double tol, int v_resolution) {
  const int ny = w.out_size();
  const double s_max = std::log2(static_cast<double>(ny));
  const double cap0 = cond_entropy(w, q);

  BalancedSolution sol;
  sol.qx = q;

  // Shared lattice; f(s) / g(s) envelopes come from sorting by H(V|q).
  auto points = scan_lattice(q, w, p_y, rate, v_resolution);
  std::sort(points.begin(), points.end(),
            [](const LatticePoint& a, const LatticePoint& b) { return a.h < b.h; });
  const std::size_t m = points.size();
  std::vector<double> prefix_f(m), suffix_d(m + 1, kInfinity);
  double acc = kInfinity;
  for (std::size_t i = 0; i < m; ++i) {
    acc = std::min(acc, points[i].f);
    prefix_f[i] = acc;
  }
  for (std::size_t i = m; i-- > 0;)
    suffix_d[i] = std::min(suffix_d[i + 1], points[i].d);

  auto f_env = [&](double s) {
    double cap = cap0 + s;
    // last index with h <= cap
    std::size_t lo = 0, hi = m;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (points[mid].h <= cap + 1e-12) lo = mid + 1;
      else hi = mid;
    }
    return lo == 0 ? kInfinity : prefix_f[lo - 1];
  };

  auto g_exact = [&](double s) { return inner_min_out(q, w, s).value; };

  double f0 = f_env(0.0);
  {
    // refine f(0) if the envelope alone is not already conclusive
    InnerInResult r0 = inner_min_in(q, w, p_y, 0.0, rate, v_resolution);
    f0 = std::min(f0, r0.value);
    if (f0 <= 1e-9) {
      sol.s_star = 0.0;
      sol.value = 0.0;
      sol.inner_in_value = f0;
      sol.inner_out_value = 0.0;
      sol.v_in = r0.minimizer;
      sol.v_out = w;
      sol.trace.push_back({0.0, f0, 0.0});
      return sol;
    }
  }

  double lo = 0.0, hi = s_max;
  sol.trace.push_back({0.0, f0, 0.0});
  for (int it = 0; it < 80 && hi - lo > tol; ++it) {
    double s = 0.5 * (lo + hi);
    double f = f_env(s);
    double g = g_exact(s);
    sol.trace.push_back({s, f, g});
    if (f > g) lo = s;
    else hi = s;
  }
  double s_star = 0.5 * (lo + hi);

  // full in-set solve at the crossing
  InnerInResult rin = inner_min_in(q, w, p_y, s_star, rate, v_resolution);
  InnerOutResult rout = inner_min_out(q, w, s_star);
  // both the shared-lattice envelope and the refined solve evaluate feasible
  // channels, so the smaller of the two is the tighter estimate of f(s*)
  double f_star = std::min(rin.value, f_env(s_star));
  sol.s_star = s_star;
  sol.inner_in_value = f_star;
  sol.inner_out_value = rout.value;
  sol.v_in = rin.minimizer;
  sol.v_out = rout.minimizer;
  sol.trace.push_back({s_star, f_env(s_star), rout.value});
  sol.value = std::max(std::min(f_star, rout.value), 0.0);
  return sol;
}

BalancedSolution ec_at_rate(const ConverseInstance& instance, double rate) {
  const Channel& w = instance.channel;
  const int nx = w.in_size();
  const int res = std::max(instance.qx_resolution, 16);

  auto balance_at = [&](const Pmf& q) {
    return balance_s(q, w, instance.target, rate, instance.s_tolerance,
                     instance.v_resolution);
  };

  BalancedSolution best;
  best.value = kInfinity;
  std::vector<std::vector<int>> grid = [&] {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nx, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == nx - 1) {
        cur[pos] = rem;
        out.push_back(cur);
        return;
      }
      for (int c = 0; c <= rem; ++c) {
        cur[pos] = c;
        rec(pos + 1, rem - c);
      }
    };
    rec(0, res - 1);
    return out;
  }();

  for (const auto& comp : grid) {
    std::vector<double> p(nx);
    for (int x = 0; x < nx; ++x) p[x] = static_cast<double>(comp[x]) / (res - 1);
    BalancedSolution sol = balance_at(Pmf(std::move(p)));
    if (sol.value < best.value) best = sol;
    if (best.value == 0.0) break;
  }

  // local refinement around the best lattice point
  double step = 1.0 / (res - 1);
  std::vector<double> q = best.qx.probs();
  while (step > 1e-4 && best.value > 0.0) {
    bool improved = false;
    for (int i = 0; i < nx && !improved; ++i) {
      for (int j = 0; j < nx && !improved; ++j) {
        if (i == j) continue;
        for (double sgn : {+1.0}) {
          (void)sgn;
          if (q[j] < step) continue;
          std::vector<double> qq(q);
          qq[j] -= step;
          qq[i] += step;
          BalancedSolution sol = balance_at(Pmf(std::move(qq)));
          if (sol.value < best.value - 1e-14) {
            best = sol;
            q = best.qx.probs();
            improved = true;
          }
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  return best;
}

ExponentCurve ec_curve(const ConverseInstance& instance,
                       const std::vector<double>& rates) {
  ExponentCurve curve;
  for (double rate : rates) {
    BalancedSolution sol = ec_at_rate(instance, rate);
    ExponentRow row;
    row.rate = rate;
    row.e_c = sol.value;
    row.s_star = sol.s_star;
    row.qx_digest = pmf_digest(sol.qx.probs());
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

}  // namespace softcover
