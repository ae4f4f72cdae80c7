#include "softcover/feasible.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace softcover {
namespace {

constexpr double kFeasTol = 1e-9;

Eigen::MatrixXd constraint_matrix(const Channel& w) {
  const int nx = w.in_size(), ny = w.out_size();
  Eigen::MatrixXd a(ny + 1, nx);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) a(y, x) = w(y, x);
    a(ny, x) = 1.0;
  }
  return a;
}

Pmf clamp_to_pmf(Eigen::VectorXd v) {
  double sum = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    v(i) = std::max(v(i), 0.0);
    sum += v(i);
  }
  std::vector<double> p(v.size());
  for (int i = 0; i < v.size(); ++i) p[i] = v(i) / sum;
  return Pmf(std::move(p));
}

// All d-subsets of {0..n-1}, visited in lexicographic order.
void for_each_subset(int n, int d, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<FeasiblePolytope> build_feasible(const Channel& w, const Pmf& target) {
  const int nx = w.in_size(), ny = w.out_size();
  if (ny != target.size()) return std::nullopt;

  Eigen::MatrixXd a = constraint_matrix(w);
  Eigen::VectorXd b(ny + 1);
  for (int y = 0; y < ny; ++y) b(y) = target[y];
  b(ny) = 1.0;

  Eigen::VectorXd p0 = a.colPivHouseholderQr().solve(b);
  if ((a * p0 - b).lpNorm<Eigen::Infinity>() > 1e-8) return std::nullopt;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  const int d = static_cast<int>(lu.dimensionOfKernel());

  FeasiblePolytope poly;
  poly.channel = w;
  poly.target = target;

  if (d == 0) {
    if (p0.minCoeff() < -kFeasTol) return std::nullopt;
    poly.anchor = clamp_to_pmf(p0);
    poly.vertices.push_back(poly.anchor.probs());
    if (feasibility_residual(poly, poly.anchor) > kFeasTol) return std::nullopt;
    return poly;
  }

  // Orthonormal null-space basis.
  Eigen::MatrixXd k = lu.kernel();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(k);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(nx, d);

  // Vertices of {t : p0 + Q t >= 0}: activate d of the nx inequalities.
  std::vector<Eigen::VectorXd> verts;
  for_each_subset(nx, d, [&](const std::vector<int>& s) {
    Eigen::MatrixXd m(d, d);
    Eigen::VectorXd rhs(d);
    for (int i = 0; i < d; ++i) {
      m.row(i) = q.row(s[i]);
      rhs(i) = -p0(s[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> solver(m);
    if (!solver.isInvertible()) return;
    Eigen::VectorXd t = solver.solve(rhs);
    Eigen::VectorXd p = p0 + q * t;
    if (p.minCoeff() < -1e-8) return;
    for (const auto& existing : verts)
      if ((existing - p).lpNorm<Eigen::Infinity>() < 1e-9) return;
    verts.push_back(p);
  });
  if (verts.empty()) return std::nullopt;

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(nx);
  for (const auto& v : verts) centroid += v;
  centroid /= static_cast<double>(verts.size());

  poly.anchor = clamp_to_pmf(centroid);
  for (int j = 0; j < d; ++j) {
    std::vector<double> dir(nx);
    for (int x = 0; x < nx; ++x) dir[x] = q(x, j);
    poly.basis.push_back(std::move(dir));
  }
  for (const auto& v : verts) {
    std::vector<double> pv(nx);
    for (int x = 0; x < nx; ++x) pv[x] = std::max(v(x), 0.0);
    poly.vertices.push_back(std::move(pv));
  }
  if (feasibility_residual(poly, poly.anchor) > kFeasTol) return std::nullopt;
  return poly;
}

double feasibility_residual(const FeasiblePolytope& polytope, const Pmf& p) {
  Pmf out = push_forward(p, polytope.channel);
  double r = 0.0;
  for (int y = 0; y < out.size(); ++y)
    r = std::max(r, std::abs(out[y] - polytope.target[y]));
  return r;
}

SimplexMin minimize_over(const FeasiblePolytope& polytope,
                         const std::function<double(const Pmf&)>& objective,
                         int resolution) {
  const int nx = polytope.anchor.size();
  const int d = static_cast<int>(polytope.basis.size());

  if (d == 0) return {polytope.anchor, objective(polytope.anchor), 1};

  // t-coordinates of each vertex relative to the anchor (basis is orthonormal).
  auto to_t = [&](const std::vector<double>& p) {
    std::vector<double> t(d, 0.0);
    for (int j = 0; j < d; ++j)
      for (int x = 0; x < nx; ++x)
        t[j] += polytope.basis[j][x] * (p[x] - polytope.anchor[x]);
    return t;
  };
  auto to_p = [&](const std::vector<double>& t) {
    std::vector<double> p(polytope.anchor.probs());
    for (int j = 0; j < d; ++j)
      for (int x = 0; x < nx; ++x) p[x] += t[j] * polytope.basis[j][x];
    return p;
  };

  std::vector<double> lo(d, 0.0), hi(d, 0.0);
  for (const auto& v : polytope.vertices) {
    std::vector<double> t = to_t(v);
    for (int j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], t[j]);
      hi[j] = std::max(hi[j], t[j]);
    }
  }

  // cap total lattice evaluations at 1e6
  int res = std::max(resolution, 2);
  while (std::pow(static_cast<double>(res), d) > 1e6 && res > 3) --res;

  long evals = 0;
  auto eval_p = [&](const std::vector<double>& p, Pmf& out) -> double {
    double sum = 0.0;
    std::vector<double> clamped(p);
    for (double& x : clamped) {
      if (x < -1e-10) return kInfinity;
      x = std::max(x, 0.0);
      sum += x;
    }
    for (double& x : clamped) x /= sum;
    out = Pmf(std::move(clamped));
    if (feasibility_residual(polytope, out) > 1e-8) return kInfinity;
    ++evals;
    return objective(out);
  };

  Pmf best_p = polytope.anchor;
  double best = objective(polytope.anchor);
  std::vector<double> best_t(d, 0.0);
  ++evals;

  std::vector<int> idx(d, 0);
  while (true) {
    std::vector<double> t(d);
    for (int j = 0; j < d; ++j)
      t[j] = lo[j] + (hi[j] - lo[j]) * idx[j] / (res - 1);
    Pmf cand;
    double val = eval_p(to_p(t), cand);
    if (val < best) {
      best = val;
      best_p = cand;
      best_t = t;
    }
    int j = d - 1;
    while (j >= 0 && idx[j] == res - 1) idx[j--] = 0;
    if (j < 0) break;
    ++idx[j];
  }

  // coordinate descent refinement
  double step = 0.0;
  for (int j = 0; j < d; ++j) step = std::max(step, (hi[j] - lo[j]) / (res - 1));
  while (step > 1e-6) {
    bool improved = false;
    for (int j = 0; j < d; ++j) {
      for (double sgn : {+1.0, -1.0}) {
        std::vector<double> t = best_t;
        t[j] += sgn * step;
        Pmf cand;
        double val = eval_p(to_p(t), cand);
        if (val < best - 1e-15) {
          best = val;
          best_p = cand;
          best_t = t;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }

  return {best_p, best, evals};
}

}  // namespace softcover
