#include "softcover/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace softcover {
namespace {

constexpr double kSumTol = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

Pmf::Pmf(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw std::invalid_argument("Pmf: empty alphabet");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0)) throw std::invalid_argument("Pmf: negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("Pmf: entries sum to " + std::to_string(sum));
  if (std::abs(sum - 1.0) > kSumTol) {
    for (double& x : p_) x /= sum;
  }
}

Channel::Channel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("Channel: no rows");
  const std::size_t ny = rows_[0].size();
  for (auto& r : rows_) {
    if (r.size() != ny) throw std::invalid_argument("Channel: ragged rows");
    Pmf check(r);  // row invariants
    r = check.probs();
  }
}

Channel Channel::bsc(double crossover) {
  return Channel({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

Channel Channel::identity(int k) {
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) rows[i][i] = 1.0;
  return Channel(std::move(rows));
}

JointPmf::JointPmf(std::vector<std::vector<double>> table) : t_(std::move(table)) {
  if (t_.empty() || t_[0].empty()) throw std::invalid_argument("JointPmf: empty table");
  const std::size_t ny = t_[0].size();
  double sum = 0.0;
  for (const auto& r : t_) {
    if (r.size() != ny) throw std::invalid_argument("JointPmf: ragged table");
    for (double x : r) {
      if (!(x >= 0.0)) throw std::invalid_argument("JointPmf: negative entry");
      sum += x;
    }
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("JointPmf: total sum " + std::to_string(sum));
  if (std::abs(sum - 1.0) > kSumTol) {
    for (auto& r : t_)
      for (double& x : r) x /= sum;
  }
}

Pmf JointPmf::marginal_x() const {
  std::vector<double> m(x_size(), 0.0);
  for (int x = 0; x < x_size(); ++x)
    m[x] = std::accumulate(t_[x].begin(), t_[x].end(), 0.0);
  return Pmf(std::move(m));
}

Pmf JointPmf::marginal_y() const {
  std::vector<double> m(y_size(), 0.0);
  for (const auto& r : t_)
    for (int y = 0; y < y_size(); ++y) m[y] += r[y];
  return Pmf(std::move(m));
}

double entropy(const Pmf& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) h -= xlog2x(p[i]);
  return std::max(h, 0.0);
}

double cond_entropy(const Channel& v, const Pmf& q) {
  if (v.in_size() != q.size())
    throw std::invalid_argument("cond_entropy: dimension mismatch");
  double h = 0.0;
  for (int x = 0; x < q.size(); ++x) {
    if (q[x] == 0.0) continue;
    h += q[x] * entropy(v.row_pmf(x));
  }
  return h;
}

double kl(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl: dimension mismatch");
  double d = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInfinity;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double cond_kl(const Channel& v, const Channel& w, const Pmf& q) {
  if (v.in_size() != w.in_size() || v.out_size() != w.out_size() ||
      v.in_size() != q.size())
    throw std::invalid_argument("cond_kl: shape mismatch");
  double d = 0.0;
  for (int x = 0; x < q.size(); ++x) {
    if (q[x] == 0.0) continue;
    double row = kl(v.row_pmf(x), w.row_pmf(x));
    if (row == kInfinity) return kInfinity;
    d += q[x] * row;
  }
  return d;
}

Pmf push_forward(const Pmf& q, const Channel& v) {
  if (q.size() != v.in_size())
    throw std::invalid_argument("push_forward: dimension mismatch");
  std::vector<double> out(v.out_size(), 0.0);
  for (int x = 0; x < q.size(); ++x)
    for (int y = 0; y < v.out_size(); ++y) out[y] += q[x] * v(y, x);
  return Pmf(std::move(out));
}

JointPmf joint_of(const Pmf& q, const Channel& v) {
  if (q.size() != v.in_size())
    throw std::invalid_argument("joint_of: dimension mismatch");
  std::vector<std::vector<double>> t(q.size(), std::vector<double>(v.out_size()));
  for (int x = 0; x < q.size(); ++x)
    for (int y = 0; y < v.out_size(); ++y) t[x][y] = q[x] * v(y, x);
  return JointPmf(std::move(t));
}

BackwardDecomposition backward_of(const JointPmf& j) {
  Pmf my = j.marginal_y();
  std::vector<bool> present(j.y_size());
  std::vector<std::vector<double>> rows(j.y_size(), std::vector<double>(j.x_size(), 0.0));
  for (int y = 0; y < j.y_size(); ++y) {
    present[y] = my[y] > 0.0;
    if (!present[y]) {
      rows[y][0] = 1.0;  // placeholder; must never be read
      continue;
    }
    for (int x = 0; x < j.x_size(); ++x) rows[y][x] = j(x, y) / my[y];
  }
  return {std::move(my), Channel(std::move(rows)), std::move(present)};
}

InfoDensity info_density(const JointPmf& j) {
  Pmf mx = j.marginal_x();
  Pmf my = j.marginal_y();
  InfoDensity out;
  out.value.assign(j.x_size(), std::vector<double>(j.y_size(), 0.0));
  out.support.assign(j.x_size(), std::vector<bool>(j.y_size(), false));
  for (int x = 0; x < j.x_size(); ++x)
    for (int y = 0; y < j.y_size(); ++y) {
      if (j(x, y) <= 0.0) continue;
      out.support[x][y] = true;
      out.value[x][y] = std::log2(j(x, y) / (mx[x] * my[y]));
    }
  return out;
}

double mutual_information(const Pmf& p, const Channel& w) {
  JointPmf j = joint_of(p, w);
  InfoDensity iota = info_density(j);
  double mi = 0.0;
  for (int x = 0; x < j.x_size(); ++x)
    for (int y = 0; y < j.y_size(); ++y)
      if (iota.support[x][y]) mi += j(x, y) * iota.value[x][y];
  return std::max(mi, 0.0);
}

double renyi_mi(double alpha, const Pmf& p, const Channel& w) {
  if (!(alpha > 0.0)) throw std::invalid_argument("renyi_mi: alpha must be positive");
  if (alpha == 1.0) return mutual_information(p, w);

  JointPmf j = joint_of(p, w);
  BackwardDecomposition bw = backward_of(j);
  InfoDensity iota = info_density(j);

  // log-domain accumulation: outer terms log2 Py(y) + (1/alpha) * log2 inner(y)
  std::vector<double> outer;
  outer.reserve(j.y_size());
  for (int y = 0; y < j.y_size(); ++y) {
    if (!bw.row_present[y]) continue;
    std::vector<double> inner;
    inner.reserve(j.x_size());
    for (int x = 0; x < j.x_size(); ++x) {
      double wb = bw.backward(x, y);
      if (wb <= 0.0) continue;
      inner.push_back(std::log2(wb) + (alpha - 1.0) * iota.value[x][y]);
    }
    outer.push_back(std::log2(bw.marginal_y[y]) + log2_sum_exp2(inner) / alpha);
  }
  return alpha / (alpha - 1.0) * log2_sum_exp2(outer);
}

double log2_sum_exp2(const std::vector<double>& a) {
  double m = -kInfinity;
  for (double x : a) m = std::max(m, x);
  if (m == -kInfinity) return -kInfinity;
  double s = 0.0;
  for (double x : a) s += std::exp2(x - m);
  return m + std::log2(s);
}

}  // namespace softcover
