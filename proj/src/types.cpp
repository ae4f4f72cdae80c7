#include "softcover/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "softcover/errors.hpp"

namespace softcover {
namespace {

double positive_part(double a) { return a > 0.0 ? a : 0.0; }

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double composition_count(int n, int k) {
  // C(n+k-1, k-1) in double, only for the budget guard
  double c = 1.0;
  for (int i = 1; i < k; ++i) c = c * (n + i) / i;
  return c;
}

}  // namespace

TypeHistogram JointTypeTable::x_type() const {
  TypeHistogram t;
  t.n = n;
  for (const auto& row : counts) {
    int s = 0;
    for (int c : row) s += c;
    t.counts.push_back(s);
  }
  return t;
}

TypeHistogram JointTypeTable::y_type() const {
  TypeHistogram t;
  t.n = n;
  t.counts.assign(counts[0].size(), 0);
  for (const auto& row : counts)
    for (std::size_t y = 0; y < row.size(); ++y) t.counts[y] += row[y];
  return t;
}

std::vector<TypeHistogram> enumerate_types(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("enumerate_types: bad arguments");
  if (composition_count(n, k) > 1e7)
    throw BudgetExceeded("enumerate_types: more than 1e7 types");

  std::vector<TypeHistogram> out;
  std::vector<int> cur(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == k - 1) {
      cur[pos] = rem;
      out.push_back({cur, n});
      return;
    }
    for (int c = 0; c <= rem; ++c) {
      cur[pos] = c;
      rec(pos + 1, rem - c);
    }
  };
  rec(0, n);
  return out;
}

BigInt type_class_size(const TypeHistogram& t) {
  int total = 0;
  for (int c : t.counts) {
    if (c < 0) throw std::invalid_argument("type_class_size: negative count");
    total += c;
  }
  if (total != t.n) throw std::invalid_argument("type_class_size: counts do not sum to n");
  BigInt size = factorial(t.n);
  for (int c : t.counts) size /= factorial(c);
  return size;
}

double log2_type_class_size(const TypeHistogram& t) {
  double lg = std::lgamma(t.n + 1.0);
  for (int c : t.counts) lg -= std::lgamma(c + 1.0);
  return lg / std::log(2.0);
}

double ea_finite(int n, const Pmf& p, const Channel& w, double rate) {
  const int nx = p.size(), ny = w.out_size();
  const int k = nx * ny;
  std::vector<double> log2_pxy(k), log2_px(nx);
  for (int x = 0; x < nx; ++x) {
    log2_px[x] = p[x] > 0.0 ? std::log2(p[x]) : -kInfinity;
    for (int y = 0; y < ny; ++y) {
      double v = p[x] * w(y, x);
      log2_pxy[x * ny + y] = v > 0.0 ? std::log2(v) : -kInfinity;
    }
  }

  double best = kInfinity;
  for (const TypeHistogram& t : enumerate_types(n, k)) {
    std::vector<double> qy(ny, 0.0);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) qy[y] += t.counts[x * ny + y];
    for (double& v : qy) v /= n;

    double d1 = 0.0, d2 = 0.0;
    bool ok = true;
    for (int x = 0; x < nx && ok; ++x)
      for (int y = 0; y < ny; ++y) {
        double q = static_cast<double>(t.counts[x * ny + y]) / n;
        if (q <= 0.0) continue;
        double lq = std::log2(q);
        double a = lq - log2_pxy[x * ny + y];
        double b = lq - log2_px[x] - std::log2(qy[y]);
        if (!std::isfinite(a)) {
          ok = false;
          break;
        }
        d1 += q * a;
        d2 += q * b;
      }
    if (!ok) continue;
    best = std::min(best, d1 + positive_part(d2 - rate));
  }
  return std::max(best, 0.0);
}

double ec_finite(int n, const Channel& w, const Pmf& p_y, double rate) {
  const int nx = w.in_size(), ny = w.out_size();
  if (ny != 2 || n > 40)
    throw BudgetExceeded("ec_finite: implemented for binary outputs, n <= 40");

  double outer_best = kInfinity;
  for (const TypeHistogram& qx_t : enumerate_types(n, nx)) {
    std::vector<double> q(nx);
    for (int x = 0; x < nx; ++x) q[x] = static_cast<double>(qx_t.counts[x]) / n;

    double h_w = 0.0;
    for (int x = 0; x < nx; ++x) {
      if (q[x] == 0.0) continue;
      double h = 0.0;
      for (int y = 0; y < ny; ++y) h -= xlog2x(w(y, x));
      h_w += q[x] * h;
    }

    // enumerate conditional n-types: row x has denominator qx_t.counts[x]
    struct Entry {
      double h, f, d;
    };
    std::vector<Entry> entries;
    std::vector<int> active;
    for (int x = 0; x < nx; ++x)
      if (qx_t.counts[x] > 0) active.push_back(x);

    std::vector<int> idx(active.size(), 0);
    while (true) {
      // V rows from idx: row active[i] = (idx[i]/c_i, 1 - idx[i]/c_i)
      double h = 0.0, d = 0.0, dq = 0.0, hy = 0.0, hvq = 0.0;
      std::vector<double> out(ny, 0.0);
      bool support_ok = true;
      for (std::size_t i = 0; i < active.size(); ++i) {
        int x = active[i];
        int c = qx_t.counts[x];
        double v0 = static_cast<double>(idx[i]) / c;
        double row[2] = {v0, 1.0 - v0};
        double hrow = -xlog2x(row[0]) - xlog2x(row[1]);
        h += q[x] * hrow;
        hvq += q[x] * hrow;
        for (int y = 0; y < ny; ++y) {
          out[y] += q[x] * row[y];
          if (row[y] > 0.0) {
            if (w(y, x) <= 0.0) support_ok = false;
            else d += q[x] * row[y] * std::log2(row[y] / w(y, x));
          }
        }
      }
      for (int y = 0; y < ny; ++y) {
        if (out[y] > 0.0) {
          hy -= xlog2x(out[y]);
          if (p_y[y] <= 0.0) support_ok = false;
          else dq += out[y] * std::log2(out[y] / p_y[y]);
        }
      }
      double mi = hy - hvq;
      double f = std::max(dq, 0.0) + positive_part(mi - rate);
      entries.push_back({h, f, support_ok ? d : kInfinity});

      int i = static_cast<int>(active.size()) - 1;
      while (i >= 0 && idx[i] == qx_t.counts[active[i]]) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }

    // discrete s-balancing: envelopes over entries sorted by conditional entropy
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.h < b.h; });
    const std::size_t m = entries.size();
    std::vector<double> prefix_f(m), suffix_d(m + 1, kInfinity);
    double acc = kInfinity;
    for (std::size_t i = 0; i < m; ++i) {
      acc = std::min(acc, entries[i].f);
      prefix_f[i] = acc;
    }
    for (std::size_t i = m; i-- > 0;)
      suffix_d[i] = std::min(suffix_d[i + 1], entries[i].d);

    // candidate caps: H(W|Q)+0 and every achieved entropy level above it
    auto balanced_at = [&](double cap) {
      std::size_t lo = 0, hi = m;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (entries[mid].h <= cap + 1e-12) lo = mid + 1;
        else hi = mid;
      }
      double f = lo == 0 ? kInfinity : prefix_f[lo - 1];
      double g = suffix_d[lo];
      return std::min(f, g);
    };
    double qx_best = balanced_at(h_w);
    for (const Entry& e : entries)
      if (e.h >= h_w - 1e-12) qx_best = std::max(qx_best, balanced_at(e.h));
    outer_best = std::min(outer_best, qx_best);
  }
  return std::max(outer_best, 0.0);
}

CodewordWeights codeword_weights(const JointTypeTable& joint, const Channel& w,
                                 const Pmf& p_x) {
  const int nx = static_cast<int>(joint.counts.size());
  const int ny = static_cast<int>(joint.counts[0].size());

  CodewordWeights out{0.0, 0.0, 0.0};
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      int c = joint.counts[x][y];
      if (c == 0) continue;
      if (w(y, x) <= 0.0) {
        out.log2_w = -kInfinity;
      } else if (out.log2_w != -kInfinity) {
        out.log2_w += c * std::log2(w(y, x));
      }
    }

  // |T_Vbar(y^n)| = prod_y multinomial(col_sum_y; column counts)
  double log2_size = 0.0;
  for (int y = 0; y < ny; ++y) {
    TypeHistogram col;
    col.n = 0;
    for (int x = 0; x < nx; ++x) {
      col.counts.push_back(joint.counts[x][y]);
      col.n += joint.counts[x][y];
    }
    log2_size += log2_type_class_size(col);
  }
  double log2_prob = 0.0;
  for (int x = 0; x < nx; ++x) {
    int rx = 0;
    for (int y = 0; y < ny; ++y) rx += joint.counts[x][y];
    if (rx == 0) continue;
    if (p_x[x] <= 0.0) {
      log2_prob = -kInfinity;
      break;
    }
    log2_prob += rx * std::log2(p_x[x]);
  }
  out.log2_p = log2_size + log2_prob;
  out.p = std::exp2(out.log2_p);
  return out;
}

}  // namespace softcover
