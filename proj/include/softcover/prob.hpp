#ifndef SOFTCOVER_PROB_HPP
#define SOFTCOVER_PROB_HPP

#include <limits>
#include <vector>

namespace softcover {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Probability vector over a finite alphabet. Entries are non-negative and sum
// to 1 within 1e-12; construction rejects anything else.
class Pmf {
 public:
  Pmf() = default;
  explicit Pmf(std::vector<double> probs);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

 private:
  std::vector<double> p_;
};

// Row-stochastic conditional distribution; row x is a pmf over the outputs.
class Channel {
 public:
  Channel() = default;
  explicit Channel(std::vector<std::vector<double>> rows);

  int in_size() const { return static_cast<int>(rows_.size()); }
  int out_size() const { return rows_.empty() ? 0 : static_cast<int>(rows_[0].size()); }
  double operator()(int y, int x) const { return rows_[x][y]; }  // V(y|x)
  const std::vector<double>& row(int x) const { return rows_[x]; }
  Pmf row_pmf(int x) const { return Pmf(rows_[x]); }

  static Channel bsc(double crossover);
  static Channel identity(int k);

 private:
  std::vector<std::vector<double>> rows_;
};

// Joint distribution on X x Y as a dense non-negative table summing to 1.
class JointPmf {
 public:
  JointPmf() = default;
  explicit JointPmf(std::vector<std::vector<double>> table);

  int x_size() const { return static_cast<int>(t_.size()); }
  int y_size() const { return t_.empty() ? 0 : static_cast<int>(t_[0].size()); }
  double operator()(int x, int y) const { return t_[x][y]; }
  Pmf marginal_x() const;
  Pmf marginal_y() const;

 private:
  std::vector<std::vector<double>> t_;
};

// Decomposition J = marginal_y x backward(x|y). Rows at y with zero marginal
// do not exist; row_present guards them.
struct BackwardDecomposition {
  Pmf marginal_y;
  Channel backward;  // rows indexed by y, distributions over x
  std::vector<bool> row_present;
};

// iota(x, y) = log2 J(x,y) / (Px(x) Py(y)) where defined.
struct InfoDensity {
  std::vector<std::vector<double>> value;   // [x][y], meaningful only on support
  std::vector<std::vector<bool>> support;   // J(x,y) > 0
};

double entropy(const Pmf& p);
double cond_entropy(const Channel& v, const Pmf& q);
double kl(const Pmf& p, const Pmf& q);
double cond_kl(const Channel& v, const Channel& w, const Pmf& q);
Pmf push_forward(const Pmf& q, const Channel& v);
JointPmf joint_of(const Pmf& q, const Channel& v);
BackwardDecomposition backward_of(const JointPmf& j);
InfoDensity info_density(const JointPmf& j);
double mutual_information(const Pmf& p, const Channel& w);

// Order-alpha Renyi mutual information in bits; alpha = 1 dispatches to the
// Shannon mutual information. alpha <= 0 is rejected.
double renyi_mi(double alpha, const Pmf& p, const Channel& w);

// log2(sum_i 2^{a_i}); tolerates -inf entries.
double log2_sum_exp2(const std::vector<double>& a);

}  // namespace softcover

#endif
