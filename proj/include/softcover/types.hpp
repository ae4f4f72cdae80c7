#ifndef SOFTCOVER_TYPES_HPP
#define SOFTCOVER_TYPES_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "softcover/prob.hpp"

namespace softcover {

using BigInt = boost::multiprecision::cpp_int;

// Empirical histogram of a length-n sequence.
struct TypeHistogram {
  std::vector<int> counts;
  int n = 0;
};

// Joint counts over X x Y summing to n; row sums are the X-type.
struct JointTypeTable {
  std::vector<std::vector<int>> counts;
  int n = 0;

  TypeHistogram x_type() const;
  TypeHistogram y_type() const;
};

// All C(n+k-1, k-1) compositions; throws BudgetExceeded past 1e7.
std::vector<TypeHistogram> enumerate_types(int n, int k);

BigInt type_class_size(const TypeHistogram& t);
double log2_type_class_size(const TypeHistogram& t);

// Exact finite-n achievability exponent: min over joint n-types of
// D(Q||P_XY) + |D(Q||P_X Q_Y) - R|^+.
double ea_finite(int n, const Pmf& p, const Channel& w, double rate);

// Exact finite-n converse exponent with discrete s-balancing over the finite
// conditional-type family. Binary output alphabets, n <= 40.
double ec_finite(int n, const Channel& w, const Pmf& p_y, double rate);

struct CodewordWeights {
  double log2_w;   // log2 W^n(y^n | x^n) on the joint type class (-inf off support)
  double log2_p;   // log2 P_X(X^n in T_Vbar(y^n))
  double p;        // exp2(log2_p)
};

CodewordWeights codeword_weights(const JointTypeTable& joint, const Channel& w,
                                 const Pmf& p_x);

}  // namespace softcover

#endif
