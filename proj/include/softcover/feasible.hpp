#ifndef SOFTCOVER_FEASIBLE_HPP
#define SOFTCOVER_FEASIBLE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "softcover/prob.hpp"

namespace softcover {

// The input polytope S = {P_X : P_X W = P_Y}, stored as an anchor point plus
// a basis of the null space of p -> pW restricted to sum-zero vectors.
// Vertices of the affine slice are kept for lattice bounds.
struct FeasiblePolytope {
  Channel channel;
  Pmf target;
  Pmf anchor;
  std::vector<std::vector<double>> basis;     // directions d with dW = 0, sum d = 0
  std::vector<std::vector<double>> vertices;  // vertices of S in probability coordinates
};

// Returns nullopt when no input distribution maps to target under w.
std::optional<FeasiblePolytope> build_feasible(const Channel& w, const Pmf& target);

struct SimplexMin {
  Pmf argmin;
  double value;
  long evaluations;
};

// Dense lattice over the basis coefficients intersected with the simplex,
// then coordinate descent down to step 1e-6. Singleton polytopes short-circuit
// to the anchor.
SimplexMin minimize_over(const FeasiblePolytope& polytope,
                         const std::function<double(const Pmf&)>& objective,
                         int resolution);

double feasibility_residual(const FeasiblePolytope& polytope, const Pmf& p);

}  // namespace softcover

#endif
