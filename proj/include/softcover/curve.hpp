#ifndef SOFTCOVER_CURVE_HPP
#define SOFTCOVER_CURVE_HPP

#include <cmath>
#include <string>
#include <vector>

namespace softcover {

// One rate-grid row; fields a given producer does not own stay NaN until the
// caller merges curves.
struct ExponentRow {
  double rate = 0.0;
  double e_c = std::nan("");
  double e_a = std::nan("");
  double alpha_star = std::nan("");
  double s_star = std::nan("");
  std::string qx_digest;
  std::string px_digest;
};

struct ExponentCurve {
  std::vector<ExponentRow> rows;
};

std::string pmf_digest(const std::vector<double>& probs);

}  // namespace softcover

#endif
