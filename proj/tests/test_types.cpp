#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "softcover/achievability.hpp"
#include "softcover/converse.hpp"
#include "softcover/errors.hpp"
#include "softcover/types.hpp"

using namespace softcover;

TEST_CASE("enumerate_types counts") {
  CHECK(enumerate_types(2, 2).size() == 3);
  CHECK(enumerate_types(4, 2).size() == 5);
  CHECK(enumerate_types(6, 3).size() == 28);
  for (const TypeHistogram& t : enumerate_types(5, 3)) {
    int s = 0;
    for (int c : t.counts) s += c;
    CHECK(s == 5);
  }
  CHECK_THROWS_AS(enumerate_types(2000, 6), BudgetExceeded);
}

TEST_CASE("type_class_size") {
  CHECK(type_class_size({{4, 0}, 4}) == 1);
  CHECK(type_class_size({{1, 1}, 2}) == 2);
  CHECK(type_class_size({{1, 1, 1}, 3}) == 6);
  CHECK(type_class_size({{2, 2}, 4}) == 6);

  // log variant agrees with the exact count
  TypeHistogram t{{5, 7, 8}, 20};
  double exact = std::log2(type_class_size(t).convert_to<double>());
  CHECK(log2_type_class_size(t) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("joint type marginals") {
  JointTypeTable j{{{1, 2}, {3, 0}}, 6};
  CHECK(j.x_type().counts == std::vector<int>{3, 3});
  CHECK(j.y_type().counts == std::vector<int>{4, 2});
}

TEST_CASE("ea_finite upper-bounds the asymptotic exponent") {
  Pmf p({0.48, 0.52});
  Channel w = Channel::bsc(0.1);
  double ea = ea_renyi(p, w, 0.25).value;
  double prev = kInfinity;
  for (int n : {10, 20, 40}) {
    double v = ea_finite(n, p, w, 0.25);
    CHECK(v >= ea - 1e-9);
    CHECK(v <= prev + 1e-9);  // refinement never hurts on this doubling chain
    prev = v;
  }
  CHECK(prev - ea <= 0.15);  // within the O(log n / n) envelope at n = 40
}

TEST_CASE("ea_finite is exactly zero when the target type exists") {
  // P_XY lands on an n-type at n = 16 and the rate covers I(P;W)
  Pmf p({0.5, 0.5});
  Channel w = Channel::bsc(0.25);
  double mi = mutual_information(p, w);
  CHECK(ea_finite(16, p, w, mi + 0.01) == doctest::Approx(0.0));
}

TEST_CASE("ec_finite n = 1 hand enumeration") {
  // single-letter codes force point-mass outputs, so the balanced value is
  // the divergence of the better point mass: -log2 max_y P_Y(y)
  Channel w = Channel::bsc(0.1);
  Pmf py({0.484, 0.516});
  for (double rate : {0.0, 0.25, 1.0})
    CHECK(ec_finite(1, w, py, rate) == doctest::Approx(-std::log2(0.516)).epsilon(1e-10));
}

TEST_CASE("ec_finite approaches the asymptotic converse exponent") {
  Channel w = Channel::bsc(0.1);
  Pmf py({0.484, 0.516});
  ConverseInstance inst{w, py, 33, 64, 1e-6};
  double ec = ec_at_rate(inst, 0.25).value;
  double prev = kInfinity;
  for (int n : {10, 20, 40}) {
    double v = ec_finite(n, w, py, 0.25);
    CHECK(std::isfinite(v));
    CHECK(v >= -1e-9);
    prev = v;
  }
  CHECK(std::abs(prev - ec) <= 0.08);
}

TEST_CASE("ec_finite guards its domain") {
  CHECK_THROWS_AS(ec_finite(41, Channel::bsc(0.1), Pmf({0.5, 0.5}), 0.2), BudgetExceeded);
  CHECK_THROWS_AS(ec_finite(4, Channel::identity(3), Pmf({0.4, 0.3, 0.3}), 0.2),
                  BudgetExceeded);
}

TEST_CASE("codeword_weights on a deterministic channel") {
  JointTypeTable j{{{2, 0}, {0, 2}}, 4};
  CodewordWeights cw = codeword_weights(j, Channel::identity(2), Pmf({0.5, 0.5}));
  CHECK(cw.log2_w == doctest::Approx(0.0));
  CHECK(cw.p == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("codeword_weights vs brute force at n = 4") {
  Channel w = Channel::bsc(0.1);
  Pmf px({0.48, 0.52});
  // fixed output sequence y = (0,0,1,1); joint table with one of each pair
  std::vector<int> yseq = {0, 0, 1, 1};
  JointTypeTable j{{{1, 1}, {1, 1}}, 4};

  CodewordWeights cw = codeword_weights(j, w, px);
  double expect_w = std::log2(0.9) + std::log2(0.1) + std::log2(0.1) + std::log2(0.9);
  CHECK(cw.log2_w == doctest::Approx(expect_w).epsilon(1e-12));

  double brute = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    int counts[2][2] = {{0, 0}, {0, 0}};
    double prob = 1.0;
    for (int i = 0; i < 4; ++i) {
      int x = (mask >> i) & 1;
      counts[x][yseq[i]] += 1;
      prob *= px[x];
    }
    if (counts[0][0] == 1 && counts[0][1] == 1 && counts[1][0] == 1 && counts[1][1] == 1)
      brute += prob;
  }
  CHECK(cw.p == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("codeword_weights obeys the type-probability sandwich") {
  Channel w = Channel::bsc(0.1);
  Pmf px({0.48, 0.52});
  const int n = 12;
  JointTypeTable j{{{5, 1}, {2, 4}}, n};
  CodewordWeights cw = codeword_weights(j, w, px);

  // D(Q || P_X x Q_Y) for the joint type Q
  TypeHistogram yt = j.y_type();
  double d = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double q = static_cast<double>(j.counts[x][y]) / n;
      if (q > 0.0) d += q * std::log2(q / (px[x] * yt.counts[y] / static_cast<double>(n)));
    }
  double lower = -4.0 * std::log2(n + 1.0) - n * d;  // (n+1)^{-|X||Y|} 2^{-nD}
  CHECK(cw.log2_p >= lower - 1e-9);
  CHECK(cw.log2_p <= -n * d + 1e-9);
}
