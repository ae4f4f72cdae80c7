#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "softcover/feasible.hpp"

using namespace softcover;

TEST_CASE("invertible channel gives a singleton polytope") {
  auto poly = build_feasible(Channel::bsc(0.1), Pmf({0.484, 0.516}));
  REQUIRE(poly.has_value());
  CHECK(poly->basis.empty());
  CHECK(poly->anchor[0] == doctest::Approx(0.48).epsilon(1e-9));
  CHECK(poly->anchor[1] == doctest::Approx(0.52).epsilon(1e-9));
  CHECK(feasibility_residual(*poly, poly->anchor) <= 1e-9);
}

TEST_CASE("identity channel pins the input to the target") {
  auto poly = build_feasible(Channel::identity(2), Pmf({0.3, 0.7}));
  REQUIRE(poly.has_value());
  CHECK(poly->basis.empty());
  CHECK(poly->anchor[0] == doctest::Approx(0.3));
}

TEST_CASE("constant channel: every input is feasible") {
  Channel constant({{0.25, 0.75}, {0.25, 0.75}, {0.25, 0.75}});
  auto poly = build_feasible(constant, Pmf({0.25, 0.75}));
  REQUIRE(poly.has_value());
  CHECK(poly->basis.size() == 2);  // |X| - 1
  CHECK(feasibility_residual(*poly, poly->anchor) <= 1e-9);
  for (const auto& d : poly->basis) {
    double sum = 0.0;
    for (double v : d) sum += v;
    CHECK(std::abs(sum) <= 1e-9);
  }
}

TEST_CASE("unreachable target is reported infeasible") {
  Channel constant({{0.5, 0.5}, {0.5, 0.5}});
  CHECK_FALSE(build_feasible(constant, Pmf({0.3, 0.7})).has_value());
}

TEST_CASE("minimize_over on a singleton returns the anchor") {
  auto poly = build_feasible(Channel::bsc(0.1), Pmf({0.484, 0.516}));
  REQUIRE(poly.has_value());
  SimplexMin m = minimize_over(*poly, [](const Pmf& p) { return p[0] * p[0]; }, 33);
  CHECK(m.argmin[0] == doctest::Approx(0.48).epsilon(1e-9));
  CHECK(m.value == doctest::Approx(0.48 * 0.48).epsilon(1e-9));
}

TEST_CASE("constant objective is flat over the polytope") {
  Channel constant({{0.25, 0.75}, {0.25, 0.75}, {0.25, 0.75}});
  auto poly = build_feasible(constant, Pmf({0.25, 0.75}));
  REQUIRE(poly.has_value());
  SimplexMin m = minimize_over(*poly, [](const Pmf&) { return 4.2; }, 17);
  CHECK(m.value == doctest::Approx(4.2));
}

TEST_CASE("1-d polytope with quadratic objective matches golden-section oracle") {
  // rows [1,0],[0,1],[0.5,0.5] and target [0.5,0.5]: one-parameter family
  Channel w({{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}});
  Pmf target({0.5, 0.5});
  auto poly = build_feasible(w, target);
  REQUIRE(poly.has_value());
  REQUIRE(poly->basis.size() == 1);

  auto objective = [](const Pmf& p) {
    double c[3] = {0.2, 0.2, 0.6};
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += (p[i] - c[i]) * (p[i] - c[i]);
    return s;
  };
  SimplexMin m = minimize_over(*poly, objective, 65);

  // independent golden-section search over p2 = t; p0 = p1 = (1 - t) / 2
  auto along = [&](double t) {
    return objective(Pmf({(1.0 - t) / 2.0, (1.0 - t) / 2.0, t}));
  };
  double lo = 0.0, hi = 1.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  while (hi - lo > 1e-10) {
    if (along(c) < along(d)) {
      hi = d;
      d = c;
      c = hi - gr * (hi - lo);
    } else {
      lo = c;
      c = d;
      d = lo + gr * (hi - lo);
    }
  }
  CHECK(m.value == doctest::Approx(along(0.5 * (lo + hi))).epsilon(1e-5));
}

TEST_CASE("minimize_over never returns above the anchor value") {
  Channel constant({{0.25, 0.75}, {0.25, 0.75}, {0.25, 0.75}});
  auto poly = build_feasible(constant, Pmf({0.25, 0.75}));
  REQUIRE(poly.has_value());
  auto obj = [](const Pmf& p) { return p[0] * 0.3 + p[1] * 0.1 + p[2] * 0.9; };
  SimplexMin m = minimize_over(*poly, obj, 33);
  CHECK(m.value <= obj(poly->anchor) + 1e-12);
  CHECK(feasibility_residual(*poly, m.argmin) <= 1e-8);
}
