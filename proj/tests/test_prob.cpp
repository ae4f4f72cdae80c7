#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "softcover/prob.hpp"
#include "softcover/rng.hpp"

using namespace softcover;

namespace {

Pmf random_pmf(CounterRng& rng, int k) {
  return Pmf(rng.next_simplex(k));
}

Channel random_channel(CounterRng& rng, int nx, int ny) {
  std::vector<std::vector<double>> rows;
  for (int x = 0; x < nx; ++x) rows.push_back(rng.next_simplex(ny));
  return Channel(std::move(rows));
}

}  // namespace

TEST_CASE("pmf invariants") {
  CHECK_THROWS(Pmf({0.5, 0.6}));
  CHECK_THROWS(Pmf({-0.1, 1.1}));
  CHECK_THROWS(Pmf(std::vector<double>{}));
  Pmf p({0.25, 0.75});
  CHECK(p.size() == 2);
}

TEST_CASE("entropy") {
  CHECK(entropy(Pmf({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy(Pmf({1.0, 0.0})) == doctest::Approx(0.0));
  CHECK(entropy(Pmf({0.484, 0.516})) == doctest::Approx(0.999267).epsilon(1e-5));
}

TEST_CASE("cond_entropy") {
  Pmf q({0.48, 0.52});
  CHECK(cond_entropy(Channel::identity(2), q) == doctest::Approx(0.0));
  CHECK(cond_entropy(Channel::bsc(0.1), q) == doctest::Approx(0.468996).epsilon(1e-5));
  Channel noisy({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(cond_entropy(noisy, q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(cond_entropy(Channel::identity(3), q));
}

TEST_CASE("kl") {
  Pmf p({0.5, 0.5});
  CHECK(kl(p, p) == doctest::Approx(0.0));
  CHECK(kl(Pmf({1.0, 0.0}), Pmf({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(kl(Pmf({0.5, 0.5}), Pmf({0.1, 0.9})) == doctest::Approx(0.736966).epsilon(1e-5));
  CHECK(kl(Pmf({0.5, 0.5}), Pmf({1.0, 0.0})) == kInfinity);
}

TEST_CASE("kl non-negativity on random pairs") {
  CounterRng rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    Pmf p = random_pmf(rng, 2 + i % 3);
    Pmf q = random_pmf(rng, 2 + i % 3);
    CHECK(kl(p, q) >= -1e-12);
    CHECK(kl(p, p) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("cond_kl") {
  Pmf q({0.48, 0.52});
  Channel w = Channel::bsc(0.1);
  CHECK(cond_kl(w, w, q) == doctest::Approx(0.0));
  CHECK(cond_kl(Channel::bsc(0.5), w, q) == doctest::Approx(0.736966).epsilon(1e-5));
  // q = point mass picks out a single row
  Channel v({{0.3, 0.7}, {0.6, 0.4}});
  CHECK(cond_kl(v, w, Pmf({1.0, 0.0})) ==
        doctest::Approx(kl(Pmf({0.3, 0.7}), Pmf({0.9, 0.1}))));
}

TEST_CASE("push_forward") {
  Pmf q({0.48, 0.52});
  Pmf py = push_forward(q, Channel::bsc(0.1));
  CHECK(py[0] == doctest::Approx(0.484).epsilon(1e-12));
  CHECK(py[1] == doctest::Approx(0.516).epsilon(1e-12));
  Pmf same = push_forward(q, Channel::identity(2));
  CHECK(same[0] == doctest::Approx(0.48));
  Channel constant({{0.2, 0.8}, {0.2, 0.8}});
  Pmf r = push_forward(q, constant);
  CHECK(r[0] == doctest::Approx(0.2));
}

TEST_CASE("joint_of / backward_of") {
  Pmf q({0.5, 0.5});
  JointPmf j = joint_of(q, Channel::identity(2));
  BackwardDecomposition b = backward_of(j);
  CHECK(b.marginal_y[0] == doctest::Approx(0.5));
  CHECK(b.backward(0, 0) == doctest::Approx(1.0));
  CHECK(b.backward(1, 1) == doctest::Approx(1.0));

  JointPmf j2 = joint_of(Pmf({0.48, 0.52}), Channel::bsc(0.1));
  BackwardDecomposition b2 = backward_of(j2);
  CHECK(b2.marginal_y[0] == doctest::Approx(0.484));
  CHECK(b2.backward(0, 0) == doctest::Approx(0.432 / 0.484).epsilon(1e-12));

  // product joint: every backward row equals the x-marginal
  Pmf px({0.3, 0.7});
  Channel constant({{0.25, 0.75}, {0.25, 0.75}});
  BackwardDecomposition b3 = backward_of(joint_of(px, constant));
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      CHECK(b3.backward(x, y) == doctest::Approx(px[x]).epsilon(1e-12));
}

TEST_CASE("backward round-trip reproduces the joint") {
  CounterRng rng(12, 0);
  for (int i = 0; i < 100; ++i) {
    int k = 2 + i % 3;
    JointPmf j = joint_of(random_pmf(rng, k), random_channel(rng, k, k));
    BackwardDecomposition b = backward_of(j);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) {
        if (!b.row_present[y]) continue;
        CHECK(std::abs(b.marginal_y[y] * b.backward(x, y) - j(x, y)) <= 1e-12);
      }
  }
}

TEST_CASE("info_density") {
  // product joint: identically zero on support
  JointPmf prod = joint_of(Pmf({0.3, 0.7}), Channel({{0.4, 0.6}, {0.4, 0.6}}));
  InfoDensity i0 = info_density(prod);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (i0.support[x][y]) CHECK(i0.value[x][y] == doctest::Approx(0.0).epsilon(1e-12));

  InfoDensity i1 = info_density(joint_of(Pmf({0.5, 0.5}), Channel::identity(2)));
  CHECK(i1.value[0][0] == doctest::Approx(1.0));
  CHECK_FALSE(i1.support[0][1]);

  InfoDensity i2 = info_density(joint_of(Pmf({0.48, 0.52}), Channel::bsc(0.1)));
  CHECK(i2.value[0][0] == doctest::Approx(0.89477).epsilon(1e-4));
}

TEST_CASE("renyi_mi basics") {
  Channel constant({{0.4, 0.6}, {0.4, 0.6}});
  Pmf p({0.3, 0.7});
  for (double a : {0.5, 0.8, 1.0, 2.0})
    CHECK(renyi_mi(a, p, constant) == doctest::Approx(0.0).epsilon(1e-10));

  Pmf u({0.5, 0.5});
  for (double a : {0.5, 0.75, 0.99, 1.0, 1.5})
    CHECK(renyi_mi(a, u, Channel::identity(2)) == doctest::Approx(1.0).epsilon(1e-10));

  Pmf px({0.48, 0.52});
  Channel w = Channel::bsc(0.1);
  CHECK(renyi_mi(1.0 - 1e-6, px, w) == doctest::Approx(0.530271).epsilon(1e-4));
  CHECK_THROWS(renyi_mi(-0.5, px, w));
}

TEST_CASE("renyi_mi is non-decreasing in alpha") {
  CounterRng rng(13, 0);
  for (int i = 0; i < 100; ++i) {
    int k = 2 + i % 2;
    Pmf p = random_pmf(rng, k);
    Channel w = random_channel(rng, k, k);
    double prev = -kInfinity;
    for (double a = 0.5; a < 1.0; a += 0.1 / 2) {
      double v = renyi_mi(a, p, w);
      CHECK(v >= prev - 1e-10);
      prev = v;
    }
  }
}

TEST_CASE("renyi_mi continuity at alpha = 1") {
  CounterRng rng(14, 0);
  for (int i = 0; i < 50; ++i) {
    int k = 2 + i % 2;
    Pmf p = random_pmf(rng, k);
    Channel w = random_channel(rng, k, k);
    double mi = mutual_information(p, w);
    CHECK(std::abs(renyi_mi(1.0 - 1e-4, p, w) - mi) <= 1e-3);
    CHECK(std::abs(renyi_mi(1.0 + 1e-4, p, w) - mi) <= 1e-3);
  }
}
