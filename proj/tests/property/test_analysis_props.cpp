#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdflow/analysis.hpp"
#include "cdflow/intersections.hpp"
#include "cdflow/metrics.hpp"
#include "cdflow/shapes.hpp"
#include "cdflow/suites.hpp"

using namespace cdflow;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Constants, TwiceKstarIsTheUnitWindingThreshold) {
  EXPECT_NEAR(general_smallness_threshold(1) / (2.0 * kstar()), 1.0, 1e-12);
}

TEST(WaitingTime, BoundIsNonNegativeOnIsoperimetricPairs) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double L = 0.01 + 100.0 * u(rng);
    const double A = u(rng) * L * L / (4 * kPi);
    EXPECT_GE(waiting_time_bound(L, A), -1e-12 * std::pow(L / (2 * kPi), 4));
  }
}

TEST(Inequalities, NewtonAndHarmonicNeverFail) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> size(2, 30);
  std::uniform_real_distribution<double> logv(-6.0, 6.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> l(size(rng));
    for (double& x : l) x = std::exp(logv(rng));
    for (std::size_t i = 0; i + 2 <= l.size(); ++i) {
      const auto v = newton_ratio_check(l, i);
      EXPECT_TRUE(v.holds) << trial << " i=" << i << " gap " << v.relative_gap;
    }
    EXPECT_TRUE(harmonic_sum_bound_check(l).holds);
  }
}

TEST(Inequalities, WirtingerOnRandomTrigPolynomials) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> modes(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const double P = std::exp(2.0 * u(rng));
    const int k = modes(rng);
    std::vector<double> a(k), b(k);
    for (int j = 0; j < k; ++j) {
      a[j] = u(rng) / (j + 1);
      b[j] = u(rng) / (j + 1);
    }
    std::vector<double> f(64);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = 2 * kPi * i / f.size();
      f[i] = 0.5;
      for (int j = 0; j < k; ++j) f[i] += a[j] * std::cos((j + 1) * x) + b[j] * std::sin((j + 1) * x);
    }
    const auto w = wirtinger_check(f, P);
    EXPECT_TRUE(w.l2_holds) << trial;
    EXPECT_TRUE(w.sup_holds) << trial;
  }
}

TEST(Multiplicity, CorpusHasNoViolations) {
  for (std::uint64_t seed : {7u, 2026u}) {
    const auto corpus = random_corpus(seed, 500);
    int violations = 0;
    for (const auto& spec : corpus) {
      const auto c = generate_uniform(spec, 256);
      const auto m = metrics(c);
      const int mult = find_crossings(c).multiplicity;
      if (m.osc_energy < multiplicity_bound(mult, m.winding_number)) ++violations;
    }
    EXPECT_EQ(violations, 0) << "seed " << seed;
  }
}

TEST(Density, LemniscateConvergesUnderRefinement) {
  double previous = INFINITY;
  for (std::size_t n : {256u, 512u, 1024u}) {
    const double err = std::abs(density_integral(generate_uniform(ShapeSpec::lemniscate(1.0), n), {0.0, 0.0}).value - 16.0);
    EXPECT_LE(err, std::max(previous / 1.9, 1e-5)) << n;
    previous = err;
  }
}
