#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdflow/metrics.hpp"
#include "cdflow/resample.hpp"
#include "cdflow/shapes.hpp"
#include "cdflow/suites.hpp"
#include "oracles.hpp"

using namespace cdflow;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_rel(double got, double want, double tol) {
  EXPECT_NEAR(got, want, tol * std::max(std::abs(want), 1e-300)) << "want " << want;
}

}  // namespace

TEST(ScaleCovariance, RandomShapes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lam(0.2, 5.0);
  for (const auto& spec : random_corpus(21, 40)) {
    const auto c = generate_uniform(spec, 256);
    const double l = lam(rng);
    const auto a = metrics(c);
    const auto b = metrics(c.scaled(l));
    expect_rel(b.length, l * a.length, 1e-8);
    if (std::abs(a.signed_area) > 1e-8 * a.length * a.length) {
      expect_rel(b.signed_area, l * l * a.signed_area, 1e-8);
      ASSERT_TRUE(a.isoperimetric_ratio && b.isoperimetric_ratio);
      expect_rel(*b.isoperimetric_ratio, *a.isoperimetric_ratio, 1e-8);
    }
    EXPECT_EQ(b.winding_number, a.winding_number);
    expect_rel(b.osc_energy, a.osc_energy, 1e-8);
    expect_rel(b.ks_norm_sq, a.ks_norm_sq / (l * l * l), 1e-8);
  }
}

TEST(Orientation, ReversalNegatesSignedQuantities) {
  for (const auto& spec : random_corpus(22, 40)) {
    const auto c = generate_uniform(spec, 256);
    const auto r = c.reversed();
    ASSERT_TRUE(r.is_uniform_arclength());
    const auto a = metrics(c);
    const auto b = metrics(r);
    EXPECT_NEAR(b.length, a.length, 1e-12 * a.length);
    EXPECT_NEAR(b.signed_area, -a.signed_area, 1e-12 * a.length * a.length);
    EXPECT_EQ(b.winding_number, -a.winding_number);
    EXPECT_NEAR(b.osc_energy, a.osc_energy, 1e-9 * std::max(1.0, a.osc_energy));
    const auto ka = curvature_profile(c);
    const auto kb = curvature_profile(r);
    // Reversal keeps vertex 0 and walks the others backwards.
    const std::size_t n = ka.size();
    double scale = 0.0;
    for (double k : ka) scale = std::max(scale, std::abs(k));
    for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(kb[j], -ka[(n - j) % n], 1e-9 * scale);
  }
}

TEST(Wirtinger, HoldsOnGeneratedCurves) {
  for (const auto& spec : random_corpus(23, 100)) {
    const auto m = metrics(generate_uniform(spec, 256));
    const double L = m.length;
    EXPECT_LE(m.osc_energy, 1.01 * L * L * L / (4 * kPi * kPi) * m.ks_norm_sq + 1e-12) << to_string(spec.kind);
    EXPECT_LE(m.max_deviation_sq, 1.01 * L / (2 * kPi) * m.ks_norm_sq + 1e-12) << to_string(spec.kind);
  }
}

TEST(Refinement, EllipseConvergesAtLeastSecondOrder) {
  const double a = 2.0, b = 1.0;
  const double L = oracle::ellipse_perimeter(a, b);
  double eL = INFINITY, eA = INFINITY, eK = INFINITY;
  for (std::size_t n : {16u, 32u, 64u, 128u}) {
    const auto c = generate(ShapeSpec::ellipse(a, b), n);
    const auto g = local_geometry(c);
    double k_err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = 2 * kPi * j / n;
      const double exact = a * b / std::pow(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t), 1.5);
      k_err = std::max(k_err, std::abs(g.k[j] - exact));
    }
    const double nL = std::abs(curve_length(c) - L);
    const double nA = std::abs(signed_area(c) - kPi * a * b);
    EXPECT_LE(nL, std::max(eL / 4, 1e-12)) << n;
    EXPECT_LE(nA, std::max(eA / 4, 1e-12)) << n;
    EXPECT_LE(k_err, std::max(eK / 4, 1e-10)) << n;
    eL = nL;
    eA = nA;
    eK = k_err;
  }
}

TEST(Refinement, CircleIsExactAtEveryResolution) {
  for (std::size_t n : {16u, 64u, 256u}) {
    const auto m = metrics(generate_uniform(ShapeSpec::circle(1.0), n));
    EXPECT_NEAR(m.length, 2 * kPi, 1e-12);
    EXPECT_NEAR(m.signed_area, kPi, 1e-12);
    EXPECT_LE(m.osc_energy, 1e-20);
  }
}
