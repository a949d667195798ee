#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cdflow/manifest.hpp"

using namespace cdflow;

TEST(Manifest, RandomManifestsRoundTrip) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ShapeKind kinds[] = {ShapeKind::Circle, ShapeKind::Ellipse, ShapeKind::FourierCircle, ShapeKind::Limacon,
                             ShapeKind::Lemniscate};
  for (int trial = 0; trial < 200; ++trial) {
    RunManifest m;
    m.shape.kind = kinds[trial % 5];
    m.shape.radius = 0.1 + u(rng);
    m.shape.semi_a = 0.5 + u(rng);
    m.shape.semi_b = 0.5 + u(rng);
    m.shape.limacon_a = 1.0;
    m.shape.limacon_b = 1.5 + u(rng);
    m.shape.center = {u(rng) - 0.5, 3.0 * u(rng)};
    m.shape.rotation = u(rng);
    if (m.shape.kind == ShapeKind::FourierCircle) {
      m.shape.modes = {{2, 0.1 * u(rng), u(rng)}, {5, 0.01 * u(rng), -u(rng)}};
    }
    m.flow.n = 16u << (trial % 5);
    m.flow.dt = 1e-5 * (1.0 + u(rng));
    m.flow.scheme = trial % 2 ? Scheme::ExplicitRK4 : Scheme::LinearlyImplicit;
    m.flow.redistribution = trial % 3 ? Redistribution::EveryStep : Redistribution::WhenSpreadExceeds;
    m.flow.stop.max_time = u(rng) + 0.01;
    m.flow.stop.kosc_threshold = trial % 4 ? 0.0 : 1e-3 * u(rng);
    m.output.snapshot_interval = 0.01 + u(rng);
    m.output.svg = trial % 2 == 0;
    m.output.reports = trial % 2 ? std::vector<std::string>{"all"} : std::vector<std::string>{"decay", "radius"};
    m.output.decay_t0 = 0.1 * u(rng);
    m.output.decay_t1 = m.output.decay_t0 + 0.5;
    m.seed = rng();
    std::istringstream in(format_manifest(m));
    EXPECT_EQ(parse_manifest(in), m) << format_manifest(m);
  }
}
