#include <gtest/gtest.h>

#include <random>

#include "cdflow/intersections.hpp"
#include "cdflow/shapes.hpp"
#include "cdflow/suites.hpp"

using namespace cdflow;

TEST(Crossings, StartingVertexDoesNotMatter) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::ptrdiff_t> shift(1, 255);
  for (const auto& spec : random_corpus(41, 50)) {
    const auto c = generate_uniform(spec, 256);
    const auto a = find_crossings(c);
    const auto b = find_crossings(c.rotated_start(shift(rng)));
    EXPECT_EQ(a.multiplicity, b.multiplicity);
    EXPECT_EQ(a.clusters.size(), b.clusters.size());
  }
}

TEST(Crossings, RefinementKeepsMultiplicity) {
  for (const auto& spec : random_corpus(42, 50)) {
    const auto a = find_crossings(generate_uniform(spec, 256));
    const auto b = find_crossings(generate_uniform(spec, 512));
    EXPECT_EQ(a.multiplicity, b.multiplicity) << to_string(spec.kind);
    EXPECT_EQ(a.clusters.size(), b.clusters.size()) << to_string(spec.kind);
  }
}
