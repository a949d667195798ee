#include <gtest/gtest.h>

#include "cdflow/errors.hpp"
#include "cdflow/intersections.hpp"
#include "cdflow/shapes.hpp"
#include "cdflow/suites.hpp"
#include "oracles.hpp"

using namespace cdflow;

TEST(Crossings, CircleIsEmbedded) {
  const auto c = generate_uniform(ShapeSpec::circle(1.0), 128);
  const auto s = find_crossings(c);
  EXPECT_TRUE(s.crossings.empty());
  EXPECT_EQ(s.multiplicity, 1);
  EXPECT_TRUE(is_embedded(c));
  EXPECT_DOUBLE_EQ(s.eps, default_geometry_eps(c));
}

TEST(Crossings, LemniscateHasOneDoublePoint) {
  const auto s = find_crossings(generate_uniform(ShapeSpec::lemniscate(1.0), 256));
  EXPECT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.multiplicity, 2);
  EXPECT_NEAR(s.crossings.front().point.x, 0.0, 1e-6);
  EXPECT_NEAR(s.crossings.front().point.y, 0.0, 1e-6);
}

TEST(Crossings, LimaconLoopHasOneDoublePoint) {
  const auto c = generate_uniform(ShapeSpec::limacon(1.0, 0.5), 256);
  const auto s = find_crossings(c);
  EXPECT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.multiplicity, 2);
  EXPECT_FALSE(is_embedded(c));
}

TEST(Crossings, DoubleCoveredCircleTouchesEverywhere) {
  const auto s = find_crossings(generate_uniform(ShapeSpec::circle(1.0, 2), 64));
  EXPECT_GE(s.multiplicity, 2);
}

TEST(Crossings, RejectsNonPositiveEps) {
  const auto c = generate_uniform(ShapeSpec::circle(1.0), 32);
  EXPECT_THROW(find_crossings(c, 0.0), InvalidInput);
  EXPECT_THROW(find_crossings(c, -1.0), InvalidInput);
  EXPECT_THROW(is_embedded(c, 0.0), InvalidInput);
}

TEST(Crossings, JsonListsClusters) {
  const auto j = to_json(find_crossings(generate_uniform(ShapeSpec::lemniscate(1.0), 128)));
  EXPECT_EQ(j.at("multiplicity").get<int>(), 2);
  EXPECT_EQ(j.at("clusters").size(), 1u);
  EXPECT_FALSE(j.at("crossings").empty());
  EXPECT_TRUE(j.at("grazing_contacts_count").get<bool>());
}

TEST(Crossings, AgreesWithBruteForceOnCorpus) {
  const auto corpus = random_corpus(3, 50);
  for (const auto& spec : corpus) {
    const auto c = generate_uniform(spec, 256);
    const int m = find_crossings(c).multiplicity;
    EXPECT_EQ(m, oracle::brute_multiplicity(c, 1e-6 * curve_length(c))) << to_string(spec.kind);
  }
}
