#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"

#include "cdflow/curve.hpp"
#include "cdflow/vec2.hpp"

namespace cdflow {

/// A contact between two non-adjacent polygon segments.
struct Crossing {
  Vec2 point;
  std::size_t segment_a = 0;  // segment j joins vertices j and j+1
  std::size_t segment_b = 0;
  std::size_t cluster = 0;
};

struct CrossingSet {
  std::vector<Crossing> crossings;
  /// Crossing indices per cluster.
  std::vector<std::vector<std::size_t>> clusters;
  /// Distinct local branches through each cluster.
  std::vector<int> branches;
  /// Largest number of branches through one point; 1 when there are no
  /// crossings.
  int multiplicity = 1;
  double eps = 0.0;
};

/// 1e-6 · L.
double default_geometry_eps(const SampledCurve& curve);

/// All-pairs segment test with bounding-box rejection. Contacts closer than
/// eps count, so grazing touches are reported as crossings. Throws
/// InvalidInput for eps <= 0.
CrossingSet find_crossings(const SampledCurve& curve, double eps);
CrossingSet find_crossings(const SampledCurve& curve);

bool is_embedded(const SampledCurve& curve, double eps);
bool is_embedded(const SampledCurve& curve);

nlohmann::json to_json(const CrossingSet& set);

}  // namespace cdflow
