#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdflow/flow.hpp"
#include "cdflow/shapes.hpp"

namespace cdflow {

struct OutputSpec {
  std::string directory = "run";
  /// Simulated time between snapshots.
  double snapshot_interval = 0.1;
  bool svg = false;
  /// Subset of kReportNames, or {"all"}.
  std::vector<std::string> reports{"all"};
  /// Window for the K_osc decay fit.
  double decay_t0 = 0.2;
  double decay_t1 = 1.0;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

inline const std::vector<std::string> kReportNames{
    "hypotheses", "l1-energy", "waiting-time", "smallness", "identities",
    "decay",      "radius",    "embedding"};

/// A run: scenario, flow configuration, outputs and seed.
///
/// File format: one `key = value` per line, `#` starts a comment. Keys:
///
///   shape              circle | ellipse | fourier | limacon | lemniscate
///   radius turns semi_a semi_b limacon_a limacon_b scale rotation
///   center             x,y
///   modes              m:eps:phase, ...      (fourier)
///   n dt scheme redistribution
///   max_time max_steps kosc_threshold curvature_ceiling min_segment_fraction
///   linear_solve max_solver_iterations spread_threshold geometry_epsilon
///   output_dir snapshot_interval svg reports decay_t0 decay_t1
///   seed
///
/// Absent keys keep their defaults; unknown or repeated keys are rejected.
struct RunManifest {
  ShapeSpec shape;
  FlowConfig flow;
  OutputSpec output;
  std::uint64_t seed = 0;

  /// Throws InvalidInput when any part is out of range.
  void validate() const;
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

RunManifest parse_manifest(std::istream& in);
RunManifest read_manifest(const std::filesystem::path& path);
/// Every key, in the documented order; parse_manifest inverts it exactly.
std::string format_manifest(const RunManifest& m);

}  // namespace cdflow
