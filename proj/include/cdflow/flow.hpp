#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdflow/curve.hpp"
#include "cdflow/errors.hpp"
#include "cdflow/metrics.hpp"

namespace cdflow {

enum class Scheme { LinearlyImplicit, ExplicitRK4 };
enum class Redistribution { EveryStep, WhenSpreadExceeds };

std::string_view to_string(Scheme s);
std::string_view to_string(Redistribution r);
Scheme scheme_from_string(std::string_view s);
Redistribution redistribution_from_string(std::string_view s);

struct StopConditions {
  double max_time = 1.0;
  /// 0 disables the step limit.
  std::int64_t max_steps = 0;
  /// Stop once K_osc drops below this value; 0 disables.
  double kosc_threshold = 0.0;
  /// Blow-up when ‖k‖₂² exceeds this ceiling.
  double curvature_ceiling = 1e6;
  /// Blow-up when a segment is shorter than this fraction of L/n.
  double min_segment_fraction = 1e-3;

  friend bool operator==(const StopConditions&, const StopConditions&) = default;
};

struct Tolerances {
  /// Relative residual for the iterative variable-speed solve.
  double linear_solve = 1e-12;
  int max_solver_iterations = 200;
  /// θ for Redistribution::WhenSpreadExceeds.
  double spread_threshold = 0.01;
  /// Geometry epsilon as a fraction of the curve length.
  double geometry_epsilon = 1e-6;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct FlowConfig {
  std::size_t n = 256;
  double dt = 1e-4;
  Scheme scheme = Scheme::LinearlyImplicit;
  Redistribution redistribution = Redistribution::EveryStep;
  StopConditions stop;
  Tolerances tolerances;

  /// Throws InvalidInput for dt <= 0, n < 16, θ outside (0, 1) or a stop
  /// configuration that can never fire.
  void validate() const;

  friend bool operator==(const FlowConfig&, const FlowConfig&) = default;
};

struct FlowState {
  SampledCurve curve;
  double time = 0.0;
  std::int64_t step_index = 0;
};

/// Signals a singular evolution: non-finite coordinates, curvature above the
/// configured ceiling, a collapsed segment or a lost winding number. Carries
/// the last state that passed every check.
class BlowUp : public Error {
 public:
  BlowUp(FlowState last_good, std::string reason)
      : Error("blow-up at t=" + std::to_string(last_good.time) + ": " + reason),
        last_good_(std::move(last_good)),
        reason_(std::move(reason)) {}

  const FlowState& last_good() const { return last_good_; }
  const std::string& reason() const { return reason_; }

 private:
  FlowState last_good_;
  std::string reason_;
};

struct StepResult {
  FlowState state;
  /// Relative residual of the implicit solve (0 for the explicit scheme).
  double residual = 0.0;
  int iterations = 0;
};

/// Advances the curve by dt under normal velocity −k_ss, then applies the
/// redistribution policy. Tangential motion is discarded: vertices move
/// along ν only and the resampling supplies the reparametrization.
StepResult step(const FlowState& state, const FlowConfig& config);

/// Pointwise curvature-diffusion velocity −k_ss ν at the vertices.
std::vector<Vec2> normal_velocity(const SampledCurve& curve);

struct TrajectoryRecord {
  double time = 0.0;
  std::int64_t step = 0;
  CurveMetrics metrics;
  /// Backward differences across the step that produced this record; zero
  /// for the initial record.
  double dL_dt = 0.0;
  double dA_dt = 0.0;
  double dKosc_dt = 0.0;
  double residual = 0.0;
};

enum class Termination { MaxTime, MaxSteps, KoscThreshold, BlowUp };
std::string_view to_string(Termination t);

struct RunResult {
  std::vector<TrajectoryRecord> trajectory;
  FlowState final_state;
  Termination termination = Termination::MaxTime;
  std::string detail;
  double dt = 0.0;
};

/// Called once for the initial state and after every accepted step.
using StepObserver = std::function<void(const FlowState&, const TrajectoryRecord&)>;

/// Integrates until a stop condition fires. A blow-up ends the run with the
/// trajectory up to the last good state. The initial curve is resampled to
/// config.n uniform-arclength vertices first.
RunResult run(const SampledCurve& initial, const FlowConfig& config,
              const StepObserver& observer = {});

/// Per-record balance of the evolution identities, evaluated with central
/// differences at interior records.
struct IdentityResiduals {
  std::size_t records = 0;
  /// Interior records whose K_osc balance scale fell below the noise floor.
  std::size_t skipped = 0;
  /// |dA/dt| / |A(0)| per unit time; L(0)² replaces a vanishing A(0).
  double area_max = 0.0;
  double area_mean = 0.0;
  /// |dL/dt + ‖k_s‖²| / ‖k_s‖².
  double length_max = 0.0;
  double length_mean = 0.0;
  /// |dk̄/dt − (2ωπ/L²)‖k_s‖²| / |(2ωπ/L²)‖k_s‖²|; zero when ω = 0.
  double kbar_max = 0.0;
  double kbar_mean = 0.0;
  /// K_osc balance divided by the sum of the magnitudes of its terms.
  double kosc_max = 0.0;
  double kosc_mean = 0.0;
};

/// Interior records with a balance scale below `noise_floor` are skipped for
/// the normalized residuals. Throws InvalidInput for fewer than 3 records.
IdentityResiduals identity_residuals(const std::vector<TrajectoryRecord>& trajectory,
                                     double noise_floor = 1e-10);

}  // namespace cdflow
