#pragma once

#include <optional>
#include <vector>

#include "cdflow/curve.hpp"
#include "cdflow/vec2.hpp"

namespace cdflow {

/// Pointwise differential geometry at the vertices. Valid for any
/// parametrization; arclength derivatives use d/ds = |γ_u|⁻¹ d/du.
///
/// Orientation: ν is the counter-clockwise quarter turn of τ, so the unit
/// circle traversed counter-clockwise has k = +1.
struct LocalGeometry {
  std::vector<double> speed;  // |γ_u|
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;
  std::vector<double> k;
  std::vector<double> k_s;
  std::vector<double> k_ss;
  double length = 0.0;
};

LocalGeometry local_geometry(const SampledCurve& curve);

/// Arclength derivative of node values f (any parametrization).
std::vector<double> arclength_derivative(const std::vector<double>& f,
                                         const std::vector<double>& speed);

/// Signed curvature per vertex. Requires a uniform-in-arclength curve.
std::vector<double> curvature_profile(const SampledCurve& curve);

/// k_s (order 1) or k_ss (order 2) per vertex. Requires a
/// uniform-in-arclength curve.
std::vector<double> curvature_derivatives(const SampledCurve& curve, int order);

struct CurveMetrics {
  double length = 0.0;
  double signed_area = 0.0;
  /// L²/(4πA); empty when the signed area vanishes.
  std::optional<double> isoperimetric_ratio;
  int winding_number = 0;
  /// 2ωπ/L.
  double average_curvature = 0.0;
  /// K_osc = L ∫ (k − k̄)² ds.
  double osc_energy = 0.0;
  double ks_norm_sq = 0.0;
  double kss_norm_sq = 0.0;
  double min_curvature = 0.0;
  double k_norm_sq = 0.0;
  /// max |k − k̄|².
  double max_deviation_sq = 0.0;
  /// ∫ (k − k̄)² k_s² ds and ∫ (k − k̄) k_s² ds.
  double osc_ks2 = 0.0;
  double dev_ks2 = 0.0;
};

/// Throws DegenerateGeometry when the turning integral is more than 0.1 away
/// from an integer multiple of 2π.
CurveMetrics metrics(const SampledCurve& curve);

/// metrics() without the parametrization contract. The formulas are
/// parametrization-independent; the flow uses this on curves it keeps
/// non-uniform between lazy redistributions.
CurveMetrics measure(const SampledCurve& curve);

/// |A| below this multiple of L² counts as zero area.
inline constexpr double kZeroAreaFraction = 1e-12;

}  // namespace cdflow
