#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdflow/vec2.hpp"

namespace cdflow {

enum class Parametrization { UniformParameter, UniformArclength };

/// Smallest vertex count accepted anywhere in the library.
inline constexpr std::size_t kMinVertices = 16;

/// Relative spread of arclength segments tolerated by a curve that claims
/// a uniform-in-arclength parametrization.
inline constexpr double kArclengthSpreadTolerance = 1e-6;

/// Closed plane curve sampled at N vertices, read as the samples of its
/// periodic trigonometric interpolant γ(u), u_j = 2πj/N. Vertex i and vertex
/// i+N denote the same point.
class SampledCurve {
 public:
  /// Validates N >= 16, finite coordinates and distinct consecutive vertices.
  /// A UniformArclength claim is checked against kArclengthSpreadTolerance.
  explicit SampledCurve(std::vector<Vec2> vertices,
                        Parametrization param = Parametrization::UniformParameter,
                        int generation = 0);

  std::size_t size() const { return vertices_.size(); }
  std::span<const Vec2> vertices() const { return vertices_; }
  Parametrization parametrization() const { return param_; }
  bool is_uniform_arclength() const { return param_ == Parametrization::UniformArclength; }
  int generation() const { return generation_; }

  /// Periodic access.
  const Vec2& operator[](std::ptrdiff_t i) const;

  std::vector<double> xs() const;
  std::vector<double> ys() const;

  /// Same trace, opposite orientation (starting vertex kept).
  SampledCurve reversed() const;
  SampledCurve scaled(double factor) const;
  SampledCurve translated(Vec2 offset) const;
  /// Relabels vertex `shift` as vertex 0.
  SampledCurve rotated_start(std::ptrdiff_t shift) const;

 private:
  std::vector<Vec2> vertices_;
  Parametrization param_;
  int generation_;
};

/// Arclength from vertex 0 to vertex j for j = 0..N (entry N is the length).
std::vector<double> cumulative_arclength(const SampledCurve& curve);

/// Arclength of the interpolant between consecutive vertices; entry j covers
/// [u_j, u_{j+1}].
std::vector<double> segment_arclengths(const SampledCurve& curve);

/// (max - min) / mean of segment_arclengths.
double arclength_spread(const SampledCurve& curve);

/// Total length of the interpolant.
double curve_length(const SampledCurve& curve);

/// Signed enclosed area, positive for counter-clockwise traversal.
double signed_area(const SampledCurve& curve);

/// Area centroid; requires non-zero signed area.
Vec2 area_centroid(const SampledCurve& curve);

/// Points of the interpolant on a grid `factor` times finer than the samples.
std::vector<Vec2> dense_trace(const SampledCurve& curve, std::size_t factor);

/// Symmetric Hausdorff distance between two traces, measured on dense
/// resamplings of both.
double hausdorff_distance(const SampledCurve& a, const SampledCurve& b, std::size_t factor = 8);

/// max over the dense trace of | |γ - center| - radius |.
double max_radial_deviation(const SampledCurve& curve, Vec2 center, double radius,
                            std::size_t factor = 8);

/// Euclidean distance from p to the segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace cdflow
