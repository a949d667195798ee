#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cdflow/curve.hpp"
#include "cdflow/vec2.hpp"

namespace cdflow {

enum class ShapeKind { Circle, Ellipse, FourierCircle, Limacon, Lemniscate };

std::string_view to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(std::string_view name);

/// One term ε cos(mθ + φ) of a radial perturbation.
struct FourierMode {
  int frequency = 0;
  double amplitude = 0.0;
  double phase = 0.0;

  friend bool operator==(const FourierMode&, const FourierMode&) = default;
};

/// Analytic test curves.
///
///   circle          center + radius·(cos θ, sin θ), θ swept `turns` times
///   ellipse         (a cos t, b sin t)
///   fourier         radial graph r(θ) = r₀(1 + Σ ε_j cos(m_j θ + φ_j))
///   limacon         r(θ) = b + a cos θ; inner loop when b < a
///   lemniscate      Bernoulli lemniscate of half-width `scale`, crossing at
///                   the center
///
/// Every shape is rotated by `rotation` and translated by `center`.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Circle;
  double radius = 1.0;
  int turns = 1;
  double semi_a = 1.0;
  double semi_b = 1.0;
  std::vector<FourierMode> modes;
  double limacon_a = 1.0;
  double limacon_b = 0.5;
  double scale = 1.0;
  Vec2 center{};
  double rotation = 0.0;

  static ShapeSpec circle(double radius, int turns = 1);
  static ShapeSpec ellipse(double a, double b);
  static ShapeSpec fourier(double base_radius, std::vector<FourierMode> modes);
  static ShapeSpec limacon(double a, double b);
  static ShapeSpec lemniscate(double scale);

  ShapeSpec& at(Vec2 c) {
    center = c;
    return *this;
  }

  /// Throws InvalidInput on non-positive scales or a radial graph that
  /// reaches the origin.
  void validate() const;

  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

/// Samples the shape at n points uniform in its natural parameter.
SampledCurve generate(const ShapeSpec& spec, std::size_t n);

/// generate() followed by resample_uniform() to the same count.
SampledCurve generate_uniform(const ShapeSpec& spec, std::size_t n);

}  // namespace cdflow
