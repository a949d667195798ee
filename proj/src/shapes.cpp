#include "cdflow/shapes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cdflow/errors.hpp"
#include "cdflow/resample.hpp"

namespace cdflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double radial_graph(const std::vector<FourierMode>& modes, double theta) {
  double r = 1.0;
  for (const auto& m : modes) r += m.amplitude * std::cos(m.frequency * theta + m.phase);
  return r;
}

Vec2 base_point(const ShapeSpec& s, double t) {
  switch (s.kind) {
    case ShapeKind::Circle:
      return {s.radius * std::cos(s.turns * t), s.radius * std::sin(s.turns * t)};
    case ShapeKind::Ellipse:
      return {s.semi_a * std::cos(t), s.semi_b * std::sin(t)};
    case ShapeKind::FourierCircle: {
      const double r = s.radius * radial_graph(s.modes, t);
      return {r * std::cos(t), r * std::sin(t)};
    }
    case ShapeKind::Limacon: {
      const double r = s.limacon_b + s.limacon_a * std::cos(t);
      return {r * std::cos(t), r * std::sin(t)};
    }
    case ShapeKind::Lemniscate: {
      const double sn = std::sin(t);
      const double d = 1.0 + sn * sn;
      return {s.scale * std::cos(t) / d, s.scale * sn * std::cos(t) / d};
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::FourierCircle: return "fourier";
    case ShapeKind::Limacon: return "limacon";
    case ShapeKind::Lemniscate: return "lemniscate";
  }
  return "?";
}

ShapeKind shape_kind_from_string(std::string_view name) {
  for (auto k : {ShapeKind::Circle, ShapeKind::Ellipse, ShapeKind::FourierCircle, ShapeKind::Limacon,
                 ShapeKind::Lemniscate}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown shape kind '" + std::string(name) + "'");
}

ShapeSpec ShapeSpec::circle(double radius, int turns) {
  ShapeSpec s;
  s.kind = ShapeKind::Circle;
  s.radius = radius;
  s.turns = turns;
  return s;
}

ShapeSpec ShapeSpec::ellipse(double a, double b) {
  ShapeSpec s;
  s.kind = ShapeKind::Ellipse;
  s.semi_a = a;
  s.semi_b = b;
  return s;
}

ShapeSpec ShapeSpec::fourier(double base_radius, std::vector<FourierMode> modes) {
  ShapeSpec s;
  s.kind = ShapeKind::FourierCircle;
  s.radius = base_radius;
  s.modes = std::move(modes);
  return s;
}

ShapeSpec ShapeSpec::limacon(double a, double b) {
  ShapeSpec s;
  s.kind = ShapeKind::Limacon;
  s.limacon_a = a;
  s.limacon_b = b;
  return s;
}

ShapeSpec ShapeSpec::lemniscate(double scale) {
  ShapeSpec s;
  s.kind = ShapeKind::Lemniscate;
  s.scale = scale;
  return s;
}

void ShapeSpec::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(what) + " must be positive");
  };
  if (!is_finite(center) || !std::isfinite(rotation)) throw InvalidInput("non-finite placement");
  switch (kind) {
    case ShapeKind::Circle:
      positive(radius, "radius");
      if (turns < 1) throw InvalidInput("circle turns must be >= 1");
      break;
    case ShapeKind::Ellipse:
      positive(semi_a, "semi-axis a");
      positive(semi_b, "semi-axis b");
      break;
    case ShapeKind::FourierCircle: {
      positive(radius, "base radius");
      double total = 0.0;
      for (const auto& m : modes) {
        if (m.frequency < 1) throw InvalidInput("fourier mode frequency must be >= 1");
        if (!std::isfinite(m.amplitude) || !std::isfinite(m.phase)) {
          throw InvalidInput("non-finite fourier mode");
        }
        total += std::abs(m.amplitude);
      }
      if (total >= 1.0) throw InvalidInput("fourier amplitudes must sum to less than 1");
      break;
    }
    case ShapeKind::Limacon:
      positive(limacon_a, "limacon a");
      positive(limacon_b, "limacon b");
      // b == a is the cardioid, whose cusp is not an immersed curve.
      if (std::abs(limacon_b - limacon_a) < 1e-3 * limacon_a) {
        throw InvalidInput("limacon with b == a has a cusp");
      }
      break;
    case ShapeKind::Lemniscate:
      positive(scale, "lemniscate scale");
      break;
  }
}

SampledCurve generate(const ShapeSpec& spec, std::size_t n) {
  spec.validate();
  if (n < kMinVertices) {
    throw InvalidInput("vertex count must be at least " + std::to_string(kMinVertices));
  }
  const double c = std::cos(spec.rotation);
  const double s = std::sin(spec.rotation);
  std::vector<Vec2> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    const Vec2 p = base_point(spec, t);
    v[j] = Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + spec.center;
  }
  return SampledCurve(std::move(v));
}

SampledCurve generate_uniform(const ShapeSpec& spec, std::size_t n) {
  return resample_uniform(generate(spec, n), n);
}

}  // namespace cdflow
