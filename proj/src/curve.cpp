#include "cdflow/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "cdflow/errors.hpp"
#include "cdflow/spectral.hpp"

namespace cdflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// |γ_u| on a grid twice as fine as the samples, which keeps the aliasing
/// of the square root out of the arclength.
std::vector<double> fine_speeds(const SampledCurve& curve) {
  const std::size_t m = 2 * curve.size();
  const auto dx = spectral::resample_grid(spectral::derivative(curve.xs()), m);
  const auto dy = spectral::resample_grid(spectral::derivative(curve.ys()), m);
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = std::hypot(dx[j], dy[j]);
  return s;
}

}  // namespace

SampledCurve::SampledCurve(std::vector<Vec2> vertices, Parametrization param, int generation)
    : vertices_(std::move(vertices)), param_(param), generation_(generation) {
  if (vertices_.size() < kMinVertices) {
    throw InvalidInput("curve needs at least " + std::to_string(kMinVertices) + " vertices, got " +
                       std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw InvalidInput("non-finite coordinate at vertex " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2 next = vertices_[(i + 1) % vertices_.size()];
    if (norm(next - vertices_[i]) == 0.0) {
      throw InvalidInput("consecutive vertices " + std::to_string(i) + " and " +
                         std::to_string((i + 1) % vertices_.size()) + " coincide");
    }
  }
  if (param_ == Parametrization::UniformArclength) {
    const double spread = arclength_spread(*this);
    if (!(spread <= kArclengthSpreadTolerance)) {
      throw ContractViolation("curve claims uniform arclength but segment spread is " +
                              std::to_string(spread));
    }
  }
}

const Vec2& SampledCurve::operator[](std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
  return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

std::vector<double> SampledCurve::xs() const {
  std::vector<double> out(size());
  std::transform(vertices_.begin(), vertices_.end(), out.begin(), [](Vec2 p) { return p.x; });
  return out;
}

std::vector<double> SampledCurve::ys() const {
  std::vector<double> out(size());
  std::transform(vertices_.begin(), vertices_.end(), out.begin(), [](Vec2 p) { return p.y; });
  return out;
}

SampledCurve SampledCurve::reversed() const {
  std::vector<Vec2> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = (*this)[-static_cast<std::ptrdiff_t>(i)];
  // Reversal maps the uniform grid onto itself, so the claim survives.
  return SampledCurve(std::move(v), param_, generation_);
}

SampledCurve SampledCurve::scaled(double factor) const {
  std::vector<Vec2> v(vertices_);
  for (auto& p : v) p *= factor;
  return SampledCurve(std::move(v), param_, generation_);
}

SampledCurve SampledCurve::translated(Vec2 offset) const {
  std::vector<Vec2> v(vertices_);
  for (auto& p : v) p += offset;
  return SampledCurve(std::move(v), param_, generation_);
}

SampledCurve SampledCurve::rotated_start(std::ptrdiff_t shift) const {
  std::vector<Vec2> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = (*this)[static_cast<std::ptrdiff_t>(i) + shift];
  return SampledCurve(std::move(v), param_, generation_);
}

std::vector<double> cumulative_arclength(const SampledCurve& curve) {
  const std::size_t n = curve.size();
  const auto sigma = fine_speeds(curve);
  const double mean = std::accumulate(sigma.begin(), sigma.end(), 0.0) / static_cast<double>(sigma.size());
  const auto wobble = spectral::periodic_antiderivative(sigma);
  const double du = kTwoPi / static_cast<double>(n);
  std::vector<double> s(n + 1);
  for (std::size_t j = 0; j < n; ++j) s[j] = mean * du * static_cast<double>(j) + wobble[2 * j] - wobble[0];
  s[n] = kTwoPi * mean;
  return s;
}

std::vector<double> segment_arclengths(const SampledCurve& curve) {
  const auto s = cumulative_arclength(curve);
  std::vector<double> seg(curve.size());
  for (std::size_t j = 0; j < seg.size(); ++j) seg[j] = s[j + 1] - s[j];
  return seg;
}

double arclength_spread(const SampledCurve& curve) {
  const auto seg = segment_arclengths(curve);
  const auto [lo, hi] = std::minmax_element(seg.begin(), seg.end());
  const double mean = std::accumulate(seg.begin(), seg.end(), 0.0) / static_cast<double>(seg.size());
  return (*hi - *lo) / mean;
}

double curve_length(const SampledCurve& curve) {
  const auto sigma = fine_speeds(curve);
  return kTwoPi * std::accumulate(sigma.begin(), sigma.end(), 0.0) / static_cast<double>(sigma.size());
}

double signed_area(const SampledCurve& curve) {
  const auto x = curve.xs();
  const auto y = curve.ys();
  const auto dx = spectral::derivative(x);
  const auto dy = spectral::derivative(y);
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) sum += x[j] * dy[j] - y[j] * dx[j];
  return 0.5 * kTwoPi * sum / static_cast<double>(x.size());
}

Vec2 area_centroid(const SampledCurve& curve) {
  const auto x = curve.xs();
  const auto y = curve.ys();
  const auto dx = spectral::derivative(x);
  const auto dy = spectral::derivative(y);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    mx += x[j] * x[j] * dy[j];
    my -= y[j] * y[j] * dx[j];
  }
  const double w = kTwoPi / static_cast<double>(x.size());
  const double area = signed_area(curve);
  if (area == 0.0) throw DegenerateGeometry("centroid of a curve with zero signed area");
  return {0.5 * mx * w / area, 0.5 * my * w / area};
}

std::vector<Vec2> dense_trace(const SampledCurve& curve, std::size_t factor) {
  const std::size_t m = curve.size() * std::max<std::size_t>(factor, 1);
  const auto x = spectral::resample_grid(curve.xs(), m);
  const auto y = spectral::resample_grid(curve.ys(), m);
  std::vector<Vec2> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = {x[j], y[j]};
  return out;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

namespace {

double directed_hausdorff(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
  double worst = 0.0;
  for (const Vec2 p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % to.size()]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const SampledCurve& a, const SampledCurve& b, std::size_t factor) {
  const auto da = dense_trace(a, factor);
  const auto db = dense_trace(b, factor);
  return std::max(directed_hausdorff(da, db), directed_hausdorff(db, da));
}

double max_radial_deviation(const SampledCurve& curve, Vec2 center, double radius,
                            std::size_t factor) {
  double worst = 0.0;
  for (const Vec2 p : dense_trace(curve, factor)) {
    worst = std::max(worst, std::abs(norm(p - center) - radius));
  }
  return worst;
}

}  // namespace cdflow
