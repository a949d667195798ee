#include "cdflow/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cdflow/errors.hpp"
#include "cdflow/spectral.hpp"

namespace cdflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxPasses = 4;
constexpr double kPassTarget = 1e-10;
// Largest arclength offset (in units of L/N) for which the Taylor path is
// used; the truncation error of order-6 expansions is then below 1e-13.
constexpr double kLocalShift = 0.01;
constexpr int kTaylorOrder = 6;

struct ArclengthMap {
  std::vector<double> fine_speed;   // |γ_u| on the 2N grid
  std::vector<double> fine_wobble;  // periodic part of s(u) on the 2N grid
  double mean_speed = 0.0;
  double length = 0.0;
};

ArclengthMap arclength_map(const SampledCurve& curve) {
  const std::size_t m = 2 * curve.size();
  const auto dx = spectral::resample_grid(spectral::derivative(curve.xs()), m);
  const auto dy = spectral::resample_grid(spectral::derivative(curve.ys()), m);
  ArclengthMap map;
  map.fine_speed.resize(m);
  for (std::size_t j = 0; j < m; ++j) map.fine_speed[j] = std::hypot(dx[j], dy[j]);
  map.mean_speed =
      std::accumulate(map.fine_speed.begin(), map.fine_speed.end(), 0.0) / static_cast<double>(m);
  map.length = kTwoPi * map.mean_speed;
  map.fine_wobble = spectral::periodic_antiderivative(map.fine_speed);
  return map;
}

std::vector<Vec2> resample_local(const SampledCurve& curve, const ArclengthMap& map,
                                 const std::vector<double>& s_nodes) {
  const std::size_t n = curve.size();
  const double h = map.length / static_cast<double>(n);
  std::vector<double> sig1 = spectral::derivative(map.fine_speed, 1);
  std::vector<double> sig2 = spectral::derivative(map.fine_speed, 2);

  std::vector<std::vector<double>> dx(kTaylorOrder + 1);
  std::vector<std::vector<double>> dy(kTaylorOrder + 1);
  dx[0] = curve.xs();
  dy[0] = curve.ys();
  for (int p = 1; p <= kTaylorOrder; ++p) {
    dx[p] = spectral::derivative(dx[0], p);
    dy[p] = spectral::derivative(dy[0], p);
  }

  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = h * static_cast<double>(i) - s_nodes[i];
    const double a1 = map.fine_speed[2 * i];
    const double a2 = 0.5 * sig1[2 * i];
    const double a3 = sig2[2 * i] / 6.0;
    double d = target / a1;
    for (int it = 0; it < 4; ++it) {
      const double f = a1 * d + a2 * d * d + a3 * d * d * d - target;
      const double fp = a1 + 2.0 * a2 * d + 3.0 * a3 * d * d;
      d -= f / fp;
    }
    double px = 0.0;
    double py = 0.0;
    double term = 1.0;
    for (int p = 0; p <= kTaylorOrder; ++p) {
      if (p > 0) term *= d / p;
      px += dx[p][i] * term;
      py += dy[p][i] * term;
    }
    out[i] = {px, py};
  }
  return out;
}

std::vector<Vec2> resample_global(const SampledCurve& curve, const ArclengthMap& map,
                                  const std::vector<double>& s_nodes, std::size_t n) {
  const std::size_t N = curve.size();
  const spectral::TrigSeries xs(curve.xs());
  const spectral::TrigSeries ys(curve.ys());
  const spectral::TrigSeries wobble(map.fine_wobble);
  const double w0 = map.fine_wobble[0];
  const double du = kTwoPi / static_cast<double>(N);
  auto arc = [&](double u) { return map.mean_speed * u + wobble(u) - w0; };
  auto speed = [&](double u) { return map.mean_speed + wobble.eval(u, 1); };

  std::vector<Vec2> out(n);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = map.length * static_cast<double>(i) / static_cast<double>(n);
    while (j + 1 < N && s_nodes[j + 1] <= target) ++j;
    double lo = du * static_cast<double>(j);
    double hi = lo + du;
    const double span = s_nodes[j + 1] - s_nodes[j];
    double u = lo + du * (span > 0.0 ? (target - s_nodes[j]) / span : 0.5);
    for (int it = 0; it < 60; ++it) {
      const double f = arc(u) - target;
      if (f > 0.0) hi = std::min(hi, u); else lo = std::max(lo, u);
      const double fp = speed(u);
      double next = fp > 0.0 ? u - f / fp : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - u) <= 1e-15 * kTwoPi;
      u = next;
      if (done) break;
    }
    out[i] = {xs(u), ys(u)};
  }
  return out;
}

std::vector<Vec2> resample_pass(const SampledCurve& curve, std::size_t n) {
  const std::size_t N = curve.size();
  const auto map = arclength_map(curve);
  if (!(map.length > 0.0) || !std::isfinite(map.length)) {
    throw DegenerateGeometry("curve length is zero or not finite");
  }
  const auto [smin, smax] = std::minmax_element(map.fine_speed.begin(), map.fine_speed.end());
  if (*smin <= 1e-8 * map.mean_speed) {
    throw DegenerateGeometry("curve interpolant is singular (vanishing speed)");
  }
  std::vector<double> s_nodes(N + 1);
  const double du = kTwoPi / static_cast<double>(N);
  for (std::size_t j = 0; j < N; ++j) {
    s_nodes[j] = map.mean_speed * du * static_cast<double>(j) + map.fine_wobble[2 * j] - map.fine_wobble[0];
  }
  s_nodes[N] = map.length;
  for (std::size_t j = 0; j < N; ++j) {
    if (!(s_nodes[j + 1] > s_nodes[j])) throw DegenerateGeometry("arclength is not monotone");
  }

  if (n == N) {
    const double h = map.length / static_cast<double>(N);
    double shift = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      shift = std::max(shift, std::abs(s_nodes[j] - h * static_cast<double>(j)));
    }
    if (shift <= kLocalShift * h) return resample_local(curve, map, s_nodes);
  }
  return resample_global(curve, map, s_nodes, n);
}

}  // namespace

SampledCurve resample_uniform(const SampledCurve& curve, std::size_t n) {
  if (n < kMinVertices) {
    throw InvalidInput("vertex count must be at least " + std::to_string(kMinVertices));
  }
  std::vector<Vec2> v = resample_pass(curve, n);
  double spread = 1.0;
  for (int pass = 1;; ++pass) {
    SampledCurve trial(v);
    spread = arclength_spread(trial);
    if (spread <= kPassTarget || pass >= kMaxPasses) break;
    v = resample_pass(trial, n);
  }
  if (!(spread <= kArclengthSpreadTolerance)) {
    throw DegenerateGeometry("resampling did not reach a uniform arclength spacing (spread " +
                             std::to_string(spread) + "); the curve is under-resolved");
  }
  return SampledCurve(std::move(v), Parametrization::UniformArclength, curve.generation() + 1);
}

SampledCurve resample_uniform(const SampledCurve& curve) { return resample_uniform(curve, curve.size()); }

}  // namespace cdflow
