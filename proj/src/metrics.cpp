#include "cdflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cdflow/errors.hpp"
#include "cdflow/spectral.hpp"

namespace cdflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_uniform(const SampledCurve& curve, const char* op) {
  if (!curve.is_uniform_arclength()) {
    throw ContractViolation(std::string(op) +
                            " requires a uniform-in-arclength curve; call resample_uniform first");
  }
}

}  // namespace

std::vector<double> arclength_derivative(const std::vector<double>& f,
                                         const std::vector<double>& speed) {
  auto d = spectral::derivative(f);
  for (std::size_t j = 0; j < d.size(); ++j) d[j] /= speed[j];
  return d;
}

LocalGeometry local_geometry(const SampledCurve& curve) {
  const std::size_t n = curve.size();
  const auto x = curve.xs();
  const auto y = curve.ys();
  const auto x1 = spectral::derivative(x, 1);
  const auto y1 = spectral::derivative(y, 1);
  const auto x2 = spectral::derivative(x, 2);
  const auto y2 = spectral::derivative(y, 2);

  LocalGeometry g;
  g.speed.resize(n);
  g.tangent.resize(n);
  g.normal.resize(n);
  g.k.resize(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::hypot(x1[j], y1[j]);
    if (!(s > 0.0)) throw DegenerateGeometry("vanishing speed at vertex " + std::to_string(j));
    g.speed[j] = s;
    g.tangent[j] = {x1[j] / s, y1[j] / s};
    g.normal[j] = perp(g.tangent[j]);
    g.k[j] = (x1[j] * y2[j] - y1[j] * x2[j]) / (s * s * s);
    total += s;
  }
  g.length = kTwoPi * total / static_cast<double>(n);
  g.k_s = arclength_derivative(g.k, g.speed);
  g.k_ss = arclength_derivative(g.k_s, g.speed);
  return g;
}

std::vector<double> curvature_profile(const SampledCurve& curve) {
  require_uniform(curve, "curvature_profile");
  return local_geometry(curve).k;
}

std::vector<double> curvature_derivatives(const SampledCurve& curve, int order) {
  require_uniform(curve, "curvature_derivatives");
  if (order != 1 && order != 2) throw InvalidInput("curvature derivative order must be 1 or 2");
  auto g = local_geometry(curve);
  return order == 1 ? g.k_s : g.k_ss;
}

CurveMetrics metrics(const SampledCurve& curve) {
  require_uniform(curve, "metrics");
  return measure(curve);
}

CurveMetrics measure(const SampledCurve& curve) {
  const auto g = local_geometry(curve);
  const std::size_t n = curve.size();
  const double du = kTwoPi / static_cast<double>(n);

  CurveMetrics m;
  m.length = g.length;
  m.signed_area = signed_area(curve);

  double turning = 0.0;
  for (std::size_t j = 0; j < n; ++j) turning += g.k[j] * g.speed[j] * du;
  const double raw = turning / kTwoPi;
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 0.1) {
    throw DegenerateGeometry("turning integral " + std::to_string(raw) +
                             " is not close to an integer; curve is under-resolved");
  }
  m.winding_number = static_cast<int>(rounded);
  m.average_curvature = kTwoPi * m.winding_number / m.length;

  if (std::abs(m.signed_area) > kZeroAreaFraction * m.length * m.length) {
    m.isoperimetric_ratio = m.length * m.length / (4.0 * std::numbers::pi * m.signed_area);
  }

  const double kbar = m.average_curvature;
  double osc = 0.0, ks2 = 0.0, kss2 = 0.0, k2 = 0.0, osc_ks2 = 0.0, dev_ks2 = 0.0;
  double kmin = g.k[0];
  double dev_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ds = g.speed[j] * du;
    const double dev = g.k[j] - kbar;
    const double ks_sq = g.k_s[j] * g.k_s[j];
    osc += dev * dev * ds;
    ks2 += ks_sq * ds;
    kss2 += g.k_ss[j] * g.k_ss[j] * ds;
    k2 += g.k[j] * g.k[j] * ds;
    osc_ks2 += dev * dev * ks_sq * ds;
    dev_ks2 += dev * ks_sq * ds;
    kmin = std::min(kmin, g.k[j]);
    dev_max = std::max(dev_max, dev * dev);
  }
  m.osc_energy = m.length * osc;
  m.ks_norm_sq = ks2;
  m.kss_norm_sq = kss2;
  m.k_norm_sq = k2;
  m.osc_ks2 = osc_ks2;
  m.dev_ks2 = dev_ks2;
  m.min_curvature = kmin;
  m.max_deviation_sq = dev_max;
  return m;
}

}  // namespace cdflow
