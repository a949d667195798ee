#include "cdflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdflow/errors.hpp"
#include "cdflow/metrics.hpp"
#include "cdflow/spectral.hpp"

namespace cdflow {

namespace {

constexpr double kPi = std::numbers::pi;

double record_spacing(const std::vector<TrajectoryRecord>& t) {
  return t.size() < 2 ? 0.0 : t[1].time - t[0].time;
}

InequalityVerdict compare(double lhs, double rhs) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  v.relative_gap = scale > 0.0 ? (lhs - rhs) / scale : 0.0;
  v.holds = v.relative_gap >= -kInequalityGuard;
  return v;
}

void require_positive(const std::vector<double>& l) {
  if (l.empty()) throw InvalidInput("empty list");
  for (double x : l) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("entries must be positive and finite");
  }
}

}  // namespace

double kstar() {
  // Rationalized form of (p − q)/3; avoids cancelling two numbers near 126.
  const double p = 2.0 * kPi + 12.0 * kPi * kPi;
  const double q = 4.0 * kPi * std::sqrt(3.0 * kPi) * std::sqrt(1.0 + 3.0 * kPi);
  return 4.0 * kPi * kPi / (3.0 * (p + q));
}

double general_smallness_threshold(int omega) {
  if (omega == 0) throw InvalidInput("smallness threshold is undefined for winding number 0");
  const double w2 = static_cast<double>(omega) * omega;
  const double a = 4.0 * kPi + 24.0 * kPi * kPi * w2;
  const double b = 8.0 * kPi * std::sqrt(3.0 * kPi) * std::sqrt(w2 + 3.0 * kPi * w2 * w2);
  return 16.0 * kPi * kPi / (3.0 * (a + b));
}

HypothesisReport check_hypotheses(const CurveMetrics& m) {
  HypothesisReport h;
  h.kosc0 = m.osc_energy;
  h.iso0 = m.isoperimetric_ratio;
  h.kstar = kstar();
  h.winding = m.winding_number;
  h.area0 = m.signed_area;
  h.kosc_ok = h.kosc0 < h.kstar;
  h.iso_ok = h.iso0.has_value() && *h.iso0 < std::exp(h.kstar / (8.0 * kPi * kPi));
  h.winding_ok = h.winding == 1;
  h.area_ok = h.area0 > 0.0 && h.iso0.has_value();
  h.admissible = h.kosc_ok && h.iso_ok && h.winding_ok && h.area_ok;
  return h;
}

HypothesisReport check_hypotheses(const SampledCurve& curve) { return check_hypotheses(metrics(curve)); }

Report to_report(const HypothesisReport& h) {
  Report r;
  r.verdicts = {{"kosc_ok", h.kosc_ok},
                {"iso_ok", h.iso_ok},
                {"winding_ok", h.winding_ok},
                {"area_ok", h.area_ok},
                {"admissible", h.admissible}};
  r.values = {{"kosc0", h.kosc0},
              {"iso0", h.iso0.value_or(std::numeric_limits<double>::quiet_NaN())},
              {"kstar", h.kstar},
              {"iso_threshold", std::exp(h.kstar / (8.0 * kPi * kPi))},
              {"winding", static_cast<double>(h.winding)},
              {"area0", h.area0}};
  return r;
}

double waiting_time_bound(double L0, double A0) {
  if (!(L0 > 0.0)) throw InvalidInput("length must be positive");
  const double r = L0 / (2.0 * kPi);
  const double a = A0 / kPi;
  return r * r * r * r - a * a;
}

bool waiting_time_holds(double measure, double L0, double A0) {
  const double r = L0 / (2.0 * kPi);
  return measure <= waiting_time_bound(L0, A0) + kInequalityGuard * r * r * r * r;
}

double positivity_waiting_measure(const std::vector<TrajectoryRecord>& trajectory) {
  double measure = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double dt = trajectory[i].time - trajectory[i - 1].time;
    const double a = trajectory[i - 1].metrics.min_curvature <= 0.0 ? 1.0 : 0.0;
    const double b = trajectory[i].metrics.min_curvature <= 0.0 ? 1.0 : 0.0;
    measure += 0.5 * dt * (a + b);
  }
  return measure;
}

L1EnergyReport l1_energy_check(const std::vector<TrajectoryRecord>& trajectory) {
  if (trajectory.empty()) throw InvalidInput("empty trajectory");
  L1EnergyReport r;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double dt = trajectory[i].time - trajectory[i - 1].time;
    r.integral += 0.5 * dt * (trajectory[i - 1].metrics.osc_energy + trajectory[i].metrics.osc_energy);
  }
  const double L0 = trajectory.front().metrics.length;
  r.bound = L0 * L0 * L0 * L0 / (16.0 * kPi * kPi);
  r.holds = r.integral < r.bound;
  return r;
}

Report to_report(const L1EnergyReport& e) {
  Report r;
  r.verdicts = {{"l1_energy_below_bound", e.holds}};
  r.values = {{"integral", e.integral}, {"bound", e.bound}};
  return r;
}

SmallnessReport smallness_propagation_check(const std::vector<TrajectoryRecord>& trajectory) {
  if (trajectory.empty()) throw InvalidInput("empty trajectory");
  if (!check_hypotheses(trajectory.front().metrics).admissible) {
    throw InvalidInput("initial record is not admissible");
  }
  SmallnessReport r;
  r.threshold = 2.0 * kstar();
  r.kosc_bounded = true;
  r.monotone = true;
  auto quantity = [](const CurveMetrics& m) {
    const double w = m.winding_number;
    return m.osc_energy + 8.0 * w * w * kPi * kPi * std::log(m.length);
  };
  double prev = quantity(trajectory.front().metrics);
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto& m = trajectory[i].metrics;
    r.max_kosc = std::max(r.max_kosc, m.osc_energy);
    const double q = quantity(m);
    const double slack = kMonotoneSlack * std::max(1.0, std::abs(q));
    r.slack = std::max(r.slack, slack);
    const double rise = i == 0 ? 0.0 : q - prev;
    r.max_increase = std::max(r.max_increase, rise);
    const bool bounded = m.osc_energy <= r.threshold;
    const bool monotone = rise <= slack;
    if ((!bounded || !monotone) && !r.first_violation) r.first_violation = i;
    r.kosc_bounded = r.kosc_bounded && bounded;
    r.monotone = r.monotone && monotone;
    prev = q;
  }
  r.holds = r.kosc_bounded && r.monotone;
  return r;
}

Report to_report(const SmallnessReport& s) {
  Report r;
  r.verdicts = {{"kosc_below_2kstar", s.kosc_bounded}, {"monotone_quantity", s.monotone}};
  r.values = {{"threshold", s.threshold},
              {"max_kosc", s.max_kosc},
              {"max_increase", s.max_increase},
              {"slack", s.slack},
              {"first_violation",
               s.first_violation ? static_cast<double>(*s.first_violation) : -1.0}};
  return r;
}

double multiplicity_bound(int m, int omega) {
  if (m < 1) throw InvalidInput("multiplicity must be at least 1");
  const double w = omega;
  return 16.0 * m * m - 4.0 * w * w * kPi * kPi;
}

std::string_view to_string(EmbeddednessVerdict v) {
  return v == EmbeddednessVerdict::Certified ? "certified" : "inconclusive";
}

EmbeddednessCertificate embeddedness_certificate(const CurveMetrics& m) {
  EmbeddednessCertificate c;
  c.kosc = m.osc_energy;
  c.threshold = multiplicity_bound(2, 1);
  c.winding = m.winding_number;
  if (std::abs(c.winding) != 1) {
    c.reason = "winding number is not +-1";
  } else if (c.kosc < c.threshold) {
    c.verdict = EmbeddednessVerdict::Certified;
    c.reason = "K_osc below 64 - 4 pi^2 excludes a double point";
  } else {
    c.reason = "K_osc at or above 64 - 4 pi^2";
  }
  return c;
}

EmbeddednessCertificate embeddedness_certificate(const SampledCurve& curve) {
  return embeddedness_certificate(measure(curve));
}

DensityResult density_integral(const SampledCurve& curve, Vec2 point) {
  if (!curve.is_uniform_arclength()) {
    throw ContractViolation("density integral requires a uniform-arclength curve");
  }
  const std::size_t n = curve.size();
  const double length = curve_length(curve);
  const auto trace = dense_trace(curve, 16);
  double distance = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < trace.size(); ++j) {
    distance = std::min(distance, point_segment_distance(point, trace[j], trace[(j + 1) % trace.size()]));
  }
  if (distance > 1e-6 * length) throw InvalidInput("point does not lie on the curve");

  const auto moved = curve.translated(Vec2{-point.x, -point.y});
  const auto g = local_geometry(moved);
  const double du = 2.0 * kPi / static_cast<double>(n);
  std::vector<double> r(n), f(n);
  DensityResult d;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 p = moved[j];
    r[j] = norm(p);
    const double ds = g.speed[j] * du;
    d.k2_weighted += g.k[j] * g.k[j] * r[j] * ds;
    if (r[j] > 0.0) {
      const double k0 = 2.0 * std::abs(dot(p, g.normal[j]) / (r[j] * r[j]) + 0.5 * g.k[j]);
      f[j] = (g.k[j] * g.k[j] - k0 * k0) * r[j] * ds;
    }
  }
  d.cutoff = 3.0 * length / static_cast<double>(n);
  auto integral = [&](double eps) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r[j] >= eps) s += f[j];
    }
    return s;
  };
  d.at_cutoff = integral(d.cutoff);
  d.at_double_cutoff = integral(2.0 * d.cutoff);
  // The excluded arcs contribute O(ε²).
  d.value = (4.0 * d.at_cutoff - d.at_double_cutoff) / 3.0;
  d.preimages = static_cast<int>(std::lround(d.value / 8.0));
  return d;
}

std::vector<double> symmetric_means(const std::vector<double>& l) {
  const std::size_t n = l.size();
  // E^{(m)}_k = ((m − k)/m) E^{(m−1)}_k + (k/m) l_m E^{(m−1)}_{k−1}.
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double x = l[m - 1];
    const double md = static_cast<double>(m);
    for (std::size_t k = m; k >= 1; --k) {
      const double kd = static_cast<double>(k);
      e[k] = ((md - kd) / md) * e[k] + (kd / md) * x * e[k - 1];
    }
  }
  return e;
}

InequalityVerdict newton_ratio_check(const std::vector<double>& l, std::size_t i) {
  require_positive(l);
  if (l.size() < 2 || i + 2 > l.size()) throw InvalidInput("index outside [0, n-2]");
  // Homogeneous of equal degree on both sides; normalizing by the mean keeps
  // the products in range.
  double mean = 0.0;
  for (double x : l) mean += x;
  mean /= static_cast<double>(l.size());
  std::vector<double> scaled(l.size());
  std::transform(l.begin(), l.end(), scaled.begin(), [&](double x) { return x / mean; });
  const auto e = symmetric_means(scaled);
  return compare(e[i + 1] * e[i + 1], e[i] * e[i + 2]);
}

InequalityVerdict harmonic_sum_bound_check(const std::vector<double>& l) {
  require_positive(l);
  double inv = 0.0, sum = 0.0;
  for (double x : l) {
    inv += 1.0 / x;
    sum += x;
  }
  const double n = static_cast<double>(l.size());
  return compare(inv, n * n / sum);
}

WirtingerReport wirtinger_check(std::vector<double> samples, double period) {
  if (samples.size() < 16) throw InvalidInput("need at least 16 samples");
  if (!(period > 0.0) || !std::isfinite(period)) throw InvalidInput("period must be positive");
  for (double v : samples) {
    if (!std::isfinite(v)) throw InvalidInput("samples must be finite");
  }
  const std::size_t n = samples.size();
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  for (double& v : samples) v -= mean;

  const auto c = spectral::coefficients(samples);
  const double base = 2.0 * kPi / period;
  WirtingerReport w;
  for (std::size_t m = 1; m < c.size(); ++m) {
    const bool nyquist = n % 2 == 0 && m == n / 2;
    const double weight = nyquist ? 1.0 : 2.0;
    const double power = weight * std::norm(c[m]) * period;
    const double wave = base * static_cast<double>(m);
    w.l2 += power;
    w.l2_deriv += wave * wave * power;
  }
  const auto fine = spectral::resample_grid(samples, 8 * n);
  for (double v : fine) w.sup_sq = std::max(w.sup_sq, v * v);
  w.l2_bound = period * period / (4.0 * kPi * kPi) * w.l2_deriv;
  w.sup_bound = period / (2.0 * kPi) * w.l2_deriv;
  w.l2_holds = compare(w.l2_bound, w.l2).holds;
  w.sup_holds = compare(w.sup_bound, w.sup_sq).holds;
  w.equality_gap = w.l2_bound > 0.0 ? 1.0 - w.l2 / w.l2_bound : 0.0;
  return w;
}

Report to_report(const WirtingerReport& w) {
  Report r;
  r.verdicts = {{"l2_inequality", w.l2_holds}, {"sup_inequality", w.sup_holds}};
  r.values = {{"l2", w.l2},           {"l2_deriv", w.l2_deriv},   {"sup_sq", w.sup_sq},
              {"l2_bound", w.l2_bound}, {"sup_bound", w.sup_bound}, {"equality_gap", w.equality_gap}};
  return r;
}

std::string_view to_string(DecayQuantity q) {
  switch (q) {
    case DecayQuantity::Kosc: return "kosc";
    case DecayQuantity::Ks2: return "ks2";
    case DecayQuantity::Kss2: return "kss2";
  }
  return "?";
}

DecayQuantity decay_quantity_from_string(std::string_view s) {
  if (s == "kosc") return DecayQuantity::Kosc;
  if (s == "ks2") return DecayQuantity::Ks2;
  if (s == "kss2") return DecayQuantity::Kss2;
  throw InvalidInput("unknown decay quantity '" + std::string(s) + "'");
}

DecayFit decay_fit(const std::vector<TrajectoryRecord>& trajectory, DecayQuantity quantity, double t0,
                   double t1) {
  if (trajectory.size() < 3) throw InvalidInput("decay fit needs at least 3 records");
  if (!(t1 - t0 > 10.0 * record_spacing(trajectory))) {
    throw InvalidInput("decay-fit window must exceed 10 time steps");
  }
  DecayFit fit;
  fit.quantity = quantity;
  fit.t0 = t0;
  fit.t1 = t1;
  std::vector<double> ts, ys;
  for (const auto& rec : trajectory) {
    if (rec.time < t0 || rec.time > t1) continue;
    const auto& m = rec.metrics;
    const double v = quantity == DecayQuantity::Kosc  ? m.osc_energy
                     : quantity == DecayQuantity::Ks2 ? m.ks_norm_sq
                                                      : m.kss_norm_sq;
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInput("decay-fit quantity is not positive on the window");
    }
    ts.push_back(rec.time);
    ys.push_back(std::log(v));
  }
  if (ts.size() < 3) throw InvalidInput("decay-fit window holds fewer than 3 records");
  if (*std::max_element(ys.begin(), ys.end()) < std::log(kDecayNoiseFloor)) {
    throw InvalidInput("decay-fit quantity is at rounding level on the window");
  }
  const double count = static_cast<double>(ts.size());
  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= count;
  ym /= count;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
  }
  const double slope = sty / stt;
  const double intercept = ym - slope * tm;
  double sq = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double e = ys[i] - (intercept + slope * ts[i]);
    sq += e * e;
  }
  fit.rate = -slope;
  fit.amplitude = std::exp(intercept);
  fit.rms_log_residual = std::sqrt(sq / count);
  fit.samples = ts.size();
  const double L0 = trajectory.front().metrics.length;
  fit.rate_floor = 4.0 * std::pow(kPi, 4) / std::pow(L0, 4);
  fit.meets_floor = fit.rate >= 0.9 * fit.rate_floor;
  return fit;
}

Report to_report(const DecayFit& f) {
  Report r;
  r.verdicts = {{"rate_positive", f.rate > 0.0}};
  r.values = {{"t0", f.t0},
              {"t1", f.t1},
              {"rate", f.rate},
              {"amplitude", f.amplitude},
              {"rms_log_residual", f.rms_log_residual},
              {"samples", static_cast<double>(f.samples)},
              {"rate_floor", f.rate_floor},
              {"meets_floor_advisory", f.meets_floor ? 1.0 : 0.0}};
  return r;
}

}  // namespace cdflow
