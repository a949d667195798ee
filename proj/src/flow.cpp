#include "cdflow/flow.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cdflow/resample.hpp"
#include "cdflow/spectral.hpp"

namespace cdflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using spectral::Complex;

/// (σ⁻¹ d/du)^times applied to node values.
std::vector<double> arclength_power(std::vector<double> f, const std::vector<double>& speed, int times) {
  for (int i = 0; i < times; ++i) f = arclength_derivative(f, speed);
  return f;
}

double rms(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * a[j] + b[j] * b[j];
  return std::sqrt(s / static_cast<double>(a.size()));
}

struct ImplicitSolve {
  std::vector<double> x;
  std::vector<double> y;
  double residual = 0.0;
  int iterations = 0;
};

/// Solves (I + dt D_s⁴) X = rhs per coordinate, D_s = σ⁻¹ d/du.
///
/// The preconditioner replaces σ by its mean σ̄, which makes it diagonal in
/// Fourier space; for a uniform-arclength curve it is the exact operator and
/// the loop ends after one pass. The Nyquist mode, which a chain of first
/// derivatives cannot see, is damped by the preconditioner's multiplier.
ImplicitSolve solve_fourth_order(const std::vector<double>& rhs_x, const std::vector<double>& rhs_y,
                                 const std::vector<double>& speed, double length, double dt,
                                 const Tolerances& tol) {
  const std::size_t n = rhs_x.size();
  const std::size_t modes = n / 2 + 1;
  const double mean_speed = length / kTwoPi;
  std::vector<double> precond(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    const double wave = static_cast<double>(m) / mean_speed;
    precond[m] = 1.0 + dt * wave * wave * wave * wave;
  }
  const bool has_nyquist = n % 2 == 0;
  const double nyquist_extra = has_nyquist ? precond[n / 2] - 1.0 : 0.0;

  auto apply_inverse_precond = [&](const std::vector<double>& r) {
    auto c = spectral::coefficients(r);
    for (std::size_t m = 0; m < modes; ++m) c[m] /= precond[m];
    return spectral::synthesize(c, n);
  };
  auto apply_operator = [&](const std::vector<double>& v) {
    auto out = arclength_power(v, speed, 4);
    for (auto& e : out) e *= dt;
    if (has_nyquist) {
      // Nyquist component of v, as a node pattern (-1)^j.
      double nyq = 0.0;
      for (std::size_t j = 0; j < n; ++j) nyq += (j % 2 == 0 ? v[j] : -v[j]);
      nyq /= static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) out[j] += nyquist_extra * (j % 2 == 0 ? nyq : -nyq);
    }
    for (std::size_t j = 0; j < n; ++j) out[j] += v[j];
    return out;
  };

  ImplicitSolve s;
  s.x = apply_inverse_precond(rhs_x);
  s.y = apply_inverse_precond(rhs_y);
  const double scale = std::max(rms(rhs_x, rhs_y), std::numeric_limits<double>::min());
  // Residuals below κ·ε are rounding noise of the quartic operator.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * precond[modes - 1];
  const double target = std::max(tol.linear_solve, floor);
  for (s.iterations = 1;; ++s.iterations) {
    auto ax = apply_operator(s.x);
    auto ay = apply_operator(s.y);
    for (std::size_t j = 0; j < n; ++j) {
      ax[j] = rhs_x[j] - ax[j];
      ay[j] = rhs_y[j] - ay[j];
    }
    s.residual = rms(ax, ay) / scale;
    if (!std::isfinite(s.residual)) throw SolverError("implicit solve produced non-finite values");
    if (s.residual <= target) break;
    if (s.iterations >= tol.max_solver_iterations) {
      throw SolverError("implicit solve stalled at relative residual " + std::to_string(s.residual));
    }
    const auto cx = apply_inverse_precond(ax);
    const auto cy = apply_inverse_precond(ay);
    for (std::size_t j = 0; j < n; ++j) {
      s.x[j] += cx[j];
      s.y[j] += cy[j];
    }
  }
  return s;
}

int winding_of(const LocalGeometry& g) {
  double turning = 0.0;
  for (std::size_t j = 0; j < g.k.size(); ++j) turning += g.k[j] * g.speed[j];
  turning *= kTwoPi / static_cast<double>(g.k.size());
  return static_cast<int>(std::lround(turning / kTwoPi));
}

std::vector<Vec2> velocity_from(const LocalGeometry& g) {
  std::vector<Vec2> v(g.k.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = -g.k_ss[j] * g.normal[j];
  return v;
}

struct Move {
  std::vector<Vec2> next;
  double residual = 0.0;
  int iterations = 0;
};

/// Linearly implicit Euler step, normal component only.
/// −γ_ssss = −k_ss ν + k³ ν + 3 k k_s τ; the quartic term is implicit, the
/// cubic normal term explicit and the tangential term dropped.
Move implicit_move(const SampledCurve& curve, const LocalGeometry& g, double dt, const Tolerances& tol) {
  const std::size_t n = curve.size();
  std::vector<double> rx(n), ry(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k3 = g.k[j] * g.k[j] * g.k[j];
    rx[j] = curve[j].x - dt * k3 * g.normal[j].x;
    ry[j] = curve[j].y - dt * k3 * g.normal[j].y;
  }
  const auto sol = solve_fourth_order(rx, ry, g.speed, g.length, dt, tol);
  Move m{std::vector<Vec2>(n), sol.residual, sol.iterations};
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 delta{sol.x[j] - curve[j].x, sol.y[j] - curve[j].y};
    m.next[j] = curve[j] + dot(delta, g.normal[j]) * g.normal[j];
  }
  return m;
}

double area_of(const std::vector<Vec2>& v) {
  const auto n = v.size();
  std::vector<double> x(n), y(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = v[j].x;
    y[j] = v[j].y;
  }
  const auto xu = spectral::derivative(x, 1);
  const auto yu = spectral::derivative(y, 1);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j] * yu[j] - y[j] * xu[j];
  return 0.5 * s * kTwoPi / static_cast<double>(n);
}

/// Shifts every vertex by the same distance c along `normal` so the enclosed
/// area equals `target`. The area is exactly quadratic in c.
void restore_area(std::vector<Vec2>& v, const std::vector<Vec2>& normal, double target) {
  auto shifted = [&](double c) {
    auto w = v;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += c * normal[j];
    return w;
  };
  double scale = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) scale += norm(v[j] - v[(j + 1) % v.size()]);
  const double h = scale / static_cast<double>(v.size());
  const double a0 = area_of(v) - target;
  const double ap = area_of(shifted(h)) - target;
  const double am = area_of(shifted(-h)) - target;
  const double b = (ap - am) / (2.0 * h);
  const double a = (ap + am - 2.0 * a0) / (2.0 * h * h);
  if (!(std::abs(b) > 0.0) || !std::isfinite(b)) return;
  double c = -a0 / b;
  const double disc = b * b - 4.0 * a * a0;
  if (std::abs(a) > 0.0 && disc >= 0.0) {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    c = a0 / q;  // root of smaller magnitude
  }
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * normal[j];
}


SampledCurve displaced(const SampledCurve& c, const std::vector<Vec2>& d, double scale) {
  std::vector<Vec2> v(c.vertices().begin(), c.vertices().end());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += scale * d[j];
  return SampledCurve(std::move(v));
}

}  // namespace

std::string_view to_string(Scheme s) {
  return s == Scheme::LinearlyImplicit ? "linearly-implicit" : "explicit-rk4";
}

std::string_view to_string(Redistribution r) {
  return r == Redistribution::EveryStep ? "every-step" : "spread";
}

Scheme scheme_from_string(std::string_view s) {
  if (s == "linearly-implicit") return Scheme::LinearlyImplicit;
  if (s == "explicit-rk4") return Scheme::ExplicitRK4;
  throw InvalidInput("unknown scheme '" + std::string(s) + "'");
}

Redistribution redistribution_from_string(std::string_view s) {
  if (s == "every-step") return Redistribution::EveryStep;
  if (s == "spread") return Redistribution::WhenSpreadExceeds;
  throw InvalidInput("unknown redistribution policy '" + std::string(s) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::MaxTime: return "max-time";
    case Termination::MaxSteps: return "max-steps";
    case Termination::KoscThreshold: return "kosc-threshold";
    case Termination::BlowUp: return "blow-up";
  }
  return "?";
}

void FlowConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive");
  if (n < kMinVertices) throw InvalidInput("n must be at least " + std::to_string(kMinVertices));
  const double theta = tolerances.spread_threshold;
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidInput("spread threshold must lie in (0, 1)");
  if (!(tolerances.linear_solve > 0.0)) throw InvalidInput("linear-solve tolerance must be positive");
  if (tolerances.max_solver_iterations < 1) throw InvalidInput("solver needs at least one iteration");
  if (!(tolerances.geometry_epsilon > 0.0)) throw InvalidInput("geometry epsilon must be positive");
  if (stop.max_steps < 0) throw InvalidInput("max_steps must be non-negative");
  if (!(stop.max_time > 0.0) && stop.max_steps == 0) {
    throw InvalidInput("stop conditions never fire: set max_time > 0 or max_steps > 0");
  }
  if (std::isnan(stop.max_time) ||
      (std::isinf(stop.max_time) && stop.max_steps == 0 && !(stop.kosc_threshold > 0.0))) {
    throw InvalidInput("unbounded run: max_time is infinite and no other stop condition is set");
  }
  if (!(stop.curvature_ceiling > 0.0)) throw InvalidInput("curvature ceiling must be positive");
  if (!(stop.min_segment_fraction > 0.0 && stop.min_segment_fraction < 1.0)) {
    throw InvalidInput("min segment fraction must lie in (0, 1)");
  }
  if (stop.kosc_threshold < 0.0) throw InvalidInput("K_osc threshold must be non-negative");
}

std::vector<Vec2> normal_velocity(const SampledCurve& curve) {
  return velocity_from(local_geometry(curve));
}

namespace {

struct Advanced {
  SampledCurve curve;
  CurveMetrics metrics;
  double residual = 0.0;
  int iterations = 0;
};

Advanced advance(const FlowState& state, const FlowConfig& config) {
  const auto& curve = state.curve;
  const std::size_t n = curve.size();
  const double dt = config.dt;
  const auto g = local_geometry(curve);
  const int winding = winding_of(g);

  std::vector<Vec2> next(n);
  double residual = 0.0;
  int iterations = 0;
  if (config.scheme == Scheme::LinearlyImplicit) {
    // One full step and two half steps, combined by local extrapolation.
    const auto full = implicit_move(curve, g, dt, config.tolerances);
    const auto half = implicit_move(curve, g, 0.5 * dt, config.tolerances);
    SampledCurve mid = [&] {
      try {
        return SampledCurve(half.next);
      } catch (const InvalidInput& e) {
        throw BlowUp(state, std::string("degenerate mesh: ") + e.what());
      }
    }();
    const auto second = implicit_move(mid, local_geometry(mid), 0.5 * dt, config.tolerances);
    residual = std::max({full.residual, half.residual, second.residual});
    iterations = full.iterations + half.iterations + second.iterations;
    for (std::size_t j = 0; j < n; ++j) next[j] = 2.0 * second.next[j] - full.next[j];
    restore_area(next, g.normal, signed_area(curve));
  } else {
    const auto k1 = velocity_from(g);
    const auto k2 = normal_velocity(displaced(curve, k1, 0.5 * dt));
    const auto k3 = normal_velocity(displaced(curve, k2, 0.5 * dt));
    const auto k4 = normal_velocity(displaced(curve, k3, dt));
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = curve[j] + (dt / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }

  for (const Vec2 p : next) {
    if (!is_finite(p)) throw BlowUp(state, "non-finite vertex coordinates");
  }

  try {
    SampledCurve moved(std::move(next));
    bool fresh = true;
    if (config.redistribution == Redistribution::EveryStep) {
      moved = resample_uniform(moved, n);
    } else if (arclength_spread(moved) > config.tolerances.spread_threshold) {
      moved = resample_uniform(moved, n);
    } else {
      fresh = false;
    }
    const auto m = measure(moved);
    if (!fresh) {
      const auto seg = segment_arclengths(moved);
      const double shortest = *std::min_element(seg.begin(), seg.end());
      if (shortest < config.stop.min_segment_fraction * m.length / static_cast<double>(n)) {
        throw BlowUp(state, "segment collapse");
      }
    }
    if (!std::isfinite(m.k_norm_sq) || !std::isfinite(m.osc_energy) || !std::isfinite(m.length)) {
      throw BlowUp(state, "non-finite curvature");
    }
    if (m.k_norm_sq > config.stop.curvature_ceiling) {
      throw BlowUp(state, "curvature L2 norm above ceiling");
    }
    if (m.winding_number != winding) throw BlowUp(state, "winding number changed");
    return {std::move(moved), m, residual, iterations};
  } catch (const BlowUp&) {
    throw;
  } catch (const InvalidInput& e) {
    throw BlowUp(state, std::string("degenerate mesh: ") + e.what());
  } catch (const DegenerateGeometry& e) {
    throw BlowUp(state, std::string("degenerate geometry: ") + e.what());
  } catch (const ContractViolation& e) {
    throw BlowUp(state, std::string("degenerate geometry: ") + e.what());
  }
}

}  // namespace

StepResult step(const FlowState& state, const FlowConfig& config) {
  config.validate();
  auto a = advance(state, config);
  return {FlowState{std::move(a.curve), state.time + config.dt, state.step_index + 1}, a.residual,
          a.iterations};
}

RunResult run(const SampledCurve& initial, const FlowConfig& config, const StepObserver& observer) {
  config.validate();
  SampledCurve start = (initial.size() == config.n && initial.is_uniform_arclength())
                           ? initial
                           : resample_uniform(initial, config.n);

  RunResult result{{}, FlowState{start, 0.0, 0}, Termination::MaxTime, {}, config.dt};
  TrajectoryRecord first;
  first.metrics = measure(start);
  result.trajectory.push_back(first);
  if (observer) observer(result.final_state, first);

  auto& state = result.final_state;
  while (true) {
    const auto& last = result.trajectory.back();
    if (config.stop.kosc_threshold > 0.0 && last.metrics.osc_energy < config.stop.kosc_threshold) {
      result.termination = Termination::KoscThreshold;
      break;
    }
    if (config.stop.max_steps > 0 && state.step_index >= config.stop.max_steps) {
      result.termination = Termination::MaxSteps;
      break;
    }
    if (config.stop.max_time > 0.0 && state.time + 0.5 * config.dt > config.stop.max_time) {
      result.termination = Termination::MaxTime;
      break;
    }
    Advanced a{state.curve, {}, 0.0, 0};
    try {
      a = advance(state, config);
    } catch (const BlowUp& b) {
      result.termination = Termination::BlowUp;
      result.detail = b.reason();
      break;
    }
    const std::int64_t index = state.step_index + 1;
    state = FlowState{std::move(a.curve), static_cast<double>(index) * config.dt, index};

    TrajectoryRecord rec;
    rec.time = state.time;
    rec.step = index;
    rec.metrics = a.metrics;
    rec.dL_dt = (a.metrics.length - last.metrics.length) / config.dt;
    rec.dA_dt = (a.metrics.signed_area - last.metrics.signed_area) / config.dt;
    rec.dKosc_dt = (a.metrics.osc_energy - last.metrics.osc_energy) / config.dt;
    rec.residual = a.residual;
    result.trajectory.push_back(rec);
    if (observer) observer(state, rec);
  }
  return result;
}

IdentityResiduals identity_residuals(const std::vector<TrajectoryRecord>& trajectory,
                                     double noise_floor) {
  if (trajectory.size() < 3) throw InvalidInput("identity residuals need at least 3 records");
  IdentityResiduals r;
  const auto& first = trajectory.front().metrics;
  // Curves without enclosed area are normalized by L(0)² instead.
  const double area0 = std::abs(first.signed_area) > kZeroAreaFraction * first.length * first.length
                           ? std::abs(first.signed_area)
                           : first.length * first.length;
  std::size_t length_count = 0, kosc_count = 0, kbar_count = 0;
  for (std::size_t i = 1; i + 1 < trajectory.size(); ++i) {
    const auto& prev = trajectory[i - 1].metrics;
    const auto& m = trajectory[i].metrics;
    const auto& next = trajectory[i + 1].metrics;
    const double span = trajectory[i + 1].time - trajectory[i - 1].time;
    if (!(span > 0.0)) throw InvalidInput("trajectory times must increase");
    ++r.records;

    const double dA = (next.signed_area - prev.signed_area) / span;
    const double area = std::abs(dA) / area0;
    r.area_max = std::max(r.area_max, area);
    r.area_mean += area;

    const double L = m.length;
    const double ks2 = m.ks_norm_sq;
    if (ks2 > noise_floor) {
      const double dL = (next.length - prev.length) / span;
      const double rel = std::abs(dL + ks2) / ks2;
      r.length_max = std::max(r.length_max, rel);
      r.length_mean += rel;
      ++length_count;
    }

    const double kbar_rate = kTwoPi * m.winding_number / (L * L) * ks2;
    if (m.winding_number != 0 && std::abs(kbar_rate) > noise_floor) {
      const double dkbar = (next.average_curvature - prev.average_curvature) / span;
      const double rel = std::abs(dkbar - kbar_rate) / std::abs(kbar_rate);
      r.kbar_max = std::max(r.kbar_max, rel);
      r.kbar_mean += rel;
      ++kbar_count;
    }

    const double kbar = m.average_curvature;
    const double terms[] = {
        (next.osc_energy - prev.osc_energy) / span,
        m.osc_energy * ks2 / L,
        2.0 * L * m.kss_norm_sq,
        -3.0 * L * m.osc_ks2,
        -6.0 * kbar * L * m.dev_ks2,
        -2.0 * kbar * kbar * L * ks2,
    };
    double balance = 0.0, scale = 0.0;
    for (double t : terms) {
      balance += t;
      scale += std::abs(t);
    }
    if (scale <= noise_floor) {
      ++r.skipped;
      continue;
    }
    const double rel = std::abs(balance) / scale;
    r.kosc_max = std::max(r.kosc_max, rel);
    r.kosc_mean += rel;
    ++kosc_count;
  }
  r.area_mean /= static_cast<double>(r.records);
  if (length_count) r.length_mean /= static_cast<double>(length_count);
  if (kbar_count) r.kbar_mean /= static_cast<double>(kbar_count);
  if (kosc_count) r.kosc_mean /= static_cast<double>(kosc_count);
  return r;
}

}  // namespace cdflow
