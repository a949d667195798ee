#pragma once

// Reference computations written independently of the library.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "cdflow/curve.hpp"
#include "cdflow/vec2.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 40) {
  struct Rec {
    static double step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
      }
      return step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return Rec::step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Periodic integrands with high symmetry fool the first Simpson estimate,
/// so the period is split into panels of irrational width first.
inline double periodic_integral(const std::function<double(double)>& f, double period, double tol) {
  const int panels = 37;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += simpson(f, period * i / panels, period * (i + 1) / panels, tol / panels);
  }
  return sum;
}

/// Radial graph r(θ) = r0 (1 + Σ ε cos(mθ + φ)) with analytic derivatives.
struct RadialGraph {
  double r0 = 1.0;
  std::vector<int> m;
  std::vector<double> eps, phase;

  double r(double t) const {
    double s = 1.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += eps[i] * std::cos(m[i] * t + phase[i]);
    return r0 * s;
  }
  double r1(double t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s -= eps[i] * m[i] * std::sin(m[i] * t + phase[i]);
    return r0 * s;
  }
  double r2(double t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s -= eps[i] * m[i] * m[i] * std::cos(m[i] * t + phase[i]);
    return r0 * s;
  }
  double speed(double t) const { return std::hypot(r(t), r1(t)); }
  double curvature(double t) const {
    const double a = r(t), b = r1(t), c = r2(t);
    return (a * a + 2.0 * b * b - a * c) / std::pow(a * a + b * b, 1.5);
  }
  double length() const {
    return periodic_integral([this](double t) { return speed(t); }, 2.0 * kPi, 1e-14);
  }
  double area() const {
    return periodic_integral([this](double t) { return 0.5 * r(t) * r(t); }, 2.0 * kPi, 1e-14);
  }
  double osc_energy() const {
    const double L = length();
    const double kbar = 2.0 * kPi / L;
    return L * periodic_integral([&](double t) {
             const double d = curvature(t) - kbar;
             return d * d * speed(t);
           }, 2.0 * kPi, 1e-14);
  }
};

inline double ellipse_perimeter(double a, double b) {
  return periodic_integral([&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); }, 2.0 * kPi, 1e-14);
}

/// Elementary symmetric functions by enumerating every subset.
inline std::vector<double> symmetric_by_subsets(const std::vector<double>& l) {
  const std::size_t n = l.size();
  std::vector<double> e(n + 1, 0.0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double p = 1.0;
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        p *= l[i];
        ++bits;
      }
    }
    e[bits] += p;
  }
  return e;
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

/// Largest number of distinct trace passes through one point. Every pair of
/// non-adjacent segments is intersected by Cramer's rule; at each proper
/// intersection the segments within eps are collected, and hit segments that
/// are consecutive along the curve count as one pass.
inline int brute_multiplicity(const cdflow::SampledCurve& curve, double eps) {
  const std::size_t n = curve.size();
  int best = 1;
  std::vector<bool> hit(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      const cdflow::Vec2 p = curve[a], r = curve[a + 1] - p;
      const cdflow::Vec2 q = curve[b], s = curve[b + 1] - q;
      const double det = r.x * s.y - r.y * s.x;
      if (det == 0.0) continue;
      const cdflow::Vec2 w = q - p;
      const double t = (w.x * s.y - w.y * s.x) / det;
      const double u = (w.x * r.y - w.y * r.x) / det;
      if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) continue;
      const cdflow::Vec2 x = p + t * r;
      for (std::size_t k = 0; k < n; ++k) hit[k] = cdflow::point_segment_distance(x, curve[k], curve[k + 1]) <= eps;
      int runs = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (hit[k] && !hit[(k + n - 1) % n]) ++runs;
      }
      best = std::max(best, runs);
    }
  }
  return best;
}

}  // namespace oracle
