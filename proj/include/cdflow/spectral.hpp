#pragma once

// Periodic spectral toolkit on the uniform grid u_j = 2πj/n of [0, 2π).
//
// A sample vector f_0..f_{n-1} is identified with its trigonometric
// interpolant
//
//   f(u) = c_0 + 2 Σ_{0<m<n/2} Re(c_m e^{imu}) + [n even] c_{n/2} cos(nu/2),
//
// so derivatives of odd order drop the Nyquist term (its derivative vanishes
// at every node) and derivatives of even order keep it.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cdflow::spectral {

using Complex = std::complex<double>;

/// Length-n real FFT with FFTW plans owned by the object. Not thread-safe;
/// use transform_for() to get a per-thread cached instance.
class Transform {
 public:
  explicit Transform(std::size_t n);
  ~Transform();
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;

  std::size_t size() const { return n_; }
  std::size_t modes() const { return n_ / 2 + 1; }

  /// Normalized coefficients c_m = (1/n) Σ_j f_j e^{-imu_j}, m = 0..n/2.
  void forward(std::span<const double> in, std::span<Complex> out);
  /// Node values of the interpolant with coefficients c_0..c_{n/2}.
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  std::size_t n_;
  double* real_ = nullptr;
  void* spec_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

Transform& transform_for(std::size_t n);

std::vector<Complex> coefficients(std::span<const double> f);
std::vector<double> synthesize(std::span<const Complex> c, std::size_t n);

/// Node values of d^order f / du^order.
std::vector<double> derivative(std::span<const double> f, int order = 1);

/// Periodic antiderivative: g with g' = f - mean(f) and zero mean.
std::vector<double> periodic_antiderivative(std::span<const double> f);

/// Interpolant re-sampled on a grid of `m` points (zero-padding or
/// truncation in frequency).
std::vector<double> resample_grid(std::span<const double> f, std::size_t m);

/// Trigonometric interpolant as an evaluable function of u.
class TrigSeries {
 public:
  explicit TrigSeries(std::span<const double> samples);

  std::size_t size() const { return n_; }
  double operator()(double u) const { return eval(u, 0); }
  /// d^order/du^order of the interpolant at u.
  double eval(double u, int order) const;

 private:
  std::size_t n_;
  std::vector<Complex> c_;
};

/// Multiplier (i m)^order applied to mode m of a length-n grid, following the
/// Nyquist convention described above.
Complex derivative_multiplier(std::size_t m, std::size_t n, int order);

}  // namespace cdflow::spectral
