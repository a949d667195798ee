#include "cdflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "cdflow/errors.hpp"

namespace cdflow::spectral {

Transform::Transform(std::size_t n) : n_(n) {
  if (n < 2) throw InvalidInput("spectral transform needs at least 2 samples");
  real_ = fftw_alloc_real(n);
  auto* spec = fftw_alloc_complex(n / 2 + 1);
  spec_ = spec;
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_r2c_1d(len, real_, spec, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(len, spec, real_, FFTW_ESTIMATE);
}

Transform::~Transform() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(spec_);
}

void Transform::forward(std::span<const double> in, std::span<Complex> out) {
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* spec = static_cast<const fftw_complex*>(spec_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t m = 0; m < modes(); ++m) out[m] = Complex(spec[m][0], spec[m][1]) * scale;
}

void Transform::inverse(std::span<const Complex> in, std::span<double> out) {
  auto* spec = static_cast<fftw_complex*>(spec_);
  for (std::size_t m = 0; m < modes(); ++m) {
    spec[m][0] = in[m].real();
    spec[m][1] = in[m].imag();
  }
  // c2r treats the 0 and Nyquist imaginary parts as zero.
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  std::copy(real_, real_ + n_, out.begin());
}

Transform& transform_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Transform>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Transform>(n);
  return *slot;
}

std::vector<Complex> coefficients(std::span<const double> f) {
  auto& t = transform_for(f.size());
  std::vector<Complex> c(t.modes());
  t.forward(f, c);
  return c;
}

std::vector<double> synthesize(std::span<const Complex> c, std::size_t n) {
  auto& t = transform_for(n);
  std::vector<double> f(n);
  t.inverse(c, f);
  return f;
}

Complex derivative_multiplier(std::size_t m, std::size_t n, int order) {
  if (order == 0) return 1.0;
  if (n % 2 == 0 && m == n / 2 && order % 2 == 1) return 0.0;
  const Complex im(0.0, static_cast<double>(m));
  Complex r = 1.0;
  for (int p = 0; p < order; ++p) r *= im;
  return r;
}

std::vector<double> derivative(std::span<const double> f, int order) {
  auto c = coefficients(f);
  for (std::size_t m = 0; m < c.size(); ++m) c[m] *= derivative_multiplier(m, f.size(), order);
  return synthesize(c, f.size());
}

std::vector<double> periodic_antiderivative(std::span<const double> f) {
  const std::size_t n = f.size();
  auto c = coefficients(f);
  c[0] = 0.0;
  for (std::size_t m = 1; m < c.size(); ++m) {
    if (n % 2 == 0 && m == n / 2) {
      // cos(nu/2) integrates to a sine that vanishes on the grid.
      c[m] = 0.0;
    } else {
      c[m] /= Complex(0.0, static_cast<double>(m));
    }
  }
  return synthesize(c, n);
}

std::vector<double> resample_grid(std::span<const double> f, std::size_t m) {
  const std::size_t n = f.size();
  auto c = coefficients(f);
  std::vector<Complex> d(m / 2 + 1, Complex(0.0));
  const std::size_t shared = std::min(c.size(), d.size());
  for (std::size_t k = 0; k < shared; ++k) d[k] = c[k];
  // Nyquist of the source splits into two conjugate modes on a finer grid.
  if (n % 2 == 0 && m > n) d[n / 2] *= 0.5;
  if (m % 2 == 0 && m < n) d[m / 2] = Complex(2.0 * d[m / 2].real(), 0.0);
  return synthesize(d, m);
}

TrigSeries::TrigSeries(std::span<const double> samples)
    : n_(samples.size()), c_(coefficients(samples)) {}

double TrigSeries::eval(double u, int order) const {
  const Complex step = std::polar(1.0, u);
  Complex z = step;
  double sum = order == 0 ? c_[0].real() : 0.0;
  const bool even = n_ % 2 == 0;
  const std::size_t top = even ? n_ / 2 : c_.size();
  for (std::size_t m = 1; m < top; ++m) {
    sum += 2.0 * (c_[m] * derivative_multiplier(m, n_, order) * z).real();
    z *= step;
  }
  if (even) {
    // Real cosine term: d^p/du^p of c cos(Mu).
    const double big = static_cast<double>(n_ / 2);
    const double phase = big * u + order * std::numbers::pi / 2.0;
    sum += c_[n_ / 2].real() * std::pow(big, order) * std::cos(phase);
  }
  return sum;
}

}  // namespace cdflow::spectral
