#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdflow/curve.hpp"
#include "cdflow/flow.hpp"
#include "cdflow/report.hpp"
#include "cdflow/vec2.hpp"

namespace cdflow {

/// Relative rounding guard for exact inequalities.
inline constexpr double kInequalityGuard = 1e-12;

/// K* = (2π + 12π² − 4π√(3π)√(1+3π))/3.
double kstar();

/// (4π + 24π²ω² − 8π√(3π)√(ω²+3πω⁴))/3; equals 2·kstar() at |ω| = 1.
/// Throws InvalidInput for ω = 0.
double general_smallness_threshold(int omega);

struct HypothesisReport {
  double kosc0 = 0.0;
  /// Empty when the signed area vanishes.
  std::optional<double> iso0;
  double kstar = 0.0;
  int winding = 0;
  double area0 = 0.0;
  bool kosc_ok = false;
  bool iso_ok = false;
  bool winding_ok = false;
  bool area_ok = false;
  bool admissible = false;
};

HypothesisReport check_hypotheses(const SampledCurve& curve);
HypothesisReport check_hypotheses(const CurveMetrics& m);
Report to_report(const HypothesisReport& h);

/// (L0/2π)⁴ − (A0/π)². Throws InvalidInput for L0 <= 0.
double waiting_time_bound(double L0, double A0);

/// measure <= bound, with the bound widened by kInequalityGuard·(L0/2π)⁴ so
/// the circle's equality case survives rounding in L and A.
bool waiting_time_holds(double measure, double L0, double A0);

/// Trapezoid measure of the times with min k <= 0.
double positivity_waiting_measure(const std::vector<TrajectoryRecord>& trajectory);

struct L1EnergyReport {
  double integral = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// ∫ K_osc dt by trapezoid against L(0)⁴/16π² (strict).
L1EnergyReport l1_energy_check(const std::vector<TrajectoryRecord>& trajectory);
Report to_report(const L1EnergyReport& r);

struct SmallnessReport {
  double threshold = 0.0;  // 2K*
  double max_kosc = 0.0;
  bool kosc_bounded = false;
  /// Largest single-record increase of K_osc + 8π² log L.
  double max_increase = 0.0;
  double slack = 0.0;
  bool monotone = false;
  /// Index of the first record that violates either check.
  std::optional<std::size_t> first_violation;
  bool holds = false;
};

/// Slack per record for the monotone quantity, relative to its magnitude.
inline constexpr double kMonotoneSlack = 1e-10;

/// Throws InvalidInput when the initial record is not admissible.
SmallnessReport smallness_propagation_check(const std::vector<TrajectoryRecord>& trajectory);
Report to_report(const SmallnessReport& r);

/// 16m² − 4ω²π². Throws InvalidInput for m < 1.
double multiplicity_bound(int m, int omega);

enum class EmbeddednessVerdict { Certified, Inconclusive };
std::string_view to_string(EmbeddednessVerdict v);

struct EmbeddednessCertificate {
  EmbeddednessVerdict verdict = EmbeddednessVerdict::Inconclusive;
  double kosc = 0.0;
  double threshold = 0.0;  // 64 − 4π²
  int winding = 0;
  std::string reason;
};

EmbeddednessCertificate embeddedness_certificate(const SampledCurve& curve);
EmbeddednessCertificate embeddedness_certificate(const CurveMetrics& m);

struct DensityResult {
  /// Cutoff-extrapolated value of ∫ (k² − k₀²)|γ| ds.
  double value = 0.0;
  /// Raw quadratures with cutoff ε and 2ε.
  double at_cutoff = 0.0;
  double at_double_cutoff = 0.0;
  double cutoff = 0.0;
  /// ∫ k² |γ| ds over the full curve.
  double k2_weighted = 0.0;
  /// round(value / 8).
  int preimages = 0;
};

/// Translates `point` to the origin and integrates the density; samples with
/// |γ| below the cutoff 3·L/n are excluded and the cutoff is extrapolated
/// to zero. Requires a uniform-arclength curve. Throws InvalidInput when the
/// point is farther than 1e-6·L from the trace.
DensityResult density_integral(const SampledCurve& curve, Vec2 point);

/// Elementary symmetric functions Π_0..Π_n of l, divided by C(n, i).
std::vector<double> symmetric_means(const std::vector<double>& l);

struct InequalityVerdict {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// (lhs − rhs) / max(|lhs|, |rhs|).
  double relative_gap = 0.0;
};


/// Π_{i+1}²·C(n,i)·C(n,i+2) ≥ Π_i·Π_{i+2}·C(n,i+1)², i.e. E_{i+1}² ≥ E_i E_{i+2}
/// on the symmetric means. Throws InvalidInput for non-positive entries or i
/// outside [0, n−2].
InequalityVerdict newton_ratio_check(const std::vector<double>& l, std::size_t i);

/// Σ 1/l_i ≥ n² / Σ l_i.
InequalityVerdict harmonic_sum_bound_check(const std::vector<double>& l);

struct WirtingerReport {
  double l2 = 0.0;        // ∫ f²
  double l2_deriv = 0.0;  // ∫ f_x²
  double sup_sq = 0.0;    // max |f|²
  double l2_bound = 0.0;  // P²/4π² ∫ f_x²
  double sup_bound = 0.0; // P/2π ∫ f_x²
  bool l2_holds = false;
  bool sup_holds = false;
  /// 1 − ∫f² / bound; zero in the equality case.
  double equality_gap = 0.0;
};

/// Samples are read as one period of a trigonometric interpolant; the mean
/// is subtracted first. Throws InvalidInput for fewer than 16 samples or P <= 0.
WirtingerReport wirtinger_check(std::vector<double> samples, double period);
Report to_report(const WirtingerReport& r);

enum class DecayQuantity { Kosc, Ks2, Kss2 };
std::string_view to_string(DecayQuantity q);
DecayQuantity decay_quantity_from_string(std::string_view s);

struct DecayFit {
  DecayQuantity quantity = DecayQuantity::Kosc;
  double t0 = 0.0;
  double t1 = 0.0;
  double rate = 0.0;
  double amplitude = 0.0;
  double rms_log_residual = 0.0;
  std::size_t samples = 0;
  /// 4π⁴/L(0)⁴, informational for kss2.
  double rate_floor = 0.0;
  /// rate ≥ 0.9·rate_floor; advisory only.
  bool meets_floor = false;
};

/// Values below this are rounding noise; a window entirely below it has
/// nothing to fit.
inline constexpr double kDecayNoiseFloor = 1e-14;

/// Least-squares fit of log(quantity) = log(amplitude) − rate·t over records
/// with t in [t0, t1]. Throws InvalidInput for a window shorter than 10·dt,
/// fewer than 3 records or a non-positive value in the window.
DecayFit decay_fit(const std::vector<TrajectoryRecord>& trajectory, DecayQuantity quantity,
                   double t0, double t1);
Report to_report(const DecayFit& f);

}  // namespace cdflow
