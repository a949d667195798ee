#include "cdflow/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cdflow/analysis.hpp"
#include "cdflow/errors.hpp"
#include "cdflow/flow.hpp"
#include "cdflow/intersections.hpp"
#include "cdflow/metrics.hpp"

namespace cdflow {

namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

Report wirtinger_suite(std::uint64_t seed) {
  Rng rng(seed);
  Report r;
  int violations = 0;
  const int cases = 1000;
  for (int c = 0; c < cases; ++c) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 16, 128));
    const double period = uniform(rng, 0.1, 10.0);
    const int top = std::min(8, static_cast<int>(n / 2) - 1);
    std::vector<double> a(top + 1), b(top + 1);
    for (int m = 1; m <= top; ++m) {
      a[m] = uniform(rng, -1.0, 1.0);
      b[m] = uniform(rng, -1.0, 1.0);
    }
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
      for (int m = 1; m <= top; ++m) f[j] += a[m] * std::cos(m * x) + b[m] * std::sin(m * x);
    }
    const auto w = wirtinger_check(f, period);
    if (!w.l2_holds || !w.sup_holds) ++violations;
  }
  r.values["cases"] = cases;
  r.values["violations"] = violations;
  r.verdicts["random_trig_polynomials"] = violations == 0;

  const double period = 3.7;
  std::vector<double> first(64), second(64);
  for (std::size_t j = 0; j < 64; ++j) {
    const double x = period * static_cast<double>(j) / 64.0;
    first[j] = 2.5 * std::sin(2.0 * kPi * x / period + 0.3);
    second[j] = std::sin(4.0 * kPi * x / period);
  }
  const auto eq = wirtinger_check(first, period);
  r.values["equality_gap"] = eq.equality_gap;
  r.verdicts["equality_case"] = std::abs(eq.equality_gap) <= 1e-6;
  const auto h2 = wirtinger_check(second, period);
  r.values["second_harmonic_ratio"] = h2.l2 / h2.l2_bound;
  r.verdicts["second_harmonic_quarter"] = std::abs(h2.l2 / h2.l2_bound - 0.25) <= 1e-9;
  return r;
}

Report newton_suite(std::uint64_t seed) {
  Rng rng(seed);
  Report r;
  int newton_violations = 0, harmonic_violations = 0;
  long checks = 0;
  const int cases = 1000;
  for (int c = 0; c < cases; ++c) {
    const int n = uniform_int(rng, 2, 12);
    std::vector<double> l(n);
    for (double& x : l) x = std::exp(uniform(rng, std::log(1e-2), std::log(1e2)));
    for (int i = 0; i + 2 <= n; ++i) {
      ++checks;
      if (!newton_ratio_check(l, static_cast<std::size_t>(i)).holds) ++newton_violations;
    }
    if (!harmonic_sum_bound_check(l).holds) ++harmonic_violations;
  }
  r.values["cases"] = cases;
  r.values["newton_checks"] = static_cast<double>(checks);
  r.values["newton_violations"] = newton_violations;
  r.values["harmonic_violations"] = harmonic_violations;
  r.verdicts["newton_random"] = newton_violations == 0;
  r.verdicts["harmonic_random"] = harmonic_violations == 0;
  const auto equal = newton_ratio_check({1.0, 1.0, 1.0, 1.0}, 1);
  r.values["equal_entries_gap"] = equal.relative_gap;
  r.verdicts["equal_entries_equality"] = std::abs(equal.relative_gap) <= kInequalityGuard;
  return r;
}

Report multiplicity_suite(std::uint64_t seed) {
  Report r;
  const auto corpus = random_corpus(seed, 500);
  int violations = 0;
  int max_m = 1;
  double min_margin = INFINITY;
  for (const auto& spec : corpus) {
    const auto curve = generate_uniform(spec, 256);
    const auto m = metrics(curve);
    const int mult = find_crossings(curve).multiplicity;
    max_m = std::max(max_m, mult);
    const double margin = m.osc_energy - multiplicity_bound(mult, m.winding_number);
    min_margin = std::min(min_margin, margin);
    if (margin < 0.0) ++violations;
  }
  r.values["curves"] = static_cast<double>(corpus.size());
  r.values["violations"] = violations;
  r.values["max_multiplicity"] = max_m;
  r.values["min_margin"] = min_margin;
  r.verdicts["corpus_bound"] = violations == 0;

  const auto lemniscate = generate_uniform(ShapeSpec::lemniscate(1.0), 256);
  const auto lm = metrics(lemniscate);
  const int lmult = find_crossings(lemniscate).multiplicity;
  const double bound = multiplicity_bound(lmult, lm.winding_number);
  r.values["lemniscate_kosc"] = lm.osc_energy;
  r.values["lemniscate_multiplicity"] = lmult;
  r.values["lemniscate_margin"] = lm.osc_energy - bound;
  r.verdicts["lemniscate_above_64"] = lmult == 2 && bound == 64.0 && lm.osc_energy - bound > 0.0;
  return r;
}

Report identities_suite() {
  Report r;
  {
    FlowConfig cfg;
    cfg.stop.max_time = 0.05;
    const auto run_result = run(generate_uniform(ShapeSpec::circle(1.0), 256), cfg);
    const auto res = identity_residuals(run_result.trajectory);
    const double worst = std::max({res.area_max, res.length_max, res.kbar_max, res.kosc_max});
    r.values["circle_worst_residual"] = worst;
    r.verdicts["circle_residuals"] = worst <= 1e-8;
  }
  {
    FlowConfig cfg;
    cfg.stop.max_time = 0.5;
    const auto spec = ShapeSpec::fourier(1.0, {{2, 0.01, 0.0}, {3, 0.003, 0.7}});
    const auto run_result = run(generate_uniform(spec, 256), cfg);
    const auto res = identity_residuals(run_result.trajectory);
    r.values["perturbed_kosc_max"] = res.kosc_max;
    r.values["perturbed_kosc_mean"] = res.kosc_mean;
    r.values["perturbed_skipped"] = static_cast<double>(res.skipped);
    r.verdicts["perturbed_kosc_balance"] = res.kosc_max <= 0.05;
  }
  {
    FlowConfig cfg;
    cfg.stop.max_time = 0.1;
    const auto run_result = run(generate_uniform(ShapeSpec::ellipse(1.5, 2.0 / 3.0), 256), cfg);
    const auto res = identity_residuals(run_result.trajectory);
    r.values["ellipse_area_rate_max"] = res.area_max;
    r.verdicts["ellipse_area_rate"] = res.area_max <= 1e-6;
  }
  return r;
}

Report density_suite() {
  Report r;
  const auto circle = generate_uniform(ShapeSpec::circle(1.0).at({1.0, 0.0}), 1024);
  const auto dc = density_integral(circle, {0.0, 0.0});
  r.values["circle_density"] = dc.value;
  r.values["circle_k2_weighted"] = dc.k2_weighted;
  r.verdicts["circle_eight"] = std::abs(dc.value - 8.0) <= 1e-2;
  r.verdicts["circle_k2_at_least_8"] = dc.k2_weighted >= 8.0 - 1e-2;
  const auto lemniscate = generate_uniform(ShapeSpec::lemniscate(1.0), 1024);
  const auto dl = density_integral(lemniscate, {0.0, 0.0});
  r.values["lemniscate_density"] = dl.value;
  r.verdicts["lemniscate_sixteen"] = std::abs(dl.value - 16.0) <= 0.05 * 16.0;
  return r;
}

Report constants_suite() {
  Report r;
  // 0.0527902416117408268273826111708868927759765354875781315721826
  const double reference = 0.052790241611740826827382611170886892775976535487578;
  const double k = kstar();
  r.values["kstar"] = k;
  r.values["kstar_relative_error"] = std::abs(k - reference) / reference;
  r.verdicts["kstar_matches"] = std::abs(k - reference) <= 1e-12 * reference;
  r.verdicts["two_kstar_below_0.106"] = 2.0 * k <= 0.106;
  const double g1 = general_smallness_threshold(1);
  r.verdicts["threshold_omega_1"] = std::abs(g1 - 2.0 * k) <= 1e-12 * 2.0 * k;
  r.verdicts["threshold_even_in_omega"] = general_smallness_threshold(-1) == g1;
  r.values["iso_threshold"] = std::exp(k / (8.0 * kPi * kPi));
  r.values["embedding_threshold"] = multiplicity_bound(2, 1);
  r.verdicts["embedding_threshold"] = std::abs(multiplicity_bound(2, 1) - (64.0 - 4.0 * kPi * kPi)) <= 1e-12;
  return r;
}

}  // namespace

std::vector<ShapeSpec> random_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<ShapeSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double pick = uniform(rng, 0.0, 1.0);
    ShapeSpec s;
    if (pick < 0.4) {
      std::vector<FourierMode> modes;
      const int terms = uniform_int(rng, 1, 3);
      double budget = uniform(rng, 0.01, 0.5);
      for (int t = 0; t < terms; ++t) {
        const int freq = uniform_int(rng, 2, 6);
        // Keeps the radial graph well resolved at 256 samples.
        const double amp = std::min(budget / terms, 1.5 / (freq * freq));
        modes.push_back({freq, amp, uniform(rng, 0.0, 2.0 * kPi)});
      }
      s = ShapeSpec::fourier(1.0, std::move(modes));
    } else if (pick < 0.7) {
      const bool loop = uniform(rng, 0.0, 1.0) < 0.5;
      const double b = loop ? uniform(rng, 0.2, 0.6) : uniform(rng, 1.6, 3.0);
      s = ShapeSpec::limacon(1.0, b);
    } else if (pick < 0.9) {
      s = ShapeSpec::lemniscate(1.0);
    } else {
      s = ShapeSpec::ellipse(1.0, uniform(rng, 0.4, 1.0));
    }
    const double size = uniform(rng, 0.5, 2.0);
    s.radius *= size;
    s.semi_a *= size;
    s.semi_b *= size;
    s.limacon_a *= size;
    s.limacon_b *= size;
    s.scale *= size;
    s.rotation = uniform(rng, 0.0, 2.0 * kPi);
    s.center = {uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
    out.push_back(std::move(s));
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wirtinger",       "newton",  "multiplicity-corpus",
                                              "flow-identities", "density", "constants"};
  return names;
}

Report run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "wirtinger") return wirtinger_suite(seed);
  if (name == "newton") return newton_suite(seed);
  if (name == "multiplicity-corpus") return multiplicity_suite(seed);
  if (name == "flow-identities") return identities_suite();
  if (name == "density") return density_suite();
  if (name == "constants") return constants_suite();
  if (name == "all") {
    Report all;
    for (const auto& n : suite_names()) all.merge(n, run_suite(n, seed));
    return all;
  }
  throw InvalidInput("unknown suite '" + std::string(name) + "'");
}

}  // namespace cdflow
