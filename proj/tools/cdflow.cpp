// cdflow: curve diffusion flow runs, curve analysis and verification suites.
//
//   cdflow simulate <manifest>
//   cdflow analyze <curve.csv> [--out report.json]
//   cdflow verify <suite> [--seed k] [--out report.json]
//
// Exit codes: 0 ok, 1 usage or input error, 2 blow-up during simulate.
// Relative output paths resolve against $CDFLOW_OUTPUT_ROOT when it is set.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cdflow/analysis.hpp"
#include "cdflow/curve_io.hpp"
#include "cdflow/errors.hpp"
#include "cdflow/flow.hpp"
#include "cdflow/intersections.hpp"
#include "cdflow/manifest.hpp"
#include "cdflow/metrics.hpp"
#include "cdflow/resample.hpp"
#include "cdflow/suites.hpp"
#include "cdflow/trajectory_io.hpp"

namespace fs = std::filesystem;
using namespace cdflow;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBlowUp = 2;

fs::path output_root() {
  if (const char* env = std::getenv("CDFLOW_OUTPUT_ROOT"); env && *env) return env;
  return fs::current_path();
}

fs::path resolve(const fs::path& p) { return p.is_absolute() ? p : output_root() / p; }

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

bool wants(const OutputSpec& out, const std::string& name) {
  for (const auto& r : out.reports) {
    if (r == "all" || r == name) return true;
  }
  return false;
}

Report metrics_report(const CurveMetrics& m) {
  Report r;
  r.values = {{"length", m.length},
              {"signed_area", m.signed_area},
              {"isoperimetric_ratio", m.isoperimetric_ratio.value_or(NAN)},
              {"winding_number", m.winding_number},
              {"average_curvature", m.average_curvature},
              {"osc_energy", m.osc_energy},
              {"ks_norm_sq", m.ks_norm_sq},
              {"kss_norm_sq", m.kss_norm_sq},
              {"min_curvature", m.min_curvature}};
  return r;
}

int simulate(const fs::path& manifest_path) {
  const RunManifest manifest = read_manifest(manifest_path);
  const fs::path dir = resolve(manifest.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + dir.string() + ": " + ec.message());
  write_file_atomic(dir / "manifest.txt", format_manifest(manifest));

  const SampledCurve initial = generate_uniform(manifest.shape, manifest.flow.n);
  const auto every = std::max<std::int64_t>(
      1, std::llround(manifest.output.snapshot_interval / manifest.flow.dt));
  std::vector<std::pair<std::int64_t, SampledCurve>> snapshots;
  auto observer = [&](const FlowState& s, const TrajectoryRecord&) {
    if (s.step_index % every == 0) snapshots.emplace_back(s.step_index, s.curve);
  };
  const RunResult result = run(initial, manifest.flow, observer);
  const auto& final_state = result.final_state;
  if (snapshots.empty() || snapshots.back().first != final_state.step_index) {
    snapshots.emplace_back(final_state.step_index, final_state.curve);
  }

  for (const auto& [step_index, curve] : snapshots) {
    std::ostringstream csv;
    write_curve_csv(csv, curve);
    write_file_atomic(dir / ("snapshot_" + std::to_string(step_index) + ".csv"), csv.str());
  }
  if (manifest.output.svg) {
    std::vector<SampledCurve> curves;
    for (const auto& s : snapshots) curves.push_back(s.second);
    const Viewport view = common_viewport(curves);
    for (const auto& [step_index, curve] : snapshots) {
      const std::string caption = "step " + std::to_string(step_index);
      write_file_atomic(dir / ("frame_" + std::to_string(step_index) + ".svg"), svg_frame(curve, view, caption));
    }
  }
  std::ostringstream jsonl;
  write_trajectory_jsonl(jsonl, result.trajectory);
  write_file_atomic(dir / "trajectory.jsonl", jsonl.str());

  const auto& traj = result.trajectory;
  const auto& first = traj.front().metrics;
  Report report;
  nlohmann::json skipped = nlohmann::json::object();
  const auto hyp = check_hypotheses(first);
  if (wants(manifest.output, "hypotheses")) report.merge("hypotheses", to_report(hyp));
  if (wants(manifest.output, "l1-energy")) report.merge("l1_energy", to_report(l1_energy_check(traj)));
  if (wants(manifest.output, "waiting-time")) {
    Report w;
    const double measured = positivity_waiting_measure(traj);
    const double bound = waiting_time_bound(first.length, first.signed_area);
    w.values = {{"measure", measured}, {"bound", bound}};
    if (hyp.admissible) {
      w.verdicts["measure_below_bound"] = waiting_time_holds(measured, first.length, first.signed_area);
    } else {
      skipped["waiting_time.verdict"] = "initial curve is not admissible";
    }
    report.merge("waiting_time", w);
  }
  if (wants(manifest.output, "smallness")) {
    if (hyp.admissible) {
      report.merge("smallness", to_report(smallness_propagation_check(traj)));
    } else {
      skipped["smallness"] = "initial curve is not admissible";
    }
  }
  if (wants(manifest.output, "identities")) {
    if (traj.size() >= 3) {
      const auto res = identity_residuals(traj);
      Report r;
      r.values = {{"area_max", res.area_max},     {"area_mean", res.area_mean},
                  {"length_max", res.length_max}, {"length_mean", res.length_mean},
                  {"kbar_max", res.kbar_max},     {"kbar_mean", res.kbar_mean},
                  {"kosc_max", res.kosc_max},     {"kosc_mean", res.kosc_mean},
                  {"records", static_cast<double>(res.records)},
                  {"skipped", static_cast<double>(res.skipped)}};
      report.merge("identities", r);
    } else {
      skipped["identities"] = "fewer than 3 records";
    }
  }
  if (wants(manifest.output, "decay")) {
    try {
      report.merge("decay", to_report(decay_fit(traj, DecayQuantity::Kosc, manifest.output.decay_t0,
                                                manifest.output.decay_t1)));
    } catch (const InvalidInput& e) {
      skipped["decay"] = e.what();
    }
  }
  if (wants(manifest.output, "radius")) {
    if (result.termination != Termination::BlowUp && first.signed_area > 0.0) {
      const double radius = std::sqrt(first.signed_area / std::numbers::pi);
      const Vec2 c = area_centroid(final_state.curve);
      const double dev = max_radial_deviation(final_state.curve, c, radius) / radius;
      Report r;
      r.values = {{"radius", radius}, {"centroid_x", c.x}, {"centroid_y", c.y}, {"max_relative_deviation", dev}};
      r.verdicts["within_1e-3"] = dev <= 1e-3;
      report.merge("radius", r);
    } else {
      skipped["radius"] = "run blew up or the initial area is not positive";
    }
  }
  if (wants(manifest.output, "embedding")) {
    Report r;
    bool embedded_all = true, agree = true;
    for (const auto& [step_index, curve] : snapshots) {
      const bool embedded = is_embedded(curve);
      embedded_all = embedded_all && embedded;
      if (embeddedness_certificate(curve).verdict == EmbeddednessVerdict::Certified && !embedded) agree = false;
    }
    r.values["snapshots"] = static_cast<double>(snapshots.size());
    r.verdicts["all_snapshots_embedded"] = embedded_all;
    r.verdicts["certificate_consistent"] = agree;
    report.merge("embedding", r);
  }

  auto json = report.to_json();
  json["skipped"] = skipped;
  json["termination"] = std::string(to_string(result.termination));
  json["detail"] = result.detail;
  json["final_time"] = final_state.time;
  json["steps"] = final_state.step_index;
  write_file_atomic(dir / "report.json", dump(json));

  std::cout << "termination  " << to_string(result.termination);
  if (!result.detail.empty()) std::cout << " (" << result.detail << ")";
  std::cout << "\nfinal time   " << format_double(final_state.time) << "\nsteps        " << final_state.step_index
            << "\noutput       " << dir.string() << "\n\n"
            << report.table();
  for (const auto& [name, why] : skipped.items()) std::cout << name << "  skipped: " << why.get<std::string>() << '\n';
  return result.termination == Termination::BlowUp ? kBlowUp : kOk;
}

int analyze(const fs::path& curve_path, const std::string& out) {
  const SampledCurve raw = read_curve_csv(curve_path);
  const SampledCurve curve = raw.is_uniform_arclength() ? raw : resample_uniform(raw);
  const auto m = metrics(curve);
  const auto crossings = find_crossings(curve);
  const auto cert = embeddedness_certificate(m);

  Report report;
  report.merge("metrics", metrics_report(m));
  report.merge("hypotheses", to_report(check_hypotheses(m)));
  Report mult;
  const double bound = multiplicity_bound(crossings.multiplicity, m.winding_number);
  mult.values = {{"multiplicity", crossings.multiplicity}, {"bound", bound}, {"margin", m.osc_energy - bound}};
  mult.verdicts["kosc_above_bound"] = m.osc_energy >= bound;
  report.merge("multiplicity", mult);
  Report emb;
  emb.verdicts["embedded"] = crossings.crossings.empty();
  emb.verdicts["certified"] = cert.verdict == EmbeddednessVerdict::Certified;
  emb.values["certificate_threshold"] = cert.threshold;
  report.merge("embedding", emb);

  auto json = report.to_json();
  json["crossings"] = to_json(crossings);
  json["certificate"] = {{"verdict", std::string(to_string(cert.verdict))}, {"reason", cert.reason}};
  const fs::path target = out.empty() ? resolve(curve_path.stem().string() + ".report.json") : resolve(out);
  write_file_atomic(target, dump(json));
  std::cout << report.table() << "certificate  " << to_string(cert.verdict) << " (" << cert.reason << ")\n"
            << "report       " << target.string() << '\n';
  return kOk;
}

int verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
  const auto& names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    std::cerr << "unknown suite '" << suite << "'; available: all";
    for (const auto& n : names) std::cerr << ", " << n;
    std::cerr << '\n';
    return kUsage;
  }
  const Report report = run_suite(suite, seed);
  std::cout << report.table();
  if (!out.empty()) write_file_atomic(resolve(out), dump(report.to_json()));
  const bool ok = report.all_pass();
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curve diffusion flow: simulate, analyze, verify"};
  app.require_subcommand(1);

  std::string manifest;
  auto* sim = app.add_subcommand("simulate", "Run the flow described by a manifest");
  sim->add_option("manifest", manifest, "key = value manifest file")->required();

  std::string curve_file, analyze_out;
  auto* ana = app.add_subcommand("analyze", "Report metrics, hypotheses and crossings of a curve");
  ana->add_option("curve", curve_file, "CSV with header x,y")->required();
  ana->add_option("--out", analyze_out, "JSON report path");

  std::string suite, verify_out;
  std::uint64_t seed = 7;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "suite name or 'all'")->required();
  ver->add_option("--seed", seed, "seed for randomized suites");
  ver->add_option("--out", verify_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return simulate(manifest);
    if (*ana) return analyze(curve_file, analyze_out);
    if (*ver) return verify(suite, seed, verify_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
