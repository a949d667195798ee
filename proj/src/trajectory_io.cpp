#include "cdflow/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "cdflow/curve_io.hpp"
#include "cdflow/errors.hpp"

namespace cdflow {

namespace {

std::string number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

double field(const nlohmann::json& j, const char* name, std::size_t line) {
  if (!j.contains(name)) throw InvalidInput("trajectory line " + std::to_string(line) + ": missing '" + name + "'");
  const auto& v = j.at(name);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw InvalidInput("trajectory line " + std::to_string(line) + ": '" + name + "' is not a number");
  return v.get<double>();
}

}  // namespace

std::string trajectory_line(const TrajectoryRecord& r) {
  const auto& m = r.metrics;
  std::string s = "{\"t\":" + number(r.time);
  s += ",\"L\":" + number(m.length);
  s += ",\"A\":" + number(m.signed_area);
  s += ",\"I\":" + (m.isoperimetric_ratio ? number(*m.isoperimetric_ratio) : std::string("null"));
  s += ",\"omega\":" + std::to_string(m.winding_number);
  s += ",\"kbar\":" + number(m.average_curvature);
  s += ",\"kosc\":" + number(m.osc_energy);
  s += ",\"ks2\":" + number(m.ks_norm_sq);
  s += ",\"kss2\":" + number(m.kss_norm_sq);
  s += ",\"kmin\":" + number(m.min_curvature);
  s += ",\"dL_dt\":" + number(r.dL_dt);
  s += ",\"dA_dt\":" + number(r.dA_dt);
  s += ",\"residual\":" + number(r.residual);
  s += "}";
  return s;
}

void write_trajectory_jsonl(std::ostream& out, const std::vector<TrajectoryRecord>& trajectory) {
  for (const auto& r : trajectory) out << trajectory_line(r) << '\n';
}

std::vector<TrajectoryRecord> read_trajectory_jsonl(std::istream& in) {
  std::vector<TrajectoryRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput("trajectory line " + std::to_string(line_no) + ": " + e.what());
    }
    TrajectoryRecord r;
    r.time = field(j, "t", line_no);
    r.metrics.length = field(j, "L", line_no);
    r.metrics.signed_area = field(j, "A", line_no);
    const double iso = field(j, "I", line_no);
    if (!std::isnan(iso)) r.metrics.isoperimetric_ratio = iso;
    r.metrics.winding_number = static_cast<int>(field(j, "omega", line_no));
    r.metrics.average_curvature = field(j, "kbar", line_no);
    r.metrics.osc_energy = field(j, "kosc", line_no);
    r.metrics.ks_norm_sq = field(j, "ks2", line_no);
    r.metrics.kss_norm_sq = field(j, "kss2", line_no);
    r.metrics.min_curvature = field(j, "kmin", line_no);
    r.dL_dt = field(j, "dL_dt", line_no);
    r.dA_dt = field(j, "dA_dt", line_no);
    r.residual = field(j, "residual", line_no);
    r.step = static_cast<std::int64_t>(out.size());
    out.push_back(r);
  }
  return out;
}

Viewport common_viewport(const std::vector<SampledCurve>& curves) {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const auto& c : curves) {
    for (const Vec2 p : c.vertices()) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
  }
  if (!(x1 >= x0)) return {};
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double half = 0.55 * std::max({x1 - x0, y1 - y0, 1e-12});
  return {cx - half, cy - half, cx + half, cy + half};
}

std::string svg_frame(const SampledCurve& curve, const Viewport& view, const std::string& caption) {
  const double w = view.x1 - view.x0;
  const double h = view.y1 - view.y0;
  std::ostringstream s;
  // y grows downward in SVG; flip so the picture keeps its orientation.
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"" << format_double(view.x0)
    << ' ' << format_double(-view.y1) << ' ' << format_double(w) << ' ' << format_double(h) << "\">\n";
  s << "<rect x=\"" << format_double(view.x0) << "\" y=\"" << format_double(-view.y1) << "\" width=\""
    << format_double(w) << "\" height=\"" << format_double(h) << "\" fill=\"white\"/>\n";
  s << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(w / 400.0) << "\" d=\"";
  for (std::size_t j = 0; j < curve.size(); ++j) {
    s << (j == 0 ? 'M' : 'L') << format_double(curve[j].x) << ',' << format_double(-curve[j].y) << ' ';
  }
  s << "Z\"/>\n";
  if (!caption.empty()) {
    s << "<text x=\"" << format_double(view.x0 + 0.02 * w) << "\" y=\"" << format_double(-view.y1 + 0.05 * h)
      << "\" font-size=\"" << format_double(0.04 * h) << "\">" << caption << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace cdflow
