#include "cdflow/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cdflow/curve_io.hpp"
#include "cdflow/errors.hpp"

namespace cdflow {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (first != last && *first == '+') ++first;
    if (text == "inf" || text == "+inf") return std::numeric_limits<T>::infinity();
  }
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw InvalidInput("manifest key '" + key + "': cannot parse '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw InvalidInput("manifest key '" + key + "': expected true or false");
}

std::string format_modes(const std::vector<FourierMode>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(modes[i].frequency) + ":" + format_double(modes[i].amplitude) + ":" +
           format_double(modes[i].phase);
  }
  return out;
}

std::vector<FourierMode> parse_modes(const std::string& text) {
  std::vector<FourierMode> modes;
  if (text.empty()) return modes;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw InvalidInput("manifest key 'modes': expected m:eps:phase, got '" + item + "'");
    modes.push_back({parse_value<int>("modes", parts[0]), parse_value<double>("modes", parts[1]),
                     parse_value<double>("modes", parts[2])});
  }
  return modes;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

using Setter = std::function<void(RunManifest&, const std::string&)>;

struct Key {
  std::string name;
  Setter set;
  std::function<std::string(const RunManifest&)> get;
};

template <typename T, typename Access>
Key number_key(std::string name, Access access) {
  return {name,
          [name, access](RunManifest& m, const std::string& v) { access(m) = parse_value<T>(name, v); },
          [access](const RunManifest& m) {
            const T v = access(const_cast<RunManifest&>(m));
            if constexpr (std::is_floating_point_v<T>) {
              return format_double(v);
            } else {
              return std::to_string(v);
            }
          }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = [] {
    std::vector<Key> k;
    k.push_back({"shape",
                 [](RunManifest& m, const std::string& v) { m.shape.kind = shape_kind_from_string(v); },
                 [](const RunManifest& m) { return std::string(to_string(m.shape.kind)); }});
    k.push_back(number_key<double>("radius", [](RunManifest& m) -> double& { return m.shape.radius; }));
    k.push_back(number_key<int>("turns", [](RunManifest& m) -> int& { return m.shape.turns; }));
    k.push_back(number_key<double>("semi_a", [](RunManifest& m) -> double& { return m.shape.semi_a; }));
    k.push_back(number_key<double>("semi_b", [](RunManifest& m) -> double& { return m.shape.semi_b; }));
    k.push_back({"modes", [](RunManifest& m, const std::string& v) { m.shape.modes = parse_modes(v); },
                 [](const RunManifest& m) { return format_modes(m.shape.modes); }});
    k.push_back(number_key<double>("limacon_a", [](RunManifest& m) -> double& { return m.shape.limacon_a; }));
    k.push_back(number_key<double>("limacon_b", [](RunManifest& m) -> double& { return m.shape.limacon_b; }));
    k.push_back(number_key<double>("scale", [](RunManifest& m) -> double& { return m.shape.scale; }));
    k.push_back({"center",
                 [](RunManifest& m, const std::string& v) {
                   const auto p = split(v, ',');
                   if (p.size() != 2) throw InvalidInput("manifest key 'center': expected x,y");
                   m.shape.center = {parse_value<double>("center", p[0]), parse_value<double>("center", p[1])};
                 },
                 [](const RunManifest& m) {
                   return format_double(m.shape.center.x) + "," + format_double(m.shape.center.y);
                 }});
    k.push_back(number_key<double>("rotation", [](RunManifest& m) -> double& { return m.shape.rotation; }));
    k.push_back(number_key<std::size_t>("n", [](RunManifest& m) -> std::size_t& { return m.flow.n; }));
    k.push_back(number_key<double>("dt", [](RunManifest& m) -> double& { return m.flow.dt; }));
    k.push_back({"scheme", [](RunManifest& m, const std::string& v) { m.flow.scheme = scheme_from_string(v); },
                 [](const RunManifest& m) { return std::string(to_string(m.flow.scheme)); }});
    k.push_back({"redistribution",
                 [](RunManifest& m, const std::string& v) {
                   m.flow.redistribution = redistribution_from_string(v);
                 },
                 [](const RunManifest& m) { return std::string(to_string(m.flow.redistribution)); }});
    k.push_back(number_key<double>("max_time", [](RunManifest& m) -> double& { return m.flow.stop.max_time; }));
    k.push_back(
        number_key<std::int64_t>("max_steps", [](RunManifest& m) -> std::int64_t& { return m.flow.stop.max_steps; }));
    k.push_back(number_key<double>("kosc_threshold",
                                   [](RunManifest& m) -> double& { return m.flow.stop.kosc_threshold; }));
    k.push_back(number_key<double>("curvature_ceiling",
                                   [](RunManifest& m) -> double& { return m.flow.stop.curvature_ceiling; }));
    k.push_back(number_key<double>("min_segment_fraction",
                                   [](RunManifest& m) -> double& { return m.flow.stop.min_segment_fraction; }));
    k.push_back(number_key<double>("linear_solve",
                                   [](RunManifest& m) -> double& { return m.flow.tolerances.linear_solve; }));
    k.push_back(number_key<int>("max_solver_iterations",
                                [](RunManifest& m) -> int& { return m.flow.tolerances.max_solver_iterations; }));
    k.push_back(number_key<double>("spread_threshold",
                                   [](RunManifest& m) -> double& { return m.flow.tolerances.spread_threshold; }));
    k.push_back(number_key<double>("geometry_epsilon",
                                   [](RunManifest& m) -> double& { return m.flow.tolerances.geometry_epsilon; }));
    k.push_back({"output_dir", [](RunManifest& m, const std::string& v) { m.output.directory = v; },
                 [](const RunManifest& m) { return m.output.directory; }});
    k.push_back(number_key<double>("snapshot_interval",
                                   [](RunManifest& m) -> double& { return m.output.snapshot_interval; }));
    k.push_back({"svg", [](RunManifest& m, const std::string& v) { m.output.svg = parse_bool("svg", v); },
                 [](const RunManifest& m) { return std::string(m.output.svg ? "true" : "false"); }});
    k.push_back({"reports",
                 [](RunManifest& m, const std::string& v) {
                   m.output.reports.clear();
                   if (!v.empty()) m.output.reports = split(v, ',');
                 },
                 [](const RunManifest& m) { return join(m.output.reports); }});
    k.push_back(number_key<double>("decay_t0", [](RunManifest& m) -> double& { return m.output.decay_t0; }));
    k.push_back(number_key<double>("decay_t1", [](RunManifest& m) -> double& { return m.output.decay_t1; }));
    k.push_back(number_key<std::uint64_t>("seed", [](RunManifest& m) -> std::uint64_t& { return m.seed; }));
    return k;
  }();
  return k;
}

}  // namespace

void RunManifest::validate() const {
  shape.validate();
  flow.validate();
  if (output.directory.empty()) throw InvalidInput("output_dir must not be empty");
  if (!(output.snapshot_interval > 0.0) || !std::isfinite(output.snapshot_interval)) {
    throw InvalidInput("snapshot_interval must be positive");
  }
  for (const auto& r : output.reports) {
    if (r != "all" && std::find(kReportNames.begin(), kReportNames.end(), r) == kReportNames.end()) {
      throw InvalidInput("unknown report '" + r + "'");
    }
  }
  if (!(output.decay_t1 > output.decay_t0)) throw InvalidInput("decay_t1 must exceed decay_t0");
}

RunManifest parse_manifest(std::istream& in) {
  RunManifest m;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("manifest line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto& ks = keys();
    const auto it = std::find_if(ks.begin(), ks.end(), [&](const Key& k) { return k.name == key; });
    if (it == ks.end()) throw InvalidInput("manifest line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw InvalidInput("manifest key '" + key + "' given twice");
    it->set(m, value);
  }
  m.validate();
  return m;
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open manifest " + path.string());
  return parse_manifest(in);
}

std::string format_manifest(const RunManifest& m) {
  std::string out;
  for (const auto& k : keys()) out += k.name + " = " + k.get(m) + "\n";
  return out;
}

}  // namespace cdflow
