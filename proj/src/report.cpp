#include "cdflow/report.hpp"

#include <algorithm>
#include <sstream>

#include "cdflow/curve_io.hpp"

namespace cdflow {

bool Report::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
}

void Report::merge(const std::string& prefix, const Report& other) {
  for (const auto& [k, v] : other.verdicts) verdicts[prefix + "." + k] = v;
  for (const auto& [k, v] : other.values) values[prefix + "." + k] = v;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["verdicts"] = nlohmann::json::object();
  j["values"] = nlohmann::json::object();
  for (const auto& [k, v] : verdicts) j["verdicts"][k] = v;
  for (const auto& [k, v] : values) {
    if (std::isfinite(v)) {
      j["values"][k] = v;
    } else {
      j["values"][k] = nullptr;
    }
  }
  return j;
}

std::string Report::table() const {
  std::size_t width = 0;
  for (const auto& [k, v] : verdicts) width = std::max(width, k.size());
  for (const auto& [k, v] : values) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : verdicts) {
    out << k << std::string(width - k.size() + 2, ' ') << (v ? "pass" : "FAIL") << '\n';
  }
  for (const auto& [k, v] : values) {
    out << k << std::string(width - k.size() + 2, ' ') << format_double(v) << '\n';
  }
  return out.str();
}

}  // namespace cdflow
