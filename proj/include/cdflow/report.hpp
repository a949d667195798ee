#pragma once

#include <map>
#include <string>

#include "json.hpp"

namespace cdflow {

/// Named verdicts and values; serializes as {"verdicts": {...}, "values": {...}}.
struct Report {
  std::map<std::string, bool> verdicts;
  std::map<std::string, double> values;

  bool all_pass() const;
  /// Merges other under `prefix.` keys.
  void merge(const std::string& prefix, const Report& other);
  nlohmann::json to_json() const;
  /// Two-column text table.
  std::string table() const;
};

}  // namespace cdflow
