#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cdflow/curve.hpp"

namespace cdflow {

/// CSV with header `x,y` and one vertex per row; the closing edge is
/// implicit. Rejects non-finite values and malformed rows with InvalidInput.
SampledCurve read_curve_csv(std::istream& in);
SampledCurve read_curve_csv(const std::filesystem::path& path);

void write_curve_csv(std::ostream& out, const SampledCurve& curve);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Writes `contents` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace cdflow
