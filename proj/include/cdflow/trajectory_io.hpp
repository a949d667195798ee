#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cdflow/curve.hpp"
#include "cdflow/flow.hpp"

namespace cdflow {

/// One JSON object per line with fields
/// t, L, A, I, omega, kbar, kosc, ks2, kss2, kmin, dL_dt, dA_dt, residual.
/// I is null when the signed area vanishes.
std::string trajectory_line(const TrajectoryRecord& r);
void write_trajectory_jsonl(std::ostream& out, const std::vector<TrajectoryRecord>& trajectory);

/// Reads the fields above back; metrics outside that list are left at zero.
std::vector<TrajectoryRecord> read_trajectory_jsonl(std::istream& in);

/// Fixed-viewport SVG of one curve; `viewport` is {xmin, ymin, xmax, ymax}.
struct Viewport {
  double x0 = -1.0, y0 = -1.0, x1 = 1.0, y1 = 1.0;
};

/// Bounding box of all curves with a 5% margin, square.
Viewport common_viewport(const std::vector<SampledCurve>& curves);
std::string svg_frame(const SampledCurve& curve, const Viewport& view, const std::string& caption = {});

}  // namespace cdflow
