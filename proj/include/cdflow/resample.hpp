#pragma once

#include <cstddef>

#include "cdflow/curve.hpp"

namespace cdflow {

/// Re-samples the trace of `curve` at n points equally spaced in arclength,
/// starting at vertex 0. The result claims UniformArclength and its
/// generation counter is one higher than the input's.
///
/// Throws DegenerateGeometry when the length is below threshold or the
/// interpolant is too poorly resolved to reach a uniform spacing.
SampledCurve resample_uniform(const SampledCurve& curve, std::size_t n);

/// resample_uniform keeping the vertex count.
SampledCurve resample_uniform(const SampledCurve& curve);

}  // namespace cdflow
