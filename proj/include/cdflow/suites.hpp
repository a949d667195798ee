#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cdflow/report.hpp"
#include "cdflow/shapes.hpp"

namespace cdflow {

/// Seeded mix of perturbed circles, limaçons (with and without inner loop),
/// lemniscates and ellipses at random scale, rotation and position.
std::vector<ShapeSpec> random_corpus(std::uint64_t seed, std::size_t count);

/// wirtinger, newton, multiplicity-corpus, flow-identities, density, constants.
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). Throws InvalidInput for an
/// unknown name.
Report run_suite(std::string_view name, std::uint64_t seed);

}  // namespace cdflow
