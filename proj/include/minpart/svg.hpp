#pragma once

#include <filesystem>
#include <string>

#include "minpart/nodal_family.hpp"
#include "minpart/partition.hpp"

namespace minpart {

// Self-contained figures, deterministic byte-for-byte (no timestamps).
std::string nodal_family_svg(FamilyCoeffs c, double eps, const NodalSet& set,
                             int px_width = 640);
std::string partition_svg(const Partition& p, const TripleAngles* angles = nullptr,
                          int px_width = 640);

void write_svg_atomic(const std::filesystem::path& path, const std::string& svg);

}  // namespace minpart
