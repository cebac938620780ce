#pragma once

#include <string>

#include "untangle/geometry.hpp"

namespace untangle {

// Deterministic scatter plot: 640x480, fixed palette keyed by ascending label,
// isometric projection for 3D data, byte-identical output for identical input.
void export_svg(const LabeledDataset& d, const std::string& path);

}  // namespace untangle
