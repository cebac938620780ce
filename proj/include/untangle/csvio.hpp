#pragma once

#include <string>

#include "untangle/geometry.hpp"

namespace untangle {

// Shortest representation that round-trips the exact double.
std::string format_double(double v);

// Header "label,x1,...,xn"; one sample per row, doubles shortest-round-trip.
void write_labeled_csv(const LabeledDataset& d, const std::string& path);

// Rows grouped into classes by label, first-appearance order; guard 0.
LabeledDataset read_labeled_csv(const std::string& path);

}  // namespace untangle
