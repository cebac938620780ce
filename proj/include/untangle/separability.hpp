#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "untangle/geometry.hpp"

namespace untangle {

// {x : <normal, x> = offset}. Certificates are returned with ||normal|| = 1.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;
};

// Signed sample margin: half the gap between the A side and the B side,
//   (min over A of s(x)  -  max over B of s(x)) / 2,  s(x) = (<n,x> - offset)/||n||.
// Positive iff the plane strictly separates the samples with A positive.
double margin_of(const Hyperplane& h, const PointCloud& a, const PointCloud& b);

// Exact convex-hull intersection test (phase-1 simplex with Bland's rule on
// the mixture feasibility system). Closed hulls: touching counts as meeting.
bool hulls_intersect(const PointCloud& a, const PointCloud& b);

// Maximum-margin separator, or nullopt when the hulls meet (or the margin
// cannot be certified above 1e-9). Deterministic for a given input.
std::optional<Hyperplane> separate_pair(const PointCloud& a, const PointCloud& b);

struct PairCertificate {
    int labelA = 0;
    int labelB = 0;
    bool separable = false;
    Hyperplane plane;     // valid only when separable
    double margin = 0.0;  // re-verified via margin_of
};

struct SeparabilityCertificate {
    bool allSeparable = false;
    std::vector<PairCertificate> pairs;  // distinct labels, ascending, all i < j
};

// Merges classes sharing a label, then certifies every label pair.
SeparabilityCertificate certify_pairwise(const LabeledDataset& d);

nlohmann::json certificate_to_json(const SeparabilityCertificate& c);

}  // namespace untangle
