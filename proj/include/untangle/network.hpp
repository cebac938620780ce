#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "untangle/geometry.hpp"
#include "untangle/linalg.hpp"

namespace untangle {

struct ActivationSpec {
    enum class Kind { ReLU, LeakyReLU, ELU, SELU };
    Kind kind = Kind::ReLU;
    double alpha = 0.0;   // leaky slope / ELU scale
    double lambda = 1.0;  // SELU outer scale
};

double activation_eval(const ActivationSpec& a, double x);

struct AffineLayer {
    Mat w;
    Vec b;
};

// Phi = T_L o sigma o ... o sigma o T_1 (no activation after the last layer).
// Evaluation is plain double precision with fixed left-to-right accumulation:
// row products first, bias added last. No fused operations, no reordering.
struct Network {
    std::vector<AffineLayer> layers;
    ActivationSpec activation;

    void validate() const;  // throws on shape mismatches along the chain
    std::size_t input_dim() const;
    std::size_t output_dim() const;
};

Vec network_eval(const Network& net, const Vec& x);
PointCloud network_eval(const Network& net, const PointCloud& cloud);

// Maximum hidden-layer width (rows of every layer but the last); 0 if L == 1.
std::size_t network_width(const Network& net);

// max over samples of ||a(x) - b(x)||_2.
double sup_error(const Network& a, const Network& b, const std::vector<Vec>& samples);

// Weight entries are numbers or radical tokens: "sqrt(6)/6", "-sqrt(2)/2".
double parse_weight_token(const std::string& tok);

Network network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const Network& net);

}  // namespace untangle
