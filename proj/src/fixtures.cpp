#include "untangle/fixtures.hpp"

namespace untangle {

const char* toy_network_json() {
    return R"({
  "activation": {"kind": "leaky_relu", "params": {"alpha": 0.0001}},
  "layers": [
    {"rows": 3, "cols": 2,
     "weights": ["sqrt(6)/6", "sqrt(2)/2",
                 "sqrt(6)/6", "sqrt(2)/2",
                 "-sqrt(6)/3", 0],
     "bias": [0, 0, 0]},
    {"rows": 3, "cols": 3,
     "weights": [0.8609, 1.1220, 0.7568,
                 -1.1220, 0.8609, 1.9176,
                 86.09, 112.2, 75.68],
     "bias": [2, 5, -190]},
    {"rows": 3, "cols": 3,
     "weights": [1, 0, 0,
                 0, 1, 0,
                 0, 0, -1],
     "bias": [0, 0, 10]},
    {"rows": 3, "cols": 3,
     "weights": [1, 0, 0,
                 0, -1, 1,
                 0, 0, 0],
     "bias": [0, -4.9, 0]},
    {"rows": 3, "cols": 3,
     "weights": [1, 0, 0,
                 0, -1, 0,
                 0, 0, 1],
     "bias": [0, 0.001, 0]},
    {"rows": 2, "cols": 3,
     "weights": [1, 0, 0,
                 0, 10000, 0],
     "bias": [0, 0]}
  ]
})";
}

const char* hopf_network_json() {
    return R"({
  "activation": {"kind": "elu", "params": {"alpha": 1.0}},
  "layers": [
    {"rows": 4, "cols": 3,
     "weights": [0.7202, 0.2662, 0.5537,
                 -0.0776, 0.4474, 0.2805,
                 -0.2377, 0.1716, 0.7948,
                 0.3674, 0.4314, -0.3063],
     "bias": [-0.7492, -0.2611, -0.7549, 1.0830]},
    {"rows": 4, "cols": 4,
     "weights": [-0.7003, -1.9739, 0.7907, 0.6326,
                 2.2762, -2.6667, 2.2235, 0.6519,
                 1.2144, 2.4500, -0.7188, -1.2508,
                 0.2836, 0.4959, -1.5312, -0.5781],
     "bias": [0.8253, -0.1560, 0.9420, 0.3498]},
    {"rows": 4, "cols": 4,
     "weights": [0.1789, -0.4813, -0.2008, 1.2680,
                 -0.5009, -0.3258, -1.3531, -1.0667,
                 -0.7222, -0.4798, -2.3012, 0.9997,
                 1.1325, 0.2196, 0.1678, 0.5455],
     "bias": [0.7573, 0.5837, -0.2989, 0.5017]},
    {"rows": 4, "cols": 4,
     "weights": [-0.7919, 1.8838, 0.1805, 0.1470,
                 0.5050, 1.8152, 1.5224, -0.2909,
                 -1.3450, -2.1239, -0.3029, 0.7759,
                 -1.2642, 2.9938, -0.5644, 1.1552],
     "bias": [0.6058, -1.0162, 0.8334, -1.3651]},
    {"rows": 2, "cols": 4,
     "weights": [0.2904, 4.5729, 2.0251, 3.5745,
                 4.1556, -0.6492, 0.4879, -2.0542],
     "bias": [-2.3310, -0.5897]}
  ]
})";
}

Network toy_network() {
    static const Network net = network_from_json(nlohmann::json::parse(toy_network_json()));
    return net;
}

Network hopf_network() {
    static const Network net = network_from_json(nlohmann::json::parse(hopf_network_json()));
    return net;
}

}  // namespace untangle
