#pragma once

#include "untangle/network.hpp"

namespace untangle {

// Embedded reference networks: the width-3 planar untangler (leaky ReLU) and
// the width-4 link separator (ELU). Raw JSON keeps the exact reference
// entries, including radical tokens like "sqrt(6)/6".
const char* toy_network_json();
const char* hopf_network_json();

Network toy_network();
Network hopf_network();

}  // namespace untangle
