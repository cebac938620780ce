#include "untangle/rng.hpp"

#include <stdexcept>

namespace untangle {

Vec sample_unit_ball(SplitMix64& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("sample_unit_ball: n >= 1 required");
    Vec x(n);
    for (;;) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 2.0 * rng.next_double() - 1.0;
            s += x[i] * x[i];
        }
        if (s < 1.0) return x;
    }
}

Vec sample_unit_sphere(SplitMix64& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("sample_unit_sphere: n >= 1 required");
    Vec x(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.next_gaussian();
        double s = norm2(x);
        if (s > 1e-12) return scale(1.0 / s, x);
    }
}

}  // namespace untangle
