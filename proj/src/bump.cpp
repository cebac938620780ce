#include "untangle/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace untangle {

namespace {
constexpr double kPlateauPad = 1e-12;

void check_interval(double inner, double outer, const char* who) {
    if (!(inner < outer)) throw std::invalid_argument(std::string(who) + ": inner < outer required");
    if (!std::isfinite(inner) || !std::isfinite(outer))
        throw std::invalid_argument(std::string(who) + ": non-finite interval");
}

// Pad scales with the interval so edge inclusivity survives tiny windows.
double edge_pad(double inner, double outer) {
    return kPlateauPad * (1.0 + std::fabs(inner) + std::fabs(outer));
}
}  // namespace

double smooth_step_raw(double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-1.0 / t);
}

double smooth_step_raw_deriv(double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-1.0 / t) / (t * t);
}

// Evaluated on the normalized coordinate u = (s - inner)/(outer - inner) so the
// maximum slope is ~2/(outer - inner) regardless of the window's absolute size.
double bump_eval(double inner, double outer, double s) {
    check_interval(inner, outer, "bump_eval");
    const double pad = edge_pad(inner, outer);
    if (s <= inner + pad) return 1.0;
    if (s >= outer - pad) return 0.0;
    const double u = (s - inner) / (outer - inner);
    const double hi = smooth_step_raw(1.0 - u);
    const double lo = smooth_step_raw(u);
    return hi / (hi + lo);
}

double bump_deriv(double inner, double outer, double s) {
    check_interval(inner, outer, "bump_deriv");
    const double pad = edge_pad(inner, outer);
    if (s <= inner + pad) return 0.0;
    if (s >= outer - pad) return 0.0;
    const double w = outer - inner;
    const double u = (s - inner) / w;
    const double hi = smooth_step_raw(1.0 - u);
    const double lo = smooth_step_raw(u);
    const double dhi = smooth_step_raw_deriv(1.0 - u);
    const double dlo = smooth_step_raw_deriv(u);
    const double den = hi + lo;
    // quotient rule with d/du f(1-u) = -f'(1-u), then the chain rule 1/w
    return (-dhi * lo - hi * dlo) / (den * den * w);
}

}  // namespace untangle
