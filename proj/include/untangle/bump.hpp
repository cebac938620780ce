#pragma once

namespace untangle {

// f(t) = exp(-1/t) for t > 0, else 0. Smooth on all of R.
double smooth_step_raw(double t);

// Derivative of smooth_step_raw: exp(-1/t)/t^2 for t > 0, else 0.
double smooth_step_raw_deriv(double t);

// Smooth cutoff eta with eta == 1 on (-inf, inner], eta == 0 on [outer, inf),
// strictly decreasing in between:
//   eta(s) = f(outer - s) / (f(outer - s) + f(s - inner)).
// The plateau values are exact (returned as literal 1.0 / 0.0), and arguments
// within 1e-12 of a plateau edge take the plateau branch so the denominator
// never underflows. Requires inner < outer.
double bump_eval(double inner, double outer, double s);

// d/ds of bump_eval; <= 0 everywhere, exactly 0 on both plateaus.
double bump_deriv(double inner, double outer, double s);

}  // namespace untangle
