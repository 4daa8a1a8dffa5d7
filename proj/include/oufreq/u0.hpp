#ifndef OUFREQ_U0_HPP
#define OUFREQ_U0_HPP

#include "oufreq/logreal.hpp"

namespace oufreq {

/// w(x) = e^{-x^2/4} \int_0^x e^{s^2/4} ds, the scaled kernel of the
/// non-polynomial solution u0 of the drift equation.  w is odd, satisfies
/// w' = 1 - (x/2) w, and behaves like 2/x + 4/x^3 + 24/x^5 + ... for large x.
/// Accurate to near machine precision for |x| up to (at least) 200.
double u0_scaled(double x);

/// Direct damped-quadrature evaluation of w(x) for x >= 0.  Slower; used to
/// build the fast path and as an in-library cross-check.  Not the test
/// oracle (tests integrate e^{s^2/4} independently).
double u0_scaled_quadrature(double x);

/// Asymptotic series 2/x + 4/x^3 + 24/x^5 + 240/x^7 + ... truncated at the
/// smallest term.  Caller must keep |x| large enough (>= 12 is already at
/// machine precision; the fast path switches at 30).
double u0_scaled_series(double x);

/// u0(x) itself as a LogReal: sign(x) * e^{x^2/4} * |w(x)|.
LogReal u0_log(double x);

/// e^{x^2/4} as a LogReal.
inline LogReal exp_quarter_sq(double x) { return LogReal::from_log(1, x * x / 4.0); }

} // namespace oufreq

#endif
