// Special functions: principal-branch log Gamma, the Stirling series with an
// explicit remainder bound, the upper incomplete gamma function, and the
// Hurwitz zeta function (Euler-Maclaurin).
#pragma once

#include <optional>
#include <utility>

#include "lf/numeric.hpp"

namespace lf {

// Best rational p/q ~ x with |x - p/q| <= tol and 0 < q <= qmax, in lowest
// terms, via continued-fraction convergents; nullopt when no convergent
// lands within tol.
std::optional<std::pair<long, long>> snap_rational(double x, long qmax,
                                                   double tol = 1e-9);

// Principal branch of log Gamma(z), continuous off the cut (-inf, 0]; on the
// cut the value is the limit from above. Relative accuracy ~1e-13 for
// |z| <= 1e4 (measured against max(1, |log Gamma|) near its zeros).
// Returns +inf real part at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// Truncated Stirling series for log Gamma(z + a) expanded at z:
//   (z + a - 1/2) Log z - z + (1/2) log 2pi
//     + sum_{j=1}^{N} (-1)^{j+1} B_{j+1}(a) / (j (j+1) z^j),
// with the explicit remainder bound
//   2 |z|^{-(N+1)} ((N + |a|^2/(N+1)^2) |a|^N + D^N N!).
// Preconditions (throws ConfigError): Re(z + a) >= 0, |a| <= (3/5)|z|,
// N <= 2 D |z|, 0 <= N <= 63.
Ev stirling_series(cplx z, cplx a, int N, double D);

// Upper incomplete gamma G(a, x) = int_x^inf t^{a-1} e^{-t} dt for complex a
// and real x > 0. Continued-fraction evaluation after reducing Re(a) below
// x + 1 by the downward recurrence.
cplx upper_incomplete_gamma(cplx a, double x);

// Hurwitz zeta zeta(s, a) = sum_{n>=0} (n + a)^{-s} for 0 < a <= 1, continued
// to sigma > -2*kHurwitzMaxJ via Euler-Maclaurin. Throws NumericError at
// s = 1 and when the requested tolerance is unreachable.
Ev hurwitz_zeta(cplx s, double a, double tol = 1e-14);

// zeta(s, a) - 1/(s-1): the pole-subtracted value, finite at s = 1 (where it
// equals -digamma(a)). Intended for |s - 1| < 0.5; valid wherever the
// Euler-Maclaurin route converges (sigma > -0.5 in practice).
Ev hurwitz_zeta_reg(cplx s, double a, double tol = 1e-14);

inline Ev riemann_zeta(cplx s, double tol = 1e-14) { return hurwitz_zeta(s, 1.0, tol); }

}  // namespace lf
