// Quadrature: tanh-sinh on a finite interval, contour integration along a
// vertical line, and Mellin transforms of the smoothing windows.
#pragma once

#include <functional>

#include "lf/numeric.hpp"

namespace lf {

// tanh-sinh quadrature of f over [a, b]; h-halving until the level-to-level
// difference is <= tol (absolute), with a node budget.
Ev tanh_sinh(const std::function<cplx(double)>& f, double a, double b, double tol,
             int max_level = 12);

// (1/(2 pi i)) int_{u0 - i inf}^{u0 + i inf} f(w) dw for an integrand that
// decays at least like exp(-gamma |Im w|) far out on the line (gamma =
// tail_decay_hint, > 0). Trapezoid refinement with tail detection; total
// evaluation budget 2^16, NumericError when tolerance cannot be met.
Ev vertical_line_integral(const std::function<cplx(cplx)>& f, double u0,
                          double tail_decay_hint, double tol);

// Smoothing windows. kBump is exp(-1/((u-1)(2-u))) supported on (1, 2);
// kExpR is u >= 0 |-> exp(-u^r).
struct Window {
  enum Kind { kBump, kExpR };
  Kind kind = kBump;
  int r = 1;  // only for kExpR
};

// pointwise window value
double window_value(const Window& w, double u);

// Mellin transform int_0^inf w(u) u^{s-1} du: quadrature for the bump,
// Gamma(s/r)/r closed form for exp(-u^r).
Ev window_mellin(const Window& w, cplx s, double tol = 1e-12);

}  // namespace lf
