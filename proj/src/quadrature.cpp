#include "lf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lf/specialfn.hpp"

namespace lf {

Ev tanh_sinh(const std::function<cplx(double)>& f, double a, double b, double tol,
             int max_level) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  // |t| <= 3.2 keeps the abscissas strictly inside (a, b) in double
  // precision; the discarded weight is ~1e-15 of the total
  const double tmax = 3.2;

  auto add_node = [&](double t, cplx& acc) {
    double sh = 0.5 * kPi * std::sinh(t);
    double ch = std::cosh(sh);
    double x = mid + half * std::tanh(sh);
    if (x <= a || x >= b) return;
    double w = half * 0.5 * kPi * std::cosh(t) / (ch * ch);
    acc += w * f(x);
  };

  auto node_sum = [&](double h, bool odd_only) {
    // sum of w(t) f(x(t)) over t = j h (j odd when refining)
    cplx acc = 0.0;
    int jmax = int(tmax / h);
    if (odd_only) {
      for (int j = 1; j <= jmax; j += 2) {
        add_node(j * h, acc);
        add_node(-j * h, acc);
      }
    } else {
      for (int j = -jmax; j <= jmax; ++j) add_node(j * h, acc);
    }
    return acc;
  };

  double h = 1.0;
  cplx total = node_sum(h, false);
  cplx prev = h * total;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    total += node_sum(h, true);
    cplx cur = h * total;
    double diff = std::abs(cur - prev);
    if (level >= 3 && diff <= tol) {
      return {cur, diff + 1e-16 * std::abs(cur)};
    }
    prev = cur;
  }
  throw NumericError("tanh_sinh: tolerance not reached within level budget");
}

Ev vertical_line_integral(const std::function<cplx(cplx)>& f, double u0,
                          double tail_decay_hint, double tol) {
  if (!(tail_decay_hint > 0.0)) {
    throw ConfigError("vertical_line_integral: tail_decay_hint must be positive");
  }
  const std::size_t budget = std::size_t(1) << 16;
  std::size_t evals = 0;
  auto eval = [&](double v) {
    if (++evals > budget) {
      throw NumericError("vertical_line_integral: evaluation budget exhausted");
    }
    return f(cplx(u0, v));
  };

  const double gamma = tail_decay_hint;
  const double thresh = std::max(1e-300, 0.05 * tol * gamma);
  // grow each side until the integrand is safely below the tail threshold
  auto find_extent = [&](double sign) {
    double V = 4.0 / gamma;
    for (int k = 0; k < 60; ++k) {
      double m = std::max({std::abs(eval(sign * V)), std::abs(eval(sign * 0.9 * V)),
                           std::abs(eval(sign * 0.8 * V))});
      if (m <= thresh) return V;
      V *= 1.6;
    }
    throw NumericError("vertical_line_integral: integrand tail does not decay");
  };
  double Vp = find_extent(1.0);
  double Vm = find_extent(-1.0);

  // composite trapezoid over [-Vm, Vp], halving h; analytic integrands on a
  // strip converge geometrically in 1/h
  double span = Vp + Vm;
  std::size_t n0 = 64;
  double h = span / double(n0);
  cplx acc = 0.5 * (eval(-Vm) + eval(Vp));
  for (std::size_t j = 1; j < n0; ++j) acc += eval(-Vm + double(j) * h);
  cplx prev = h * acc;
  for (int level = 0; level < 14; ++level) {
    std::size_t n = n0 << (level + 1);
    double hh = span / double(n);
    cplx mids = 0.0;
    for (std::size_t j = 1; j < n; j += 2) mids += eval(-Vm + double(j) * hh);
    acc += mids;
    cplx cur = hh * acc;
    double diff = std::abs(cur - prev) / kTwoPi;
    if (level >= 1 && diff <= 0.5 * tol) {
      double tail = (std::abs(eval(Vp)) + std::abs(eval(-Vm))) / gamma / kTwoPi;
      return {cur / kTwoPi, diff + tail};
    }
    prev = cur;
  }
  throw NumericError("vertical_line_integral: tolerance not reached within budget");
}

double window_value(const Window& w, double u) {
  switch (w.kind) {
    case Window::kBump: {
      if (!(u > 1.0 && u < 2.0)) return 0.0;
      return std::exp(-1.0 / ((u - 1.0) * (2.0 - u)));
    }
    case Window::kExpR: {
      if (u < 0.0) return 0.0;
      return std::exp(-std::pow(u, w.r));
    }
  }
  return 0.0;
}

Ev window_mellin(const Window& w, cplx s, double tol) {
  switch (w.kind) {
    case Window::kBump:
      return tanh_sinh([&](double u) { return std::exp((s - 1.0) * std::log(u)) *
                                              window_value(w, u); },
                       1.0, 2.0, tol);
    case Window::kExpR: {
      if (w.r < 1) throw ConfigError("window_mellin: exp window needs r >= 1");
      cplx g = std::exp(log_gamma(s / double(w.r)));
      return {g / double(w.r), 1e-14 * std::abs(g)};
    }
  }
  throw ConfigError("window_mellin: unknown window kind");
}

}  // namespace lf
