// Core numeric types shared across the library: complex alias, error-tracked
// values with conservative bound propagation, and failure categories.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace lf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2*pi)
inline constexpr double kSqrtPi = 1.7724538509055160273;    // sqrt(pi)

// Bad input data or configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric routine could not meet its tolerance contract (CLI exit code 3).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Complex value with a non-negative absolute error bound. Bounds combine
// conservatively: sums add bounds, products use the full product rule
// including the cross term, so a true bound stays a true bound.
struct Ev {
  cplx value{0.0, 0.0};
  double bound = 0.0;

  Ev() = default;
  Ev(cplx v, double b) : value(v), bound(b) {}
  explicit Ev(cplx v) : value(v), bound(0.0) {}
  explicit Ev(double v) : value(v, 0.0), bound(0.0) {}
};

inline Ev operator+(const Ev& a, const Ev& b) {
  return {a.value + b.value, a.bound + b.bound};
}
inline Ev operator-(const Ev& a, const Ev& b) {
  return {a.value - b.value, a.bound + b.bound};
}
inline Ev operator*(const Ev& a, const Ev& b) {
  return {a.value * b.value,
          std::abs(a.value) * b.bound + std::abs(b.value) * a.bound + a.bound * b.bound};
}
inline Ev operator*(const cplx& c, const Ev& a) { return {c * a.value, std::abs(c) * a.bound}; }
inline Ev operator*(const Ev& a, const cplx& c) { return c * a; }
inline Ev operator*(double c, const Ev& a) { return {c * a.value, std::abs(c) * a.bound}; }

inline Ev operator/(const Ev& a, const Ev& b) {
  double bb = std::abs(b.value);
  if (!(b.bound < 0.5 * bb)) {
    throw NumericError("error-tracked division: denominator bound exceeds half its magnitude");
  }
  cplx v = a.value / b.value;
  // |a/b - v| <= (|a| eb + |b| ea) / (|b| (|b| - eb))
  double bound = (std::abs(a.value) * b.bound + bb * a.bound) / (bb * (bb - b.bound));
  return {v, bound};
}

inline Ev& operator+=(Ev& a, const Ev& b) {
  a = a + b;
  return a;
}

inline cplx expi(double t) { return {std::cos(t), std::sin(t)}; }

// e(x) = exp(2 pi i x)
inline cplx e2pi(double x) { return expi(kTwoPi * x); }

}  // namespace lf
