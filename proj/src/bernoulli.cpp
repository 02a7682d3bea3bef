#include "lf/bernoulli.hpp"

namespace lf {

// Frozen from the exact rationals (tools/gen_oracle_constants.py evaluates the
// defining recurrence over Fraction and rounds once to double). Odd indices
// above 1 are exactly zero.
namespace {
constexpr double kB[kBernoulliMax + 1] = {
    1.0000000000000000, -5.0000000000000000e-1, 1.6666666666666667e-1, 0.0,
    -3.3333333333333333e-2, 0.0, 2.3809523809523810e-2, 0.0,
    -3.3333333333333333e-2, 0.0, 7.5757575757575758e-2, 0.0,
    -2.5311355311355311e-1, 0.0, 1.1666666666666667, 0.0,
    -7.0921568627450980, 0.0, 5.4971177944862155e+1, 0.0,
    -5.2912424242424242e+2, 0.0, 6.1921231884057971e+3, 0.0,
    -8.6580253113553114e+4, 0.0, 1.4255171666666667e+6, 0.0,
    -2.7298231067816092e+7, 0.0, 6.0158087390064237e+8, 0.0,
    -1.5116315767092157e+10, 0.0, 4.2961464306116667e+11, 0.0,
    -1.3711655205088333e+13, 0.0, 4.8833231897359317e+14, 0.0,
    -1.9296579341940068e+16, 0.0, 8.4169304757368262e+17, 0.0,
    -4.0338071854059455e+19, 0.0, 2.1150748638081992e+21, 0.0,
    -1.2086626522296526e+23, 0.0, 7.5008667460769644e+24, 0.0,
    -5.0387781014810689e+26, 0.0, 3.6528776484818123e+28, 0.0,
    -2.8498769302450882e+30, 0.0, 2.3865427499683628e+32, 0.0,
    -2.1399949257225334e+34, 0.0, 2.0500975723478098e+36, 0.0,
    -2.0938005911346378e+38};
}  // namespace

double bernoulli_number(int n) {
  if (n < 0 || n > kBernoulliMax) {
    throw ConfigError("bernoulli_number: index " + std::to_string(n) +
                      " outside supported range [0, 64]");
  }
  return kB[n];
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
  return r;
}

cplx bernoulli_polynomial(int n, cplx x) {
  if (n < 0 || n > kBernoulliMax) {
    throw ConfigError("bernoulli_polynomial: degree " + std::to_string(n) +
                      " outside supported range [0, 64]");
  }
  // Horner over c_k = C(n,k) B_{n-k}, highest power first
  cplx acc = 0.0;
  for (int k = n; k >= 0; --k) {
    acc = acc * x + binom(n, k) * kB[n - k];
  }
  return acc;
}

cplx pochhammer(cplx s, int k) {
  cplx r = 1.0;
  for (int j = 0; j < k; ++j) r *= s + double(j);
  return r;
}

}  // namespace lf
