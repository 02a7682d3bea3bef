// Bernoulli numbers (B_1 = -1/2 convention) and Bernoulli polynomials.
#pragma once

#include "lf/numeric.hpp"

namespace lf {

inline constexpr int kBernoulliMax = 64;

// B_n for 0 <= n <= 64; throws ConfigError outside the table.
double bernoulli_number(int n);

// B_n(x) = sum_k C(n,k) B_{n-k} x^k for 0 <= n <= 64, complex x.
cplx bernoulli_polynomial(int n, cplx x);

// binomial coefficient as double, n >= 0, 0 <= k <= n
double binom(int n, int k);

// rising factorial s (s+1) ... (s+k-1), k >= 0
cplx pochhammer(cplx s, int k);

}  // namespace lf
