#include <doctest.h>

#include <cmath>
#include <complex>

#include "lf/bernoulli.hpp"
#include "lf/numeric.hpp"
#include "lf/specialfn.hpp"
#include "oracle_constants.hpp"

using lf::cplx;

namespace {

double relerr(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("log_gamma matches reference grid") {
  for (const auto& r : lf::oracle::kLogGamma) {
    cplx got = lf::log_gamma(r.z);
    INFO("z = ", r.z.real(), " + ", r.z.imag(), "i");
    CHECK(relerr(got, r.ref) < 1e-13);
  }
}

TEST_CASE("log_gamma conjugate symmetry") {
  const cplx zs[] = {{3.7, 0.1}, {-4.3, 2.2}, {0.25, -0.75}, {150.0, 40.0}, {0.5, 9000.0}};
  for (cplx z : zs) {
    cplx a = lf::log_gamma(std::conj(z));
    cplx b = std::conj(lf::log_gamma(z));
    CHECK(relerr(a, b) < 1e-14);
  }
}

TEST_CASE("log_gamma poles at nonpositive integers") {
  CHECK(std::isinf(lf::log_gamma(cplx(0.0, 0.0)).real()));
  CHECK(std::isinf(lf::log_gamma(cplx(-3.0, 0.0)).real()));
  CHECK(std::isinf(lf::log_gamma(cplx(-17.0, 0.0)).real()));
}

TEST_CASE("log_gamma recurrence lgG(z+1) = lgG(z) + log z") {
  const cplx zs[] = {{0.3, 0.0},  {2.5, 1.5},   {-6.3, 0.4},
                     {0.01, -3.0}, {40.0, -7.0}, {-0.5, 0.002}};
  for (cplx z : zs) {
    cplx lhs = lf::log_gamma(z + 1.0);
    cplx rhs = lf::log_gamma(z) + std::log(z);
    // recurrence holds mod 2 pi i branch shifts; compare exp instead
    cplx diff = lhs - rhs;
    double frac = diff.imag() / lf::kTwoPi;
    CHECK(std::abs(frac - std::round(frac)) < 1e-12);
    CHECK(std::abs(diff.real()) < 1e-12 * std::max(1.0, std::abs(lhs.real())));
  }
}

TEST_CASE("Bernoulli numbers match reference and defining recurrence") {
  for (int n = 0; n <= lf::kBernoulliMax; ++n) {
    double want = lf::oracle::kBernoulli[n];
    double got = lf::bernoulli_number(n);
    CHECK(std::abs(got - want) <= 1e-15 * std::max(1.0, std::abs(want)));
  }
  // sum_{k=0}^{n-1} C(n,k) B_k = 0 for n >= 2
  for (int n = 2; n <= 20; ++n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += lf::binom(n, k) * lf::bernoulli_number(k);
    CHECK(std::abs(acc) < 1e-10);
  }
}

TEST_CASE("Bernoulli polynomials: reference values and translation identity") {
  for (const auto& r : lf::oracle::kBernPoly) {
    cplx got = lf::bernoulli_polynomial(r.n, r.x);
    CHECK(relerr(got, r.ref) < 1e-11);
  }
  // B_n(x+1) - B_n(x) = n x^{n-1}
  const cplx xs[] = {{0.37, 0.0}, {1.25, -0.5}, {-2.0, 3.0}};
  for (int n : {1, 2, 5, 12}) {
    for (cplx x : xs) {
      cplx lhs = lf::bernoulli_polynomial(n, x + 1.0) - lf::bernoulli_polynomial(n, x);
      cplx rhs = double(n) * std::pow(x, n - 1);
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
  // B_n(0) = B_n
  for (int n : {0, 1, 6, 13, 30}) {
    cplx got = lf::bernoulli_polynomial(n, cplx(0.0, 0.0));
    CHECK(std::abs(got - lf::bernoulli_number(n)) <=
          1e-12 * std::max(1.0, std::abs(lf::bernoulli_number(n))));
  }
}

TEST_CASE("stirling_series agrees with log_gamma and reports a valid bound") {
  struct Case {
    cplx z, a;
    int N;
  };
  const Case cases[] = {
      {{60.0, 0.0}, {0.0, 0.0}, 4},   {{200.0, 50.0}, {3.0, -1.0}, 6},
      {{80.0, -30.0}, {-8.0, 2.0}, 3}, {{1000.0, 0.0}, {0.25, 0.5}, 2},
      {{55.0, 10.0}, {20.0, 14.0}, 5},
  };
  for (const auto& c : cases) {
    lf::Ev got = lf::stirling_series(c.z, c.a, c.N, 1.0);
    cplx want = lf::log_gamma(c.z + c.a);
    double err = std::abs(got.value - want);
    CHECK(err <= got.bound);
    CHECK(got.bound < 1e-2 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("stirling_series rejects out-of-domain input") {
  CHECK_THROWS_AS(lf::stirling_series({10.0, 0.0}, {-12.0, 0.0}, 3, 1.0),
                  lf::ConfigError);  // Re(z+a) < 0
  CHECK_THROWS_AS(lf::stirling_series({10.0, 0.0}, {0.0, 9.0}, 3, 1.0),
                  lf::ConfigError);  // |a| > (3/5)|z|
  CHECK_THROWS_AS(lf::stirling_series({10.0, 0.0}, {1.0, 0.0}, 64, 1.0),
                  lf::ConfigError);  // N too large for the Bernoulli table
  CHECK_THROWS_AS(lf::stirling_series({4.0, 0.0}, {0.0, 0.0}, 30, 1.0),
                  lf::ConfigError);  // N > 2 D |z|
}

TEST_CASE("upper incomplete gamma matches reference grid") {
  for (const auto& r : lf::oracle::kUpperGamma) {
    cplx got = lf::upper_incomplete_gamma(r.s, r.a);
    INFO("a = ", r.s.real(), " + ", r.s.imag(), "i, x = ", r.a);
    CHECK(relerr(got, r.ref) < 1e-12);
  }
  CHECK_THROWS_AS(lf::upper_incomplete_gamma({1.0, 0.0}, 0.0), lf::ConfigError);
  CHECK_THROWS_AS(lf::upper_incomplete_gamma({1.0, 0.0}, -2.0), lf::ConfigError);
}

TEST_CASE("upper incomplete gamma recurrence G(a+1,x) = a G(a,x) + x^a e^-x") {
  struct Case {
    cplx a;
    double x;
  };
  const Case cases[] = {{{2.3, 1.1}, 0.7}, {{-4.5, 0.25}, 3.0}, {{6.0, -2.0}, 12.0},
                        {{0.5, 0.0}, 0.05}, {{10.5, 4.0}, 25.0}};
  for (const auto& c : cases) {
    cplx lhs = lf::upper_incomplete_gamma(c.a + 1.0, c.x);
    cplx rhs = c.a * lf::upper_incomplete_gamma(c.a, c.x) +
               std::exp(c.a * std::log(c.x) - c.x);
    CHECK(relerr(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("hurwitz_zeta matches reference grid with honest bounds") {
  for (const auto& r : lf::oracle::kHurwitz) {
    lf::Ev got = lf::hurwitz_zeta(r.s, r.a);
    INFO("s = ", r.s.real(), " + ", r.s.imag(), "i, a = ", r.a);
    double err = std::abs(got.value - r.ref);
    CHECK(err <= std::max(got.bound, 2e-14 * std::max(1.0, std::abs(r.ref))));
    CHECK(relerr(got.value, r.ref) < 1e-12);
  }
  // zeta(-1, 1/4) = -B_2(1/4)/2 = 1/96
  lf::Ev v = lf::hurwitz_zeta({-1.0, 0.0}, 0.25);
  CHECK(std::abs(v.value - cplx(1.0 / 96.0, 0.0)) < 1e-15);
}

TEST_CASE("riemann_zeta matches reference grid and pi^2/6") {
  for (const auto& r : lf::oracle::kZeta) {
    lf::Ev got = lf::riemann_zeta(r.z);
    CHECK(relerr(got.value, r.ref) < 1e-12);
  }
  lf::Ev z2 = lf::riemann_zeta({2.0, 0.0});
  CHECK(std::abs(z2.value - cplx(lf::kPi * lf::kPi / 6.0, 0.0)) < 1e-14);
  lf::Ev z3 = lf::riemann_zeta({3.0, 0.0});
  CHECK(std::abs(z3.value.real() - lf::oracle::kZeta3) < 1e-14);
}

TEST_CASE("hurwitz_zeta rejects bad input") {
  CHECK_THROWS_AS(lf::hurwitz_zeta({2.0, 0.0}, 0.0), lf::ConfigError);
  CHECK_THROWS_AS(lf::hurwitz_zeta({2.0, 0.0}, 1.5), lf::ConfigError);
  CHECK_THROWS_AS(lf::hurwitz_zeta({1.0, 0.0}, 0.5), lf::NumericError);
  CHECK_THROWS_AS(lf::hurwitz_zeta({-70.0, 0.0}, 0.5), lf::NumericError);
}
