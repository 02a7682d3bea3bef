#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "lf/selberg.hpp"
#include "lf/specialfn.hpp"
#include "lf/twist.hpp"

using namespace lf;
using std::abs;

namespace {

const cplx I(0.0, 1.0);
const double kPi2_6 = 1.6449340668482264365;   // pi^2/6
const double kPi2_12 = 0.82246703342411321824; // pi^2/12
const double kLog2 = 0.69314718055994530942;

bool msg_contains(const std::exception& e, const char* needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

const SelbergDatum& zeta() {
  static SelbergDatum F = builtin_zeta();
  return F;
}
const SelbergDatum& chi4() {
  static SelbergDatum F = builtin_dirichlet_l(4, 3);
  return F;
}
const SelbergDatum& delta() {
  static SelbergDatum F = builtin_delta();
  return F;
}

TwistSpec linear(double alpha) { return TwistSpec{{{1.0, alpha}}}; }

// eta-style closed continuation of sum (-1)^n n^{-s} = (2^{1-s} - 1) zeta(s)
Ev alt_zeta(cplx s, double tol) {
  Ev z = evaluate(zeta(), s, tol);
  cplx f = std::exp((1.0 - s) * std::log(2.0)) - 1.0;
  return {f * z.value, std::abs(f) * z.bound};
}

// character continuation of sum e(-n/4) n^{-s}:
//   -i L(s, chi4) + 2^{-s} (2^{1-s} - 1) zeta(s)
Ev quarter_twist_zeta(cplx s, double tol) {
  Ev l = evaluate(chi4(), s, tol);
  Ev z = evaluate(zeta(), s, tol);
  cplx p = std::exp(-s * std::log(2.0));
  cplx f = p * (std::exp((1.0 - s) * std::log(2.0)) - 1.0);
  return {-I * l.value + f * z.value, l.bound + std::abs(f) * z.bound};
}

}  // namespace

TEST_CASE("twist spec validation and JSON parsing") {
  TwistSpec ok = parse_twist_spec(
      R"({"terms": [{"kappa": 1, "alpha": "1/3"}, {"kappa": "1/2", "alpha": 1}]})");
  REQUIRE(ok.terms.size() == 2);
  CHECK(ok.terms[0].kappa == 1.0);
  CHECK(ok.terms[0].alpha == 1.0 / 3.0);
  CHECK(ok.terms[1].kappa == 0.5);
  CHECK(ok.terms[1].alpha == 1.0);
  CHECK(!ok.all_zero());
  CHECK(ok.phase_at(4.0) == doctest::Approx(4.0 / 3.0 + 2.0).epsilon(1e-15));

  CHECK(TwistSpec{}.all_zero());
  CHECK(TwistSpec{{{1.0, 0.0}, {0.5, 0.0}}}.all_zero());

  // strict exponent decrease
  CHECK_THROWS_AS(TwistSpec{{{1.0, 0.1}, {1.0, 0.2}}}.validate(), ConfigError);
  CHECK_THROWS_AS(TwistSpec{{{0.5, 0.1}, {1.0, 0.2}}}.validate(), ConfigError);
  CHECK_THROWS_AS(
      (void)parse_twist_spec(R"({"terms": [{"kappa": 1, "alpha": 0}], "x": 1})"),
      ConfigError);
  try {
    (void)parse_twist_spec(R"({"terms": [{"kappa": 1, "alpha": 0, "beta": 2}]})");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(msg_contains(e, "beta"));
  }
  CHECK_THROWS_AS((void)parse_twist_spec(R"({"terms": [{"kappa": 1}]})"), ConfigError);
  CHECK_THROWS_AS((void)parse_twist_spec("[1,2]"), ConfigError);
}

TEST_CASE("spectrum membership and n_alpha") {
  // zeta: q = 1, d = 1, n_alpha = alpha
  auto h3 = spectrum_hit(zeta(), 3.0);
  REQUIRE(h3.has_value());
  CHECK(h3->n == 3);
  CHECK(abs(h3->coefficient - 1.0) < 1e-15);
  CHECK(in_spectrum(zeta(), 7.0));
  CHECK(!in_spectrum(zeta(), 0.5));
  CHECK(!spectrum_hit(zeta(), 1.0 / 3.0).has_value());

  // Delta: q = 1, d = 2, n_alpha = alpha^2/4, a(1) = 1
  auto d2 = spectrum_hit(delta(), 2.0);
  REQUIRE(d2.has_value());
  CHECK(d2->n == 1);
  CHECK(abs(d2->coefficient - 1.0) < 1e-15);
  CHECK(!spectrum_hit(delta(), 1.0).has_value());
  double r8 = 2.0 * std::sqrt(2.0);
  auto d8 = spectrum_hit(delta(), r8);
  REQUIRE(d8.has_value());
  CHECK(d8->n == 2);
  // tau(2) = -24, normalized by 2^{11/2}
  CHECK(abs(d8->coefficient - (-24.0 / std::pow(2.0, 5.5))) < 1e-14);
  CHECK(in_spectrum(delta(), r8));
  CHECK(in_spectrum(delta(), -r8));  // |alpha|

  // chi4: q = 4, n_alpha = 4 alpha; a(2) = 0 kills alpha = 1/2
  auto q1 = spectrum_hit(chi4(), 0.25);
  REQUIRE(q1.has_value());
  CHECK(q1->n == 1);
  CHECK(!in_spectrum(chi4(), 0.5));

  CHECK_THROWS_AS((void)spectrum_hit(zeta(), -1.0), ConfigError);
}

TEST_CASE("direct twist sum: exact pins and route selection") {
  // sum (-1)^n / n^2 = -pi^2/12
  Ev v = direct_twist_sum(zeta(), linear(0.5), cplx(2.0, 0.0), 1e-10);
  CHECK(abs(v.value - cplx(-kPi2_12)) <= v.bound + 1e-11);
  CHECK(v.bound <= 1e-8);

  // all-zero twist falls through to the plain evaluator
  Ev e0 = direct_twist_sum(zeta(), TwistSpec{{{1.0, 0.0}}}, cplx(2.0, 0.0), 1e-12);
  Ev ref = evaluate(zeta(), cplx(2.0, 0.0), 1e-12);
  CHECK(e0.value == ref.value);

  // integer alpha: e(-3n) = 1
  Ev e3 = direct_twist_sum(zeta(), linear(3.0), cplx(2.0, 0.0), 1e-10);
  CHECK(abs(e3.value - cplx(kPi2_6)) <= e3.bound + 1e-11);

  // divergence and budget failures
  try {
    (void)direct_twist_sum(zeta(), linear(0.5), cplx(0.8, 0.0), 1e-8);
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(msg_contains(e, "diverge"));
  }
  try {
    (void)direct_twist_sum(delta(), TwistSpec{{{0.5, 1.0}}}, cplx(2.0, 0.0), 1e-9,
                           20000);
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(msg_contains(e, "budget"));
  }
}

TEST_CASE("direct twist sum agrees with the Hurwitz route across sigma") {
  // dual methods: residue-class Abel-Plana tails vs Hurwitz decomposition
  for (double sigma : {1.2, 1.5, 2.0, 2.6, 3.0}) {
    for (double t : {0.0, 1.3}) {
      cplx s(sigma, t);
      Ev a = direct_twist_sum(zeta(), linear(1.0 / 3.0), s, 1e-10);
      Ev b = lerch_oracle(1.0 / 3.0, s, 1e-12);
      CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-12);
      CHECK(abs(a.value - b.value) <= 1e-8);
    }
  }
  // chi4 against its periodic decomposition
  for (double sigma : {1.2, 2.0, 3.0}) {
    cplx s(sigma, 0.7);
    Ev a = direct_twist_sum(chi4(), linear(0.25), s, 1e-10);
    Ev b = periodic_twist_oracle(chi4(), 0.25, s, 1e-12);
    CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-12);
    CHECK(abs(a.value - b.value) <= 1e-8);
  }
}

TEST_CASE("lerch oracle: closed forms and whole-plane continuation") {
  // alternating-series pins
  Ev v2 = lerch_oracle(0.5, cplx(2.0, 0.0));
  CHECK(abs(v2.value - cplx(-kPi2_12)) <= v2.bound + 1e-13);
  Ev v0 = lerch_oracle(0.5, cplx(0.0, 0.0));
  CHECK(abs(v0.value - cplx(-0.5)) <= v0.bound + 1e-12);
  Ev vm1 = lerch_oracle(0.5, cplx(-1.0, 0.0));
  CHECK(abs(vm1.value - cplx(-0.25)) <= vm1.bound + 1e-12);
  // s = 1: the would-be pole cancels, value -log 2
  Ev v1 = lerch_oracle(0.5, cplx(1.0, 0.0));
  CHECK(abs(v1.value - cplx(-kLog2)) <= v1.bound + 1e-10);

  // integer alpha: zeta, with its pole refused
  Ev z3 = lerch_oracle(2.0, cplx(3.0, 0.0));
  Ev z3r = evaluate(zeta(), cplx(3.0, 0.0), 1e-12);
  CHECK(abs(z3.value - z3r.value) <= z3.bound + z3r.bound + 1e-14);
  CHECK_THROWS_AS((void)lerch_oracle(2.0, cplx(1.0, 0.0)), NumericError);

  // alpha = 1/3, s = -1: Bernoulli closed form zeta(-1, a) = -B_2(a)/2
  auto zb = [](double a) { return -(a * a - a + 1.0 / 6.0) / 2.0; };
  cplx expect = 3.0 * (e2pi(-1.0 / 3.0) * zb(1.0 / 3.0) +
                       e2pi(-2.0 / 3.0) * zb(2.0 / 3.0) + zb(1.0));
  Ev v13 = lerch_oracle(1.0 / 3.0, cplx(-1.0, 0.0));
  CHECK(abs(v13.value - expect) <= v13.bound + 1e-13);

  // eta continuation across the plane
  for (double sigma : {-2.0, -1.2, -0.3, 0.5, 1.6, 3.0}) {
    for (double t : {0.0, 1.7}) {
      cplx s(sigma, t);
      Ev a = lerch_oracle(0.5, s, 1e-11);
      Ev b = alt_zeta(s, 1e-12);
      CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-9 * std::max(1.0, abs(b.value)));
    }
  }
  // quarter-twist character continuation, sigma in [-2, 0.5]
  for (int j = 0; j < 10; ++j) {
    cplx s(-2.0 + 2.5 * j / 9.0, (j % 2 == 0) ? 0.4 : 1.1);
    Ev a = lerch_oracle(0.25, s, 1e-11);
    Ev b = quarter_twist_zeta(s, 1e-12);
    CHECK(abs(a.value - b.value) <= 1e-6);
    CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-9 * std::max(1.0, abs(b.value)));
  }

  // irrational alpha: cross the partial-summation route against the plain
  // certified Dirichlet route of the twisted sum
  double al = 1.0 / std::sqrt(2.0);
  cplx s(2.5, 0.7);
  Ev a = lerch_oracle(al, s, 1e-10);
  Ev b = direct_twist_sum(zeta(), linear(al), s, 1e-10);
  CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-12);
  CHECK_THROWS_AS((void)lerch_oracle(al, cplx(0.01, 0.0), 1e-10), NumericError);
}

TEST_CASE("periodic twist oracle: chi4 closed form and residues") {
  // chi4(n) e(-n/4) has period 4 with entries {-i, 0, -i, 0}:
  // the twist equals -i (1 - 2^{-s}) zeta(s) identically
  for (cplx s : {cplx(2.0, 0.0), cplx(0.3, 0.0), cplx(-1.4, 0.8), cplx(1.12, 0.0)}) {
    Ev got = periodic_twist_oracle(chi4(), 0.25, s, 1e-11);
    Ev z = evaluate(zeta(), s, 1e-12);
    cplx want = -I * (1.0 - std::exp(-s * std::log(2.0))) * z.value;
    CHECK(abs(got.value - want) <= got.bound + 2.0 * z.bound + 1e-9 * std::max(1.0, abs(want)));
  }
  // residue at s = 1: (1/4) sum chi4(b) e(-b/4) = -i/2
  CHECK(abs(periodic_twist_residue(chi4(), 0.25) - (-0.5 * I)) < 1e-14);
  CHECK(abs(periodic_twist_residue(zeta(), 1.0 / 3.0)) == 0.0);
  CHECK(abs(periodic_twist_residue(zeta(), 2.0) - 1.0) < 1e-14);
  CHECK_THROWS_AS((void)periodic_twist_oracle(chi4(), 0.25, cplx(1.0, 0.0), 1e-10),
                  NumericError);
  CHECK_THROWS_AS((void)periodic_twist_oracle(delta(), 0.25, cplx(2.0, 0.0), 1e-10),
                  ConfigError);
}

TEST_CASE("smoothed sums: limits, independent order, Cahen-Mellin") {
  // X -> infinity recovers zeta(2) for integer alpha
  double prev = 1e9;
  for (double X : {10.0, 100.0, 1000.0}) {
    Ev v = smoothed_FX(zeta(), 1.0, cplx(2.0, 0.0), X, 1e-9);
    double err = abs(v.value - cplx(kPi2_6));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.05);

  // alpha -> 0 recovers the plain value
  Ev small = smoothed_FX(zeta(), 1e-4, cplx(3.0, 0.0), 10.0, 1e-8);
  Ev z3 = evaluate(zeta(), cplx(3.0, 0.0), 1e-12);
  CHECK(abs(small.value - z3.value) < 0.01);

  // same sum, independent summation order: z_X = 2 pi (1/2)(1/100 + i)
  Ev s100 = smoothed_FX(zeta(), 0.5, cplx(2.0, 0.0), 100.0, 1e-12);
  cplx hand = 0.0;
  for (int n = 60000; n >= 1; --n) {
    double sign = (n % 2 == 0) ? 1.0 : -1.0;  // e(-n/2)
    hand += sign * std::exp(-kPi * n / 100.0) / (double(n) * double(n));
  }
  CHECK(abs(s100.value - hand) <= s100.bound + 1e-12);

  // single-coefficient datum: F_X = e^{-z_X}, and Mellin-Barnes must
  // reproduce the Cahen-Mellin integral
  SelbergDatum unit =
      make_datum(1.0, 1.0, {{0.5, cplx(0.0, 0.0)}}, CoefficientStream::from_table({1.0}),
                 0, 0.0, 1.0, 0.0, "unit");
  cplx zx = kTwoPi * 1.0 * cplx(0.1, 1.0);
  Ev u = smoothed_FX(unit, 1.0, cplx(2.0, 0.0), 10.0, 1e-12);
  CHECK(abs(u.value - std::exp(-zx)) <= u.bound + 1e-14);
  Ev m = mellin_barnes_FX(unit, 1.0, cplx(2.0, 0.0), 10.0, 1e-10);
  CHECK(abs(m.value - std::exp(-zx)) <= m.bound + 1e-9);
}

TEST_CASE("Mellin-Barnes representation equals the smoothed sum") {
  struct Row {
    const SelbergDatum* F;
    double alpha, X;
    cplx s;
  };
  const Row rows[] = {
      {&zeta(), 1.0, 10.0, {2.0, 0.0}},
      {&zeta(), 0.5, 25.0, {1.4, 0.9}},
      {&delta(), 1.0, 10.0, {2.5, 0.0}},
  };
  for (const Row& r : rows) {
    Ev a = smoothed_FX(*r.F, r.alpha, r.s, r.X, 1e-9);
    Ev b = mellin_barnes_FX(*r.F, r.alpha, r.s, r.X, 1e-8);
    CHECK(abs(a.value - b.value) <= 1e-6);
    CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-8);
  }
  CHECK_THROWS_AS((void)smoothed_FX(zeta(), -1.0, cplx(2.0, 0.0), 10.0, 1e-8),
                  ConfigError);
  CHECK_THROWS_AS((void)smoothed_FX(zeta(), 1e-9, cplx(1.1, 0.0), 1e6, 1e-13),
                  NumericError);
}

TEST_CASE("Richardson extrapolation of the smoothed sum hits the twist") {
  // alternating pin once more, now through the X-ladder
  Ev v = smoothed_FX_extrapolated(zeta(), 0.5, cplx(2.0, 0.0), 1e-9, 256.0);
  CHECK(abs(v.value - cplx(-kPi2_12)) <= 1e-8);

  // three-route agreement at mixed points (direct / ladder / Hurwitz)
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> us(1.2, 3.0), ut(0.1, 2.0);
  for (int j = 0; j < 20; ++j) {
    cplx s(us(rng), ut(rng));
    Ev a = direct_twist_sum(zeta(), linear(0.5), s, 1e-10);
    Ev b = smoothed_FX_extrapolated(zeta(), 0.5, s, 1e-9, 256.0);
    Ev c = lerch_oracle(0.5, s, 1e-11);
    CHECK(abs(a.value - c.value) <= 1e-8);
    CHECK(abs(b.value - c.value) <= 1e-8);
    CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-9);
  }
  for (int j = 0; j < 10; ++j) {
    cplx s(us(rng), ut(rng));
    Ev a = direct_twist_sum(chi4(), linear(0.25), s, 1e-10);
    Ev b = smoothed_FX_extrapolated(chi4(), 0.25, s, 1e-9, 256.0);
    Ev c = periodic_twist_oracle(chi4(), 0.25, s, 1e-11);
    CHECK(abs(a.value - c.value) <= 1e-8);
    CHECK(abs(b.value - c.value) <= 1e-8);
  }
}

TEST_CASE("series twist: dual route, stability, refusals") {
  GrowthClass entire1{1.0, 1.0};
  Evaluator l4 = datum_evaluator(chi4());

  // chi4, lambda = 1/2, alpha = 1 against the direct sum
  Ev a = series_twist(l4, entire1, 0.5, 1.0, cplx(3.0, 0.0), 1e-10);
  Ev b = direct_twist_sum(chi4(), TwistSpec{{{0.5, 1.0}}}, cplx(3.0, 0.0), 1e-10);
  CHECK(abs(a.value - b.value) <= 1e-8);
  CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-12);

  // continuation region: two truncation depths agree
  Ev d1 = series_twist(l4, entire1, 0.5, 1.0, cplx(-2.0, 0.0), 1e-8);
  Ev d2 = series_twist(l4, entire1, 0.5, 1.0, cplx(-2.0, 0.0), 1e-11);
  CHECK(abs(d1.value - d2.value) <= 1e-8);
  CHECK(abs(d1.value - d2.value) <= d1.bound + 1e-12);

  // alpha = 0 short-circuits to the base
  Ev base = l4(cplx(2.2, 0.3), 1e-10);
  Ev same = series_twist(l4, entire1, 0.5, 0.0, cplx(2.2, 0.3), 1e-10);
  CHECK(base.value == same.value);

  // truncation monotonicity: looser runs stay within their own bound of
  // the tight run
  Ev tight = series_twist(l4, entire1, 0.5, 1.0, cplx(2.3, 0.0), 1e-12);
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    Ev loose = series_twist(l4, entire1, 0.5, 1.0, cplx(2.3, 0.0), tol);
    CHECK(abs(loose.value - tight.value) <= loose.bound + tight.bound + 1e-13);
  }

  // pole-bearing base: zeta with residue 1, checked against the direct sum
  Evaluator ze = datum_evaluator(zeta());
  Ev p = series_twist(ze, entire1, 0.5, 1.0, cplx(2.3, 0.0), 1e-10, 1.0);
  Ev q = direct_twist_sum(zeta(), TwistSpec{{{0.5, 1.0}}}, cplx(2.3, 0.0), 1e-10);
  CHECK(abs(p.value - q.value) <= 1e-8);
  CHECK(abs(p.value - q.value) <= p.bound + q.bound + 1e-12);

  // refusals: lambda too large, and s on the removable lattice
  CHECK_THROWS_AS(
      (void)series_twist(ze, entire1, 1.0, 0.5, cplx(2.0, 0.0), 1e-8, 1.0),
      ConfigError);
  try {
    (void)series_twist(ze, entire1, 0.5, 1.0, cplx(2.5, 0.0), 1e-8, 1.0);
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(msg_contains(e, "lattice"));
  }
}

TEST_CASE("frequency set: closed form, census, factorial decay") {
  // single term: A(m kappa) = (-2 pi i alpha)^m / m!
  FrequencySet fs = frequency_set(TwistSpec{{{-0.7, 0.3}}}, 10.0);
  REQUIRE(fs.omega.size() >= 14);
  cplx c = 1.0;
  for (std::size_t m = 0; m < 14; ++m) {
    if (m > 0) c *= cplx(0.0, -kTwoPi * 0.3) / double(m);
    CHECK(fs.omega[m] == doctest::Approx(0.7 * double(m)).epsilon(1e-13));
    CHECK(abs(fs.coeff[m] - c) <= 1e-15 * std::max(1.0, abs(c)));
  }

  // census: #{omega <= x} << x^{N+1}
  const TwistSpec specs[] = {
      TwistSpec{{{-1.0, 0.1}}},
      TwistSpec{{{-1.0, 0.1}, {-2.0, 0.3}}},
      TwistSpec{{{-0.5, 0.2}, {-1.0, 0.1}, {-2.0, 0.3}}},
  };
  for (const TwistSpec& f : specs) {
    double N = double(f.terms.size());
    for (double x : {5.0, 20.0, 50.0}) {
      FrequencySet g = frequency_set(f, x);
      double count = 0;
      for (double om : g.omega) {
        if (om <= x) count += 1.0;
      }
      CHECK(count <= 2.0 * std::pow(x, N + 1.0));
    }
  }

  // Lemma-style decay: log |A| <= -c omega log omega with some c > 0
  FrequencySet g = frequency_set(TwistSpec{{{-1.0, 0.4}, {-2.0, 0.2}}}, 40.0);
  double cmin = 1e9;
  for (std::size_t j = 0; j < g.omega.size(); ++j) {
    if (g.omega[j] < 5.0 || abs(g.coeff[j]) == 0.0) continue;
    double fit = -std::log(abs(g.coeff[j])) / (g.omega[j] * std::log(g.omega[j]));
    cmin = std::min(cmin, fit);
  }
  CHECK(cmin > 0.0);

  CHECK_THROWS_AS((void)frequency_set(TwistSpec{{{0.5, 1.0}}}, 10.0), ConfigError);
}

TEST_CASE("negative twist agrees with direct summation") {
  // one term
  TwistSpec f1{{{-1.0, 0.1}}};
  Ev a = negative_twist(zeta(), f1, cplx(2.0, 0.0), 1e-10);
  Ev b = direct_twist_sum(zeta(), f1, cplx(2.0, 0.0), 1e-10);
  CHECK(abs(a.value - b.value) <= 1e-8);
  CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-12);

  // two terms across sigma
  TwistSpec f2{{{-1.0, 0.1}, {-2.0, 0.3}}};
  for (double sigma : {1.5, 2.1, 3.0}) {
    for (double t : {0.0, 0.9}) {
      cplx s(sigma, t);
      Ev x = negative_twist(zeta(), f2, s, 1e-10);
      Ev y = direct_twist_sum(zeta(), f2, s, 1e-10);
      CHECK(abs(x.value - y.value) <= 1e-8);
      CHECK(abs(x.value - y.value) <= x.bound + y.bound + 1e-12);
    }
  }

  // all alpha zero short-circuits
  Ev z0 = negative_twist(zeta(), TwistSpec{{{-1.0, 0.0}}}, cplx(2.0, 0.0), 1e-12);
  Ev zr = evaluate(zeta(), cplx(2.0, 0.0), 1e-12);
  CHECK(z0.value == zr.value);

  CHECK_THROWS_AS(
      (void)negative_twist(zeta(), TwistSpec{{{0.5, 1.0}}}, cplx(2.0, 0.0), 1e-8),
      ConfigError);
}

TEST_CASE("compose twist: pipeline vs direct summation") {
  // two-exponent fixture
  TwistSpec fix{{{1.0, 1.0 / 3.0}, {0.5, 1.0}}};
  Ev a = compose_twist(zeta(), fix, cplx(2.0, 0.0), 1e-9);
  Ev b = direct_twist_sum(zeta(), fix, cplx(2.0, 0.0), 1e-10);
  CHECK(abs(a.value - b.value) <= 1e-7);
  CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-12);

  // single-term composition is the standard-twist evaluator itself
  Ev c1 = compose_twist(zeta(), linear(1.0 / 3.0), cplx(2.2, 0.0), 1e-10);
  Ev c2 = periodic_twist_oracle(zeta(), 1.0 / 3.0, cplx(2.2, 0.0), 1e-10);
  CHECK(c1.value == c2.value);

  // alpha_0 = 0 base with a series stage: depth consistency at s = -1
  TwistSpec half{{{1.0, 0.0}, {0.5, 1.0}}};
  Ev h1 = compose_twist(zeta(), half, cplx(-1.0, 0.0), 1e-7);
  Ev h2 = compose_twist(zeta(), half, cplx(-1.0, 0.0), 1e-10);
  CHECK(abs(h1.value - h2.value) <= 1e-7);

  // entirety proxy: finite and truncation-stable left of the strip
  for (double sigma : {-3.0, -1.0, 0.0}) {
    cplx s(sigma, 0.0);
    Ev v1 = compose_twist(zeta(), half, s, 1e-6);
    Ev v2 = compose_twist(zeta(), half, s, 1e-9);
    CHECK(std::isfinite(abs(v1.value)));
    CHECK(abs(v1.value - v2.value) <= 1e-6 + v1.bound);
  }

  // in-spectrum base (chi4, alpha = 1/4 has residue -i/2) with a stage
  TwistSpec mix{{{1.0, 0.25}, {0.5, 0.5}}};
  cplx sm(2.3, 0.4);
  Ev m1 = compose_twist(chi4(), mix, sm, 1e-9);
  Ev m2 = direct_twist_sum(chi4(), mix, sm, 1e-10);
  CHECK(abs(m1.value - m2.value) <= 1e-8);
  CHECK(abs(m1.value - m2.value) <= m1.bound + m2.bound + 1e-12);

  // trailing negative exponents
  TwistSpec trail{{{1.0, 1.0 / 3.0}, {-1.0, 0.2}}};
  Ev t1 = compose_twist(zeta(), trail, cplx(2.0, 0.0), 1e-9);
  Ev t2 = direct_twist_sum(zeta(), trail, cplx(2.0, 0.0), 1e-10);
  CHECK(abs(t1.value - t2.value) <= 1e-8);

  // constant phase from a kappa = 0 entry
  TwistSpec shift{{{1.0, 1.0 / 3.0}, {0.0, 0.25}}};
  Ev p1 = compose_twist(zeta(), shift, cplx(2.0, 0.0), 1e-10);
  Ev p2 = direct_twist_sum(zeta(), shift, cplx(2.0, 0.0), 1e-10);
  CHECK(abs(p1.value - p2.value) <= 1e-8);
  Ev p3 = compose_twist(zeta(), linear(1.0 / 3.0), cplx(2.0, 0.0), 1e-10);
  CHECK(abs(p1.value - e2pi(-0.25) * p3.value) <= p1.bound + p3.bound + 1e-12);

  // refusals
  CHECK_THROWS_AS(
      (void)compose_twist(delta(), TwistSpec{{{0.5, 1.0}, {0.25, 1.0}}}, cplx(2.0, 0.0), 1e-8),
      ConfigError);
  CHECK_THROWS_AS(
      (void)compose_twist(zeta(), TwistSpec{{{0.5, 1.0}}}, cplx(2.0, 0.0), 1e-8),
      ConfigError);
  try {
    (void)compose_twist(delta(), TwistSpec{{{0.5, 1.0}, {0.25, 1.0}}}, cplx(2.0, 0.0), 1e-8);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(msg_contains(e, "unsupported"));
  }
}

TEST_CASE("conjugation law F(s, -f) = conj(dual F at conj s, f)") {
  struct Row {
    const SelbergDatum* F;
    double kappa, alpha, tol, slack;
  };
  const Row rows[] = {
      {&zeta(), 1.0, 0.37, 1e-10, 1e-10},
      {&chi4(), 1.0, 0.37, 1e-10, 1e-10},
      {&delta(), 0.5, 1.0, 1e-4, 1e-6},
  };
  for (const Row& r : rows) {
    cplx s(2.1, 0.8);
    SelbergDatum dual = conjugate(*r.F);
    Ev lhs = direct_twist_sum(*r.F, TwistSpec{{{r.kappa, -r.alpha}}}, s, r.tol);
    Ev rhs = direct_twist_sum(dual, TwistSpec{{{r.kappa, r.alpha}}}, std::conj(s), r.tol);
    CHECK(abs(lhs.value - std::conj(rhs.value)) <= lhs.bound + rhs.bound + r.slack);
  }
}

TEST_CASE("Delta standard twist: direct vs extrapolated smoothing") {
  // sigma = 2: the direct sum runs on the envelope route (coarse certified
  // bound), while the true agreement with the X-ladder is far tighter
  cplx s(2.0, 0.0);
  Ev direct = direct_twist_sum(delta(), TwistSpec{{{0.5, 1.0}}}, s, 1e-3, 200000);
  Ev ladder = smoothed_FX_extrapolated(delta(), 1.0, s, 1e-6, 48.0);
  CHECK(abs(direct.value - ladder.value) <= 1e-6);

  // method agreement within combined bounds at scattered points
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> us(1.5, 3.0), ut(0.3, 2.0);
  for (int j = 0; j < 6; ++j) {
    cplx sj(us(rng), ut(rng));
    double tol = std::max(1e-8, 30.0 * std::pow(2e5, -(sj.real() - 1.0)));
    Ev a = direct_twist_sum(delta(), TwistSpec{{{0.5, 1.0}}}, sj, tol, 200000);
    Ev b = smoothed_FX_extrapolated(delta(), 1.0, sj, 1e-5, 24.0);
    CHECK(abs(a.value - b.value) <= a.bound + b.bound + 1e-6);
  }
}
