#include "lf/specialfn.hpp"

#include <cmath>
#include <limits>

#include "lf/bernoulli.hpp"

namespace lf {

namespace {

// B_{2j} / (2j (2j-1)) for j = 1..12, the classical Stirling tail coefficients
constexpr double kStirlingC[12] = {
    8.3333333333333333e-2,  -2.7777777777777778e-3, 7.9365079365079365e-4,
    -5.9523809523809524e-4, 8.4175084175084175e-4,  -1.9175269175269175e-3,
    6.4102564102564103e-3,  -2.9550653594771242e-2, 1.7964437236883057e-1,
    -1.3924322169059011,    1.3402864044168392e+1,  -1.5684828462600202e+2};

// sum_j kStirlingC[j] z^{-(2j-1)} for |z| >= 12, Re z > 0
cplx stirling_tail(cplx z) {
  cplx t = 1.0 / (z * z);
  cplx acc = kStirlingC[11];
  for (int j = 10; j >= 0; --j) acc = acc * t + kStirlingC[j];
  return acc / z;
}

// log sin(pi z) on Im z >= 0, branch compatible with principal log Gamma
// reflection: sin(pi z) = e^{-i pi z} (1 - e^{2 pi i z}) * (i/2).
cplx log_sin_pi_upper(cplx z) {
  cplx q = std::exp(cplx(0.0, kTwoPi) * z);  // |q| <= 1 on Im z >= 0
  return cplx(0.0, -kPi) * z + std::log(1.0 - q) + cplx(-std::log(2.0), kPi / 2);
}

}  // namespace

cplx log_gamma(cplx z) {
  double x = z.real(), y = z.imag();
  if (std::isnan(x) || std::isnan(y)) return {x + y, 0.0};
  if (y == 0.0 && x <= 0.0 && x == std::floor(x)) {
    return {std::numeric_limits<double>::infinity(), 0.0};  // pole
  }
  if (y < 0.0 || (y == 0.0 && std::signbit(y))) {
    return std::conj(log_gamma(std::conj(z)));
  }
  if (x < 0.5) {
    // reflection through the upper half plane keeps the principal branch
    return std::log(kPi) - log_sin_pi_upper(z) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  cplx w = z;
  while (std::abs(w) < 12.0) {
    shift += std::log(w);
    w += 1.0;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * kLogTwoPi + stirling_tail(w) - shift;
}

Ev stirling_series(cplx z, cplx a, int N, double D) {
  if (N < 0 || N > 63) throw ConfigError("stirling_series: N must be in [0, 63]");
  if (!(D > 0.0)) throw ConfigError("stirling_series: D must be positive");
  double az = std::abs(z), aa = std::abs(a);
  if (!((z + a).real() >= 0.0)) {
    throw ConfigError("stirling_series: requires Re(z + a) >= 0");
  }
  if (!(aa <= 0.6 * az)) {
    throw ConfigError("stirling_series: requires |a| <= (3/5)|z|");
  }
  if (!(double(N) <= 2.0 * D * az)) {
    throw ConfigError("stirling_series: requires N <= 2 D |z|");
  }

  cplx lz = std::log(z);
  cplx val = (z + a - 0.5) * lz - z + 0.5 * kLogTwoPi;
  cplx zp = z;
  for (int j = 1; j <= N; ++j) {
    double sign = (j % 2 == 1) ? 1.0 : -1.0;
    val += sign * bernoulli_polynomial(j + 1, a) / (double(j) * double(j + 1) * zp);
    zp *= z;
  }

  double fact = 1.0;
  for (int j = 2; j <= N; ++j) fact *= double(j);
  double bound = 2.0 / std::pow(az, N + 1) *
                 ((N + aa * aa / (double(N + 1) * double(N + 1))) * std::pow(aa, N) +
                  std::pow(D, N) * fact);
  return {val, bound};
}

namespace {

// Lentz continued fraction for G(a, x), reliable once Re(a) <= x + 1.
cplx upper_gamma_cf(cplx a, double x) {
  const double tiny = 1e-290;
  cplx b = x + 1.0 - a;
  cplx f = (std::abs(b) < tiny) ? cplx(tiny) : b;
  cplx C = f, Dv = 0.0;
  for (int k = 1; k <= 5000; ++k) {
    cplx an = -double(k) * (double(k) - a);
    b += 2.0;
    Dv = b + an * Dv;
    if (std::abs(Dv) < tiny) Dv = tiny;
    Dv = 1.0 / Dv;
    C = b + an / C;
    if (std::abs(C) < tiny) C = tiny;
    cplx delta = C * Dv;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      return std::exp(-x + a * std::log(x)) / f;
    }
  }
  throw NumericError("upper_incomplete_gamma: continued fraction stalled");
}

// Power series for the lower function, then G = Gamma(a) - g(a, x); used
// when x is small relative to |a| and a is away from the Gamma poles.
cplx upper_gamma_series(cplx a, double x) {
  cplx term = 1.0 / a;
  cplx sum = term;
  for (int n = 1; n <= 5000; ++n) {
    term *= x / (a + double(n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      cplx lower = std::exp(-x + a * std::log(x)) * sum;
      return std::exp(log_gamma(a)) - lower;
    }
  }
  throw NumericError("upper_incomplete_gamma: series stalled");
}

double dist_to_nonpositive_int(cplx a) {
  if (a.real() > 0.5) return std::abs(a);
  double r = std::round(a.real());
  if (r > 0.0) r = 0.0;
  return std::hypot(a.real() - r, a.imag());
}

}  // namespace

cplx upper_incomplete_gamma(cplx a, double x) {
  if (!(x > 0.0)) throw ConfigError("upper_incomplete_gamma: requires x > 0");
  int m = 0;
  if (a.real() > x + 1.0) m = int(std::ceil(a.real() - x - 1.0));
  cplx a0 = a - double(m);
  cplx G;
  if (x >= 0.8 * std::abs(a0) + 1.0 || dist_to_nonpositive_int(a0) < 0.1) {
    G = upper_gamma_cf(a0, x);
  } else {
    G = upper_gamma_series(a0, x);
  }
  // G(a+1, x) = a G(a, x) + x^a e^{-x}
  cplx p = std::exp(-x + a0 * std::log(x));
  for (int j = 0; j < m; ++j) {
    G = (a0 + double(j)) * G + p;
    p *= x;
  }
  return G;
}

namespace {

// Euler-Maclaurin evaluation; accurate without cancellation for sigma >= -0.5,
// honest (cancellation-inflated) bound further left. With subtract_pole the
// boundary term (N+a)^{1-s}/(s-1) is replaced by ((N+a)^{1-s} - 1)/(s-1),
// computed stably, yielding zeta(s,a) - 1/(s-1) even at s = 1.
Ev hurwitz_em(cplx s, double a, double tol, bool subtract_pole = false) {
  constexpr int kMaxJ = 31;
  std::size_t N = std::size_t(std::max(16.0, 0.6 * std::abs(s.imag()) + 12.0));
  for (int attempt = 0; attempt < 8; ++attempt) {
    // sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2 + corrections
    cplx sum = 0.0;
    double abs_sum = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      cplx t = std::exp(-s * std::log(double(n) + a));
      sum += t;
      abs_sum += std::abs(t);
    }
    double Na = double(N) + a;
    double lNa = std::log(Na);
    if (subtract_pole) {
      // ((N+a)^{1-s} - 1)/(s-1) = -L phi(z), z = (s-1)L, phi = (1-e^{-z})/z
      cplx z = (s - 1.0) * lNa;
      cplx phi;
      if (std::abs(z) < 1e-4) {
        phi = 1.0 - z * (0.5 - z * (1.0 / 6.0 - z / 24.0));
      } else {
        phi = (1.0 - std::exp(-z)) / z;
      }
      sum -= lNa * phi;
    } else {
      sum += std::exp((1.0 - s) * lNa) / (s - 1.0);
    }
    cplx pw = std::exp(-s * lNa);  // (N+a)^{-s}
    sum += 0.5 * pw;

    cplx poch = s;              // (s)_{2j-1} running
    double na_pow = 1.0 / Na;   // (N+a)^{-(2j-1)} running
    for (int j = 1; j <= kMaxJ; ++j) {
      cplx corr = bernoulli_number(2 * j) * poch * pw * na_pow;
      double f = 1.0;
      for (int i = 2; i <= 2 * j; ++i) f *= i;
      corr /= f;
      sum += corr;
      // remainder estimate from the first omitted correction
      cplx poch_next = poch * (s + double(2 * j - 1)) * (s + double(2 * j));
      double sig_exp = s.real() + 2 * j + 1;
      if (sig_exp <= 0.5) {
        poch = poch_next;
        na_pow /= Na * Na;
        continue;  // not yet in the convergent regime for this sigma
      }
      double f2 = f * (2 * j + 1) * (2 * j + 2);
      double rem = std::abs(bernoulli_number(2 * j + 2)) / f2 *
                   std::abs(poch_next) * std::abs(pw) * na_pow / (Na * Na) *
                   (1.0 + std::abs(s + double(2 * j + 1)) / sig_exp);
      if (rem <= tol * std::max(1.0, std::abs(sum))) {
        return {sum, rem + 2e-15 * abs_sum};
      }
      poch = poch_next;
      na_pow /= Na * Na;
    }
    N *= 2;
    if (N > 2000000) break;
  }
  throw NumericError("hurwitz_zeta: Euler-Maclaurin tail would not reach tolerance");
}

// best rational p/q ~ a with q <= 4096, or q = 0 if none is close enough;
// per-convergent tolerance 1e-11/q as used by the reflection dispatch
void rational_snap(double a, long& p_out, long& q_out) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = a;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(x);
    if (std::abs(fl) > 1e15) break;
    long ai = long(fl);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > 4096 || q2 <= 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(a - double(p1) / double(q1)) < 1e-11 / double(q1)) {
      p_out = p1;
      q_out = q1;
      return;
    }
    double rem = x - fl;
    if (rem < 1e-15) break;
    x = 1.0 / rem;
  }
  q_out = 0;
}

}  // namespace

std::optional<std::pair<long, long>> snap_rational(double x, long qmax, double tol) {
  if (!std::isfinite(x) || qmax < 1) return std::nullopt;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double y = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(y);
    if (std::abs(fl) > 1e15) break;
    long ai = long(fl);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > qmax || q2 <= 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - double(p1) / double(q1)) <= tol) return std::make_pair(p1, q1);
    double rem = y - fl;
    if (rem < 1e-15) break;
    y = 1.0 / rem;
  }
  return std::nullopt;
}

Ev hurwitz_zeta(cplx s, double a, double tol) {
  if (!(a > 0.0 && a <= 1.0)) throw ConfigError("hurwitz_zeta: requires 0 < a <= 1");
  if (std::abs(s - 1.0) < 1e-10) throw NumericError("hurwitz_zeta: s is at the pole s = 1");
  if (s.real() < -60.0) throw NumericError("hurwitz_zeta: sigma < -60 unsupported");

  if (s.real() >= -0.5) return hurwitz_em(s, a, tol);

  // zeta(-m, a) = -B_{m+1}(a)/(m+1), exact at nonpositive integers
  if (s.imag() == 0.0 && s.real() == std::floor(s.real())) {
    int m = int(-s.real());
    if (m + 1 <= kBernoulliMax) {
      cplx v = -bernoulli_polynomial(m + 1, cplx(a, 0.0)) / double(m + 1);
      return {v, 1e-15 * std::max(1.0, std::abs(v))};
    }
  }

  // Reflection for rational a = p/q: with w = 1 - s (Re w > 1.5),
  //   zeta(s, p/q) = Gamma(w) (2 pi q)^{-w}
  //                  * sum_{r=1..q} 2 cos(pi w/2 - 2 pi r p/q) zeta(w, r/q),
  // a dual sum with decaying terms, so no cancellation blowup.
  long p = 0, q = 0;
  rational_snap(a, p, q);
  if (q > 0) {
    cplx w = 1.0 - s;
    cplx lead = log_gamma(w) - w * std::log(kTwoPi * double(q));
    cplx plus = std::exp(lead + cplx(0.0, 1.0) * (0.5 * kPi) * w);
    cplx minus = std::exp(lead - cplx(0.0, 1.0) * (0.5 * kPi) * w);
    double pe = std::max({std::abs(plus), std::abs(minus), 1.0});
    double child_tol = std::max(1e-16, tol / (2.0 * double(q) * pe));
    cplx sum_plus = 0.0, sum_minus = 0.0;
    double child_bound = 0.0, child_abs = 0.0;
    for (long r = 1; r <= q; ++r) {
      Ev zr = hurwitz_em(w, double(r) / double(q), child_tol);
      double phi = kTwoPi * double(r % q) * double(p % q) / double(q);
      sum_plus += std::polar(1.0, -phi) * zr.value;
      sum_minus += std::polar(1.0, phi) * zr.value;
      child_bound += zr.bound;
      child_abs += std::abs(zr.value);
    }
    cplx v = plus * sum_plus + minus * sum_minus;
    // 2e-14 * pe * child_abs covers roundoff of the trig arguments near the
    // trivial zeros, where the two halves cancel
    double bound = (std::abs(plus) + std::abs(minus)) * child_bound +
                   2e-14 * pe * child_abs + 1e-15 * std::abs(v);
    return {v, bound};
  }

  return hurwitz_em(s, a, tol);  // irrational a: honest but lossy deep left
}

Ev hurwitz_zeta_reg(cplx s, double a, double tol) {
  if (!(a > 0.0 && a <= 1.0)) throw ConfigError("hurwitz_zeta_reg: requires 0 < a <= 1");
  if (s.real() < -0.5) throw ConfigError("hurwitz_zeta_reg: intended near s = 1");
  return hurwitz_em(s, a, tol, true);
}

}  // namespace lf
