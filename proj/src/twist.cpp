#include "lf/twist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "lf/quadrature.hpp"
#include "lf/specialfn.hpp"

namespace lf {

// ------------------------------------------------------------- TwistSpec

void TwistSpec::validate() const {
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (!std::isfinite(terms[j].kappa) || !std::isfinite(terms[j].alpha)) {
      throw ConfigError("twist spec: entries must be finite");
    }
    if (j > 0 && !(terms[j].kappa < terms[j - 1].kappa - 1e-12)) {
      throw ConfigError("twist spec: exponents must strictly decrease");
    }
  }
}

bool TwistSpec::all_zero() const {
  for (const auto& t : terms) {
    if (t.alpha != 0.0) return false;
  }
  return true;
}

double TwistSpec::phase_at(double x) const {
  double f = 0.0;
  for (const auto& t : terms) {
    if (t.alpha != 0.0) f += t.alpha * std::pow(x, t.kappa);
  }
  return f;
}

// --------------------------------------------------------------- helpers

namespace {

inline cplx pow_real(double x, cplx e) { return std::exp(e * std::log(x)); }

// compensated accumulator for long oscillating sums
struct KahanSum {
  cplx acc = 0.0, comp = 0.0;
  double abs_acc = 0.0;
  void add(cplx t) {
    cplx y = t - comp;
    cplx u = acc + y;
    comp = (u - acc) - y;
    acc = u;
    abs_acc += std::abs(t);
  }
};

// phase terms with kappa strictly below 1 (the sub-linear part of a twist)
using SubPhase = std::vector<TwistTerm>;

double subphase_at(const SubPhase& ft, double x) {
  double f = 0.0;
  for (const auto& t : ft) f += t.alpha * std::pow(x, t.kappa);
  return f;
}

cplx subphase_at(const SubPhase& ft, cplx t) {
  cplx f = 0.0;
  cplx lt = std::log(t);
  for (const auto& q : ft) f += q.alpha * std::exp(q.kappa * lt);
  return f;
}

// largest positive exponent carrying a nonzero coefficient, or 0 terms
const TwistTerm* leading_positive(const SubPhase& ft) {
  for (const auto& t : ft) {
    if (t.kappa > 0.0 && t.alpha != 0.0) return &t;
  }
  return nullptr;
}

// int_{xM}^inf x^{-s} e(-ft(x)) dx.
//  - empty phase: closed form xM^{1-s}/(s-1);
//  - negative exponents only: expand e(-ft) into powers of x (every factor
//    is small once 2 pi |alpha| xM^kappa <= 1/2), integrate term by term;
//  - a positive leading exponent: rotate the ray to e^{i phi} u with
//    phi = -(pi/2) sign(alpha_lead), where the phase factor decays like
//    exp(-2 pi |alpha_lead| sin(kappa pi/2) u^kappa), and integrate by
//    tanh-sinh after u = xM v/(1-v).
Ev line_integral(cplx s, const SubPhase& ft, double xM, double qtol) {
  if (ft.empty()) {
    cplx v = pow_real(xM, 1.0 - s) / (s - 1.0);
    return {v, 1e-15 * std::abs(v)};
  }
  const TwistTerm* lead = leading_positive(ft);
  if (lead == nullptr) {
    // expansion of prod_nu exp(-2 pi i alpha_nu x^{kappa_nu}) in powers
    // of x; term magnitudes judged at x = xM, where every factor argument
    // is at most 1/2 in modulus
    struct Mono {
      cplx c;
      double e;
    };
    std::vector<Mono> expansion{{1.0, 0.0}};
    const double keep = 1e-18;
    for (const auto& t : ft) {
      if (t.alpha == 0.0) continue;
      std::vector<Mono> next;
      for (const auto& m : expansion) {
        double base = std::abs(m.c) * std::pow(xM, m.e);
        cplx fac = 1.0;
        double fac_mag = 1.0;
        for (int k = 0; k <= 200; ++k) {
          if (k > 0) {
            fac *= cplx(0.0, -kTwoPi * t.alpha) / double(k);
            fac_mag *= kTwoPi * std::abs(t.alpha) * std::pow(xM, t.kappa) / double(k);
          }
          next.push_back({m.c * fac, m.e + t.kappa * double(k)});
          if (base * fac_mag < keep) break;
        }
      }
      expansion.swap(next);
      if (expansion.size() > 20000) {
        throw NumericError("direct twist sum: tail expansion too large");
      }
    }
    cplx acc = 0.0;
    for (const auto& m : expansion) {
      acc += m.c * pow_real(xM, 1.0 - s + m.e) / (s - 1.0 - m.e);
    }
    double bnd = double(expansion.size() + 8) * keep *
                 std::pow(xM, 1.0 - s.real()) / std::max(0.05, s.real() - 1.0);
    return {acc, bnd + 1e-15 * std::abs(acc)};
  }
  // rotated ray
  double phi = (lead->alpha > 0.0) ? -0.5 * kPi : 0.5 * kPi;
  cplx dir = expi(phi);
  double U = xM;
  auto g = [&](double v) -> cplx {
    double u = U * v / (1.0 - v);
    cplx t = xM + dir * u;
    cplx lt = std::log(t);
    cplx ph = -s * lt - cplx(0.0, kTwoPi) * subphase_at(ft, t);
    if (ph.real() < -700.0) return 0.0;
    double jac = U / ((1.0 - v) * (1.0 - v));
    return std::exp(ph) * jac;
  };
  Ev q = tanh_sinh(g, 0.0, 1.0, qtol, 14);
  cplx v = dir * q.value;
  return {v, q.bound + 1e-15 * std::abs(v)};
}

// Abel-Plana evaluation of sum_{m>=0} e(-ft(x_m)) x_m^{-s}, x_m = xM + m P:
//   (1/2) G(0) + (1/P) int_{xM}^inf g(x) dx
//     + i int_0^inf [G(iy) - G(-iy)] / (e^{2 pi y} - 1) dy
// with G(z) = g(xM + P z), g(x) = e(-ft(x)) x^{-s}. The difference in the
// arc integrand is computed from half-sum and half-difference exponents
// (stable for small y). Requires sigma > 1 and analyticity on Re x >= xM,
// which holds for principal-branch power phases.
Ev abel_plana_tail(cplx s, const SubPhase& ft, double xM, double P, double qtol) {
  // boundary term
  cplx g0 = std::exp(-s * std::log(xM) - cplx(0.0, kTwoPi) * subphase_at(ft, xM));

  Ev line = line_integral(s, ft, xM, qtol * P);

  // arc integrand H(y) = 2 i e^{hbar} sinh(delta) / expm1(2 pi y)
  auto arc = [&](double y) -> cplx {
    double py = P * y;
    double r = std::hypot(xM, py);
    double th = std::atan2(py, xM);
    double re_f = 0.0, im_f = 0.0;
    for (const auto& t : ft) {
      double rk = std::pow(r, t.kappa);
      re_f += t.alpha * rk * std::cos(t.kappa * th);
      im_f += t.alpha * rk * std::sin(t.kappa * th);
    }
    cplx hbar = -s * std::log(r) - cplx(0.0, kTwoPi) * re_f;
    cplx delta = cplx(0.0, -th) * s + kTwoPi * im_f;
    if (hbar.real() + std::abs(delta) > 650.0) {
      throw NumericError("direct twist sum: tail integrand overflow");
    }
    double den = std::expm1(kTwoPi * y);
    return cplx(0.0, 2.0) * std::exp(hbar) * std::sinh(delta) / den;
  };

  double Y = 4.0;
  for (int it = 0; it < 40 && std::abs(arc(Y)) > 0.01 * qtol; ++it) Y *= 1.5;
  Ev arcq = tanh_sinh(arc, 0.0, Y, 0.5 * qtol, 14);
  double arc_tail = 0.5 * std::abs(arc(Y));

  cplx value = 0.5 * g0 + line.value / P + arcq.value;
  double bound = line.bound / P + arcq.bound + arc_tail + 1e-15 * std::abs(g0);
  return {value, bound};
}

// distance from z to the nonpositive integers (the Gamma pole lattice)
double dist_to_pole_lattice(cplx z) {
  double re = z.real(), im = z.imag();
  double r = std::round(re);
  if (r > 0.0) r = 0.0;
  return std::hypot(re - r, im);
}

// smallest power-of-two N with tail C (N^{th-sig+1}/(sig-th-1) + N^{th-sig})
// <= tol/2, or 0 when none exists below the cap
std::size_t plain_terms(double C, double th, double sigma, double tol, std::size_t cap) {
  if (!(sigma > th + 1.05)) return 0;
  for (std::size_t N = 64;; N *= 2) {
    double t = C * (std::pow(double(N), th - sigma + 1.0) / (sigma - th - 1.0) +
                    std::pow(double(N), th - sigma));
    if (t <= 0.5 * tol) return N;
    if (N >= cap) return 0;
  }
}

}  // namespace

// ------------------------------------------------------------ evaluators

Evaluator datum_evaluator(const SelbergDatum& F) {
  SelbergDatum copy = F;
  return [copy](cplx s, double tol) { return evaluate(copy, s, tol); };
}

std::optional<SpectrumHit> spectrum_hit(const SelbergDatum& F, double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("spectrum: alpha must be positive");
  DerivedInvariants inv = derive_invariants(F);
  double d = inv.degree;
  double na = inv.conductor * std::pow(alpha / d, d);
  double rounded = std::round(na);
  if (rounded < 1.0 || std::abs(na - rounded) > 1e-9 * std::max(1.0, na)) {
    return std::nullopt;
  }
  if (rounded > double(std::size_t(1) << 23)) {
    throw NumericError("spectrum: candidate index exceeds the coefficient budget");
  }
  long n = long(rounded);
  cplx a = F.coefficients.a(std::size_t(n));
  if (std::abs(a) <= 1e-12) return std::nullopt;
  return SpectrumHit{n, a};
}

bool in_spectrum(const SelbergDatum& F, double alpha) {
  if (alpha == 0.0) return false;
  return spectrum_hit(F, std::abs(alpha)).has_value();
}

// ------------------------------------------------------ direct summation

Ev direct_twist_sum(const SelbergDatum& F, const TwistSpec& f, cplx s, double tol,
                    std::size_t budget) {
  f.validate();
  if (f.terms.empty() || f.all_zero()) return evaluate(F, s, tol);
  double sigma = s.real();

  // exact route: finite coefficient table
  if (std::size_t L = F.coefficients.finite_length()) {
    KahanSum ks;
    for (std::size_t n = 1; n <= L; ++n) {
      cplx a = F.coefficients.a(n);
      if (a == 0.0) continue;
      ks.add(a * e2pi(-f.phase_at(double(n))) * pow_real(double(n), -s));
    }
    return {ks.acc, (4.0 + std::abs(s)) * 1e-16 * ks.abs_acc};
  }

  // periodic route: residue classes mod lcm(period, r) with analytic tails
  long P0 = F.coefficient_period;
  double kappa_max = f.terms.front().kappa;
  if (P0 > 0 && sigma > 1.05 && kappa_max <= 1.0 + 1e-12) {
    long p = 0, r = 1;
    SubPhase ft;
    bool shape_ok = true;
    for (const auto& t : f.terms) {
      if (t.alpha == 0.0) continue;
      if (std::abs(t.kappa - 1.0) <= 1e-12) {
        auto pq = snap_rational(t.alpha, 4096);
        if (!pq) {
          shape_ok = false;  // irrational linear frequency: no analytic tail
          break;
        }
        p = pq->first;
        r = pq->second;
      } else {
        ft.push_back(t);
      }
    }
    long P = shape_ok ? std::lcm(P0, r) : 0;
    if (shape_ok && P > 0 && P <= 100000) {
      // cut chosen so every expansion factor in the tails is small and the
      // arc/ray integrands are tame
      double xcut = std::max(64.0, 8.0 * (std::abs(s) + 2.0));
      for (const auto& t : ft) {
        double a2 = kTwoPi * std::abs(t.alpha);
        if (t.kappa < 0.0) {
          xcut = std::max(xcut, std::pow(2.0 * a2, 1.0 / -t.kappa));
        } else if (t.kappa > 0.0 && t.kappa < 1.0) {
          xcut = std::max(xcut, std::pow(a2 + 1.0, 1.0 / (1.0 - t.kappa)));
        }
      }
      xcut = std::min(xcut, 1e6);
      F.coefficients.materialize(std::size_t(xcut) + std::size_t(P) + 2);

      auto m_start = [&](long b) {
        return long(std::max(0.0, std::ceil((xcut - double(b)) / double(P))));
      };
      // head: every n below its class boundary b + M_b P
      KahanSum head;
      long nmax = long(xcut) + P;
      for (long n = 1; n <= nmax; ++n) {
        long b = (n - 1) % P + 1;
        if (n >= b + m_start(b) * P) continue;
        cplx a = F.coefficients.a(std::size_t(n));
        if (a == 0.0) continue;
        double lin = (r > 1) ? double((long(p % r) * (n % r)) % r) / double(r) : 0.0;
        head.add(a * e2pi(-lin - subphase_at(ft, double(n))) * pow_real(double(n), -s));
      }
      // tails per residue class
      cplx tails = 0.0;
      double bound = 0.0;
      for (long b = 1; b <= P; ++b) {
        cplx ab = F.coefficients.a(std::size_t(b));
        if (ab == 0.0) continue;
        double lin = (r > 1) ? double((long(p % r) * (b % r)) % r) / double(r) : 0.0;
        cplx cb = ab * e2pi(-lin);
        double xMb = double(b + m_start(b) * P);
        double qtol = tol / (4.0 * double(P) * std::max(1.0, std::abs(cb)));
        Ev t = abel_plana_tail(s, ft, xMb, double(P), qtol);
        tails += cb * t.value;
        bound += std::abs(cb) * t.bound;
      }
      double rounding = (5.0 + std::abs(s)) * 1e-16 * (head.abs_acc + std::abs(tails));
      return {head.acc + tails, bound + rounding + 1e-13};
    }
  }

  // plain certified route from the rigorous tail pair
  double thr = F.tail_exponent, Cr = F.tail_scale;
  std::size_t N = plain_terms(Cr, thr, sigma, tol, budget);
  bool plain_domain = sigma > thr + 1.05;
  double tail_bound = 0.0;
  if (N == 0) {
    // envelope route: exponent from the hint, scale from the prefix
    double thh = F.coefficient_size_hint;
    if (sigma > thh + 1.05) {
      F.coefficients.materialize(4096);
      double ce = 0.0;
      for (std::size_t n = 1; n <= 4096; ++n) {
        ce = std::max(ce, std::abs(F.coefficients.a(n)) / std::pow(double(n), thh));
      }
      ce *= 2.0;
      N = plain_terms(ce, thh, sigma, tol, budget);
      if (N == 0) {
        throw NumericError(
            "direct twist sum: budget exhausted (more terms needed than allowed)");
      }
      tail_bound = 0.5 * tol;  // envelope tail, by construction of N
    } else if (plain_domain) {
      throw NumericError(
          "direct twist sum: budget exhausted (more terms needed than allowed)");
    } else {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "direct twist sum diverges: Re s = %.3f is too small for every "
                    "summation route",
                    sigma);
      throw NumericError(msg);
    }
  } else {
    double t = Cr * (std::pow(double(N), thr - sigma + 1.0) / (sigma - thr - 1.0) +
                     std::pow(double(N), thr - sigma));
    tail_bound = t;
  }
  F.coefficients.materialize(N);
  KahanSum ks;
  for (std::size_t n = 1; n <= N; ++n) {
    cplx a = F.coefficients.a(n);
    if (a == 0.0) continue;
    ks.add(a * e2pi(-f.phase_at(double(n))) * pow_real(double(n), -s));
  }
  double rounding = (6.0 + std::abs(s) * std::log(double(N) + 1.0)) * 1e-16 * ks.abs_acc;
  return {ks.acc, tail_bound + rounding};
}

// ------------------------------------------------------- smoothed sums

Ev smoothed_FX(const SelbergDatum& F, double alpha, cplx s, double X, double tol) {
  if (!(alpha > 0.0)) throw ConfigError("smoothed sum: alpha must be positive");
  if (!(X >= 1.0)) throw ConfigError("smoothed sum: X must be >= 1");
  DerivedInvariants inv = derive_invariants(F);
  double d = inv.degree;
  cplx z = kTwoPi * alpha * cplx(1.0 / X, 1.0);
  double c = z.real();  // damping rate in n^{1/d}
  double sigma = s.real();
  double th = F.tail_exponent, C = F.tail_scale;

  std::size_t L = F.coefficients.finite_length();
  std::size_t N = 0;
  double tail = 0.0;
  if (L > 0) {
    N = L;
  } else {
    double A = d * (th - sigma + 1.0);
    for (std::size_t cand = 64;; cand *= 2) {
      double y = c * std::pow(double(cand), 1.0 / d);
      // beyond the mode of x^{th-sigma} e^{-c x^{1/d}} (any N when th <= sigma)
      bool monotone = th <= sigma || y >= d * (th - sigma) + 1.0;
      if (monotone) {
        double head = std::pow(double(cand), th - sigma) * std::exp(-y);
        double integral =
            d * std::pow(c, -A) * upper_incomplete_gamma(cplx(A, 0.0), y).real();
        double t = C * (head + integral);
        if (t <= 0.5 * tol) {
          N = cand;
          tail = t;
          break;
        }
      }
      if (cand >= (std::size_t(1) << 24)) {
        throw NumericError("smoothed sum: term budget exhausted");
      }
    }
  }
  F.coefficients.materialize(N);
  KahanSum ks;
  for (std::size_t n = 1; n <= N; ++n) {
    cplx a = F.coefficients.a(n);
    if (a == 0.0) continue;
    double rt = std::pow(double(n), 1.0 / d);
    ks.add(a * std::exp(-s * std::log(double(n)) - z * rt));
  }
  double rounding = (6.0 + std::abs(s) * std::log(double(N) + 1.0)) * 1e-16 * ks.abs_acc;
  return {ks.acc, tail + rounding};
}

Ev mellin_barnes_FX(const SelbergDatum& F, double alpha, cplx s, double X, double tol) {
  if (!(alpha > 0.0)) throw ConfigError("smoothed sum: alpha must be positive");
  if (!(X >= 1.0)) throw ConfigError("smoothed sum: X must be >= 1");
  DerivedInvariants inv = derive_invariants(F);
  double d = inv.degree;
  double sigma = s.real();
  // clears Gamma(w) poles (w <= 0) and the polar point of F (Re w = d(1-sigma))
  double c0 = std::max(d * (2.0 - sigma), 0.5);
  cplx logz = std::log(kTwoPi * alpha) + std::log(cplx(1.0 / X, 1.0));
  double child_tol = 1e-3 * tol;
  double err_density = 0.0;
  auto f = [&](cplx w) -> cplx {
    cplx pref = std::exp(log_gamma(w) - w * logz);
    Ev base = evaluate(F, s + w / d, child_tol);
    err_density = std::max(err_density, std::abs(pref) * base.bound);
    return pref * base.value;
  };
  double decay = 0.85 * std::atan(1.0 / X);
  Ev I = vertical_line_integral(f, c0, decay, tol);
  // propagate the evaluator error through the contour length
  double span = 2.0 * (std::log(1.0 / std::min(tol, 1e-3)) + 6.0) / decay;
  return {I.value, I.bound + err_density * span / kTwoPi};
}

Ev smoothed_FX_extrapolated(const SelbergDatum& F, double alpha, cplx s, double tol,
                            double x0) {
  // F_X = F + c_1/X + c_2/X^2 + ...: eliminate three orders from a
  // geometric ladder X = x0, 2 x0, 4 x0, 8 x0
  cplx T[4][4];
  double child_bound = 0.0;
  for (int j = 0; j < 4; ++j) {
    Ev e = smoothed_FX(F, alpha, s, x0 * std::pow(2.0, j), tol / 16.0);
    T[j][0] = e.value;
    child_bound = std::max(child_bound, e.bound);
  }
  for (int m = 1; m < 4; ++m) {
    double w = std::pow(2.0, m);
    for (int j = 3; j >= m; --j) {
      T[j][m] = (w * T[j][m - 1] - T[j - 1][m - 1]) / (w - 1.0);
    }
  }
  double est = std::abs(T[3][3] - T[2][2]);
  return {T[3][3], 7.0 * child_bound + est};
}

// ------------------------------------------------- Hurwitz decomposition

Ev lerch_oracle(double alpha, cplx s, double tol) {
  double rounded = std::round(alpha);
  if (std::abs(alpha - rounded) <= 1e-9) {
    if (std::abs(s - 1.0) < 1e-8) {
      throw NumericError("linear twist: pole at s = 1 for integer alpha");
    }
    return riemann_zeta(s, tol);
  }
  auto pq = snap_rational(alpha, 1024, 1e-9);
  if (pq) {
    long p = pq->first, r = pq->second;
    cplx acc = 0.0;
    double bound = 0.0;
    cplx pref = pow_real(double(r), -s);
    double child_tol = std::max(1e-16, tol / (2.0 * double(r) * std::abs(pref)));
    bool near_pole = std::abs(s - 1.0) < 0.3;
    for (long b = 1; b <= r; ++b) {
      // sum_b e(-p b / r) = 0 exactly (r does not divide p), so the
      // 1/(s-1) parts cancel; near the pole sum regularized values
      Ev z = near_pole ? hurwitz_zeta_reg(s, double(b) / double(r), child_tol)
                       : hurwitz_zeta(s, double(b) / double(r), child_tol);
      cplx cb = e2pi(-double((p % r) * (b % r) % r) / double(r));
      acc += cb * z.value;
      bound += z.bound + 1e-16 * std::abs(z.value);
    }
    cplx value = pref * acc;
    return {value, std::abs(pref) * bound + 1e-15 * std::abs(value)};
  }
  // irrational alpha: partial summation bound, valid right of sigma = 0
  double sigma = s.real();
  if (!(sigma > 0.05)) {
    throw NumericError("linear twist: sigma too small for the direct route");
  }
  double kernel = 2.0 / std::abs(1.0 - e2pi(-alpha));
  KahanSum ks;
  std::size_t N = 64;
  auto tail_at = [&](std::size_t n) {
    return kernel * std::pow(double(n), -sigma) * (1.0 + std::abs(s) / sigma);
  };
  while (tail_at(N) > 0.5 * tol) {
    N *= 2;
    if (N > (std::size_t(1) << 24)) {
      throw NumericError("linear twist: term budget exhausted");
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    ks.add(e2pi(-alpha * double(n)) * pow_real(double(n), -s));
  }
  return {ks.acc, tail_at(N) + (5.0 + std::abs(s)) * 1e-16 * ks.abs_acc};
}

Ev periodic_twist_oracle(const SelbergDatum& F, double alpha, cplx s, double tol) {
  if (std::size_t L = F.coefficients.finite_length()) {
    KahanSum ks;
    for (std::size_t n = 1; n <= L; ++n) {
      cplx a = F.coefficients.a(n);
      if (a == 0.0) continue;
      ks.add(a * e2pi(-alpha * double(n)) * pow_real(double(n), -s));
    }
    return {ks.acc, (4.0 + std::abs(s)) * 1e-16 * ks.abs_acc};
  }
  long P0 = F.coefficient_period;
  if (P0 <= 0) {
    throw ConfigError("linear twist oracle: needs periodic or finite coefficients");
  }
  auto pq = snap_rational(alpha, 4096, 1e-9);
  if (!pq) throw ConfigError("linear twist oracle: alpha must be rational");
  long p = pq->first, r = pq->second;
  long P = std::lcm(P0, r);
  F.coefficients.materialize(std::size_t(P));

  // phases from the snapped rational exactly; e(-p(b+P)/r) = e(-pb/r)
  auto lin = [&](long b) {
    long num = ((p % r) * (b % r)) % r;
    if (num < 0) num += r;
    return e2pi(-double(num) / double(r));
  };
  cplx csum = 0.0;
  std::vector<cplx> cb(std::size_t(P) + 1);
  for (long b = 1; b <= P; ++b) {
    cb[std::size_t(b)] = F.coefficients.a(std::size_t(b)) * lin(b);
    csum += cb[std::size_t(b)];
  }
  bool has_pole = std::abs(csum) > 1e-13 * double(P);
  if (has_pole && std::abs(s - 1.0) < 1e-8) {
    throw NumericError("linear twist oracle: pole at s = 1");
  }
  cplx pref = pow_real(double(P), -s);
  double child_tol = std::max(1e-16, tol / (2.0 * double(P) * std::abs(pref)));
  bool near_pole = std::abs(s - 1.0) < 0.3;
  cplx acc = 0.0;
  double bound = 0.0;
  for (long b = 1; b <= P; ++b) {
    if (cb[std::size_t(b)] == 0.0) continue;
    Ev z = near_pole ? hurwitz_zeta_reg(s, double(b) / double(P), child_tol)
                     : hurwitz_zeta(s, double(b) / double(P), child_tol);
    acc += cb[std::size_t(b)] * z.value;
    bound += std::abs(cb[std::size_t(b)]) * (z.bound + 1e-16 * std::abs(z.value));
  }
  if (near_pole) {
    // the regularized pieces dropped sum_b c_b / (s-1)
    acc += csum / (s - 1.0);
    bound += 1e-15 * std::abs(csum / (s - 1.0));
  }
  cplx value = pref * acc;
  return {value, std::abs(pref) * bound + 1e-15 * std::abs(value)};
}

cplx periodic_twist_residue(const SelbergDatum& F, double alpha) {
  if (F.coefficients.finite_length()) return 0.0;
  long P0 = F.coefficient_period;
  if (P0 <= 0) {
    throw ConfigError("linear twist oracle: needs periodic or finite coefficients");
  }
  auto pq = snap_rational(alpha, 4096, 1e-9);
  if (!pq) throw ConfigError("linear twist oracle: alpha must be rational");
  long p = pq->first, r = pq->second;
  long P = std::lcm(P0, r);
  F.coefficients.materialize(std::size_t(P));
  cplx csum = 0.0;
  for (long b = 1; b <= P; ++b) {
    long num = ((p % r) * (b % r)) % r;
    if (num < 0) num += r;
    csum += F.coefficients.a(std::size_t(b)) * e2pi(-double(num) / double(r));
  }
  cplx res = csum / double(P);
  return (std::abs(res) > 1e-13) ? res : cplx(0.0);
}

// ------------------------------------------------------- series twisting

Ev series_twist(const Evaluator& base, GrowthClass growth, double lambda, double alpha,
                cplx s, double tol, cplx residue_at_one) {
  if (!(lambda > 0.0)) throw ConfigError("series twist: lambda must be positive");
  if (!(lambda * growth.rho < 1.0 - 1e-12)) {
    throw ConfigError(
        "series twist: lambda too large for the growth class (lambda * rho >= 1)");
  }
  if (alpha == 0.0) return base(s, tol);

  cplx correction = 0.0;
  double corr_bound = 0.0;
  if (residue_at_one != 0.0) {
    cplx zc = (1.0 - s) / lambda;
    // Gamma((1-s)/lambda) poles sit on s = 1 + lambda k; cancellation
    // against the k-th series term is removable but ill-conditioned
    double dist = dist_to_pole_lattice(zc);
    if (dist < 1e-6) {
      throw NumericError(
          "series twist: s within 1e-6 of the removable lattice s = 1 + lambda k");
    }
    cplx lphase(std::log(kTwoPi * std::abs(alpha)),
                (alpha > 0.0 ? 0.5 : -0.5) * kPi);
    correction = (residue_at_one / lambda) * std::exp(log_gamma(zc) - zc * lphase);
    corr_bound = 1e-13 * std::abs(correction) * (2.0 + std::abs(zc));
  }

  cplx coef = 1.0;  // (-2 pi i alpha)^k / k!
  KahanSum ks;
  double bound = 0.0;
  double prev_mag = -1.0;
  int streak = 0;
  double last_mag = 0.0;
  for (int k = 0; k <= 600; ++k) {
    if (k > 0) coef *= cplx(0.0, -kTwoPi * alpha) / double(k);
    double child_tol = std::min(1e-3, tol / (50.0 * std::max(1.0, std::abs(coef))));
    Ev e = base(s - lambda * double(k), std::max(child_tol, 1e-15));
    cplx term = coef * e.value;
    ks.add(term);
    bound += std::abs(coef) * e.bound;
    double mag = std::abs(term);
    if (prev_mag >= 0.0) {
      bool shrink = mag < 0.5 * prev_mag || mag < 1e-300;
      streak = shrink ? streak + 1 : 0;
    }
    prev_mag = mag;
    last_mag = mag;
    if (streak >= 5 && mag < tol) {
      return {ks.acc + correction,
              bound + corr_bound + 2.0 * last_mag + 1e-15 * ks.abs_acc};
    }
  }
  throw NumericError("series twist: truncation budget exhausted");
}

// ------------------------------------------- negative-exponent expansion

FrequencySet frequency_set(const TwistSpec& f, double omega_max) {
  f.validate();
  std::vector<TwistTerm> active;
  for (const auto& t : f.terms) {
    if (t.alpha == 0.0) continue;
    if (!(t.kappa < 0.0)) {
      throw ConfigError("frequency set: all exponents must be negative");
    }
    active.push_back(t);
  }
  std::vector<std::pair<double, cplx>> raw;
  raw.reserve(1024);
  // depth-first over multi-indices (m_nu) with sum m_nu |kappa_nu| <= omega_max
  std::function<void(std::size_t, double, cplx)> walk = [&](std::size_t j, double om,
                                                            cplx c) {
    if (j == active.size()) {
      raw.emplace_back(om, c);
      return;
    }
    double step = -active[j].kappa;
    cplx fac = 1.0;
    for (int m = 0;; ++m) {
      double om2 = om + step * double(m);
      if (om2 > omega_max + 1e-12) break;
      if (m > 0) fac *= cplx(0.0, -kTwoPi * active[j].alpha) / double(m);
      walk(j + 1, om2, c * fac);
      if (raw.size() > 2000000) {
        throw NumericError("frequency set: too many representations");
      }
    }
  };
  walk(0, 0.0, 1.0);
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FrequencySet out;
  for (const auto& [om, c] : raw) {
    if (!out.omega.empty() && om - out.omega.back() < 1e-9) {
      out.coeff.back() += c;
    } else {
      out.omega.push_back(om);
      out.coeff.push_back(c);
    }
  }
  return out;
}

Ev negative_twist(const Evaluator& base, const TwistSpec& f, cplx s, double tol) {
  f.validate();
  double heavy = 0.0;
  double alpha_sum = 0.0;
  bool any = false;
  for (const auto& t : f.terms) {
    if (t.alpha == 0.0) continue;
    if (!(t.kappa < 0.0)) {
      throw ConfigError("negative twist: all exponents must be negative");
    }
    heavy = std::max(heavy, -t.kappa);
    alpha_sum += kTwoPi * std::abs(t.alpha);
    any = true;
  }
  if (!any) return base(s, tol);

  // enlarge the frequency window until the dropped representations are
  // factorially negligible: each factor beyond m* contributes at most
  // (2 pi |alpha|)^{m*}/m*!
  double omega_max = 24.0;
  auto beyond = [&](double om) {
    double worst = 0.0;
    for (const auto& t : f.terms) {
      if (t.alpha == 0.0) continue;
      int m = int(std::floor(om / -t.kappa)) + 1;
      double lg = double(m) * std::log(std::max(kTwoPi * std::abs(t.alpha), 1e-30)) -
                  std::lgamma(double(m) + 1.0);
      worst = std::max(worst, std::exp(lg));
    }
    return worst * std::exp(alpha_sum);
  };
  while (beyond(omega_max) > 0.05 * tol && omega_max < 400.0) omega_max += 8.0;

  FrequencySet fs = frequency_set(f, omega_max);
  KahanSum ks;
  double bound = beyond(omega_max);
  double cap = 1.0;
  int quiet = 0;
  std::size_t j = 0;
  for (; j < fs.omega.size(); ++j) {
    double am = std::abs(fs.coeff[j]);
    if (am * cap <= 0.01 * tol && fs.omega[j] > heavy + 1.0) {
      // retained-term criterion failed; close out with the envelope
      ++quiet;
      if (quiet >= 3) break;
    } else {
      quiet = 0;
    }
    double child_tol = std::max(1e-15, tol / (40.0 * std::max(1.0, am)));
    Ev e = base(s + fs.omega[j], child_tol);
    ks.add(fs.coeff[j] * e.value);
    bound += am * e.bound;
    cap = std::max(1.0, std::abs(e.value));
  }
  for (; j < fs.omega.size(); ++j) {
    bound += std::abs(fs.coeff[j]) * cap;
  }
  return {ks.acc, bound + 1e-15 * ks.abs_acc};
}

Ev negative_twist(const SelbergDatum& F, const TwistSpec& f, cplx s, double tol) {
  return negative_twist(datum_evaluator(F), f, s, tol);
}

// ------------------------------------------------------------ composition

Ev compose_twist(const SelbergDatum& F, const TwistSpec& f, cplx s, double tol) {
  f.validate();
  if (f.terms.empty()) return evaluate(F, s, tol);
  DerivedInvariants inv = derive_invariants(F);
  double d = inv.degree;
  if (std::abs(f.terms.front().kappa - 1.0 / d) > 1e-9) {
    throw ConfigError("compose twist: leading exponent must equal 1/d");
  }

  // constant phase from kappa = 0 entries
  cplx const_phase = 1.0;
  double alpha0 = f.terms.front().alpha;
  std::vector<TwistTerm> positive, negative;
  for (std::size_t j = 1; j < f.terms.size(); ++j) {
    const TwistTerm& t = f.terms[j];
    if (t.alpha == 0.0) continue;
    if (t.kappa > 0.0) {
      positive.push_back(t);
    } else if (t.kappa == 0.0) {
      const_phase *= e2pi(-t.alpha);
    } else {
      negative.push_back(t);
    }
  }
  bool pos_stages = !positive.empty();

  // base: the linear (kappa = 1/d) twist
  Evaluator cur;
  cplx residue = 0.0;
  double rho;
  bool alpha0_integral = std::abs(alpha0 - std::round(alpha0)) <= 1e-9;
  if (alpha0 == 0.0 || (d == 1.0 && alpha0_integral)) {
    if (F.pole_order_at_one > 1) {
      throw ConfigError("compose twist: base pole order >= 2 unsupported");
    }
    cur = datum_evaluator(F);
    residue = (F.pole_order_at_one == 1) ? pole_residue_at_one(F) : cplx(0.0);
    rho = d;
  } else if (d == 1.0) {
    SelbergDatum copy = F;
    double a0 = alpha0;
    cur = [copy, a0](cplx z, double tt) {
      return periodic_twist_oracle(copy, a0, z, tt);
    };
    residue = periodic_twist_residue(F, alpha0);
    // any growth order strictly between d and 1/kappa_1 certifies the
    // first series stage
    rho = pos_stages ? 0.5 * (1.0 + 1.0 / positive.front().kappa) : 2.0;
  } else {
    throw ConfigError(
        "compose twist: unsupported base (degree >= 2 with nonzero leading alpha)");
  }

  bool first_stage = true;
  for (const auto& t : positive) {
    Evaluator prev = cur;
    GrowthClass g{rho, 1.0};
    double lam = t.kappa, al = t.alpha;
    cplx res = residue;
    cur = [prev, g, lam, al, res](cplx z, double tt) {
      return series_twist(prev, g, lam, al, z, tt, res);
    };
    residue = 0.0;  // a completed stage is entire
    if (first_stage) {
      rho = 1.0 / t.kappa;
      first_stage = false;
    }
  }

  Ev out;
  if (!negative.empty()) {
    TwistSpec neg{negative};
    out = negative_twist(cur, neg, s, tol);
  } else {
    out = cur(s, tol);
  }
  return {const_phase * out.value, out.bound};
}

}  // namespace lf
