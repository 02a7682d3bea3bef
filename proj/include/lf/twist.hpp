// Nonlinear twists sum_n a(n) e(-f(n)) n^{-s} for phase functions
// f(x) = sum_j alpha_j x^{kappa_j} with strictly decreasing exponents:
// direct summation with Abel-Plana tails, exponentially smoothed sums and
// their Mellin-Barnes form, power-series continuation in a single twist
// stage, the negative-exponent expansion, and the iterated composition that
// chains these, plus the Hurwitz-decomposition oracle used as a cross-check.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lf/numeric.hpp"
#include "lf/selberg.hpp"

namespace lf {

// one phase term: alpha * x^kappa
struct TwistTerm {
  double kappa = 0.0;
  double alpha = 0.0;
};

struct TwistSpec {
  std::vector<TwistTerm> terms;

  // throws ConfigError unless the exponents strictly decrease and all
  // entries are finite
  void validate() const;
  bool all_zero() const;          // every alpha vanishes (or no terms)
  double phase_at(double x) const;  // f(x), x > 0
};

// {"terms": [{"kappa": .., "alpha": ..}, ...]}; values may be numbers or
// exact rational strings "p/q"; unknown keys are rejected by name
TwistSpec parse_twist_spec(const std::string& json_text);

// growth class of an evaluator as sigma -> -inf:
// |E(s)| << A^{|sigma|} (1 + |s|)^{rho |sigma| + B}
struct GrowthClass {
  double rho = 1.0;
  double tau = 1.0;
};

// a point evaluator with a tracked error bound; twist stages nest these
using Evaluator = std::function<Ev(cplx, double)>;
Evaluator datum_evaluator(const SelbergDatum& F);

// n_alpha = q_F d^{-d} alpha^d for alpha > 0; a hit needs n_alpha within
// 1e-9 of an integer and |a(n_alpha)| > 1e-12
struct SpectrumHit {
  long n = 0;
  cplx coefficient = 0.0;
};
std::optional<SpectrumHit> spectrum_hit(const SelbergDatum& F, double alpha);
bool in_spectrum(const SelbergDatum& F, double alpha);

// head summation plus analytic tails. Routes, in order: exact sum for
// finite coefficient tables; residue classes mod lcm(period, snap
// denominator) with Abel-Plana tails for periodic coefficients (needs
// sigma > 1.05); certified plain sum from the rigorous tail pair; partial
// sum with an envelope tail extrapolated from the coefficient prefix.
// Throws NumericError on divergence (sigma too small for every route) or
// when more than `budget` terms would be needed.
Ev direct_twist_sum(const SelbergDatum& F, const TwistSpec& f, cplx s, double tol,
                    std::size_t budget = 10'000'000);

// F_X(s, alpha) = sum_n a(n) n^{-s} exp(-z_X n^{1/d}),
// z_X = 2 pi alpha (1/X + i); plain damped sum, certified tail
Ev smoothed_FX(const SelbergDatum& F, double alpha, cplx s, double X, double tol);

// the same function as (1/(2 pi i)) int F(s + w/d) Gamma(w) z_X^{-w} dw on
// the line Re w = max(d(2 - sigma), 1/2), which clears both the Gamma poles
// and the polar point of F
Ev mellin_barnes_FX(const SelbergDatum& F, double alpha, cplx s, double X,
                    double tol);

// Richardson extrapolation of F_X in 1/X at X = x0, 2 x0, 4 x0, 8 x0,
// approximating the unsmoothed twist value
Ev smoothed_FX_extrapolated(const SelbergDatum& F, double alpha, cplx s,
                            double tol, double x0 = 64.0);

// sum_{n>=1} e(-alpha n) n^{-s} continued to the plane: zeta(s) for integer
// alpha (pole error at s = 1), the Hurwitz combination
// r^{-s} sum_{b=1..r} e(-p b / r) zeta(s, b/r) for alpha ~ p/r with r <=
// 1024, and for other alpha a partial-summation bound valid right of
// sigma = 0 only
Ev lerch_oracle(double alpha, cplx s, double tol = 1e-12);

// periodic-coefficient generalization of the same decomposition:
// P^{-s} sum_{b=1..P} a(b) e(-alpha b) zeta(s, b/P), P = lcm(period, r)
Ev periodic_twist_oracle(const SelbergDatum& F, double alpha, cplx s,
                         double tol = 1e-12);
// residue at s = 1 of the same function: (1/P) sum_b a(b) e(-alpha b)
cplx periodic_twist_residue(const SelbergDatum& F, double alpha);

// one continuation stage:
//   E^lambda(s, alpha) = sum_k ((-1)^k / k!) E(s - lambda k) (2 pi i alpha)^k
// requiring lambda * growth.rho < 1; when the base has a simple pole at
// s = 1 with residue r the representation gains the term
//   (r / lambda) Gamma((1-s)/lambda) (2 pi i alpha)^{-(1-s)/lambda}
// (principal logarithm), and evaluation is refused within 1e-6 of the
// removable lattice s = 1 + lambda k
Ev series_twist(const Evaluator& base, GrowthClass growth, double lambda,
                double alpha, cplx s, double tol, cplx residue_at_one = 0.0);

// expansion of exp(-2 pi i sum_nu alpha_nu x^{kappa_nu}) over x^{-omega}:
// frequencies omega = sum_nu m_nu |kappa_nu| <= omega_max with coefficients
// A(omega) = sum over representations of prod (-2 pi i alpha_nu)^{m_nu}/m_nu!
struct FrequencySet {
  std::vector<double> omega;   // ascending, first entry 0
  std::vector<cplx> coeff;     // matching A(omega)
};
FrequencySet frequency_set(const TwistSpec& f, double omega_max);

// all-negative-exponent twist via sum_omega A(omega) E(s + omega)
Ev negative_twist(const Evaluator& base, const TwistSpec& f, cplx s, double tol);
Ev negative_twist(const SelbergDatum& F, const TwistSpec& f, cplx s, double tol);

// full composition for kappa_0 = 1/d: the base is the linear twist (via the
// Hurwitz decomposition when d = 1 and alpha_0 != 0, the plain evaluator
// when alpha_0 = 0), then one series stage per positive exponent below
// kappa_0, then the negative-exponent expansion
Ev compose_twist(const SelbergDatum& F, const TwistSpec& f, cplx s, double tol);

}  // namespace lf
