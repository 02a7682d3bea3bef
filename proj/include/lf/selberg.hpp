#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lf/numeric.hpp"

namespace lf {

struct GammaFactor {
  double lambda;  // > 0
  cplx mu;        // Re >= 0
};

// Dirichlet coefficients a(n), n >= 1, memoized. Materialize before parallel
// scans; a(n) past the materialized range auto-extends but only from serial
// code (growth is mutex-guarded, concurrent reads of the settled prefix are
// safe because the buffer is only swapped under the lock before any reader
// can hold an index into the new range).
class CoefficientStream {
 public:
  // fills out[0..hi-lo) with a(lo..hi-1); must be a pure batch producer
  using BlockGen = std::function<void(std::size_t lo, std::size_t hi, cplx* out)>;

  CoefficientStream();  // all-zero stream (placeholder before assignment)
  explicit CoefficientStream(BlockGen gen);
  static CoefficientStream from_table(std::vector<cplx> a_from_1);  // zero beyond

  cplx a(std::size_t n) const;
  void materialize(std::size_t n) const;
  std::size_t materialized() const;
  // nonzero iff built from a finite table: a(n) = 0 for all n past it
  std::size_t finite_length() const;
  CoefficientStream conjugated() const;  // termwise conj, finite length kept

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct DerivedInvariants {
  double degree;      // d = 2 sum lambda_j
  double conductor;   // q = (2 pi)^d Q^2 prod lambda_j^{2 lambda_j}
  cplx xi;            // 2 sum (mu_j - 1/2)
  double eta;         // Re xi
  double theta;       // Im xi / d
  double beta;        // prod lambda_j^{2 lambda_j}
  double growth_rho;  // = d (polynomial growth order on vertical strips)
  double growth_tau;
  double m_big;       // max_j (1 + |mu_j|)^2 / lambda_j
  int k_cut;          // [3 d (2 + m_big)]; the shifted-sum contour is at k_cut + 1/2
};

struct SelbergDatum {
  double Q = 1.0;
  cplx omega = 1.0;
  std::vector<GammaFactor> gamma_factors;
  CoefficientStream coefficients;
  int pole_order_at_one = 0;
  double coefficient_size_hint = 0.0;  // theta_a with |a(n)| <= C n^{theta_a}
  // rigorous tail-bound pair: |a(n)| <= tail_scale * n^{tail_exponent}
  double tail_scale = 1.0;
  double tail_exponent = 0.0;
  // p > 0: a(n + p) = a(n) for all n (Dirichlet coefficients); 0 otherwise
  long coefficient_period = 0;
  std::string name = "custom";
  // whole-strip evaluator (built-ins); null for custom data
  std::function<Ev(cplx s, double tol)> strip_eval;
};

// validates axioms (lambda > 0, Re mu >= 0, |omega| = 1 to 1e-12, d >= 1)
SelbergDatum make_datum(double Q, cplx omega, std::vector<GammaFactor> gf,
                        CoefficientStream coeffs, int pole_order, double hint,
                        double tail_scale, double tail_exponent, std::string name);

DerivedInvariants derive_invariants(const SelbergDatum& F);

// H(n) = 2 sum_j B_n(mu_j) / lambda_j^{n-1}; H(0) = d, H(1) = xi
cplx h_invariant(const SelbergDatum& F, int n);

// the dual datum: conjugated coefficients, mu, omega; theta flips sign
SelbergDatum conjugate(const SelbergDatum& F);

// Whole-plane evaluation: certified Dirichlet partial sum for large sigma,
// built-in strip representation in the critical region, reflection through
// the functional equation far left. Throws near the pole at s = 1 (disc of
// radius 10 sqrt(tol)) and for custom data in the strip.
Ev evaluate(const SelbergDatum& F, cplx s, double tol);

// residue at s = 1 for pole_order_at_one = 1 (0 when regular there)
cplx pole_residue_at_one(const SelbergDatum& F);

SelbergDatum builtin_zeta();
SelbergDatum builtin_delta();
SelbergDatum builtin_dirichlet_l(long modulus, long conrey_index);
// "riemann_zeta" | "ramanujan_delta" | "dirichlet_l:<q>:<index>"
SelbergDatum builtin(const std::string& name);

// Custom datum from JSON: keys Q, omega, gamma_factors, pole_order,
// coefficient_hint, coefficients (inline array or {"file": csv}). Unknown
// keys rejected; reals accept exact rational strings "p/q".
SelbergDatum load_datum_json(const std::string& json_text, const std::string& base_dir);
SelbergDatum load_datum_file(const std::string& path);

// resolves a CLI-style name: builtin id or a path to a JSON datum
SelbergDatum resolve_lfunction(const std::string& name_or_path);

}  // namespace lf
