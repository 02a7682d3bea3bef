#include "lf/selberg.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <utility>

#include "lf/bernoulli.hpp"
#include "lf/characters.hpp"
#include "lf/kernels.hpp"
#include "lf/specialfn.hpp"

namespace lf {

// ---------------------------------------------------------------- streams

struct CoefficientStream::Impl {
  BlockGen gen;
  std::size_t finite_len = 0;
  mutable std::mutex grow_mutex;
  mutable std::vector<cplx> table;  // table[i] = a(i+1)
  mutable std::atomic<std::size_t> ready{0};
};

CoefficientStream::CoefficientStream() : impl_(std::make_shared<Impl>()) {
  impl_->gen = [](std::size_t lo, std::size_t hi, cplx* out) {
    for (std::size_t n = lo; n < hi; ++n) out[n - lo] = cplx(0.0, 0.0);
  };
}

CoefficientStream::CoefficientStream(BlockGen gen) : impl_(std::make_shared<Impl>()) {
  impl_->gen = std::move(gen);
}

CoefficientStream CoefficientStream::from_table(std::vector<cplx> a_from_1) {
  auto shared = std::make_shared<std::vector<cplx>>(std::move(a_from_1));
  CoefficientStream s([shared](std::size_t lo, std::size_t hi, cplx* out) {
    for (std::size_t n = lo; n < hi; ++n) {
      out[n - lo] = (n <= shared->size()) ? (*shared)[n - 1] : cplx(0.0, 0.0);
    }
  });
  s.impl_->finite_len = shared->size();
  s.materialize(std::max<std::size_t>(shared->size(), 1));
  return s;
}

void CoefficientStream::materialize(std::size_t n) const {
  if (n <= impl_->ready.load(std::memory_order_acquire)) return;
  std::lock_guard<std::mutex> lock(impl_->grow_mutex);
  std::size_t cur = impl_->ready.load(std::memory_order_relaxed);
  if (n <= cur) return;
  std::size_t want = std::max({n, 2 * cur, std::size_t(64)});
  std::vector<cplx> buf(want);
  impl_->gen(1, want + 1, buf.data());
  impl_->table = std::move(buf);
  impl_->ready.store(want, std::memory_order_release);
}

cplx CoefficientStream::a(std::size_t n) const {
  if (n == 0) throw ConfigError("CoefficientStream: coefficients start at n = 1");
  if (n > impl_->ready.load(std::memory_order_acquire)) materialize(n);
  return impl_->table[n - 1];
}

std::size_t CoefficientStream::materialized() const {
  return impl_->ready.load(std::memory_order_acquire);
}

std::size_t CoefficientStream::finite_length() const { return impl_->finite_len; }

CoefficientStream CoefficientStream::conjugated() const {
  CoefficientStream inner = *this;
  CoefficientStream out([inner](std::size_t lo, std::size_t hi, cplx* buf) {
    inner.materialize(hi > 1 ? hi - 1 : 1);
    for (std::size_t n = lo; n < hi; ++n) buf[n - lo] = std::conj(inner.a(n));
  });
  out.impl_->finite_len = impl_->finite_len;
  return out;
}

// ------------------------------------------------------------- invariants

SelbergDatum make_datum(double Q, cplx omega, std::vector<GammaFactor> gf,
                        CoefficientStream coeffs, int pole_order, double hint,
                        double tail_scale, double tail_exponent, std::string name) {
  if (!(Q > 0.0)) throw ConfigError("datum: Q must be positive");
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw ConfigError("datum: |omega| != 1");
  if (gf.empty()) throw ConfigError("datum: at least one gamma factor required");
  double d = 0.0;
  for (const auto& g : gf) {
    if (!(g.lambda > 0.0)) throw ConfigError("datum: lambda must be positive");
    if (g.mu.real() < 0.0) throw ConfigError("datum: Re(mu) must be >= 0");
    d += 2.0 * g.lambda;
  }
  if (d < 1.0 - 1e-12) throw ConfigError("datum: degree below 1 is not supported");
  if (pole_order < 0) throw ConfigError("datum: pole order must be >= 0");
  SelbergDatum F;
  F.Q = Q;
  F.omega = omega;
  F.gamma_factors = std::move(gf);
  F.coefficients = std::move(coeffs);
  F.pole_order_at_one = pole_order;
  F.coefficient_size_hint = hint;
  F.tail_scale = tail_scale;
  F.tail_exponent = tail_exponent;
  F.name = std::move(name);
  F.coefficients.materialize(1);  // a(1) must exist
  return F;
}

DerivedInvariants derive_invariants(const SelbergDatum& F) {
  DerivedInvariants v{};
  double d = 0.0, logbeta = 0.0, mb = 0.0;
  cplx xi = 0.0;
  for (const auto& g : F.gamma_factors) {
    d += 2.0 * g.lambda;
    logbeta += 2.0 * g.lambda * std::log(g.lambda);
    xi += 2.0 * (g.mu - 0.5);
    double c = (1.0 + std::abs(g.mu)) * (1.0 + std::abs(g.mu)) / g.lambda;
    mb = std::max(mb, c);
  }
  v.degree = d;
  v.beta = std::exp(logbeta);
  v.conductor = std::pow(kTwoPi, d) * F.Q * F.Q * v.beta;
  v.xi = xi;
  v.eta = xi.real();
  v.theta = xi.imag() / d;
  v.growth_rho = d;
  v.growth_tau = 1.0;
  v.m_big = mb;
  // integer part of 3d(2+M); the shifted-sum contour sits at k_cut + 1/2,
  // a half-integer so it threads between the gamma pole lattices
  v.k_cut = int(std::floor(3.0 * d * (2.0 + mb) + 1e-9));
  return v;
}

cplx h_invariant(const SelbergDatum& F, int n) {
  if (n < 0 || n > kBernoulliMax) throw ConfigError("h_invariant: order out of range");
  cplx acc = 0.0;
  for (const auto& g : F.gamma_factors) {
    acc += bernoulli_polynomial(n, g.mu) * std::pow(g.lambda, 1 - n);
  }
  return 2.0 * acc;
}

SelbergDatum conjugate(const SelbergDatum& F) {
  SelbergDatum G = F;
  G.omega = std::conj(F.omega);
  for (auto& g : G.gamma_factors) g.mu = std::conj(g.mu);
  G.coefficients = F.coefficients.conjugated();
  if (F.strip_eval) {
    auto inner_eval = F.strip_eval;
    G.strip_eval = [inner_eval](cplx s, double tol) {
      Ev e = inner_eval(std::conj(s), tol);
      return Ev{std::conj(e.value), e.bound};
    };
  }
  return G;
}

// ---------------------------------------------------------------- builtins

namespace {

Ev zeta_strip(cplx s, double tol) {
  if (std::abs(s - 1.0) < 0.3) {
    Ev reg = hurwitz_zeta_reg(s, 1.0, tol);
    cplx pole = 1.0 / (s - 1.0);
    return {reg.value + pole, reg.bound + 2e-16 * std::abs(pole)};
  }
  return hurwitz_zeta(s, 1.0, tol);
}

Ev dirichlet_strip(const DirichletCharacter& chi, cplx s, double tol) {
  long q = chi.q;
  cplx pref = std::exp(-s * std::log(double(q)));
  double child_tol = std::max(1e-16, tol / (2.0 * double(q)));
  cplx acc = 0.0;
  double bound = 0.0, abs_acc = 0.0;
  bool near_pole = std::abs(s - 1.0) < 0.3;
  for (long a = 1; a <= q; ++a) {
    cplx c = chi.values[std::size_t(a % q)];
    if (std::abs(c) < 0.5) continue;
    // sum chi(a) = 0 for nonprincipal chi, so the 1/(s-1) parts cancel
    // exactly; near the pole sum the regularized values instead
    Ev z = near_pole ? hurwitz_zeta_reg(s, double(a) / double(q), child_tol)
                     : hurwitz_zeta(s, double(a) / double(q), child_tol);
    acc += c * z.value;
    bound += z.bound;
    abs_acc += std::abs(z.value);
  }
  cplx value = pref * acc;
  return {value, std::abs(pref) * (bound + 1e-15 * abs_acc)};
}

// completed-function representation: with w = s + 11/2,
//   Lambda(w) = sum_n tau(n) [(2 pi n)^{-w} G(w, 2 pi n)
//                             + (2 pi n)^{w-12} G(12-w, 2 pi n)]
// and F(s) = (2 pi)^w Lambda(w) / Gamma(w); terms decay like e^{-2 pi n}
Ev delta_strip(const CoefficientStream& coeffs, cplx s, double tol) {
  cplx w = s + 5.5;
  cplx lam = 0.0;
  double abs_acc = 0.0, tail = 0.0;
  const int budget = 400;
  bool done = false;
  for (int n = 1; n <= budget; ++n) {
    double x = kTwoPi * double(n);
    cplx tau_n = coeffs.a(std::size_t(n)) * std::pow(double(n), 5.5);
    cplx t1 = std::exp(-w * std::log(x)) * upper_incomplete_gamma(w, x);
    cplx t2 = std::exp((w - 12.0) * std::log(x)) * upper_incomplete_gamma(12.0 - w, x);
    cplx term = tau_n * (t1 + t2);
    lam += term;
    abs_acc += std::abs(term);
    // |x^{-w} G(w,x)| <= 2 e^{-x}/x once x >= 2|w|+4, and |tau(m)| <= 2 m^6
    double m = double(n + 1);
    double xm = kTwoPi * m;
    if (xm >= 2.0 * std::max(std::abs(w), std::abs(12.0 - w)) + 4.0) {
      tail = 1.3 * 2.0 * std::pow(m, 6.0) * 4.0 * std::exp(-xm) / xm;
      if (tail <= 0.25 * tol * std::max(1.0, std::abs(lam)) && n >= 8) {
        done = true;
        break;
      }
    }
  }
  if (!done) throw NumericError("delta evaluation: completed-series budget exhausted");
  cplx pref = std::exp(w * kLogTwoPi - log_gamma(w));
  cplx value = pref * lam;
  double bound = std::abs(pref) * (tail + 1e-12 * abs_acc) + 1e-14 * std::abs(value);
  return {value, bound};
}

}  // namespace

SelbergDatum builtin_zeta() {
  CoefficientStream ones([](std::size_t lo, std::size_t hi, cplx* out) {
    for (std::size_t n = lo; n < hi; ++n) out[n - lo] = 1.0;
  });
  SelbergDatum F = make_datum(1.0 / kSqrtPi, 1.0, {{0.5, cplx(0.0, 0.0)}},
                              std::move(ones), 1, 0.0, 1.0, 0.0, "riemann_zeta");
  F.strip_eval = [](cplx s, double tol) { return zeta_strip(s, tol); };
  F.coefficient_period = 1;
  return F;
}

SelbergDatum builtin_delta() {
  auto tau_cache = std::make_shared<std::vector<long double>>();
  auto cache_mutex = std::make_shared<std::mutex>();
  CoefficientStream stream(
      [tau_cache, cache_mutex](std::size_t lo, std::size_t hi, cplx* out) {
        {
          std::lock_guard<std::mutex> lock(*cache_mutex);
          if (tau_cache->size() < hi) *tau_cache = tau_table(hi - 1);
        }
        for (std::size_t n = lo; n < hi; ++n) {
          long double t = (*tau_cache)[n];
          out[n - lo] = cplx(double(t / std::pow((long double)n, 5.5L)), 0.0);
        }
      });
  SelbergDatum F = make_datum(1.0 / kTwoPi, 1.0, {{1.0, cplx(5.5, 0.0)}},
                              std::move(stream), 0, 0.0, 48.0, 0.2, "ramanujan_delta");
  CoefficientStream coeffs = F.coefficients;
  F.strip_eval = [coeffs](cplx s, double tol) { return delta_strip(coeffs, s, tol); };
  return F;
}

SelbergDatum builtin_dirichlet_l(long modulus, long conrey_index) {
  if (modulus < 3) throw ConfigError("dirichlet_l: modulus must be >= 3 (use riemann_zeta)");
  DirichletCharacter chi = conrey_character(modulus, conrey_index);
  if (!chi.primitive) {
    throw ConfigError("dirichlet_l: character is not primitive");
  }
  int kappa = chi.even ? 0 : 1;
  cplx rot = (kappa == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  cplx omega = chi.gauss_sum / (rot * std::sqrt(double(modulus)));
  auto chi_shared = std::make_shared<DirichletCharacter>(chi);
  CoefficientStream stream([chi_shared](std::size_t lo, std::size_t hi, cplx* out) {
    for (std::size_t n = lo; n < hi; ++n) out[n - lo] = (*chi_shared)(long(n));
  });
  char name[64];
  std::snprintf(name, sizeof name, "dirichlet_l:%ld:%ld", modulus, conrey_index);
  SelbergDatum F = make_datum(std::sqrt(double(modulus) / kPi), omega,
                              {{0.5, cplx(0.5 * kappa, 0.0)}}, std::move(stream), 0,
                              0.0, 1.0, 0.0, name);
  F.strip_eval = [chi_shared](cplx s, double tol) {
    return dirichlet_strip(*chi_shared, s, tol);
  };
  F.coefficient_period = modulus;
  return F;
}

SelbergDatum builtin(const std::string& name) {
  std::string norm;
  for (char c : name) {
    if (c == '(' || c == ')' || c == ',' || c == ' ') c = ':';
    if (c == ':' && (norm.empty() || norm.back() == ':')) continue;
    norm += c;
  }
  while (!norm.empty() && norm.back() == ':') norm.pop_back();
  if (norm == "riemann_zeta" || norm == "zeta") return builtin_zeta();
  if (norm == "ramanujan_delta" || norm == "delta") return builtin_delta();
  if (norm.rfind("dirichlet_l", 0) == 0) {
    long q = 0, idx = 0;
    if (std::sscanf(norm.c_str(), "dirichlet_l:%ld:%ld", &q, &idx) == 2) {
      return builtin_dirichlet_l(q, idx);
    }
    throw ConfigError("builtin: dirichlet_l needs modulus and index, e.g. dirichlet_l:4:3");
  }
  throw ConfigError("builtin: unknown name '" + name + "'");
}

// --------------------------------------------------------------- evaluate

namespace {

// smallest N with a certified Dirichlet tail <= tol/2, or 0 if none in budget
std::size_t certified_terms(const SelbergDatum& F, double sigma, double tol) {
  if (std::size_t L = F.coefficients.finite_length()) {
    return std::max<std::size_t>(L, 1);  // finite table: the sum is exact
  }
  double th = F.tail_exponent, C = F.tail_scale;
  if (sigma <= th + 1.1) return 0;
  for (std::size_t N = 64; N <= (std::size_t(1) << 21); N *= 2) {
    double nd = double(N);
    double tail = C * (std::pow(nd, th - sigma + 1.0) / (sigma - th - 1.0) +
                       std::pow(nd, th - sigma));
    if (tail <= 0.5 * tol) return N;
  }
  return 0;
}

Ev dirichlet_partial(const SelbergDatum& F, cplx s, std::size_t N, double tol) {
  F.coefficients.materialize(N);
  cplx acc = 0.0, comp = 0.0;  // Kahan: rounding stays O(u), not O(N u)
  double abs_acc = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    cplx an = F.coefficients.a(n);
    if (an == cplx(0.0, 0.0)) continue;
    cplx t = an * std::exp(-s * std::log(double(n)));
    cplx y = t - comp;
    cplx u = acc + y;
    comp = (u - acc) - y;
    acc = u;
    abs_acc += std::abs(t);
  }
  double tail = 0.0;
  std::size_t L = F.coefficients.finite_length();
  if (L == 0 || N < L) {
    double sigma = s.real(), th = F.tail_exponent;
    double nd = double(N);
    tail = F.tail_scale * (std::pow(nd, th - sigma + 1.0) / (sigma - th - 1.0) +
                           std::pow(nd, th - sigma));
  }
  (void)tol;
  // per-term evaluation error ~ |s| log n ulp dominates once the sum is
  // compensated
  double round = (6.0 + std::abs(s) * std::log(double(N + 1))) * 1e-16 * abs_acc;
  return {acc, tail + round};
}

}  // namespace

Ev evaluate(const SelbergDatum& F, cplx s, double tol) {
  if (F.pole_order_at_one >= 1 && std::abs(s - 1.0) < 10.0 * std::sqrt(tol)) {
    throw NumericError("evaluate: s is inside the excluded disc around the pole at 1");
  }
  double sigma = s.real();
  if (sigma >= 1.2) {
    if (std::size_t N = certified_terms(F, sigma, tol)) {
      return dirichlet_partial(F, s, N, tol);
    }
    if (F.strip_eval) return F.strip_eval(s, tol);
    throw NumericError("evaluate: tolerance not certifiable within the term budget");
  }
  if (sigma > -0.5) {
    if (F.strip_eval) return F.strip_eval(s, tol);
    throw NumericError("evaluate: strip evaluation unsupported for custom data");
  }
  // reflection: F(s) = omega Q^{1-2s} prod_j G(lambda_j(1-s)+conj(mu_j)) /
  //                    G(lambda_j s+mu_j) * conj(F)(1-s)
  cplx lg = (1.0 - 2.0 * s) * std::log(F.Q);
  for (const auto& g : F.gamma_factors) {
    lg += log_gamma(g.lambda * (1.0 - s) + std::conj(g.mu));
    lg -= log_gamma(g.lambda * s + g.mu);
  }
  cplx factor = F.omega * std::exp(lg);
  double child_tol = std::max(1e-15, tol / std::max(1.0, std::abs(factor)));
  Ev child = evaluate(conjugate(F), 1.0 - s, child_tol);
  cplx value = factor * child.value;
  // each log-gamma carries ~1e-13 (1+|lg|) absolute error into the exponent
  double gam_round = 1e-13 * (2.0 + std::abs(lg) + double(F.gamma_factors.size()));
  return {value, std::abs(factor) * child.bound + std::abs(value) * gam_round};
}

cplx pole_residue_at_one(const SelbergDatum& F) {
  if (F.pole_order_at_one == 0) return 0.0;
  if (F.pole_order_at_one > 1) {
    throw ConfigError("pole_residue_at_one: only simple poles supported");
  }
  if (F.name == "riemann_zeta") return 1.0;
  // contour integral on |s-1| = 0.1 (needs a strip evaluator)
  const int nodes = 64;
  const double r = 0.1;
  cplx acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    double th = kTwoPi * double(k) / double(nodes);
    cplx z = std::polar(r, th);
    acc += evaluate(F, 1.0 + z, 1e-12).value * z;
  }
  return acc / double(nodes);
}

}  // namespace lf
