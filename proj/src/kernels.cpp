#include "lf/kernels.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef LF_HAVE_OPENMP
#include <omp.h>
#endif

namespace lf {

int effective_threads() {
#ifdef LF_HAVE_OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("LF_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::max(1, n);
#else
  return 1;
#endif
}

namespace {

struct SparseCube {
  std::vector<std::size_t> idx;  // exponents m(m+1)/2
  std::vector<long double> coef;
};

// prod_{n>=1} (1-q^n)^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}
SparseCube cube_series(std::size_t N) {
  SparseCube s;
  for (std::size_t m = 0;; ++m) {
    std::size_t e = m * (m + 1) / 2;
    if (e >= N) break;
    s.idx.push_back(e);
    s.coef.push_back((m % 2 == 0 ? 1.0L : -1.0L) * (long double)(2 * m + 1));
  }
  return s;
}

// out[j] = sum_{idx_t <= j} coef_t * in[j - idx_t]; gather form so each out[j]
// is produced by exactly one writer with a fixed-order inner sum, making the
// parallel result bitwise equal to the serial one
void convolve(const SparseCube& s, const std::vector<long double>& in,
              std::vector<long double>& out, bool parallel) {
  const std::size_t N = in.size();
  const std::ptrdiff_t terms = std::ptrdiff_t(s.idx.size());
#ifdef LF_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) if (parallel)
#endif
  for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(N); ++j) {
    long double acc = 0.0L;
    for (std::ptrdiff_t t = 0; t < terms; ++t) {
      std::size_t k = s.idx[std::size_t(t)];
      if (k > std::size_t(j)) break;
      acc += s.coef[std::size_t(t)] * in[std::size_t(j) - k];
    }
    out[std::size_t(j)] = acc;
  }
#ifndef LF_HAVE_OPENMP
  (void)parallel;
#endif
}

std::vector<long double> tau_impl(std::size_t N, bool parallel) {
  if (N == 0) return {};
  // work over coefficients of prod (1-q^n)^24, indices 0..N-1; tau(n) is the
  // coefficient at index n-1
  SparseCube s = cube_series(N);
  std::vector<long double> a(N, 0.0L), b(N, 0.0L);
  for (std::size_t t = 0; t < s.idx.size(); ++t) a[s.idx[t]] = s.coef[t];
  for (int pass = 0; pass < 7; ++pass) {
    convolve(s, a, b, parallel);
    std::swap(a, b);
  }
  std::vector<long double> tau(N + 1, 0.0L);
  for (std::size_t n = 1; n <= N; ++n) tau[n] = a[n - 1];
  return tau;
}

}  // namespace

std::vector<long double> tau_table(std::size_t N) { return tau_impl(N, true); }

std::vector<long double> tau_table_serial(std::size_t N) { return tau_impl(N, false); }

std::vector<std::int64_t> tau_table_mod(std::size_t N, std::int64_t p) {
  if (N == 0) return {};
  std::vector<std::size_t> idx;
  std::vector<std::int64_t> coef;
  for (std::size_t m = 0;; ++m) {
    std::size_t e = m * (m + 1) / 2;
    if (e >= N) break;
    std::int64_t c = std::int64_t(2 * m + 1) % p;
    if (m % 2 == 1) c = p - c;
    idx.push_back(e);
    coef.push_back(c % p);
  }
  std::vector<std::int64_t> a(N, 0), b(N, 0);
  for (std::size_t t = 0; t < idx.size(); ++t) a[idx[t]] = coef[t];
  // coef < p <= ~2^31 would overflow the raw accumulator; keep p modest
  if (p > (std::int64_t(1) << 31)) throw std::invalid_argument("tau_table_mod: p too large");
  for (int pass = 0; pass < 7; ++pass) {
    for (std::size_t j = 0; j < N; ++j) {
      std::int64_t acc = 0;
      int pending = 0;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        std::size_t k = idx[t];
        if (k > j) break;
        acc += coef[t] % p * (a[j - k] % p) % p;
        if (++pending == 1024) {  // far below int64 overflow, reduce anyway
          acc %= p;
          pending = 0;
        }
      }
      b[j] = acc % p;
    }
    std::swap(a, b);
  }
  std::vector<std::int64_t> tau(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) tau[n] = a[n - 1];
  return tau;
}

}  // namespace lf
