#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace lf {

// Number of worker threads: OpenMP's max, capped by the LF_THREADS
// environment variable when set (always 1 without OpenMP).
int effective_threads();

// tau(1..N) as long doubles (values exceed int64 range from n ~ 2000 on;
// 64-bit mantissas keep the relative drift < 1e-13 at N = 3*10^5).
// Computed from the cube of the Euler product: prod (1-q^n)^3 is the sparse
// Jacobi series sum (-1)^m (2m+1) q^{m(m+1)/2}, and the 24th power needs
// seven sparse-dense convolution passes. Deterministic: the parallel and
// serial variants produce bitwise-identical tables.
std::vector<long double> tau_table(std::size_t N);
std::vector<long double> tau_table_serial(std::size_t N);

// Same pipeline over Z/p (exact), for structural cross-checks.
std::vector<std::int64_t> tau_table_mod(std::size_t N, std::int64_t p);

}  // namespace lf
