#pragma once

#include <vector>

#include "lf/numeric.hpp"

namespace lf {

// Dirichlet character chi mod q, labeled by its Conrey index: the group
// (Z/q)* is parameterized through generators (primitive roots of odd prime
// powers; -1 and 5 for powers of two), and chi_q(m, .) pairs index m with
// arguments through the resulting discrete logarithms.
struct DirichletCharacter {
  long q = 1;
  long index = 1;
  std::vector<cplx> values;  // chi(0..q-1), zero off units
  bool primitive = false;
  bool even = true;          // chi(-1) = +1
  cplx gauss_sum;            // sum_a chi(a) e(a/q)

  cplx operator()(long n) const {
    long r = n % q;
    if (r < 0) r += q;
    return values[std::size_t(r)];
  }
};

// Builds chi_q(index, .). Requires q >= 1 and gcd(index, q) = 1.
DirichletCharacter conrey_character(long q, long index);

}  // namespace lf
