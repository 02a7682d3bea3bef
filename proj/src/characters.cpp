#include "lf/characters.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace lf {

namespace {

long mul_mod(long a, long b, long m) { return long((__int128)a * b % m); }

long pow_mod(long base, long exp, long m) {
  long r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// smallest primitive root mod an odd prime p
long primitive_root(long p) {
  long phi = p - 1;
  std::vector<long> prime_factors;
  long n = phi;
  for (long f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      prime_factors.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) prime_factors.push_back(n);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long f : prime_factors) {
      if (pow_mod(g, phi / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw NumericError("primitive_root: none found (p not an odd prime?)");
}

// chi component mod p^e as a table of values over 0..p^e-1
std::vector<cplx> component_odd(long p, int e, long m) {
  long pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  long phi = pe / p * (p - 1);
  long g = primitive_root(p);
  // lift to a primitive root mod p^e
  if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;
  std::vector<long> dlog(std::size_t(pe), -1);
  long acc = 1;
  for (long k = 0; k < phi; ++k) {
    dlog[std::size_t(acc)] = k;
    acc = mul_mod(acc, g, pe);
  }
  long am = dlog[std::size_t(m % pe)];
  std::vector<cplx> vals(std::size_t(pe), cplx(0.0, 0.0));
  for (long n = 0; n < pe; ++n) {
    long an = dlog[std::size_t(n)];
    if (an < 0) continue;
    vals[std::size_t(n)] = e2pi(double(mul_mod(am, an, phi)) / double(phi));
  }
  return vals;
}

// chi component mod 2^e; (Z/2^e)* = <-1> x <5> for e >= 3
std::vector<cplx> component_two(int e, long m) {
  long pe = 1L << e;
  std::vector<cplx> vals(std::size_t(pe), cplx(0.0, 0.0));
  if (e == 1) {
    vals[1] = 1.0;
    return vals;
  }
  if (e == 2) {
    int em = (m % 4 == 3) ? 1 : 0;
    vals[1] = 1.0;
    vals[3] = (em == 1) ? -1.0 : 1.0;  // e(em*en/2)
    return vals;
  }
  long half = pe >> 2;  // order of 5 mod 2^e
  std::vector<long> alog(std::size_t(pe), -1), eps(std::size_t(pe), 0);
  long acc = 1;
  for (long k = 0; k < half; ++k) {
    alog[std::size_t(acc)] = k;
    eps[std::size_t(acc)] = 0;
    alog[std::size_t(pe - acc)] = k;
    eps[std::size_t(pe - acc)] = 1;
    acc = mul_mod(acc, 5, pe);
  }
  long mm = m % pe;
  long am = alog[std::size_t(mm)], em = eps[std::size_t(mm)];
  for (long n = 1; n < pe; n += 2) {
    long an = alog[std::size_t(n)], en = eps[std::size_t(n)];
    vals[std::size_t(n)] =
        e2pi(double(em * en) / 2.0 + double(mul_mod(am, an, half)) / double(half));
  }
  return vals;
}

}  // namespace

DirichletCharacter conrey_character(long q, long index) {
  if (q < 1) throw ConfigError("conrey_character: modulus must be >= 1");
  index %= q;
  if (index < 0) index += q;
  if (q == 1) index = 1;
  if (q > 1 && std::gcd(index, q) != 1) {
    throw ConfigError("conrey_character: index not coprime to the modulus");
  }

  DirichletCharacter chi;
  chi.q = q;
  chi.index = index;
  chi.values.assign(std::size_t(q), cplx(1.0, 0.0));
  if (q > 1) {
    chi.values.assign(std::size_t(q), cplx(0.0, 0.0));
    std::vector<std::pair<long, int>> fac;  // (p, e)
    long n = q;
    for (long p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        int e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        fac.emplace_back(p, e);
      }
    }
    if (n > 1) fac.emplace_back(n, 1);

    std::vector<std::vector<cplx>> comps;
    std::vector<long> mods;
    for (auto [p, e] : fac) {
      long pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      comps.push_back(p == 2 ? component_two(e, index % pe)
                             : component_odd(p, e, index % pe));
      mods.push_back(pe);
    }
    for (long a = 0; a < q; ++a) {
      cplx v = 1.0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        v *= comps[i][std::size_t(a % mods[i])];
      }
      chi.values[std::size_t(a)] = v;
    }
  }

  chi.even = std::abs(chi.values[std::size_t((q - 1) % q)] - cplx(1.0, 0.0)) < 1e-9;

  // primitive iff chi is nontrivial on every subgroup {n = 1 mod q/p}
  chi.primitive = true;
  if (q == 1) chi.primitive = true;
  if (q > 1) {
    std::vector<long> primes;
    long n2 = q;
    for (long p = 2; p * p <= n2; ++p) {
      if (n2 % p == 0) {
        primes.push_back(p);
        while (n2 % p == 0) n2 /= p;
      }
    }
    if (n2 > 1) primes.push_back(n2);
    for (long p : primes) {
      long subq = q / p;
      bool trivial_on_kernel = true;
      for (long k = 0; k < p; ++k) {
        long m = (1 + k * subq) % q;
        cplx v = chi.values[std::size_t(m)];
        if (std::abs(v) < 0.5) continue;  // not a unit, not in the kernel
        if (std::abs(v - cplx(1.0, 0.0)) > 1e-9) {
          trivial_on_kernel = false;
          break;
        }
      }
      if (trivial_on_kernel) {
        chi.primitive = false;
        break;
      }
    }
  }

  chi.gauss_sum = 0.0;
  for (long a = 1; a <= q; ++a) {
    chi.gauss_sum += chi.values[std::size_t(a % q)] * e2pi(double(a) / double(q));
  }
  return chi;
}

}  // namespace lf
