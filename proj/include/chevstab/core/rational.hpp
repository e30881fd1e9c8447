#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace chevstab {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// integer powers, negative exponents allowed for nonzero base
inline Rational rpow(const Rational& base, long e) {
  if (e >= 0) {
    Rational r(ipow(base.get_num(), static_cast<unsigned long>(e)),
               ipow(base.get_den(), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
  }
  if (base == 0) throw DomainError("zero to a negative power");
  return rpow(1 / base, -e);
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(const BigInt& n, unsigned long k) {
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline bool fits_u64(const BigInt& z) {
  return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& z) {
  if (!fits_u64(z)) throw DomainError("value does not fit in 64 bits: " + z.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

// true if q = p^r for a prime p and r >= 1
inline bool is_prime_power(const BigInt& q) {
  if (q < 2) return false;
  BigInt p = 2;
  BigInt rest = q;
  while (p * p <= rest) {
    if (rest % p == 0) break;
    ++p;
  }
  if (p * p > rest) return true;  // rest is prime, and so was q
  while (rest % p == 0) rest /= p;
  return rest == 1;
}

}  // namespace chevstab
