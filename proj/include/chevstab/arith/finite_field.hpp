#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "../core/rational.hpp"

namespace chevstab {

// GF(p^r); elements are integers whose base-p digits are the coefficients of a
// polynomial in the generator, reduced modulo a fixed irreducible of degree r.
class GaloisField {
 public:
  using Elt = std::uint32_t;

  GaloisField(std::uint32_t p, std::uint32_t r) : p_(p), r_(r) {
    if (p < 2 || r < 1) throw DomainError("bad field parameters");
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw DomainError("field characteristic must be prime");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      q *= p;
      if (q > (1u << 24)) throw GuardError("field too large for table arithmetic");
    }
    q_ = static_cast<std::uint32_t>(q);
    find_modulus();
    build_tables();
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return r_; }
  std::uint32_t order() const { return q_; }

  Elt add(Elt a, Elt b) const {
    if (p_ == 2) return a ^ b;
    Elt out = 0, place = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      out += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }
  Elt neg(Elt a) const {
    Elt out = 0, place = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      out += ((p_ - a % p_) % p_) * place;
      a /= p_;
      place *= p_;
    }
    return out;
  }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  Elt inv(Elt a) const {
    if (a == 0) throw DomainError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elt pow(Elt a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  }
  // element of the prime field
  Elt constant(std::int64_t v) const {
    long m = static_cast<long>(v % static_cast<long>(p_));
    if (m < 0) m += p_;
    return static_cast<Elt>(m);
  }

 private:
  // coefficient vectors over F_p, low degree first
  using PPoly = std::vector<std::uint32_t>;

  PPoly mulmod(const PPoly& a, const PPoly& b) const {
    PPoly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    for (std::size_t k = prod.size(); k-- > r_;) {
      std::uint32_t c = prod[k];
      if (!c) continue;
      for (std::uint32_t i = 0; i <= r_; ++i)
        prod[k - r_ + i] = (prod[k - r_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    prod.resize(r_, 0);
    return prod;
  }

  Elt encode(const PPoly& v) const {
    Elt out = 0, place = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      out += (i < v.size() ? v[i] : 0) * place;
      place *= p_;
    }
    return out;
  }

  // first monic polynomial of degree r for which x has order q-1 (primitive)
  void find_modulus() {
    std::uint32_t count = q_;  // p^r choices of the lower coefficients
    for (std::uint32_t code = 0; code < count; ++code) {
      PPoly f(r_ + 1, 0);
      std::uint32_t c = code;
      for (std::uint32_t i = 0; i < r_; ++i) {
        f[i] = c % p_;
        c /= p_;
      }
      f[r_] = 1;
      if (f[0] == 0) continue;
      modulus_ = f;
      // order of x modulo f
      PPoly x(r_, 0);
      if (r_ == 1) {
        x[0] = (p_ - f[0]) % p_;  // x = -f0 in F_p
      } else {
        x[1] = 1;
      }
      PPoly cur(r_, 0);
      cur[0] = 1;
      std::uint32_t order = 0;
      bool ok = true;
      for (std::uint32_t k = 1; k <= q_ - 1; ++k) {
        cur = mulmod(cur, x);
        bool one = cur[0] == 1;
        for (std::uint32_t i = 1; i < r_ && one; ++i) one = cur[i] == 0;
        bool zero = std::all_of(cur.begin(), cur.end(), [](auto v) { return v == 0; });
        if (zero) {
          ok = false;
          break;
        }
        if (one) {
          order = k;
          break;
        }
      }
      if (ok && order == q_ - 1) {
        gen_ = x;
        return;
      }
    }
    throw DomainError("no primitive modulus found");
  }

  void build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    PPoly cur(r_, 0);
    cur[0] = 1;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      Elt e = encode(cur);
      exp_[k] = e;
      log_[e] = k;
      cur = mulmod(cur, gen_);
    }
  }

  std::uint32_t p_, r_, q_ = 0;
  PPoly modulus_, gen_;
  std::vector<Elt> exp_, log_;
};

// q = p^r as (p, r)
inline std::pair<std::uint32_t, std::uint32_t> prime_power_parts(std::uint64_t q) {
  std::uint32_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = static_cast<std::uint32_t>(d);
      break;
    }
  if (p == 0) {
    if (q < 2) throw DomainError("q must be a prime power");
    return {static_cast<std::uint32_t>(q), 1};
  }
  std::uint32_t r = 0;
  while (q % p == 0) {
    q /= p;
    ++r;
  }
  if (q != 1) throw DomainError("q must be a prime power");
  return {p, r};
}

// Polynomials over a GaloisField, coefficients low degree first, no trailing zeros.
using FPoly = std::vector<GaloisField::Elt>;

inline void trim(FPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// quotient and remainder; b must be nonzero
inline std::pair<FPoly, FPoly> poly_divmod(const GaloisField& F, FPoly a, const FPoly& b) {
  if (b.empty()) throw DomainError("division by zero polynomial");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  FPoly q(a.size() - b.size() + 1, 0);
  auto lead = F.inv(b.back());
  for (std::size_t k = a.size(); k-- >= b.size();) {
    auto c = F.mul(a[k], lead);
    q[k - b.size() + 1] = c;
    if (c)
      for (std::size_t i = 0; i < b.size(); ++i)
        a[k - b.size() + 1 + i] = F.sub(a[k - b.size() + 1 + i], F.mul(c, b[i]));
    if (k == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline GaloisField::Elt poly_eval(const GaloisField& F, const FPoly& f, GaloisField::Elt x) {
  GaloisField::Elt acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

// multiplicity of x as a root of f (f nonzero)
inline int root_multiplicity(const GaloisField& F, FPoly f, GaloisField::Elt x) {
  int m = 0;
  FPoly lin{F.neg(x), 1};
  trim(f);
  while (!f.empty() && poly_eval(F, f, x) == 0) {
    f = poly_divmod(F, f, lin).first;
    ++m;
  }
  return m;
}

// Over a prime field F_p: the roots of f in the extension E = F_{p^e} have
// multiplicities constant along Frobenius orbits x -> x^p. f has coefficients in F_p.
inline bool galois_multiplicities_constant(const std::vector<std::uint32_t>& fCoeffs,
                                           const GaloisField& E) {
  FPoly f;
  for (auto c : fCoeffs) f.push_back(E.constant(c));
  trim(f);
  if (f.empty()) throw DomainError("zero polynomial");
  for (GaloisField::Elt x = 0; x < E.order(); ++x) {
    int mx = root_multiplicity(E, f, x);
    if (mx == 0) continue;
    if (root_multiplicity(E, f, E.pow(x, E.characteristic())) != mx) return false;
  }
  return true;
}

}  // namespace chevstab
