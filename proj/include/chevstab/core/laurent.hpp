#pragma once

#include <map>
#include <string>
#include <utility>

#include "rational.hpp"

namespace chevstab {

// Laurent polynomial in two variables q, w with exact rational coefficients.
class LaurentQW {
 public:
  using Exponent = std::pair<int, int>;  // (q power, w power)

  LaurentQW() = default;
  LaurentQW(const Rational& c) { add_term(0, 0, c); }  // NOLINT: implicit scalar
  LaurentQW(long c) { add_term(0, 0, Rational(c)); }  // NOLINT

  static LaurentQW monomial(int qExp, int wExp, const Rational& c = 1) {
    LaurentQW p;
    p.add_term(qExp, wExp, c);
    return p;
  }
  static LaurentQW q_power(int e, const Rational& c = 1) { return monomial(e, 0, c); }
  static LaurentQW w_power(int e, const Rational& c = 1) { return monomial(0, e, c); }

  void add_term(int qExp, int wExp, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({qExp, wExp}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }

  Rational coefficient(int qExp, int wExp) const {
    auto it = terms_.find({qExp, wExp});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant() const { return coefficient(0, 0); }

  LaurentQW& operator+=(const LaurentQW& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
    return *this;
  }
  LaurentQW& operator-=(const LaurentQW& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
    return *this;
  }
  LaurentQW& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend LaurentQW operator+(LaurentQW a, const LaurentQW& b) { return a += b; }
  friend LaurentQW operator-(LaurentQW a, const LaurentQW& b) { return a -= b; }
  friend LaurentQW operator-(LaurentQW a) {
    a *= Rational(-1);
    return a;
  }
  friend LaurentQW operator*(const LaurentQW& a, const LaurentQW& b) {
    LaurentQW r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return r;
  }
  friend LaurentQW operator*(LaurentQW a, const Rational& s) { return a *= s; }
  friend LaurentQW operator*(const Rational& s, LaurentQW a) { return a *= s; }
  bool operator==(const LaurentQW&) const = default;

  // only defined for a monomial
  LaurentQW inverse() const {
    if (!is_monomial()) throw DomainError("only monomial Laurent polynomials are invertible");
    const auto& [e, c] = *terms_.begin();
    return monomial(-e.first, -e.second, 1 / c);
  }

  // q -> q^qn, w -> w^wn
  LaurentQW substitute_power(int qn, int wn) const {
    LaurentQW r;
    for (const auto& [e, c] : terms_) r.add_term(e.first * qn, e.second * wn, c);
    return r;
  }

  // numeric q; result keeps the w dependence
  LaurentQW evaluate_q(const Rational& q) const {
    LaurentQW r;
    for (const auto& [e, c] : terms_) r.add_term(0, e.second, c * rpow(q, e.first));
    return r;
  }

  Rational evaluate(const Rational& q, const Rational& w) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) s += c * rpow(q, e.first) * rpow(w, e.second);
    return s;
  }

  // q, w printed with exponents; terms in increasing (q, w) order
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational a = abs(c);
      bool neg = c < 0;
      if (first) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      auto var = [&](const char* name, int p) {
        if (p == 0) return;
        if (!mono.empty()) mono += "*";
        mono += name;
        if (p != 1) mono += "^" + std::to_string(p);
      };
      var("q", e.first);
      var("w", e.second);
      if (mono.empty()) {
        s += a.get_str();
      } else if (a == 1) {
        s += mono;
      } else {
        s += a.get_str() + "*" + mono;
      }
    }
    return s;
  }

 private:
  std::map<Exponent, Rational> terms_;
};

// Single-variable Laurent polynomial with integer coefficients (Poincaré data).
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::string var) : var_(std::move(var)) {}

  void add_term(int e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  const std::map<int, BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }
  bool is_zero() const { return coeffs_.empty(); }
  const std::string& variable() const { return var_; }
  bool operator==(const LaurentPolynomial& o) const { return coeffs_ == o.coeffs_; }

  LaurentPolynomial truncated(int maxExp) const {
    LaurentPolynomial r(var_);
    for (const auto& [e, c] : coeffs_)
      if (e <= maxExp) r.add_term(e, c);
    return r;
  }

  BigInt evaluate_at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
      BigInt a = abs(c);
      if (first) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      if (e == 0) {
        s += a.get_str();
        continue;
      }
      if (a != 1) s += a.get_str() + "*";
      s += var_;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::string var_ = "u";
  std::map<int, BigInt> coeffs_;
};

}  // namespace chevstab
