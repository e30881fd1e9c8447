#pragma once

#include <map>
#include <string>

#include "laurent.hpp"
#include "multidegree.hpp"

namespace chevstab {

// Power series in t_1..t_m truncated at total degree bound, coefficients in Q[q^±, w^±].
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t numVars, int bound) : m_(numVars), bound_(bound) {
    if (numVars == 0) throw ShapeError("series needs at least one variable");
    if (bound < 0) throw DomainError("negative truncation bound");
  }

  static TruncatedSeries one(std::size_t m, int bound) {
    TruncatedSeries s(m, bound);
    s.add_term(MultiDegree::zero(m), LaurentQW(1));
    return s;
  }
  static TruncatedSeries monomial(std::size_t m, int bound, const MultiDegree& d,
                                  const LaurentQW& c = LaurentQW(1)) {
    TruncatedSeries s(m, bound);
    s.add_term(d, c);
    return s;
  }
  static TruncatedSeries variable(std::size_t m, int bound, std::size_t k) {
    return monomial(m, bound, MultiDegree::unit(m, k));
  }

  std::size_t num_vars() const { return m_; }
  int bound() const { return bound_; }
  const std::map<MultiDegree, LaurentQW>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  LaurentQW coefficient(const MultiDegree& d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? LaurentQW() : it->second;
  }
  LaurentQW constant_term() const { return coefficient(MultiDegree::zero(m_)); }

  // terms past the bound are silently dropped
  void add_term(const MultiDegree& d, const LaurentQW& c) {
    if (d.size() != m_) throw ShapeError("monomial has wrong number of variables");
    if (d.total() > bound_ || c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_shape(o);
    for (const auto& [d, c] : o.coeffs_) add_term(d, c);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_shape(o);
    for (const auto& [d, c] : o.coeffs_) add_term(d, -c);
    return *this;
  }
  TruncatedSeries& operator*=(const LaurentQW& s) {
    std::map<MultiDegree, LaurentQW> out;
    for (const auto& [d, c] : coeffs_) {
      LaurentQW p = c * s;
      if (!p.is_zero()) out.emplace(d, std::move(p));
    }
    coeffs_ = std::move(out);
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const LaurentQW& s) { return a *= s; }

  bool operator==(const TruncatedSeries& o) const {
    return m_ == o.m_ && bound_ == o.bound_ && coeffs_ == o.coeffs_;
  }

  void check_shape(const TruncatedSeries& o) const {
    if (m_ != o.m_ || bound_ != o.bound_)
      throw ShapeError("series shapes differ: (" + std::to_string(m_) + "," +
                       std::to_string(bound_) + ") vs (" + std::to_string(o.m_) + "," +
                       std::to_string(o.bound_) + ")");
  }

  // sorted monomial list, one term per line: "<d>\t<coefficient>"
  std::string to_string() const {
    std::string s;
    for (const auto& [d, c] : coeffs_) s += d.to_string() + "\t" + c.to_string() + "\n";
    return s;
  }

 private:
  std::size_t m_;
  int bound_;
  std::map<MultiDegree, LaurentQW> coeffs_;
};

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_shape(b);
  TruncatedSeries r(a.num_vars(), a.bound());
  for (const auto& [da, ca] : a.coefficients())
    for (const auto& [db, cb] : b.coefficients()) {
      if (da.total() + db.total() > a.bound()) continue;
      r.add_term(da + db, ca * cb);
    }
  return r;
}

inline TruncatedSeries series_exp(const TruncatedSeries& f) {
  if (!f.constant_term().is_zero()) throw DomainError("series_exp needs zero constant term");
  TruncatedSeries result = TruncatedSeries::one(f.num_vars(), f.bound());
  TruncatedSeries term = result;
  for (int j = 1; j <= f.bound(); ++j) {
    term = series_mul(term, f) * LaurentQW(make_rational(1, j));
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

inline TruncatedSeries series_log(const TruncatedSeries& f) {
  if (f.constant_term() != LaurentQW(1)) throw DomainError("series_log needs constant term 1");
  TruncatedSeries g = f - TruncatedSeries::one(f.num_vars(), f.bound());
  TruncatedSeries result(f.num_vars(), f.bound());
  TruncatedSeries power = TruncatedSeries::one(f.num_vars(), f.bound());
  for (int j = 1; j <= f.bound(); ++j) {
    power = series_mul(power, g);
    if (power.is_zero()) break;
    result += power * LaurentQW(make_rational(j % 2 ? 1 : -1, j));
  }
  return result;
}

// constant term must be a nonzero monomial in q, w
inline TruncatedSeries series_inverse(const TruncatedSeries& f) {
  LaurentQW c0 = f.constant_term();
  if (!c0.is_monomial()) throw DomainError("series constant term is not invertible");
  LaurentQW c0inv = c0.inverse();
  TruncatedSeries g = f * c0inv - TruncatedSeries::one(f.num_vars(), f.bound());
  TruncatedSeries result = TruncatedSeries::one(f.num_vars(), f.bound());
  TruncatedSeries power = result;
  for (int j = 1; j <= f.bound(); ++j) {
    power = series_mul(power, g) * LaurentQW(-1);
    if (power.is_zero()) break;
    result += power;
  }
  return result * c0inv;
}

enum class CoefficientPower { Keep, Power };

// t -> t^n; with CoefficientPower::Power also q -> q^n and w -> w^n
inline TruncatedSeries series_substitute_power(const TruncatedSeries& f, int n,
                                               CoefficientPower mode = CoefficientPower::Keep) {
  if (n < 1) throw DomainError("substitution power must be positive");
  TruncatedSeries r(f.num_vars(), f.bound());
  for (const auto& [d, c] : f.coefficients()) {
    if (d.total() * n > f.bound()) continue;
    r.add_term(d.scaled(n), mode == CoefficientPower::Power ? c.substitute_power(n, n) : c);
  }
  return r;
}

inline TruncatedSeries series_evaluate_q(const TruncatedSeries& f, const Rational& q) {
  TruncatedSeries r(f.num_vars(), f.bound());
  for (const auto& [d, c] : f.coefficients()) r.add_term(d, c.evaluate_q(q));
  return r;
}

// t_1 = ... = t_m = 1, valid because the series is truncated
inline LaurentQW series_at_one(const TruncatedSeries& f) {
  LaurentQW s;
  for (const auto& [d, c] : f.coefficients()) s += c;
  return s;
}

// t_1, ..., t_m -> t (the add_! regrading on series)
inline TruncatedSeries series_collapse(const TruncatedSeries& f) {
  TruncatedSeries r(1, f.bound());
  for (const auto& [d, c] : f.coefficients()) r.add_term(MultiDegree{d.total()}, c);
  return r;
}

}  // namespace chevstab
