#pragma once

#include <optional>
#include <string>
#include <vector>

#include "../ce/ce.hpp"
#include "../core/series.hpp"
#include "../lmodel/model.hpp"
#include "../space/closed_points.hpp"
#include "../stab/stab.hpp"
#include "zeta.hpp"

namespace chevstab {

// what a class of frobExp e / weight w contributes besides its sign (-1)^c
enum class DecatMode { Euler, Trace, Weight };

inline LaurentQW class_weight(const TableKey& k, DecatMode mode) {
  switch (mode) {
    case DecatMode::Euler: return LaurentQW(1);
    case DecatMode::Trace:
      if (!k.e) throw DomainError("trace needs frobExp on every entry");
      return LaurentQW::q_power(*k.e);
    case DecatMode::Weight: return LaurentQW::w_power(k.w);
  }
  return LaurentQW(1);
}

inline TruncatedSeries chi_gr(const CohomologyTable& t, int D, DecatMode mode) {
  if (t.num_colors() == 0) throw ShapeError("graded Euler characteristic needs a graded table");
  TruncatedSeries s(t.num_colors(), D);
  for (const auto& [k, dim] : t.entries()) {
    LaurentQW c = class_weight(k, mode) * Rational(from_u64(dim));
    s.add_term(k.d, k.c % 2 == 0 ? c : -c);
  }
  return s;
}

inline TruncatedSeries chi_gr(const CohomologyTable& t, int D, bool useTrace) {
  return chi_gr(t, D, useTrace ? DecatMode::Trace : DecatMode::Euler);
}

// exp(-sum_n (1/n) chi(a)(q^n, t^n)) for the graded dimensions of a
inline TruncatedSeries chi_via_plethystic_exp(const CohomologyTable& aDims, int D,
                                              DecatMode mode = DecatMode::Trace) {
  for (const auto& [k, dim] : aDims.entries())
    if (k.d.is_zero()) throw DomainError("plethystic exponential needs positive multidegrees");
  TruncatedSeries chi = chi_gr(aDims, D, mode);
  TruncatedSeries f(aDims.num_colors(), D);
  for (int n = 1; n <= D; ++n)
    f += series_substitute_power(chi, n, CoefficientPower::Power) * LaurentQW(make_rational(-1, n));
  return series_exp(f);
}

inline LaurentPolynomial poincare(const CohomologyTable& t) {
  LaurentPolynomial p("u");
  for (const auto& [k, dim] : t.entries()) p.add_term(k.c, from_u64(dim));
  return p;
}

inline LaurentPolynomial poincare_virtual(const CohomologyTable& t) {
  LaurentPolynomial p("w");
  for (const auto& [k, dim] : t.entries()) p.add_term(k.w, (k.c % 2 == 0 ? 1 : -1) * from_u64(dim));
  return p;
}

// virtual Poincare series of the stable cohomology, exp(-sum (1/n) PoincVir(Quot_un g)(w^n)),
// truncated at weight W
inline LaurentPolynomial poincare_virtual_via_exp(const LInftyModel& g, int W) {
  LInftyModel q = quot_un(g);
  TruncatedSeries f(1, W);
  for (const auto& c : q.classes()) {
    if (c.w < 1) throw DomainError("exponential formula needs positive weights, class " + c.label);
    f.add_term(MultiDegree{c.w}, LaurentQW(Rational(c.c % 2 == 0 ? 1 : -1)));
  }
  TruncatedSeries g2(1, W);
  for (int n = 1; n <= W; ++n)
    g2 += series_substitute_power(f, n) * LaurentQW(make_rational(-1, n));
  TruncatedSeries e = series_exp(g2);
  LaurentPolynomial p("w");
  for (const auto& [d, c] : e.coefficients()) {
    Rational v = c.constant();
    if (v.get_den() != 1) throw CheckFailure("non-integral virtual Poincare coefficient");
    p.add_term(d[0], v.get_num());
  }
  return p;
}

struct VirtualPoincareCheck {
  LaurentPolynomial direct;
  LaurentPolynomial viaExp;
  bool equal = false;
};

// weights of H^c are at least c here, so the stable table through degree W sees every weight <= W
inline VirtualPoincareCheck poincare_virtual_check(const LInftyModel& g, int W) {
  VirtualPoincareCheck r;
  CohomologyTable st = stable_betti(g, W);
  LaurentPolynomial all = poincare_virtual(st);
  r.direct = LaurentPolynomial("w");
  for (const auto& [e, c] : all.coefficients())
    if (e <= W) r.direct.add_term(e, c);
  for (const auto& [k, dim] : st.entries())
    if (k.w < k.c) throw PreconditionError("class below its degree in weight; truncation unsafe");
  r.viaExp = poincare_virtual_via_exp(g, W);
  r.equal = r.direct == r.viaExp;
  return r;
}

// prod_x (1 - q^{-d N deg x} t^{N deg x}) over closed points, numeric q from the point counts
inline TruncatedSeries density_series(const SpaceSpec& X, const Truncation& n, int D) {
  TruncatedSeries out = TruncatedSeries::one(1, D);
  if (n.is_infinite()) return out;
  const int N = n.arity();
  const int E = D / N;
  if (E == 0) return out;
  if (!X.point_counts()) throw PreconditionError("density series needs point counts for " + X.name());
  const auto& pc = *X.point_counts();
  if (static_cast<int>(pc.N.size()) < E)
    throw PreconditionError("point counts available to depth " + std::to_string(pc.N.size()) +
                            ", need " + std::to_string(E));
  ClosedPointCounts cp = closed_points(pc.q, pc.N, E);
  const Rational q(pc.q);
  for (int e = 1; e <= E; ++e) {
    const BigInt& M = cp.M[e - 1];
    Rational a = -rpow(q, -static_cast<long>(X.dim()) * N * e);
    TruncatedSeries f(1, D);
    for (int j = 0; j * N * e <= D; ++j) {
      BigInt b = binomial(M, static_cast<unsigned long>(j));
      if (b == 0) break;
      f.add_term(MultiDegree{j * N * e}, LaurentQW(Rational(b) * rpow(a, j)));
    }
    out = series_mul(out, f);
  }
  return out;
}

// partial sums of the t-coefficients, i.e. the series at t = 1 truncated at each degree
inline std::vector<Rational> partial_sums_at_one(const TruncatedSeries& f) {
  if (f.num_vars() != 1) throw ShapeError("partial sums need a single variable");
  std::vector<Rational> out;
  Rational s = 0;
  for (int d = 0; d <= f.bound(); ++d) {
    LaurentQW c = f.coefficient(MultiDegree{d});
    if (c.size() > 1 || (c.size() == 1 && c.terms().begin()->first != std::make_pair(0, 0)))
      throw DomainError("partial sums need numeric coefficients");
    s += c.constant();
    out.push_back(s);
  }
  return out;
}

// generators of the Sym closed form, i.e. the variables dual to the Y classes
inline std::vector<Generator> density_generators(const LInftyModel& g) {
  SemiFreeAlgebra ce = ce_algebra(g);
  std::vector<Generator> ys;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.cls(i).kind == ClassKind::Y) ys.push_back(ce.gen(i));
  return ys;
}

struct StableDensity {
  CohomologyTable table{0};
  bool complete = true;  // false when truncated at cMax
  LaurentPolynomial poincare{"u"};
  LaurentPolynomial virtualPoincare{"w"};
  std::optional<LaurentQW> trace;
  std::optional<LaurentQW> zetaInverse;
  bool traceMatches = false;
};

// Sym of the Y-dual variables with the grading forgotten. Even variables make it
// infinite; cMax then truncates it.
inline StableDensity stable_density(const SpaceSpec& X, const Truncation& n,
                                    std::optional<int> cMax = std::nullopt) {
  if (n.is_infinite()) throw DomainError("stable density needs a finite n");
  LInftyModel g = make_model(X, n);
  std::vector<Generator> ys = density_generators(g);
  bool allOdd = true;
  for (auto& y : ys) {
    allOdd = allOdd && y.odd();
    y.gr = MultiDegree{1};  // count by length; each variable has degree >= 1
  }
  if (!allOdd && !cMax) throw DomainError("stable density of " + X.name() + " is infinite; give cMax");
  int maxLen = allOdd ? static_cast<int>(ys.size()) : *cMax;
  if (cMax) maxLen = std::min(maxLen, *cMax);
  StableDensity out;
  out.complete = allOdd && (!cMax || maxLen == static_cast<int>(ys.size()));
  for (int len = 0; len <= maxLen; ++len)
    for (const auto& [k, cnt] : sym_dimensions(ys, MultiDegree{len})) {
      int c = std::get<0>(k);
      if (cMax && c > *cMax) {
        continue;
      }
      out.table.add(MultiDegree(), c, std::get<1>(k), std::get<2>(k), to_u64(cnt));
    }
  if (cMax && !allOdd) out.complete = false;
  if (cMax && allOdd) {
    // complete iff nothing was dropped
    std::size_t full = 0;
    for (const auto& [k, v] : out.table.entries()) full += v;
    out.complete = full == (std::size_t{1} << ys.size());
  }
  out.poincare = poincare(out.table);
  out.virtualPoincare = poincare_virtual(out.table);
  if (X.trace_supported() && out.complete) {
    LaurentQW tr;
    for (const auto& [k, v] : out.table.entries())
      tr += LaurentQW::q_power(*k.e, Rational(k.c % 2 == 0 ? 1 : -1) * Rational(from_u64(v)));
    out.trace = tr;
    out.zetaInverse = zeta_inverse(X, X.dim() * n.arity());
    out.traceMatches = *out.trace == *out.zetaInverse;
  }
  return out;
}

inline LaurentQW stable_density_trace(const SpaceSpec& X, const Truncation& n) {
  if (!X.trace_supported()) throw UnsupportedError("trace of " + X.name() + " is not Tate");
  StableDensity sd = stable_density(X, n);
  if (!sd.trace) throw UnsupportedError("stable density of " + X.name() + " is not T-summable");
  return *sd.trace;
}

struct PoincareDensity {
  bool hypothesis = false;  // all |n|-fold products in H*_c vanish
  int cMax = 0;
  LaurentPolynomial direct{"u"};  // Poinc(stable Z^n) / Poinc(stable Sym), as a series through cMax
  LaurentPolynomial closed{"u"};  // Poinc of the stable density through cMax
  bool equal = false;
};

inline PoincareDensity poincare_density(const SpaceSpec& X, const Truncation& n, int cMax) {
  if (n.is_infinite()) throw DomainError("Poincare density needs a finite n");
  PoincareDensity r;
  r.cMax = cMax;
  r.hypothesis = X.nfold_products_vanish(n.arity());
  CohomologyTable z = stable_betti(make_model(X, n), cMax);
  CohomologyTable sym = stable_betti(make_model(X, Truncation::infinite(n.colors())), cMax);
  auto to_series = [cMax](const LaurentPolynomial& p) {
    TruncatedSeries s(1, cMax);
    for (const auto& [e, c] : p.coefficients()) {
      if (e < 0) throw DomainError("negative degree in stable table");
      s.add_term(MultiDegree{e}, LaurentQW(Rational(c)));
    }
    return s;
  };
  TruncatedSeries q = series_mul(to_series(poincare(z)), series_inverse(to_series(poincare(sym))));
  for (const auto& [d, c] : q.coefficients()) {
    Rational v = c.constant();
    if (v.get_den() != 1) throw CheckFailure("non-integral Poincare quotient");
    r.direct.add_term(d[0], v.get_num());
  }
  r.closed = poincare(stable_density(X, n, cMax).table).truncated(cMax);
  r.equal = r.direct == r.closed;
  return r;
}

// sum over all multidegrees of the trace of the relative tensor
inline LaurentQW trace_stable(const LInftyModel& g) {
  if (!g.all_trace()) throw UnsupportedError("trace needs a Tate model");
  std::vector<Generator> ys = density_generators(g);
  for (const auto& y : ys)
    if (!y.odd()) throw UnsupportedError("stable data is not T-summable");
  LaurentQW total;
  const std::size_t m = g.colors();
  std::vector<MultiDegree> support{MultiDegree::zero(m)};
  if (!g.truncation().is_infinite())
    for (std::size_t j = 1; j <= ys.size(); ++j) support.push_back(g.truncation().n().scaled(static_cast<int>(j)));
  for (const auto& d : support) {
    CohomologyTable t = relative_tensor_over_free(g, d);
    total += series_at_one(chi_gr(t, d.total(), DecatMode::Trace));
  }
  return total;
}

}  // namespace chevstab
