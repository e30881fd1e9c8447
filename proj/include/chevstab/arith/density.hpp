#pragma once

#include <optional>
#include <string>
#include <vector>

#include "../ce/ce.hpp"
#include "../decat/zeta.hpp"
#include "counting.hpp"

namespace chevstab {

struct DensityEmpirical {
  std::vector<BigInt> counts;     // |Z^n_(d,...,d)(F_q)|
  std::vector<BigInt> symCounts;  // |Sym^(d,...,d) X(F_q)|
  std::vector<Rational> ratios;
  Rational target;
  std::optional<int> firstHold;  // first d from which every ratio up to dMax equals the target
};

// ratios along the diagonal, from the Euler product counts
inline DensityEmpirical density_empirical(const SpaceSpec& X, const Truncation& n, int dMax) {
  if (!X.point_counts()) throw PreconditionError("density needs point counts for " + X.name());
  const std::size_t m = n.colors();
  DensityEmpirical out;
  const Truncation inf = Truncation::infinite(m);
  for (int d = 0; d <= dMax; ++d) {
    MultiDegree diag = MultiDegree::diagonal(m, d);
    BigInt z = count_points_euler(X, n, diag).count;
    BigInt s = count_points_euler(X, inf, diag).count;
    out.counts.push_back(z);
    out.symCounts.push_back(s);
    out.ratios.push_back(make_rational(z, s));
  }
  int N = n.is_infinite() ? 0 : n.arity();
  out.target = n.is_infinite() ? Rational(1)
                               : zeta_inverse(X, X.dim() * N).evaluate(Rational(X.point_counts()->q), 1);
  for (int d = dMax; d >= 0 && out.ratios[d] == out.target; --d) out.firstHold = d;
  return out;
}

struct LefschetzReport {
  MultiDegree d;
  BigInt brute;
  Rational engine;  // q^{|d| dimX} sum_c (-1)^c dim q^e
  bool ok = false;
  std::string to_string() const {
    return "d=" + d.to_string() + " brute=" + brute.get_str() + " engine=" + engine.get_str() +
           (ok ? " PASS" : " FAIL");
  }
};

inline Rational lefschetz_value(const CohomologyTable& t, const BigInt& q, int dimX, int total) {
  Rational s = 0;
  const Rational qq(q);
  for (const auto& [k, dim] : t.entries()) {
    if (!k.e) throw UnsupportedError("Lefschetz evaluation needs frobExp on every class");
    s += Rational(k.c % 2 == 0 ? 1 : -1) * Rational(from_u64(dim)) * rpow(qq, *k.e);
  }
  return s * rpow(qq, static_cast<long>(total) * dimX);
}

// brute-force count against the trace of the CE cohomology table
inline LefschetzReport lefschetz_check(const SpaceSpec& X, std::uint64_t q, const LInftyModel& g,
                                       const MultiDegree& d, unsigned jobs = default_jobs()) {
  CountSpace cs = count_space_of(X);
  LefschetzReport r;
  r.d = d;
  r.brute = count_points_brute(cs, q, g.truncation(), d, jobs).count;
  r.engine = lefschetz_value(betti(g, d), BigInt(static_cast<unsigned long>(q)), X.dim(), d.total());
  r.ok = Rational(r.brute) == r.engine;
  return r;
}

}  // namespace chevstab
