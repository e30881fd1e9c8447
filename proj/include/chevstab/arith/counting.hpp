#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../core/parallel.hpp"
#include "../lmodel/model.hpp"
#include "../space/closed_points.hpp"
#include "../space/space.hpp"
#include "finite_field.hpp"

namespace chevstab {

inline constexpr std::uint64_t kBruteForceBudget = 100000000;  // loop iterations

enum class CountSpace { A1, A2, P1 };

inline CountSpace count_space_of(const SpaceSpec& X) {
  if (X.family() == SpaceFamily::Affine && X.family_param() == 1) return CountSpace::A1;
  if (X.family() == SpaceFamily::Affine && X.family_param() == 2) return CountSpace::A2;
  if (X.family() == SpaceFamily::ProjSpace && X.family_param() == 1) return CountSpace::P1;
  throw UnsupportedError("brute-force counting is implemented for A1, A2 and P1, not " + X.name());
}

inline std::string to_string(CountSpace s) {
  switch (s) {
    case CountSpace::A1: return "A1";
    case CountSpace::A2: return "A2";
    default: return "P1";
  }
}

struct ColoredDivisorCount {
  std::string space;
  BigInt q;
  Truncation n;
  MultiDegree d;
  BigInt count;
};

// An effective divisor as (place, multiplicity) pairs sorted by place.
using Divisor = std::vector<std::pair<std::uint32_t, int>>;

namespace detail {

// places of A1 / P1 over F_q: monic irreducibles up to degree D (and infinity for P1),
// divisors of every degree <= D as factorizations of monic polynomials
class LineDivisors {
 public:
  LineDivisors(const GaloisField& F, int D) : F_(F), D_(D) {
    const std::uint64_t q = F.order();
    std::uint64_t total = 0, size = 1;
    for (int n = 0; n <= D; ++n) {
      total += size;
      if (total > kBruteForceBudget)
        throw GuardError("too many monic polynomials: degree " + std::to_string(D));
      size *= q;
    }
    byDegree_.resize(static_cast<std::size_t>(D) + 1);
    size = 1;
    for (int n = 0; n <= D; ++n) {
      for (std::uint64_t code = 0; code < size; ++code) byDegree_[n].push_back(factor(decode(code, n)));
      size *= q;
    }
  }
  const std::vector<Divisor>& monic_of_degree(int n) const { return byDegree_.at(n); }
  std::uint32_t num_places() const { return static_cast<std::uint32_t>(irreducibles_.size()); }
  const std::vector<FPoly>& irreducibles() const { return irreducibles_; }

 private:
  FPoly decode(std::uint64_t code, int n) const {
    FPoly f(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
      f[i] = static_cast<GaloisField::Elt>(code % F_.order());
      code /= F_.order();
    }
    f[n] = 1;
    return f;
  }
  // trial division against the irreducibles found so far (all of lower degree);
  // a cofactor with no factor of at most half its degree is irreducible
  Divisor factor(FPoly f) {
    Divisor out;
    for (std::uint32_t id = 0; id < irreducibles_.size() && f.size() > 1; ++id) {
      const FPoly& g = irreducibles_[id];
      if (2 * (g.size() - 1) > f.size() - 1) break;
      int mult = 0;
      while (f.size() >= g.size()) {
        auto [qq, r] = poly_divmod(F_, f, g);
        if (!r.empty()) break;
        f = qq;
        ++mult;
      }
      if (mult) out.emplace_back(id, mult);
    }
    if (f.size() > 1) {
      // remaining cofactor is irreducible; it may already be known
      std::uint32_t id = 0;
      for (; id < irreducibles_.size(); ++id)
        if (irreducibles_[id] == f) break;
      if (id == irreducibles_.size()) irreducibles_.push_back(f);
      out.emplace_back(id, 1);
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  const GaloisField& F_;
  int D_;
  std::vector<FPoly> irreducibles_;
  std::vector<std::vector<Divisor>> byDegree_;
};

// closed points of A2 of degree exactly e, as Frobenius orbits of F_{q^e}-points
inline std::uint64_t a2_closed_points(std::uint32_t p, std::uint32_t r, int e) {
  GaloisField E(p, r * static_cast<std::uint32_t>(e));
  const std::uint64_t qe = E.order();
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) q *= p;
  if (qe * qe > kBruteForceBudget) throw GuardError("extension field too large");
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < qe; ++x)
    for (std::uint64_t y = 0; y < qe; ++y) {
      // orbit size = smallest f with Frobenius^f fixing (x, y)
      auto fx = static_cast<GaloisField::Elt>(x), fy = static_cast<GaloisField::Elt>(y);
      int orbit = 0;
      auto cx = fx, cy = fy;
      bool minimal = true;
      do {
        cx = E.pow(cx, q);
        cy = E.pow(cy, q);
        ++orbit;
        // keep only the orbit representative with the smallest code
        if (cx * qe + cy < fx * qe + fy) minimal = false;
      } while (cx != fx || cy != fy);
      if (orbit == e && minimal) ++count;
    }
  return count;
}

// all multisets of places with total degree D, places given with their degrees
inline void divisors_of_degree(const std::vector<int>& placeDeg, int D, std::vector<Divisor>& out,
                               std::uint64_t budget) {
  Divisor cur;
  std::function<void(std::uint32_t, int)> rec = [&](std::uint32_t from, int left) {
    if (left == 0) {
      out.push_back(cur);
      if (out.size() > budget) throw GuardError("too many divisors of degree " + std::to_string(D));
      return;
    }
    for (std::uint32_t pl = from; pl < placeDeg.size(); ++pl) {
      int dg = placeDeg[pl];
      if (dg > left) continue;
      for (int mult = 1; mult * dg <= left; ++mult) {
        cur.emplace_back(pl, mult);
        rec(pl + 1, left - mult * dg);
        cur.pop_back();
      }
    }
  };
  rec(0, D);
}

inline bool violates(const std::vector<const Divisor*>& tuple, const MultiDegree& n) {
  // a place is bad when its multiplicity reaches n_k in every color
  for (const auto& [pl, mult] : *tuple[0]) {
    if (mult < n[0]) continue;
    bool all = true;
    for (std::size_t k = 1; k < tuple.size() && all; ++k) {
      const Divisor& D = *tuple[k];
      auto it = std::lower_bound(D.begin(), D.end(), std::make_pair(pl, 0));
      all = it != D.end() && it->first == pl && it->second >= n[k];
    }
    if (all) return true;
  }
  return false;
}

inline BigInt count_tuples(const std::vector<const std::vector<Divisor>*>& lists, const Truncation& n,
                           unsigned jobs) {
  const std::size_t m = lists.size();
  std::uint64_t total = 1;
  for (auto* l : lists) {
    if (l->empty()) return 0;
    if (total > kBruteForceBudget / l->size())
      throw GuardError("brute-force enumeration exceeds budget");
    total *= l->size();
  }
  if (n.is_infinite()) return from_u64(total);
  // stratify by the first color's divisor
  std::vector<std::size_t> strata(lists[0]->size());
  for (std::size_t i = 0; i < strata.size(); ++i) strata[i] = i;
  auto counts = parallel_map(strata, jobs, [&](std::size_t first) {
    std::uint64_t good = 0;
    std::vector<std::size_t> idx(m, 0);
    idx[0] = first;
    std::vector<const Divisor*> tuple(m);
    while (true) {
      for (std::size_t k = 0; k < m; ++k) tuple[k] = &(*lists[k])[idx[k]];
      if (!violates(tuple, n.n())) ++good;
      std::size_t k = m;
      while (k > 1 && idx[k - 1] + 1 == lists[k - 1]->size()) idx[--k] = 0;
      if (k <= 1) break;
      ++idx[k - 1];
    }
    return good;
  });
  BigInt s = 0;
  for (auto c : counts) s += from_u64(c);
  return s;
}

}  // namespace detail

// Enumerates m-tuples of effective divisors over F_q and keeps those where no
// place has multiplicity >= n_k in every color k.
inline ColoredDivisorCount count_points_brute(CountSpace X, std::uint64_t q, const Truncation& n,
                                              const MultiDegree& d, unsigned jobs = default_jobs()) {
  if (d.size() != n.colors()) throw ShapeError("d and n have different numbers of colors");
  auto [p, r] = prime_power_parts(q);
  // |Sym^d X(F_q)| per color: q^{d dimX} for affine spaces, 1 + q + ... + q^d for P1
  BigInt loops = 1;
  for (int x : d.parts()) {
    BigInt qq(static_cast<unsigned long>(q)), size = 0;
    if (X == CountSpace::P1)
      for (int a = 0; a <= x; ++a) size += ipow(qq, static_cast<unsigned long>(a));
    else
      size = ipow(qq, static_cast<unsigned long>(x * (X == CountSpace::A2 ? 2 : 1)));
    loops *= size;
  }
  if (loops > BigInt(static_cast<unsigned long>(kBruteForceBudget)))
    throw GuardError("brute-force enumeration of " + loops.get_str() + " divisor tuples exceeds the budget of " +
                     std::to_string(kBruteForceBudget));
  int maxd = 0;
  for (int x : d.parts()) maxd = std::max(maxd, x);
  std::vector<std::vector<Divisor>> perDegree(static_cast<std::size_t>(maxd) + 1);
  if (X == CountSpace::A2) {
    std::vector<int> placeDeg;
    for (int e = 1; e <= maxd; ++e) {
      std::uint64_t c = detail::a2_closed_points(p, r, e);
      if (placeDeg.size() + c > kBruteForceBudget) throw GuardError("too many closed points");
      placeDeg.insert(placeDeg.end(), c, e);
    }
    for (int D = 0; D <= maxd; ++D) detail::divisors_of_degree(placeDeg, D, perDegree[D], kBruteForceBudget);
  } else {
    GaloisField F(p, r);
    detail::LineDivisors line(F, maxd);
    const std::uint32_t inf = line.num_places() + 1;  // larger than every finite place
    for (int D = 0; D <= maxd; ++D) {
      if (X == CountSpace::A1) {
        perDegree[D] = line.monic_of_degree(D);
      } else {
        for (int a = 0; a <= D; ++a)
          for (Divisor div : line.monic_of_degree(a)) {
            if (D - a > 0) div.emplace_back(inf, D - a);
            perDegree[D].push_back(std::move(div));
          }
      }
    }
  }
  std::vector<const std::vector<Divisor>*> lists;
  for (int x : d.parts()) lists.push_back(&perDegree[x]);
  return {to_string(X), BigInt(static_cast<unsigned long>(q)), n, d, detail::count_tuples(lists, n, jobs)};
}

// Coefficient array on the box [0, d].
class BoxPoly {
 public:
  explicit BoxPoly(MultiDegree bound) : bound_(std::move(bound)) {
    std::size_t size = 1;
    for (int b : bound_.parts()) size *= static_cast<std::size_t>(b) + 1;
    coeffs_.assign(size, 0);
  }
  std::size_t index(const MultiDegree& a) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < a.size(); ++k) idx = idx * (static_cast<std::size_t>(bound_[k]) + 1) + a[k];
    return idx;
  }
  BigInt& at(const MultiDegree& a) { return coeffs_[index(a)]; }
  const BigInt& at(const MultiDegree& a) const { return coeffs_[index(a)]; }
  const MultiDegree& bound() const { return bound_; }

  BoxPoly operator*(const BoxPoly& o) const {
    BoxPoly r(bound_);
    auto cells = degrees_in_box(bound_);
    for (const auto& a : cells) {
      const BigInt& ca = at(a);
      if (ca == 0) continue;
      for (const auto& b : cells) {
        const BigInt& cb = o.at(b);
        if (cb == 0) continue;
        MultiDegree s = a + b;
        if (!s.leq(bound_)) continue;
        r.at(s) += ca * cb;
      }
    }
    return r;
  }
  BoxPoly pow(BigInt e) const {
    BoxPoly result(bound_);
    result.at(MultiDegree::zero(bound_.size())) = 1;
    BoxPoly base = *this;
    while (e > 0) {
      if (e % 2 == 1) result = result * base;
      e /= 2;
      if (e > 0) base = base * base;
    }
    return result;
  }

 private:
  MultiDegree bound_;
  std::vector<BigInt> coeffs_;
};

// coefficient of t^d in prod_e L_e^{M_e}, L_e = sum over allowed local multiplicities a of t^{a e}
inline ColoredDivisorCount count_points_euler(const SpaceSpec& X, const Truncation& n,
                                              const MultiDegree& d) {
  if (d.size() != n.colors()) throw ShapeError("d and n have different numbers of colors");
  if (!X.point_counts()) throw PreconditionError("Euler product needs point counts for " + X.name());
  const auto& pc = *X.point_counts();
  const int E = d.total();
  if (static_cast<int>(pc.N.size()) < E)
    throw PreconditionError("point counts available to depth " + std::to_string(pc.N.size()) +
                            ", need " + std::to_string(E));
  ClosedPointCounts cp = closed_points(pc.q, pc.N, E);
  BoxPoly acc(d);
  acc.at(MultiDegree::zero(d.size())) = 1;
  auto cells = degrees_in_box(d);
  for (int e = 1; e <= E; ++e) {
    if (cp.M[e - 1] == 0) continue;
    BoxPoly local(d);
    for (const auto& a : cells) {
      bool divisible = true;
      for (int x : a.parts()) divisible = divisible && x % e == 0;
      if (!divisible) continue;
      bool bad = !n.is_infinite();
      for (std::size_t k = 0; k < a.size() && bad; ++k) bad = a[k] / e >= n.n()[k];
      if (!bad) local.at(a) = 1;
    }
    acc = acc * local.pow(cp.M[e - 1]);
  }
  return {X.name(), pc.q, n, d, acc.at(d)};
}

}  // namespace chevstab
