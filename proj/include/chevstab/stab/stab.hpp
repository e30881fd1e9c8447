#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../ce/ce.hpp"
#include "../core/parallel.hpp"
#include "../lmodel/model.hpp"

namespace chevstab {

struct SlopeProfile {
  std::size_t k = 0;
  int s = 0;
  std::vector<int> sOther;  // s_i for i != k, in color order

  int other(std::size_t i, std::size_t m) const {
    (void)m;
    if (i == k) return 0;
    return sOther.at(i < k ? i : i - 1);
  }
  // the inequality d_k >= s c + sum s_i d_i that puts (d, c) in the stable range
  bool in_range(const MultiDegree& d, int c) const {
    long rhs = static_cast<long>(s) * c;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (i != k) rhs += static_cast<long>(other(i, d.size())) * d[i];
    return d[k] >= rhs;
  }
  int other_sum() const {
    int t = 0;
    for (int x : sOther) t += x;
    return t;
  }
  std::string to_string() const {
    std::string out = "k=" + std::to_string(k + 1) + " s=" + std::to_string(s);
    if (!sOther.empty()) {
      out += " s_i=(";
      for (std::size_t i = 0; i < sOther.size(); ++i) out += (i ? "," : "") + std::to_string(sOther[i]);
      out += ")";
    }
    return out;
  }
  bool operator==(const SlopeProfile&) const = default;
};

// Smallest certificate for the classes of a unit-free table: every class of
// degree c - 1 <= c0 and multidegree d must satisfy d_k <= s c + sum s_i d_i.
// Ordered by sum s_i, then s, then s_i lexicographically.
inline std::optional<SlopeProfile> find_slopes(const CohomologyTable& quot, std::size_t k, int c0) {
  const std::size_t m = quot.num_colors();
  if (k >= m) throw DomainError("color index out of range");
  std::vector<std::pair<MultiDegree, int>> classes;
  int maxdeg = 0;
  for (const auto& [key, dim] : quot.entries()) {
    if (key.c < 0)
      throw PreconditionError("table has a class in negative degree; not strongly unital");
    if (key.c > c0) continue;
    classes.emplace_back(key.d, key.c + 1);
    for (int p : key.d.parts()) maxdeg = std::max(maxdeg, p);
  }
  SlopeProfile zero{k, 0, std::vector<int>(m - 1, 0)};
  if (classes.empty()) return zero;
  auto satisfies = [&](const SlopeProfile& p) {
    for (const auto& [d, c] : classes) {
      long rhs = static_cast<long>(p.s) * c;
      for (std::size_t i = 0; i < m; ++i)
        if (i != k) rhs += static_cast<long>(p.other(i, m)) * d[i];
      if (d[k] > rhs) return false;
    }
    return true;
  };
  // enumerate s_i vectors with a given sum, lexicographically
  std::function<bool(std::size_t, int, std::vector<int>&, int, SlopeProfile&)> rec =
      [&](std::size_t pos, int left, std::vector<int>& cur, int s, SlopeProfile& found) {
        if (pos == cur.size()) {
          if (left != 0) return false;
          SlopeProfile p{k, s, cur};
          if (satisfies(p)) {
            found = p;
            return true;
          }
          return false;
        }
        for (int v = 0; v <= std::min(left, maxdeg); ++v) {
          cur[pos] = v;
          if (rec(pos + 1, left - v, cur, s, found)) return true;
        }
        cur[pos] = 0;
        return false;
      };
  for (int sum = 0; sum <= maxdeg * static_cast<int>(m - 1); ++sum)
    for (int s = 0; s <= maxdeg; ++s) {
      std::vector<int> cur(m - 1, 0);
      SlopeProfile found;
      if (rec(0, sum, cur, s, found)) return found;
    }
  return std::nullopt;
}

inline std::optional<SlopeProfile> model_slopes(const LInftyModel& g, std::size_t k, int c0) {
  return find_slopes(class_table(quot_un(g)), k, c0);
}

// cohomology data for one multidegree, kept alive together
struct DegreeCohomology {
  std::unique_ptr<CEComplex> complex;
  std::unique_ptr<CohomologyBasis> basis;
};

inline std::shared_ptr<DegreeCohomology> degree_cohomology(std::shared_ptr<const SemiFreeAlgebra> alg,
                                                           const MultiDegree& d) {
  auto out = std::make_shared<DegreeCohomology>();
  out->complex = std::make_unique<CEComplex>(build_complex(std::move(alg), d));
  out->basis = std::make_unique<CohomologyBasis>(*out->complex);
  return out;
}

enum class MapKind { Iso, Injective, Surjective, None };

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::Iso: return "iso";
    case MapKind::Injective: return "inj";
    case MapKind::Surjective: return "surj";
    default: return "none";
  }
}

inline MapKind classify(const MapBlock& b) {
  bool inj = b.rank == b.sourceDim, surj = b.rank == b.targetDim;
  if (inj && surj) return MapKind::Iso;
  if (inj) return MapKind::Injective;
  if (surj) return MapKind::Surjective;
  return MapKind::None;
}

struct StabilityCell {
  MultiDegree d;
  int c = 0;
  std::string predicted;  // "iso", "inj" or "-"
  MapKind observed = MapKind::None;
  std::size_t sourceDim = 0, targetDim = 0, rank = 0;
  std::string status;  // PASS, FAIL, n/a
};

struct StabilityReport {
  SlopeProfile profile;
  std::vector<StabilityCell> cells;
  std::size_t checked = 0;
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }

  std::string to_tsv() const {
    std::ostringstream out;
    std::size_t m = cells.empty() ? 0 : cells.front().d.size();
    for (std::size_t i = 0; i < m; ++i) out << "d" << (i + 1) << "\t";
    out << "c\tpredicted\tobserved\tstatus\n";
    for (const auto& cell : cells) {
      for (int p : cell.d.parts()) out << p << "\t";
      out << cell.c << "\t" << cell.predicted << "\t" << to_string(cell.observed) << "\t"
          << cell.status << "\n";
    }
    return out.str();
  }
  std::string first_counterexample() const {
    for (const auto& cell : cells)
      if (cell.status == "FAIL")
        return "d=" + cell.d.to_string() + " c=" + std::to_string(cell.c) + " predicted " +
               cell.predicted + " observed " + to_string(cell.observed) + " (" +
               std::to_string(cell.sourceDim) + " -> " + std::to_string(cell.targetDim) + ", rank " +
               std::to_string(cell.rank) + ")";
    return {};
  }
};

// Stabilization maps x_k : H^c(d) -> H^c(d + 1_k) for d <= dMax, c <= cMax, against
// the iso range (and injectivity one degree up) implied by the slope profile.
inline StabilityReport verify_stability(const LInftyModel& g, std::size_t k, const MultiDegree& dMax,
                                        int cMax, std::optional<SlopeProfile> profile = std::nullopt,
                                        unsigned jobs = default_jobs()) {
  const std::size_t m = g.colors();
  if (k >= m) throw DomainError("color index out of range");
  if (dMax.size() != m) throw ShapeError("dMax has wrong number of colors");
  auto unit = g.unit_of(k);
  if (!unit) throw PreconditionError("model has no unit in color " + std::to_string(k + 1));
  StabilityReport rep;
  if (!profile) profile = model_slopes(g, k, cMax);
  if (!profile) throw DomainError("no slope profile within the search window");
  rep.profile = *profile;

  auto alg = std::make_shared<const SemiFreeAlgebra>(ce_algebra(g));
  std::vector<MultiDegree> degrees = degrees_in_box(dMax + MultiDegree::unit(m, k));
  auto data = parallel_map(degrees, jobs, [&](const MultiDegree& d) { return degree_cohomology(alg, d); });
  std::map<MultiDegree, std::shared_ptr<DegreeCohomology>> byDeg;
  for (std::size_t i = 0; i < degrees.size(); ++i) byDeg.emplace(degrees[i], data[i]);

  for (const auto& d : degrees_in_box(dMax)) {
    InducedMap map =
        induced_map_between(*byDeg.at(d)->basis, *byDeg.at(d + MultiDegree::unit(m, k))->basis,
                            static_cast<std::uint32_t>(*unit));
    for (int c = 0; c <= cMax; ++c) {
      StabilityCell cell;
      cell.d = d;
      cell.c = c;
      MapBlock t = map.total(c);
      cell.sourceDim = t.sourceDim;
      cell.targetDim = t.targetDim;
      cell.rank = t.rank;
      cell.observed = classify(t);
      if (profile->in_range(d, c))
        cell.predicted = "iso";
      else if (c >= 1 && profile->in_range(d, c - 1))
        cell.predicted = "inj";
      else
        cell.predicted = "-";
      if (cell.predicted == "iso") {
        cell.status = cell.observed == MapKind::Iso ? "PASS" : "FAIL";
      } else if (cell.predicted == "inj") {
        bool ok = cell.observed == MapKind::Iso || cell.observed == MapKind::Injective;
        cell.status = ok ? "PASS" : "FAIL";
      } else {
        cell.status = "n/a";
      }
      if (cell.status != "n/a") ++rep.checked;
      if (cell.status == "FAIL") ++rep.violations;
      rep.cells.push_back(std::move(cell));
    }
  }
  return rep;
}

// Smallest diagonal D with every degree <= cMax in the stable range of every color.
inline int stable_diagonal(const LInftyModel& g, int cMax) {
  int D = 0;
  for (std::size_t k = 0; k < g.colors(); ++k) {
    auto p = model_slopes(g, k, cMax);
    if (!p) throw DomainError("no slope profile for color " + std::to_string(k + 1));
    if (p->other_sum() != 0)
      throw UnsupportedError("stable table along the diagonal needs profiles with s_i = 0, got " +
                             p->to_string());
    D = std::max(D, p->s * cMax);
  }
  return D;
}

// Stable cohomology through degree cMax, keyed by the empty multidegree.
inline CohomologyTable stable_betti(const LInftyModel& g, int cMax, std::optional<int> diagonal = std::nullopt) {
  if (!g.has_units()) throw PreconditionError("stable_betti needs a strongly unital model");
  int need = stable_diagonal(g, cMax);
  int D = diagonal.value_or(need);
  if (D < need)
    throw PreconditionError("diagonal " + std::to_string(D) + " is below the stable range " +
                            std::to_string(need));
  CohomologyTable t = betti(g, MultiDegree::diagonal(g.colors(), D));
  CohomologyTable out(0);
  for (const auto& [key, dim] : t.entries())
    if (key.c <= cMax) out.add(MultiDegree(), key.c, key.w, key.e, dim);
  return out;
}

// keys merged by |d|
inline CohomologyTable add_regrade(const CohomologyTable& t) {
  if (t.num_colors() == 0) throw ShapeError("stable tables have no grading to merge");
  CohomologyTable out(1);
  for (const auto& [key, dim] : t.entries()) out.add(MultiDegree{key.d.total()}, key.c, key.w, key.e, dim);
  return out;
}

// forget the grading entirely
inline CohomologyTable oblv_gr(const CohomologyTable& t) {
  CohomologyTable out(0);
  for (const auto& [key, dim] : t.entries()) out.add(MultiDegree(), key.c, key.w, key.e, dim);
  return out;
}

}  // namespace chevstab
