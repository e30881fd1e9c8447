#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "../core/parallel.hpp"
#include "../core/table.hpp"
#include "linalg.hpp"
#include "semifree.hpp"

namespace chevstab {

struct WeightKey {
  int w = 0;
  std::optional<int> e;
  auto operator<=>(const WeightKey&) const = default;
  bool operator==(const WeightKey&) const = default;
};

// One (w, e) summand: monomial bases by degree, and D_c as image rows.
struct ComplexBlock {
  std::map<int, std::vector<Monomial>> basis;
  std::map<int, std::vector<SparseRow>> images;  // images[c][i] in coordinates of basis[c+1]

  std::size_t dim(int c) const {
    auto it = basis.find(c);
    return it == basis.end() ? 0 : it->second.size();
  }
  const std::vector<SparseRow>& rows(int c) const {
    static const std::vector<SparseRow> none;
    auto it = images.find(c);
    return it == images.end() ? none : it->second;
  }
  std::optional<std::size_t> index_of(int c, const Monomial& m) const {
    auto it = basis.find(c);
    if (it == basis.end()) return std::nullopt;
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), m);
    if (pos == it->second.end() || *pos != m) return std::nullopt;
    return static_cast<std::size_t>(pos - it->second.begin());
  }
};

class CEComplex {
 public:
  CEComplex(std::shared_ptr<const SemiFreeAlgebra> alg, MultiDegree d,
            std::map<WeightKey, ComplexBlock> blocks)
      : alg_(std::move(alg)), d_(std::move(d)), blocks_(std::move(blocks)) {}

  const MultiDegree& multidegree() const { return d_; }
  const SemiFreeAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const SemiFreeAlgebra> algebra_ptr() const { return alg_; }
  const std::map<WeightKey, ComplexBlock>& blocks() const { return blocks_; }

  const ComplexBlock* block(const WeightKey& k) const {
    auto it = blocks_.find(k);
    return it == blocks_.end() ? nullptr : &it->second;
  }

  std::size_t dim(int c) const {
    std::size_t s = 0;
    for (const auto& [k, b] : blocks_) s += b.dim(c);
    return s;
  }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& [k, b] : blocks_)
      for (const auto& [c, v] : b.basis) s += v.size();
    return s;
  }
  // cochain dimensions as a table
  CohomologyTable cochain_table() const {
    CohomologyTable t(d_.size());
    for (const auto& [k, b] : blocks_)
      for (const auto& [c, v] : b.basis) t.add(d_, c, k.w, k.e, v.size());
    return t;
  }

 private:
  std::shared_ptr<const SemiFreeAlgebra> alg_;
  MultiDegree d_;
  std::map<WeightKey, ComplexBlock> blocks_;
};

inline SparseRow to_coordinates(const Polynomial& p, const ComplexBlock& b, int c) {
  SparseRow row;
  for (const auto& [m, coeff] : p) {
    auto idx = b.index_of(c, m);
    if (!idx) throw CheckFailure("differential leaves its (w, e) block");
    row.emplace_back(*idx, coeff);
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b2) { return a.first < b2.first; });
  return row;
}

// D^2 = 0 is checked on every basis monomial unless disabled.
inline CEComplex build_complex(std::shared_ptr<const SemiFreeAlgebra> alg, const MultiDegree& d,
                               bool checkSquare = true) {
  std::map<WeightKey, ComplexBlock> blocks;
  for (const auto& m : alg->monomials(d)) {
    WeightKey key{alg->weight(m), alg->frob(m)};
    blocks[key].basis[alg->degree(m)].push_back(m);
  }
  for (auto& [key, b] : blocks) {
    for (auto& [c, v] : b.basis) std::sort(v.begin(), v.end());
    for (const auto& [c, v] : b.basis) {
      auto& rows = b.images[c];
      rows.reserve(v.size());
      for (const auto& m : v) {
        Polynomial dm = alg->differential(m);
        rows.push_back(to_coordinates(dm, b, c + 1));
        if (checkSquare && !dm.empty() && !alg->differential(dm).empty())
          throw CheckFailure("d^2 != 0 at multidegree " + d.to_string());
      }
    }
  }
  return CEComplex(std::move(alg), d, std::move(blocks));
}

inline CEComplex ce_complex(const LInftyModel& g, const MultiDegree& d) {
  if (d.size() != g.colors()) throw ShapeError("multidegree has wrong number of colors");
  return build_complex(std::make_shared<const SemiFreeAlgebra>(ce_algebra(g)), d);
}

inline CohomologyTable cohomology(const CEComplex& cx) {
  CohomologyTable t(cx.multidegree().size());
  for (const auto& [key, b] : cx.blocks()) {
    std::map<int, std::size_t> ranks;
    for (const auto& [c, rows] : b.images) ranks[c] = rank(rows);
    for (const auto& [c, v] : b.basis) {
      std::size_t r = ranks[c];
      std::size_t rPrev = ranks.count(c - 1) ? ranks[c - 1] : 0;
      std::size_t h = v.size() - r - rPrev;
      t.add(cx.multidegree(), c, key.w, key.e, h);
    }
  }
  return t;
}

inline CohomologyTable betti(const LInftyModel& g, const MultiDegree& d) {
  return cohomology(ce_complex(g, d));
}

inline CohomologyTable betti_grid(const LInftyModel& g, const std::vector<MultiDegree>& degrees,
                                  unsigned jobs = default_jobs()) {
  auto alg = std::make_shared<const SemiFreeAlgebra>(ce_algebra(g));
  auto tables = parallel_map(degrees, jobs, [&](const MultiDegree& d) {
    if (d.size() != g.colors()) throw ShapeError("multidegree has wrong number of colors");
    return cohomology(build_complex(alg, d));
  });
  CohomologyTable out(g.colors());
  for (const auto& t : tables) out.merge(t);
  return out;
}

// Dimensions of the free graded-commutative algebra on `gens` in multidegree d,
// split by (c, w, e, length), by a product-of-generating-functions recursion.
using SymKey = std::tuple<int, int, std::optional<int>, int>;

inline std::map<SymKey, BigInt> sym_dimensions(const std::vector<Generator>& gens,
                                               const MultiDegree& d) {
  struct State {
    MultiDegree gr;
    int c, w;
    std::optional<int> e;
    int len;
    auto operator<=>(const State&) const = default;
  };
  std::map<State, BigInt> cur;
  cur[State{MultiDegree::zero(d.size()), 0, 0, 0, 0}] = 1;
  for (const auto& g : gens) {
    if (g.gr.is_zero()) throw DomainError("generator of multidegree zero");
    std::map<State, BigInt> next;
    for (const auto& [s, cnt] : cur) {
      State t = s;
      for (int k = 0;; ++k) {
        if (!t.gr.leq(d)) break;
        next[t] += cnt;
        if (g.odd() && k == 1) break;
        t.gr = t.gr + g.gr;
        t.c += g.c;
        t.w += g.w;
        t.e = (t.e && g.e) ? std::optional<int>(*t.e + *g.e) : std::nullopt;
        t.len += 1;
      }
    }
    cur = std::move(next);
  }
  const bool allE = std::all_of(gens.begin(), gens.end(), [](const Generator& g) { return g.e.has_value(); });
  std::map<SymKey, BigInt> out;
  for (const auto& [s, cnt] : cur)
    if (s.gr == d) out[{s.c, s.w, allE ? s.e : std::nullopt, s.len}] += cnt;
  return out;
}

inline CohomologyTable sym_table(const std::vector<Generator>& gens, const MultiDegree& d) {
  CohomologyTable t(d.size());
  for (const auto& [k, cnt] : sym_dimensions(gens, d))
    t.add(d, std::get<0>(k), std::get<1>(k), std::get<2>(k), to_u64(cnt));
  return t;
}

// cohomology classes at one multidegree, with a quotient echelon for coordinates
struct CohomologyPiece {
  std::vector<SparseRow> reps;  // cocycles in cochain coordinates
  TrackedEchelon quotient;      // image rows first, then the reps
  std::vector<std::optional<std::size_t>> repOfId;

  std::vector<Rational> coordinates(const SparseRow& cocycle) const {
    auto r = quotient.reduce(cocycle);
    if (!r.remainder.empty()) throw CheckFailure("image of a cocycle is not a cocycle");
    std::vector<Rational> x(reps.size(), Rational(0));
    for (const auto& [id, v] : r.combination)
      if (id < repOfId.size() && repOfId[id]) x[*repOfId[id]] = v;
    return x;
  }
};

class CohomologyBasis {
 public:
  explicit CohomologyBasis(const CEComplex& cx) : cx_(&cx) {
    for (const auto& [key, b] : cx.blocks())
      for (const auto& [c, v] : b.basis) pieces_.emplace(std::make_pair(key, c), build(b, c));
  }
  const CEComplex& complex() const { return *cx_; }
  const CohomologyPiece* piece(const WeightKey& k, int c) const {
    auto it = pieces_.find({k, c});
    return it == pieces_.end() ? nullptr : &it->second;
  }
  const std::map<std::pair<WeightKey, int>, CohomologyPiece>& pieces() const { return pieces_; }

 private:
  static CohomologyPiece build(const ComplexBlock& b, int c) {
    CohomologyPiece p;
    TrackedEchelon ker;
    std::vector<SparseRow> kernel;
    for (const auto& row : b.rows(c))
      if (auto rel = ker.insert(row)) kernel.push_back(std::move(*rel));
    if (b.rows(c).empty()) {
      for (std::size_t i = 0; i < b.dim(c); ++i) kernel.push_back(SparseRow{{i, Rational(1)}});
    }
    for (const auto& row : b.rows(c - 1)) {
      p.quotient.insert(row);
      p.repOfId.push_back(std::nullopt);
    }
    for (auto& k : kernel) {
      bool fresh = !p.quotient.insert(k).has_value();
      p.repOfId.push_back(fresh ? std::optional<std::size_t>(p.reps.size()) : std::nullopt);
      if (fresh) p.reps.push_back(std::move(k));
    }
    return p;
  }
  const CEComplex* cx_;
  std::map<std::pair<WeightKey, int>, CohomologyPiece> pieces_;
};

struct MapBlock {
  std::size_t sourceDim = 0;
  std::size_t targetDim = 0;
  std::vector<std::vector<Rational>> columns;  // one per source class
  std::size_t rank = 0;
};

// Multiplication by the unit variable of color k on cohomology, per (w, e, c).
struct InducedMap {
  MultiDegree source;
  MultiDegree target;
  std::map<std::pair<WeightKey, int>, MapBlock> blocks;

  MapBlock total(int c) const {
    MapBlock t;
    for (const auto& [k, b] : blocks)
      if (k.second == c) {
        t.sourceDim += b.sourceDim;
        t.targetDim += b.targetDim;
        t.rank += b.rank;
      }
    return t;
  }
};

inline InducedMap induced_map_between(const CohomologyBasis& src, const CohomologyBasis& dst,
                                      std::uint32_t unitGen) {
  const auto& alg = src.complex().algebra();
  const Generator& x = alg.gen(unitGen);
  if (!alg.generator_differential(unitGen).empty())
    throw CheckFailure("unit variable is not closed");
  InducedMap out{src.complex().multidegree(), dst.complex().multidegree(), {}};
  for (const auto& [key, piece] : src.pieces()) {
    const auto& [wk, c] = key;
    WeightKey tk{wk.w + x.w, (wk.e && x.e) ? std::optional<int>(*wk.e + *x.e) : std::nullopt};
    int tc = c + x.c;
    const CohomologyPiece* tp = dst.piece(tk, tc);
    const ComplexBlock* tb = dst.complex().block(tk);
    const ComplexBlock* sb = src.complex().block(wk);
    MapBlock mb;
    mb.sourceDim = piece.reps.size();
    mb.targetDim = tp ? tp->reps.size() : 0;
    for (const auto& rep : piece.reps) {
      if (!tp) {
        mb.columns.emplace_back();
        continue;
      }
      Polynomial img;
      for (const auto& [i, v] : rep) {
        const Monomial& m = sb->basis.at(c)[i];
        for (const auto& [pm, pc] : alg.multiply(m, Monomial{unitGen})) add_to(img, pm, v * pc);
      }
      mb.columns.push_back(tp->coordinates(to_coordinates(img, *tb, tc)));
    }
    std::vector<SparseRow> cols;
    for (const auto& col : mb.columns) {
      SparseRow r;
      for (std::size_t i = 0; i < col.size(); ++i)
        if (col[i] != 0) r.emplace_back(i, col[i]);
      cols.push_back(std::move(r));
    }
    mb.rank = rank(cols);
    out.blocks.emplace(key, std::move(mb));
  }
  // target classes with no source block still count toward surjectivity
  for (const auto& [key, piece] : dst.pieces()) {
    const auto& [wk, c] = key;
    WeightKey sk{wk.w - x.w, (wk.e && x.e) ? std::optional<int>(*wk.e - *x.e) : std::nullopt};
    auto skey = std::make_pair(sk, c - x.c);
    if (!src.piece(sk, c - x.c) && !piece.reps.empty()) {
      MapBlock mb;
      mb.targetDim = piece.reps.size();
      out.blocks.emplace(skey, std::move(mb));
    }
  }
  return out;
}

inline InducedMap induced_map(const LInftyModel& g, const MultiDegree& d, std::size_t k) {
  auto unit = g.unit_of(k);
  if (!unit) throw PreconditionError("no unit class for color " + std::to_string(k));
  auto alg = std::make_shared<const SemiFreeAlgebra>(ce_algebra(g));
  CEComplex a = build_complex(alg, d);
  CEComplex b = build_complex(alg, d + MultiDegree::unit(g.colors(), k));
  CohomologyBasis ha(a), hb(b);
  return induced_map_between(ha, hb, static_cast<std::uint32_t>(*unit));
}

struct FiltrationReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Filtering by monomial length: the differential raises length by N - 1, so the
// associated graded is Sym of the underlying graded space with zero differential.
inline FiltrationReport sym_filtration_check(const LInftyModel& g, const MultiDegree& d) {
  FiltrationReport rep;
  auto alg = std::make_shared<const SemiFreeAlgebra>(ce_algebra(g));
  CEComplex cx = build_complex(alg, d);
  const int shift = g.abelian() ? 0 : g.arity() - 1;
  std::map<SymKey, BigInt> counted;
  for (const auto& [key, b] : cx.blocks())
    for (const auto& [c, v] : b.basis)
      for (const auto& m : v) {
        counted[{c, key.w, key.e, static_cast<int>(m.size())}] += 1;
        for (const auto& [dm, coeff] : alg->differential(m))
          if (static_cast<int>(dm.size()) != static_cast<int>(m.size()) + shift) {
            rep.ok = false;
            rep.failures.push_back("length jump " + std::to_string(dm.size()) + " from " +
                                   std::to_string(m.size()) + " at " + d.to_string());
          }
      }
  if (shift < 1 && !g.abelian()) {
    rep.ok = false;
    rep.failures.push_back("bracket arity below 2");
  }
  auto expected = sym_dimensions(alg->generators(), d);
  if (expected != counted) {
    rep.ok = false;
    rep.failures.push_back("associated graded dimensions differ from Sym at " + d.to_string());
  }
  return rep;
}

// derived tensor of Lambda with the CE algebra over the free algebra on all generator classes
inline CohomologyTable relative_tensor_over_free(const LInftyModel& g, const MultiDegree& d) {
  if (!g.has_units()) throw PreconditionError("relative tensor needs a unit class in every color");
  if (d.size() != g.colors()) throw ShapeError("multidegree has wrong number of colors");
  auto alg = std::make_shared<const SemiFreeAlgebra>(koszul_algebra(g));
  return cohomology(build_complex(alg, d));
}

// closed form: free graded-commutative algebra on the variables dual to the Y classes
inline CohomologyTable relative_tensor_closed_form(const LInftyModel& g, const MultiDegree& d) {
  SemiFreeAlgebra ce = ce_algebra(g);
  std::vector<Generator> ys;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.cls(i).kind == ClassKind::Y) ys.push_back(ce.gen(i));
  return sym_table(ys, d);
}

}  // namespace chevstab
