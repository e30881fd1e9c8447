#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../core/multidegree.hpp"
#include "../core/table.hpp"
#include "../space/space.hpp"

namespace chevstab {

// The exponent vector n, or the symbol infinity (no truncation at all).
class Truncation {
 public:
  static Truncation infinite(std::size_t m) {
    if (m == 0) throw DomainError("need at least one color");
    return Truncation(m, std::nullopt);
  }
  static Truncation finite(MultiDegree n) {
    if (n.size() == 0) throw DomainError("need at least one color");
    for (int p : n.parts())
      if (p < 1) throw DomainError("exponents must be positive");
    if (n.total() < 2) throw DomainError("|n| must be at least 2");
    std::size_t m = n.size();
    return Truncation(m, std::move(n));
  }

  std::size_t colors() const { return m_; }
  bool is_infinite() const { return !n_.has_value(); }
  const MultiDegree& n() const {
    if (!n_) throw DomainError("truncation is infinite");
    return *n_;
  }
  int arity() const { return n_ ? n_->total() : 0; }
  std::string to_string() const { return n_ ? n_->to_string() : std::string("inf"); }
  bool operator==(const Truncation&) const = default;

 private:
  Truncation(std::size_t m, std::optional<MultiDegree> n) : m_(m), n_(std::move(n)) {}
  std::size_t m_;
  std::optional<MultiDegree> n_;
};

enum class ClassKind { Unit, Gen, Y };

// Degrees are read on the coLie side; the Chevalley-Eilenberg variable dual to a
// class sits one degree higher.
struct ModelClass {
  ClassKind kind = ClassKind::Gen;
  int color = -1;  // -1 for Y classes
  std::optional<std::size_t> spaceIndex;
  MultiDegree gr;
  int c = 0;
  int w = 0;
  std::optional<int> e;
  std::string label;
};

// l_N on the sorted multiset `inputs`; the value is coeff * classes[output]
struct BracketTerm {
  std::vector<std::size_t> inputs;
  std::size_t output = 0;
  Rational coeff;
};

class LInftyModel {
 public:
  LInftyModel(Truncation n, int dimX, std::vector<ModelClass> classes,
              std::vector<BracketTerm> bracket, bool pointlike,
              std::vector<std::string> warnings = {})
      : n_(std::move(n)),
        dimX_(dimX),
        classes_(std::move(classes)),
        bracket_(std::move(bracket)),
        pointlike_(pointlike),
        warnings_(std::move(warnings)) {
    validate();
  }

  std::size_t colors() const { return n_.colors(); }
  const Truncation& truncation() const { return n_; }
  int arity() const { return n_.arity(); }
  int dim_x() const { return dimX_; }
  const std::vector<ModelClass>& classes() const { return classes_; }
  const ModelClass& cls(std::size_t i) const { return classes_.at(i); }
  std::size_t size() const { return classes_.size(); }
  const std::vector<BracketTerm>& bracket() const { return bracket_; }
  bool abelian() const { return bracket_.empty(); }
  bool pointlike() const { return pointlike_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<std::size_t> unit_of(std::size_t color) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].kind == ClassKind::Unit && classes_[i].color == static_cast<int>(color))
        return i;
    return std::nullopt;
  }
  bool has_units() const {
    for (std::size_t k = 0; k < colors(); ++k)
      if (!unit_of(k)) return false;
    return true;
  }
  bool all_trace() const {
    for (const auto& c : classes_)
      if (!c.e) return false;
    return true;
  }

 private:
  void validate() const;

  Truncation n_;
  int dimX_;
  std::vector<ModelClass> classes_;
  std::vector<BracketTerm> bracket_;
  bool pointlike_;
  std::vector<std::string> warnings_;
};

inline void LInftyModel::validate() const {
  const std::size_t m = colors();
  for (const auto& c : classes_) {
    if (c.gr.size() != m) throw ValidationError("class grading has wrong number of colors");
    if (c.kind == ClassKind::Y) {
      if (n_.is_infinite() || c.gr != n_.n()) throw ValidationError("Y class must have gr = n");
    } else {
      if (c.color < 0 || static_cast<std::size_t>(c.color) >= m)
        throw ValidationError("class color out of range");
      if (c.gr != MultiDegree::unit(m, static_cast<std::size_t>(c.color)))
        throw ValidationError("generator class must have gr = 1_k");
    }
  }
  for (const auto& t : bracket_) {
    if (t.output >= classes_.size() || classes_[t.output].kind != ClassKind::Y)
      throw ValidationError("bracket output must be a Y class");
    if (static_cast<int>(t.inputs.size()) != arity())
      throw ValidationError("bracket term has wrong arity");
    if (!std::is_sorted(t.inputs.begin(), t.inputs.end()))
      throw ValidationError("bracket inputs must be sorted");
    std::vector<int> colorCount(m, 0);
    for (std::size_t i : t.inputs) {
      if (i >= classes_.size() || classes_[i].kind == ClassKind::Y)
        throw ValidationError("bracket input must be a generator class");
      ++colorCount[static_cast<std::size_t>(classes_[i].color)];
    }
    if (MultiDegree(colorCount) != n_.n()) throw ValidationError("bracket input colors differ from n");
  }
}

inline LInftyModel build_gmn(std::size_t m, const Truncation& n, int dimX) {
  if (m < 1) throw DomainError("need at least one color");
  if (n.colors() != m) throw DomainError("truncation has wrong number of colors");
  if (dimX < 1) throw DomainError("dimX must be positive");
  std::vector<ModelClass> classes;
  for (std::size_t k = 0; k < m; ++k)
    classes.push_back({ClassKind::Unit, static_cast<int>(k), std::nullopt, MultiDegree::unit(m, k),
                       2 * dimX - 1, 2 * dimX, -dimX, "u" + std::to_string(k + 1)});
  std::vector<BracketTerm> bracket;
  if (!n.is_infinite()) {
    const int N = n.arity();
    classes.push_back({ClassKind::Y, -1, std::nullopt, n.n(), 2 * dimX * N - 2, 2 * dimX * N,
                       -dimX * N, "y"});
    BracketTerm t;
    for (std::size_t k = 0; k < m; ++k)
      for (int r = 0; r < n.n()[k]; ++r) t.inputs.push_back(k);
    t.output = m;
    t.coeff = 1;
    bracket.push_back(std::move(t));
  }
  return LInftyModel(n, dimX, std::move(classes), std::move(bracket), true);
}

namespace detail {

inline std::optional<int> add_opt(std::optional<int> a, std::optional<int> b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

// all sorted multisets of size r from {0..B-1}
inline void multisets(std::size_t B, int r, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < B; ++i) {
      cur.push_back(i);
      rec(i, left - 1);
      cur.pop_back();
    }
  };
  rec(0, r);
}

}  // namespace detail

// C*(X, omega) tensor a pointlike model; the bracket is the iterated cup product in H*_c(X)
inline LInftyModel tensor_with_space(const SpaceSpec& H, const LInftyModel& g) {
  if (!g.pointlike()) throw PreconditionError("tensor_with_space needs a pointlike model");
  if (!H.formal())
    throw UnsupportedError("space " + H.name() +
                           " may carry higher products; only the cup-product bracket is modelled");
  if (H.dim() != g.dim_x()) throw PreconditionError("model was built for a different dimension");
  const std::size_t m = g.colors();
  const std::size_t B = H.basis_size();
  std::vector<ModelClass> classes;
  // index of Gen(k, i) is k*B + i; Y(i) is m*B + i
  for (std::size_t k = 0; k < m; ++k) {
    const ModelClass& u = *std::find_if(g.classes().begin(), g.classes().end(), [&](const auto& c) {
      return c.kind == ClassKind::Unit && c.color == static_cast<int>(k);
    });
    for (std::size_t i = 0; i < B; ++i) {
      const auto& h = H.basis_class(i);
      classes.push_back({i == H.fundamental_index() ? ClassKind::Unit : ClassKind::Gen,
                         static_cast<int>(k), i, u.gr, h.c + u.c, h.w + u.w, detail::add_opt(h.e, u.e),
                         h.label + "*" + u.label});
    }
  }
  std::vector<BracketTerm> bracket;
  if (!g.truncation().is_infinite()) {
    const ModelClass& y = *std::find_if(g.classes().begin(), g.classes().end(),
                                        [](const auto& c) { return c.kind == ClassKind::Y; });
    for (std::size_t i = 0; i < B; ++i) {
      const auto& h = H.basis_class(i);
      classes.push_back({ClassKind::Y, -1, i, y.gr, h.c + y.c, h.w + y.w, detail::add_opt(h.e, y.e),
                         h.label + "*" + y.label});
    }
    const MultiDegree& n = g.truncation().n();
    // choose a multiset of space classes for every color, then multiply in basis order
    std::vector<std::vector<std::vector<std::size_t>>> perColor(m);
    for (std::size_t k = 0; k < m; ++k) detail::multisets(B, n[k], perColor[k]);
    std::vector<std::size_t> choice(m, 0);
    while (true) {
      std::vector<std::size_t> spaceIdx, inputs;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i : perColor[k][choice[k]]) {
          spaceIdx.push_back(i);
          inputs.push_back(k * B + i);
        }
      bool oddRepeat = false;
      for (std::size_t p = 1; p < inputs.size(); ++p)
        if (inputs[p] == inputs[p - 1] && H.hc_degree(spaceIdx[p]) % 2 != 0) oddRepeat = true;
      if (!oddRepeat)
        for (const auto& [j, coeff] : H.product(spaceIdx))
          bracket.push_back({inputs, m * B + j, coeff});
      std::size_t k = m;
      while (k > 0 && choice[k - 1] + 1 == perColor[k - 1].size()) choice[--k] = 0;
      if (k == 0) break;
      ++choice[k - 1];
    }
  }
  return LInftyModel(g.truncation(), g.dim_x(), std::move(classes), std::move(bracket), false);
}

inline LInftyModel make_model(const SpaceSpec& X, const Truncation& n) {
  return tensor_with_space(X, build_gmn(n.colors(), n, X.dim()));
}

// delete the unit classes and every bracket term that touches them
inline LInftyModel quot_un(const LInftyModel& g) {
  if (!g.has_units()) throw PreconditionError("quot_un needs a unit class in every color");
  std::vector<std::size_t> newIndex(g.size(), static_cast<std::size_t>(-1));
  std::vector<ModelClass> classes;
  std::vector<std::string> warnings = g.warnings();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.cls(i).kind == ClassKind::Unit) continue;
    newIndex[i] = classes.size();
    classes.push_back(g.cls(i));
    if (g.cls(i).c < 0)
      warnings.push_back("class " + g.cls(i).label + " has negative degree " +
                         std::to_string(g.cls(i).c) + "; model is not strongly unital");
  }
  std::vector<BracketTerm> bracket;
  for (const auto& t : g.bracket()) {
    bool keep = true;
    BracketTerm nt{{}, newIndex[t.output], t.coeff};
    for (std::size_t i : t.inputs) {
      if (newIndex[i] == static_cast<std::size_t>(-1)) keep = false;
      nt.inputs.push_back(newIndex[i]);
    }
    if (keep) bracket.push_back(std::move(nt));
  }
  return LInftyModel(g.truncation(), g.dim_x(), std::move(classes), std::move(bracket), false,
                     std::move(warnings));
}

// Koszul sign of sorting `seq` (values with parities) ascending; 0 if an odd value repeats
template <class ParityFn>
int koszul_sort(std::vector<std::size_t>& seq, ParityFn odd) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i)
    for (std::size_t j = i; j > 0 && seq[j - 1] > seq[j]; --j) {
      if (odd(seq[j - 1]) && odd(seq[j])) sign = -sign;
      std::swap(seq[j - 1], seq[j]);
    }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1] && odd(seq[i])) return 0;
  return sign;
}

// Reorder the basis: new class p is old class perm[p]. Bracket terms are re-sorted
// with Koszul signs of the dual variables.
inline LInftyModel permute_basis(const LInftyModel& g, const std::vector<std::size_t>& perm) {
  if (perm.size() != g.size()) throw ShapeError("permutation has wrong length");
  std::vector<std::size_t> inv(g.size(), static_cast<std::size_t>(-1));
  for (std::size_t p = 0; p < perm.size(); ++p) {
    if (perm[p] >= g.size() || inv[perm[p]] != static_cast<std::size_t>(-1))
      throw DomainError("not a permutation");
    inv[perm[p]] = p;
  }
  std::vector<ModelClass> classes;
  for (std::size_t p : perm) classes.push_back(g.cls(p));
  auto odd = [&](std::size_t idx) { return ((classes[idx].c + 1) % 2 + 2) % 2 == 1; };
  std::vector<BracketTerm> bracket;
  for (const auto& t : g.bracket()) {
    std::vector<std::size_t> in;
    for (std::size_t i : t.inputs) in.push_back(inv[i]);
    int s = koszul_sort(in, odd);
    if (s == 0) continue;
    bracket.push_back({in, inv[t.output], t.coeff * s});
  }
  return LInftyModel(g.truncation(), g.dim_x(), std::move(classes), std::move(bracket),
                     g.pointlike(), g.warnings());
}

// rescale the output classes: y_j -> factor_j * y_j
inline LInftyModel rescale_outputs(const LInftyModel& g, const std::map<std::size_t, Rational>& factor) {
  std::vector<BracketTerm> bracket;
  for (const auto& t : g.bracket()) {
    auto it = factor.find(t.output);
    Rational f = it == factor.end() ? Rational(1) : it->second;
    if (f == 0) throw DomainError("rescaling factor must be nonzero");
    bracket.push_back({t.inputs, t.output, t.coeff * f});
  }
  return LInftyModel(g.truncation(), g.dim_x(), g.classes(), std::move(bracket), g.pointlike(),
                     g.warnings());
}

// Degree bookkeeping of every structure constant. Returns the violations.
inline std::vector<std::string> check_bracket_degrees(const LInftyModel& g) {
  std::vector<std::string> bad;
  const int N = g.arity();
  for (const auto& t : g.bracket()) {
    int c = 0, w = 0;
    std::optional<int> e = 0;
    MultiDegree gr = MultiDegree::zero(g.colors());
    for (std::size_t i : t.inputs) {
      c += g.cls(i).c;
      w += g.cls(i).w;
      e = detail::add_opt(e, g.cls(i).e);
      gr = gr + g.cls(i).gr;
    }
    const auto& out = g.cls(t.output);
    std::string where = "bracket into " + out.label;
    if (out.c != c + N - 2) bad.push_back(where + ": degree " + std::to_string(out.c));
    if (out.w != w) bad.push_back(where + ": weight " + std::to_string(out.w));
    if (e && out.e && *e != *out.e) bad.push_back(where + ": frobExp");
    if (gr != out.gr) bad.push_back(where + ": multidegree");
  }
  return bad;
}

// graded dimensions of the model itself (coLie degrees)
inline CohomologyTable class_table(const LInftyModel& g) {
  CohomologyTable t(g.colors());
  for (const auto& c : g.classes()) t.add(c.gr, c.c, c.w, c.e, 1);
  return t;
}

inline std::string dump_model(const LInftyModel& g) {
  std::ostringstream out;
  out << "colors\t" << g.colors() << "\nn\t" << g.truncation().to_string() << "\ndimX\t" << g.dim_x()
      << "\n";
  out << "index\tkind\tcolor\tgr\tc\tw\te\tlabel\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& c = g.cls(i);
    const char* kind = c.kind == ClassKind::Unit ? "unit" : c.kind == ClassKind::Gen ? "gen" : "y";
    out << i << "\t" << kind << "\t" << c.color << "\t" << c.gr.to_string() << "\t" << c.c << "\t"
        << c.w << "\t" << (c.e ? std::to_string(*c.e) : "-") << "\t" << c.label << "\n";
  }
  out << "bracket\n";
  for (const auto& t : g.bracket()) {
    out << "l(";
    for (std::size_t p = 0; p < t.inputs.size(); ++p) out << (p ? "," : "") << t.inputs[p];
    out << ") = " << t.coeff.get_str() << " * [" << t.output << "]\n";
  }
  for (const auto& w : g.warnings()) out << "warning\t" << w << "\n";
  return out.str();
}

}  // namespace chevstab
