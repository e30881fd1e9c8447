#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../core/multidegree.hpp"
#include "../core/rational.hpp"
#include "../lmodel/model.hpp"

namespace chevstab {

struct Generator {
  MultiDegree gr;
  int c = 0;
  int w = 0;
  std::optional<int> e;
  std::string label;
  bool odd() const { return ((c % 2) + 2) % 2 == 1; }
};

using Monomial = std::vector<std::uint32_t>;  // sorted generator indices, with repetition
using Polynomial = std::map<Monomial, Rational>;

inline void add_to(Polynomial& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

// Free graded-commutative algebra with a derivation given on generators.
class SemiFreeAlgebra {
 public:
  SemiFreeAlgebra(std::vector<Generator> gens, std::vector<Polynomial> differential)
      : gens_(std::move(gens)), diff_(std::move(differential)) {
    if (diff_.size() != gens_.size()) throw ShapeError("one differential per generator");
    for (std::size_t i = 1; i < gens_.size(); ++i)
      if (gens_[i].gr.size() != gens_[0].gr.size()) throw ShapeError("mixed color counts");
    allTrace_ = std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.e.has_value(); });
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      bool zero = diff_[i].empty();
      closed_.push_back(zero);
      for (const auto& [mono, coeff] : diff_[i])
        if (degree(mono) != gens_[i].c + 1)
          throw ValidationError("differential of " + gens_[i].label + " has the wrong degree");
    }
  }

  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& gen(std::size_t i) const { return gens_.at(i); }
  const Polynomial& generator_differential(std::size_t i) const { return diff_.at(i); }
  std::size_t colors() const { return gens_.empty() ? 0 : gens_[0].gr.size(); }

  int degree(const Monomial& m) const {
    int c = 0;
    for (auto g : m) c += gens_[g].c;
    return c;
  }
  int weight(const Monomial& m) const {
    int w = 0;
    for (auto g : m) w += gens_[g].w;
    return w;
  }
  // absent for every monomial unless every generator carries a frobExp (a product
  // of classes without one can land on a class with one)
  std::optional<int> frob(const Monomial& m) const {
    if (!allTrace_) return std::nullopt;
    int e = 0;
    for (auto g : m) {
      if (!gens_[g].e) return std::nullopt;
      e += *gens_[g].e;
    }
    return e;
  }
  MultiDegree multidegree(const Monomial& m, std::size_t colors) const {
    MultiDegree d = MultiDegree::zero(colors);
    for (auto g : m) d = d + gens_[g].gr;
    return d;
  }

  // sign and sorted form of a word; sign 0 when an odd generator repeats
  std::pair<int, Monomial> normalize(Monomial word) const {
    std::vector<std::size_t> seq(word.begin(), word.end());
    int s = koszul_sort(seq, [&](std::size_t g) { return gens_[g].odd(); });
    return {s, Monomial(seq.begin(), seq.end())};
  }

  Polynomial multiply(const Monomial& a, const Monomial& b) const {
    Monomial word(a);
    word.insert(word.end(), b.begin(), b.end());
    auto [s, m] = normalize(std::move(word));
    Polynomial p;
    if (s != 0) p.emplace(std::move(m), Rational(s));
    return p;
  }

  // Leibniz rule
  Polynomial differential(const Monomial& m) const {
    Polynomial out;
    int sign = 1;
    for (std::size_t pos = 0; pos < m.size(); ++pos) {
      const auto g = m[pos];
      if (!closed_[g]) {
        for (const auto& [dm, coeff] : diff_[g]) {
          Monomial word(m.begin(), m.begin() + static_cast<long>(pos));
          word.insert(word.end(), dm.begin(), dm.end());
          word.insert(word.end(), m.begin() + static_cast<long>(pos) + 1, m.end());
          auto [s, sorted] = normalize(std::move(word));
          if (s != 0) add_to(out, sorted, coeff * (s * sign));
        }
      }
      if (gens_[g].odd()) sign = -sign;
    }
    return out;
  }

  Polynomial differential(const Polynomial& p) const {
    Polynomial out;
    for (const auto& [m, c] : p)
      for (const auto& [dm, dc] : differential(m)) add_to(out, dm, c * dc);
    return out;
  }

  // all monomials of multidegree d, in lexicographic order of the sorted index words
  std::vector<Monomial> monomials(const MultiDegree& d) const {
    std::vector<Monomial> out;
    Monomial cur;
    std::vector<int> left(d.parts().begin(), d.parts().end());
    const std::size_t G = gens_.size();
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      bool done = std::all_of(left.begin(), left.end(), [](int x) { return x == 0; });
      if (done) {
        out.push_back(cur);
        return;
      }
      for (std::size_t g = from; g < G; ++g) {
        const auto& gr = gens_[g].gr;
        bool fits = true;
        bool positive = false;
        for (std::size_t k = 0; k < left.size(); ++k) {
          if (gr[k] > left[k]) fits = false;
          if (gr[k] > 0) positive = true;
        }
        if (!fits || !positive) continue;
        if (!cur.empty() && cur.back() == g && gens_[g].odd()) continue;
        for (std::size_t k = 0; k < left.size(); ++k) left[k] -= gr[k];
        cur.push_back(static_cast<std::uint32_t>(g));
        // an odd generator is used at most once
        rec(gens_[g].odd() ? g + 1 : g);
        cur.pop_back();
        for (std::size_t k = 0; k < left.size(); ++k) left[k] += gr[k];
      }
    };
    if (d.size() != colors()) throw ShapeError("multidegree has wrong number of colors");
    rec(0);
    return out;
  }

 private:
  std::vector<Generator> gens_;
  std::vector<Polynomial> diff_;
  std::vector<bool> closed_;
  bool allTrace_ = true;
};

// Chevalley-Eilenberg algebra: one variable per class, one degree up;
// d(dual of y_j) = sum over bracket terms K into y_j of l(K) / prod(mult!) * x^K.
inline SemiFreeAlgebra ce_algebra(const LInftyModel& g) {
  std::vector<Generator> gens;
  for (const auto& c : g.classes()) gens.push_back({c.gr, c.c + 1, c.w, c.e, "x[" + c.label + "]"});
  std::vector<Polynomial> diff(gens.size());
  for (const auto& t : g.bracket()) {
    Monomial m(t.inputs.begin(), t.inputs.end());
    BigInt denom = 1;
    for (std::size_t p = 0; p < m.size();) {
      std::size_t q = p;
      while (q < m.size() && m[q] == m[p]) ++q;
      denom *= factorial(q - p);
      p = q;
    }
    add_to(diff[t.output], m, t.coeff / Rational(denom));
  }
  return SemiFreeAlgebra(std::move(gens), std::move(diff));
}

// CE algebra with one extra variable s_v per generator class v (dual x_v), d s_v = x_v.
// Its cohomology is the derived tensor of Lambda with CE over the free algebra on the x_v.
inline SemiFreeAlgebra koszul_algebra(const LInftyModel& g) {
  SemiFreeAlgebra ce = ce_algebra(g);
  std::vector<Generator> gens = ce.generators();
  std::vector<Polynomial> diff;
  for (std::size_t i = 0; i < ce.size(); ++i) diff.push_back(ce.generator_differential(i));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.cls(i).kind == ClassKind::Y) continue;
    Generator s = gens[i];
    s.c -= 1;
    s.label = "s[" + g.cls(i).label + "]";
    gens.push_back(s);
    diff.push_back(Polynomial{{Monomial{static_cast<std::uint32_t>(i)}, Rational(1)}});
  }
  return SemiFreeAlgebra(std::move(gens), std::move(diff));
}

}  // namespace chevstab
