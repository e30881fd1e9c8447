#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "../core/rational.hpp"

namespace chevstab {

// One basis class of H*(X, omega_X). The same basis read in compactly supported
// cohomology sits in degree -c.
struct SpaceClass {
  int c = 0;
  int w = 0;
  std::optional<int> e;
  std::string label;
};

// h_i * h_j = coeff * h_k in H*_c(X)
struct MultEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Rational coeff;
};

struct PointCounts {
  BigInt q;
  std::vector<BigInt> N;  // N[e-1] = |X(F_{q^e})|
};

enum class SpaceFamily { Affine, ProjSpace, Curve, Custom };

struct SpaceDefinition {
  std::string name;
  int dimX = 1;
  std::vector<SpaceClass> basis;
  std::vector<MultEntry> mult;
  std::optional<std::size_t> fundamental;
  std::optional<PointCounts> counts;
  // false when H*_c may carry higher products that the cup-product model misses
  bool formal = true;
  SpaceFamily family = SpaceFamily::Custom;
  int familyParam = 0;
  bool proper = false;
};

using ClassVector = std::map<std::size_t, Rational>;

class SpaceSpec {
 public:
  static SpaceSpec create(SpaceDefinition def);

  const std::string& name() const { return def_.name; }
  int dim() const { return def_.dimX; }
  std::size_t basis_size() const { return def_.basis.size(); }
  const std::vector<SpaceClass>& basis() const { return def_.basis; }
  const SpaceClass& basis_class(std::size_t i) const { return def_.basis.at(i); }
  std::size_t fundamental_index() const { return *def_.fundamental; }
  const std::vector<MultEntry>& mult_entries() const { return def_.mult; }
  const std::optional<PointCounts>& point_counts() const { return def_.counts; }
  bool trace_supported() const {
    for (const auto& b : def_.basis)
      if (!b.e) return false;
    return true;
  }
  bool formal() const { return def_.formal; }
  SpaceFamily family() const { return def_.family; }
  int family_param() const { return def_.familyParam; }
  bool proper() const { return def_.proper; }
  const SpaceDefinition& definition() const { return def_; }

  // degree of class i in H*_c
  int hc_degree(std::size_t i) const { return -def_.basis.at(i).c; }

  ClassVector multiply_basis(std::size_t i, std::size_t j) const {
    auto it = table_.find({i, j});
    return it == table_.end() ? ClassVector{} : it->second;
  }

  ClassVector multiply(const ClassVector& a, const ClassVector& b) const {
    ClassVector out;
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b)
        for (const auto& [k, ck] : multiply_basis(i, j)) {
          Rational& slot = out[k];
          slot += ci * cj * ck;
          if (slot == 0) out.erase(k);
        }
    return out;
  }

  // ordered product h_{i_1} ... h_{i_N}
  ClassVector product(std::span<const std::size_t> indices) const {
    if (indices.empty()) throw DomainError("empty product");
    ClassVector acc{{indices[0], Rational(1)}};
    for (std::size_t p = 1; p < indices.size() && !acc.empty(); ++p)
      acc = multiply(acc, ClassVector{{indices[p], Rational(1)}});
    return acc;
  }

  // true if every ordered N-fold product of basis classes vanishes
  bool nfold_products_vanish(int N) const;

 private:
  explicit SpaceSpec(SpaceDefinition def) : def_(std::move(def)) {}
  void validate();

  SpaceDefinition def_;
  std::map<std::pair<std::size_t, std::size_t>, ClassVector> table_;
};

inline void SpaceSpec::validate() {
  const int d = def_.dimX;
  const std::size_t B = def_.basis.size();
  if (d < 1) throw ValidationError("dimX must be positive");
  if (B == 0) throw ValidationError("space has an empty basis");
  std::optional<std::size_t> fund;
  for (std::size_t i = 0; i < B; ++i) {
    const auto& b = def_.basis[i];
    if (b.c < -2 * d || b.c > 0)
      throw ValidationError("class " + std::to_string(i) + " has degree outside [-2d, 0]");
    if (b.c == -2 * d) {
      if (fund) throw ValidationError("more than one class in degree -2d");
      fund = i;
    }
    if (b.e && b.w != -2 * *b.e)
      throw ValidationError("class " + std::to_string(i) + " has e but w != -2e");
  }
  if (!fund) throw ValidationError("missing fundamental class in degree -2d");
  if (def_.fundamental && *def_.fundamental != *fund)
    throw ValidationError("declared fundamental index does not sit in degree -2d");
  def_.fundamental = fund;
  const auto& fc = def_.basis[*fund];
  if (!fc.e || *fc.e != d) throw ValidationError("fundamental class must have e = dimX");

  for (const auto& m : def_.mult) {
    if (m.i >= B || m.j >= B || m.k >= B) throw ValidationError("mult index out of range");
    if (m.coeff == 0) continue;
    const auto &a = def_.basis[m.i], &b = def_.basis[m.j], &r = def_.basis[m.k];
    if (r.c != a.c + b.c) throw ValidationError("mult entry does not preserve degree");
    if (r.w != a.w + b.w) throw ValidationError("mult entry does not preserve weight");
    if (a.e && b.e && r.e && *r.e != *a.e + *b.e)
      throw ValidationError("mult entry does not preserve frobExp");
    ClassVector& slot = table_[{m.i, m.j}];
    slot[m.k] += m.coeff;
    if (slot[m.k] == 0) slot.erase(m.k);
  }

  // graded commutativity in H*_c
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t j = 0; j < B; ++j) {
      int sign = (hc_degree(i) % 2 != 0 && hc_degree(j) % 2 != 0) ? -1 : 1;
      ClassVector ij = multiply_basis(i, j), ji = multiply_basis(j, i);
      for (auto& [k, v] : ji) v *= sign;
      if (ij != ji)
        throw ValidationError("mult is not graded-commutative at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
  // associativity
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t j = 0; j < B; ++j)
      for (std::size_t k = 0; k < B; ++k) {
        ClassVector left = multiply(multiply_basis(i, j), ClassVector{{k, Rational(1)}});
        ClassVector right = multiply(ClassVector{{i, Rational(1)}}, multiply_basis(j, k));
        if (left != right)
          throw ValidationError("mult is not associative at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
      }

  if (def_.counts) {
    if (!is_prime_power(def_.counts->q)) throw ValidationError("q must be a prime power");
    for (const auto& n : def_.counts->N)
      if (n < 0) throw ValidationError("negative point count");
  }
}

inline SpaceSpec SpaceSpec::create(SpaceDefinition def) {
  SpaceSpec s(std::move(def));
  s.validate();
  return s;
}

inline bool SpaceSpec::nfold_products_vanish(int N) const {
  if (N < 1) throw DomainError("arity must be positive");
  const std::size_t B = basis_size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
  while (true) {
    if (!product(idx).empty()) return false;
    std::size_t p = idx.size();
    while (p > 0 && idx[p - 1] + 1 == B) idx[--p] = 0;
    if (p == 0) return true;
    ++idx[p - 1];
  }
}

}  // namespace chevstab
