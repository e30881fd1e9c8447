#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "../core/rational.hpp"

namespace chevstab {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column
using IntRow = std::vector<std::pair<std::size_t, BigInt>>;

inline SparseRow sparse_from_map(const std::map<std::size_t, Rational>& m) {
  SparseRow r;
  for (const auto& [i, v] : m)
    if (v != 0) r.emplace_back(i, v);
  return r;
}

// a + s*b
inline SparseRow axpy(const SparseRow& a, const Rational& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + s * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// scale to coprime integers with positive leading entry
inline IntRow primitive(const SparseRow& r) {
  BigInt l = 1;
  for (const auto& [i, v] : r) l = lcm(l, BigInt(v.get_den()));
  IntRow out;
  BigInt g = 0;
  for (const auto& [i, v] : r) {
    BigInt z = v.get_num() * (l / v.get_den());
    g = gcd(g, z);
    out.emplace_back(i, std::move(z));
  }
  if (g == 0) return {};
  if (out.front().second < 0) g = -g;
  for (auto& [i, v] : out) v /= g;
  return out;
}

namespace detail {

// p*a - s*b where both rows share the leading column, made primitive again
inline IntRow eliminate(const IntRow& a, const IntRow& piv) {
  const BigInt& p = piv.front().second;
  const BigInt& s = a.front().second;
  BigInt g = gcd(p, s);
  BigInt pa = p / g, sb = s / g;
  IntRow out;
  out.reserve(a.size() + piv.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < piv.size()) {
    if (j == piv.size() || (i < a.size() && a[i].first < piv[j].first)) {
      out.emplace_back(a[i].first, pa * a[i].second);
      ++i;
    } else if (i == a.size() || piv[j].first < a[i].first) {
      out.emplace_back(piv[j].first, -sb * piv[j].second);
      ++j;
    } else {
      BigInt v = pa * a[i].second - sb * piv[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  if (out.empty()) return out;
  BigInt c = 0;
  for (const auto& [k, v] : out) c = gcd(c, v);
  if (out.front().second < 0) c = -c;
  if (c != 1)
    for (auto& [k, v] : out) v /= c;
  return out;
}

}  // namespace detail

// Rank by fraction-free elimination on primitive integer rows. Sparse rows are
// inserted shortest first, each reduced against the pivot rows found so far.
inline std::size_t rank(const std::vector<SparseRow>& rows) {
  std::vector<IntRow> work;
  work.reserve(rows.size());
  for (const auto& r : rows)
    if (!r.empty()) work.push_back(primitive(r));
  std::stable_sort(work.begin(), work.end(),
                   [](const IntRow& a, const IntRow& b) { return a.size() < b.size(); });
  std::map<std::size_t, IntRow> pivots;
  for (auto& row : work) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      row = detail::eliminate(row, it->second);
    }
    if (!row.empty()) pivots.emplace(row.front().first, std::move(row));
  }
  return pivots.size();
}

// Incremental reduced echelon form over Q. Every stored row remembers which
// combination of inserted vectors produced it.
class TrackedEchelon {
 public:
  struct Reduction {
    SparseRow remainder;
    SparseRow combination;  // v = remainder + sum combination_i * inserted_i
  };

  std::size_t inserted() const { return count_; }
  std::size_t rank() const { return rows_.size(); }

  Reduction reduce(const SparseRow& v) const {
    Reduction r{v, {}};
    std::size_t pos = 0;
    while (pos < r.remainder.size()) {
      auto it = rows_.find(r.remainder[pos].first);
      if (it == rows_.end()) {
        ++pos;
        continue;
      }
      Rational s = r.remainder[pos].second;
      r.remainder = axpy(r.remainder, -s, it->second.v);
      r.combination = axpy(r.combination, s, it->second.tag);
    }
    return r;
  }

  // Returns a kernel relation among the inserted vectors when v is dependent.
  std::optional<SparseRow> insert(const SparseRow& v) {
    std::size_t id = count_++;
    Reduction r = reduce(v);
    SparseRow tag = axpy(SparseRow{{id, Rational(1)}}, Rational(-1), r.combination);
    if (r.remainder.empty()) return tag;
    Rational lead = r.remainder.front().second;
    Rational inv = 1 / lead;
    for (auto& [i, x] : r.remainder) x *= inv;
    for (auto& [i, x] : tag) x *= inv;
    std::size_t col = r.remainder.front().first;
    // keep the form reduced: clear col from existing rows
    for (auto& [pc, row] : rows_) {
      auto hit = std::lower_bound(row.v.begin(), row.v.end(), std::make_pair(col, Rational(0)),
                                  [](const auto& a, const auto& b) { return a.first < b.first; });
      if (hit == row.v.end() || hit->first != col) continue;
      Rational s = hit->second;
      row.v = axpy(row.v, -s, r.remainder);
      row.tag = axpy(row.tag, -s, tag);
    }
    rows_.emplace(col, Row{std::move(r.remainder), std::move(tag)});
    return std::nullopt;
  }

 private:
  struct Row {
    SparseRow v;
    SparseRow tag;
  };
  std::map<std::size_t, Row> rows_;
  std::size_t count_ = 0;
};

// rank of a small dense rational matrix given by columns
inline std::size_t rank_of_columns(const std::vector<SparseRow>& cols) { return rank(cols); }

}  // namespace chevstab
