#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace chevstab {

// An m-tuple of nonnegative integers. The empty tuple is reserved for the
// single key of stable (ungraded) tables.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 0) throw DomainError("multidegree parts must be nonnegative");
  }
  MultiDegree(std::initializer_list<int> parts) : MultiDegree(std::vector<int>(parts)) {}

  static MultiDegree zero(std::size_t m) { return MultiDegree(std::vector<int>(m, 0)); }
  static MultiDegree unit(std::size_t m, std::size_t k) {
    if (k >= m) throw DomainError("color index out of range");
    std::vector<int> v(m, 0);
    v[k] = 1;
    return MultiDegree(std::move(v));
  }
  static MultiDegree diagonal(std::size_t m, int value) {
    return MultiDegree(std::vector<int>(m, value));
  }

  std::size_t size() const { return parts_.size(); }
  bool is_top() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_.at(i); }
  std::span<const int> parts() const { return parts_; }
  int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool is_zero() const {
    for (int p : parts_)
      if (p != 0) return false;
    return true;
  }

  MultiDegree operator+(const MultiDegree& o) const {
    check_same(o);
    std::vector<int> v(parts_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.parts_[i];
    return MultiDegree(std::move(v));
  }
  MultiDegree operator-(const MultiDegree& o) const {
    check_same(o);
    std::vector<int> v(parts_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.parts_[i];
    return MultiDegree(std::move(v));
  }
  MultiDegree scaled(int n) const {
    if (n < 0) throw DomainError("negative scale");
    std::vector<int> v(parts_);
    for (int& p : v) p *= n;
    return MultiDegree(std::move(v));
  }
  MultiDegree with(std::size_t k, int value) const {
    std::vector<int> v(parts_);
    v.at(k) = value;
    return MultiDegree(std::move(v));
  }

  // componentwise order
  bool leq(const MultiDegree& o) const {
    check_same(o);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (parts_[i] > o.parts_[i]) return false;
    return true;
  }

  auto operator<=>(const MultiDegree&) const = default;
  bool operator==(const MultiDegree&) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

 private:
  void check_same(const MultiDegree& o) const {
    if (o.size() != size()) throw ShapeError("multidegree length mismatch");
  }
  std::vector<int> parts_;
};

// all d with d <= bound componentwise, lexicographic order
inline std::vector<MultiDegree> degrees_in_box(const MultiDegree& bound) {
  std::vector<MultiDegree> out;
  std::vector<int> cur(bound.size(), 0);
  if (bound.size() == 0) return {MultiDegree()};
  while (true) {
    out.emplace_back(cur);
    std::size_t i = cur.size();
    while (i > 0) {
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < cur.size(); ++j) cur[j] = 0;
        break;
      }
      if (i == 0) return out;
    }
  }
}

inline std::vector<MultiDegree> degrees_with_total(std::size_t m, int total) {
  std::vector<MultiDegree> out;
  if (m == 0) return out;
  std::vector<int> cur(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == m) {
      cur[i] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<MultiDegree> degrees_up_to_total(std::size_t m, int maxTotal) {
  std::vector<MultiDegree> out;
  for (int t = 0; t <= maxTotal; ++t) {
    auto part = degrees_with_total(m, t);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace chevstab
