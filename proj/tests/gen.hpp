#pragma once

#include <random>

#include "chevstab/chevstab.hpp"

namespace gen {

using namespace chevstab;

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational small_rational() {
  int num = uniform(-4, 4);
  int den = uniform(1, 3);
  return make_rational(num, den);
}

inline LaurentQW small_laurent() {
  LaurentQW p;
  int terms = uniform(0, 2);
  for (int i = 0; i < terms; ++i) p.add_term(uniform(-2, 2), uniform(0, 2), small_rational());
  return p;
}

inline TruncatedSeries series(std::size_t m, int D, bool zeroConstant = false) {
  TruncatedSeries s(m, D);
  if (zeroConstant && D == 0) return s;
  int terms = uniform(1, 5);
  for (int i = 0; i < terms; ++i) {
    std::vector<int> v(m);
    int left = uniform(zeroConstant ? 1 : 0, D);
    for (std::size_t k = 0; k < m; ++k) {
      v[k] = k + 1 == m ? left : uniform(0, left);
      left -= v[k];
    }
    if (zeroConstant && std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
    s.add_term(MultiDegree(v), small_laurent());
  }
  return s;
}

inline CohomologyTable table(std::size_t m, bool withE) {
  CohomologyTable t(m);
  int n = uniform(0, 8);
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(m);
    for (auto& x : v) x = uniform(0, 4);
    int e = uniform(-4, 0);
    t.add(MultiDegree(v), uniform(0, 6), withE ? -2 * e : uniform(0, 6),
          withE ? std::optional<int>(e) : std::nullopt, static_cast<std::uint64_t>(uniform(1, 9)));
  }
  return t;
}

template <class T>
void shuffle(std::vector<T>& v) {
  std::shuffle(v.begin(), v.end(), rng());
}

}  // namespace gen

namespace Catch {
template <>
struct StringMaker<chevstab::CohomologyTable> {
  static std::string convert(const chevstab::CohomologyTable& t) { return "\n" + chevstab::to_tsv(t); }
};
template <>
struct StringMaker<chevstab::TruncatedSeries> {
  static std::string convert(const chevstab::TruncatedSeries& s) { return "\n" + s.to_string(); }
};
}  // namespace Catch
