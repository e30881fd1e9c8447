#pragma once

#include <vector>

#include "../core/rational.hpp"

namespace chevstab {

struct ClosedPointCounts {
  BigInt q;
  std::vector<BigInt> M;  // M[e-1] = number of closed points of degree e
};

inline int moebius(int n) {
  if (n < 1) throw DomainError("moebius of nonpositive integer");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

inline ClosedPointCounts closed_points(const BigInt& q, const std::vector<BigInt>& N, int E) {
  if (E < 0 || static_cast<std::size_t>(E) > N.size())
    throw DomainError("point counts shorter than requested depth");
  ClosedPointCounts out{q, {}};
  for (int e = 1; e <= E; ++e) {
    if (N[e - 1] < 0) throw DomainError("negative point count");
    BigInt s = 0;
    for (int f = 1; f <= e; ++f)
      if (e % f == 0) s += moebius(e / f) * N[f - 1];
    if (s % e != 0 || s < 0)
      throw InconsistencyError("point counts are not those of a variety: degree " +
                               std::to_string(e) + " closed point count " + s.get_str() + "/" +
                               std::to_string(e));
    out.M.push_back(s / e);
  }
  return out;
}

// N_e = sum_{f | e} f M_f
inline std::vector<BigInt> point_counts_from_closed(const ClosedPointCounts& cp) {
  std::vector<BigInt> N;
  for (std::size_t e = 1; e <= cp.M.size(); ++e) {
    BigInt s = 0;
    for (std::size_t f = 1; f <= e; ++f)
      if (e % f == 0) s += BigInt(static_cast<unsigned long>(f)) * cp.M[f - 1];
    N.push_back(s);
  }
  return N;
}

}  // namespace chevstab
