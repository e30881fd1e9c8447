#include "catch_amalgamated.hpp"

#include "gen.hpp"

using namespace chevstab;

namespace {

Truncation fin(std::initializer_list<int> n) { return Truncation::finite(MultiDegree(n)); }

BigInt brute(CountSpace X, std::uint64_t q, const Truncation& n, const MultiDegree& d) {
  return count_points_brute(X, q, n, d, 1).count;
}

SpaceSpec space_of(CountSpace X, std::uint64_t q, int depth) {
  switch (X) {
    case CountSpace::A1: return make_affine(1, BigInt(static_cast<unsigned long>(q)), depth);
    case CountSpace::A2: return make_affine(2, BigInt(static_cast<unsigned long>(q)), depth);
    default: return make_projective_line(BigInt(static_cast<unsigned long>(q)), depth);
  }
}

std::vector<Truncation> grid_ns() { return {fin({2}), fin({3}), fin({1, 1}), fin({2, 1})}; }

BigInt sym_count(CountSpace X, std::uint64_t q, const MultiDegree& d) {
  return count_points_euler(space_of(X, q, std::max(1, d.total())), Truncation::infinite(d.size()), d).count;
}

}  // namespace

TEST_CASE("brute force examples") {
  CHECK(brute(CountSpace::A1, 2, fin({2}), MultiDegree{2}) == 2);
  CHECK(brute(CountSpace::A1, 2, fin({3}), MultiDegree{3}) == 6);
  CHECK(brute(CountSpace::A1, 2, fin({1, 1}), MultiDegree{1, 1}) == 2);
  CHECK(brute(CountSpace::P1, 2, fin({2}), MultiDegree{3}) == 6);
  CHECK(brute(CountSpace::A2, 2, fin({2}), MultiDegree{2}) == 12);
  CHECK(brute(CountSpace::A1, 3, Truncation::infinite(1), MultiDegree{4}) == 81);
  CHECK(brute(CountSpace::P1, 4, Truncation::infinite(1), MultiDegree{1}) == 5);
}

TEST_CASE("brute force guard") {
  CHECK_THROWS_AS(brute(CountSpace::A1, 9, fin({2, 2}), MultiDegree{8, 8}), GuardError);
  CHECK_THROWS_AS(brute(CountSpace::A1, 6, fin({2}), MultiDegree{2}), DomainError);
  CHECK_THROWS_AS(count_space_of(make_projective_space(2)), UnsupportedError);
}

TEST_CASE("euler product examples") {
  CHECK(count_points_euler(make_affine(1, BigInt(2)), fin({2}), MultiDegree{2}).count == 2);
  for (long q : {2, 3, 5})
    for (int d = 0; d <= 6; ++d)
      CHECK(count_points_euler(make_affine(1, BigInt(q)), Truncation::infinite(1), MultiDegree{d}).count ==
            ipow(BigInt(q), static_cast<unsigned long>(d)));
  CHECK(count_points_euler(make_projective_line(BigInt(2)), fin({2}), MultiDegree{3}).count == 6);
  CHECK_THROWS_AS(count_points_euler(make_affine(1), fin({2}), MultiDegree{2}), PreconditionError);
}

TEST_CASE("density_empirical examples") {
  auto a = density_empirical(make_affine(1, BigInt(2)), fin({2}), 6);
  std::vector<Rational> expect{1, 1, make_rational(1, 2), make_rational(1, 2), make_rational(1, 2),
                               make_rational(1, 2), make_rational(1, 2)};
  CHECK(a.ratios == expect);
  CHECK(a.target == make_rational(1, 2));
  CHECK(a.firstHold == 2);
  auto b = density_empirical(make_affine(1, BigInt(3)), fin({3}), 8);
  CHECK(b.target == make_rational(8, 9));
  CHECK(b.firstHold == 3);
  auto p = density_empirical(make_projective_line(BigInt(2)), fin({1, 1}), 6);
  CHECK(p.target == make_rational(3, 8));
  CHECK(p.ratios[1] == make_rational(2, 3));
  CHECK(p.ratios[2] == make_rational(24, 49));
}

TEST_CASE("lefschetz examples") {
  auto a = lefschetz_check(make_affine(1, BigInt(2)), 2, make_model(make_affine(1), fin({2})), MultiDegree{4}, 1);
  CHECK(a.ok);
  CHECK(a.brute == 8);
  auto p = lefschetz_check(make_projective_line(BigInt(2)), 2, make_model(make_projective_line(), fin({2})),
                           MultiDegree{3}, 1);
  CHECK(p.ok);
  CHECK(p.brute == 6);
  auto c = lefschetz_check(make_affine(2, BigInt(2)), 2, make_model(make_affine(2), fin({2})), MultiDegree{2}, 1);
  CHECK(c.ok);
  CHECK(c.brute == 12);
  CHECK(c.engine == 12);
}

TEST_CASE("property: brute force and Euler product agree") {
  for (CountSpace X : {CountSpace::A1, CountSpace::P1, CountSpace::A2})
    for (std::uint64_t q : {2, 3})
      for (const auto& n : grid_ns()) {
        const int maxTotal = X == CountSpace::A2 ? (q == 2 ? 4 : 3) : 5;
        SpaceSpec S = space_of(X, q, 8);
        for (const auto& d : degrees_up_to_total(n.colors(), maxTotal)) {
          INFO(to_string(X) << " q=" << q << " n=" << n.to_string() << " d=" << d.to_string());
          CHECK(brute(X, q, n, d) == count_points_euler(S, n, d).count);
        }
      }
}

TEST_CASE("property: counts below the exponents are full symmetric counts") {
  for (CountSpace X : {CountSpace::A1, CountSpace::P1})
    for (std::uint64_t q : {2, 3, 4})
      for (const auto& n : {fin({3}), fin({2, 3}), fin({3, 2}), fin({2, 2})}) {
        for (const auto& d : degrees_up_to_total(n.colors(), 4)) {
          BigInt full = sym_count(X, q, d);
          BigInt z = brute(X, q, n, d);
          CHECK(z <= full);
          bool below = false;
          for (std::size_t k = 0; k < d.size(); ++k) below = below || d[k] < n.n()[k];
          if (below) CHECK(z == full);
        }
      }
}

TEST_CASE("property: symmetric counts factor over colors") {
  for (CountSpace X : {CountSpace::A1, CountSpace::P1, CountSpace::A2})
    for (std::uint64_t q : {2, 3})
      for (const auto& d : degrees_up_to_total(2, 4)) {
        BigInt prod = sym_count(X, q, MultiDegree{d[0]}) * sym_count(X, q, MultiDegree{d[1]});
        CHECK(brute(X, q, Truncation::infinite(2), d) == prod);
      }
}

TEST_CASE("finite field axioms") {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 3}, {3, 2}, {5, 2}, {7, 1}}) {
    GaloisField F(p, r);
    const auto Q = F.order();
    for (int trial = 0; trial < 200; ++trial) {
      auto a = static_cast<GaloisField::Elt>(gen::uniform(0, static_cast<int>(Q) - 1));
      auto b = static_cast<GaloisField::Elt>(gen::uniform(0, static_cast<int>(Q) - 1));
      auto c = static_cast<GaloisField::Elt>(gen::uniform(0, static_cast<int>(Q) - 1));
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.pow(a, Q) == a);
    }
  }
  CHECK(prime_power_parts(27) == std::pair<std::uint32_t, std::uint32_t>{3, 3});
  CHECK_THROWS_AS(prime_power_parts(12), DomainError);
}

// Multiplicity at an F_p-place equals the multiplicity of each of its roots in an
// extension containing them.
TEST_CASE("property: multiplicities are Galois-constant") {
  for (std::uint32_t p : {2u, 3u})
    for (std::uint32_t e : {2u, 3u}) {
      GaloisField Fp(p, 1), E(p, e);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::uint32_t> coeffs;
        int deg = gen::uniform(1, 6);
        for (int i = 0; i < deg; ++i) coeffs.push_back(static_cast<std::uint32_t>(gen::uniform(0, static_cast<int>(p) - 1)));
        coeffs.push_back(1);
        // square a random factor to force repeated roots
        if (trial % 2 == 0) {
          FPoly f(coeffs.begin(), coeffs.end()), sq(2 * coeffs.size() - 1, 0);
          for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) sq[i + j] = Fp.add(sq[i + j], Fp.mul(f[i], f[j]));
          coeffs.assign(sq.begin(), sq.end());
        }
        CHECK(galois_multiplicities_constant(coeffs, E));

        FPoly f;
        for (auto c : coeffs) f.push_back(E.constant(c));
        trim(f);
        std::map<int, std::set<GaloisField::Elt>> byMult;
        for (GaloisField::Elt x = 0; x < E.order(); ++x) {
          int mx = root_multiplicity(E, f, x);
          if (mx == 0) continue;
          int my = root_multiplicity(E, f, E.pow(x, p));
          CHECK(mx == my);
        }
      }
    }
}
