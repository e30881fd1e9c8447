#include "catch_amalgamated.hpp"

#include "gen.hpp"

using namespace chevstab;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

SpaceDefinition two_class_def() {
  SpaceDefinition def;
  def.name = "custom";
  def.dimX = 1;
  def.basis = {{-2, -2, 1, "pt"}, {0, 0, 0, "1"}};
  def.mult = {{1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}};
  return def;
}

std::vector<std::string> all_builtins() { return {"A1", "A2", "A3", "P1", "P2", "P3", "genus:1", "genus:2", "genus:1:open"}; }

}  // namespace

TEST_CASE("affine line") {
  SpaceSpec X = make_affine(1);
  REQUIRE(X.basis_size() == 1);
  CHECK(X.basis_class(0).c == -2);
  CHECK(X.basis_class(0).e == 1);
  CHECK(X.multiply_basis(0, 0).empty());
  CHECK(X.trace_supported());
}

TEST_CASE("projective line") {
  SpaceSpec X = make_projective_line();
  REQUIRE(X.basis_size() == 2);
  std::vector<int> cs;
  for (const auto& b : X.basis()) cs.push_back(b.c);
  std::sort(cs.begin(), cs.end());
  CHECK(cs == std::vector<int>{-2, 0});
  std::size_t pt = X.fundamental_index(), one = 1 - pt;
  CHECK(X.multiply_basis(one, pt) == ClassVector{{pt, 1}});
  CHECK(X.multiply_basis(one, one) == ClassVector{{one, 1}});
  CHECK(X.multiply_basis(pt, pt).empty());
}

TEST_CASE("genus zero proper curve is the projective line") {
  SpaceSpec C = make_curve(0, true);
  SpaceSpec P = make_projective_line();
  auto strip = [](nlohmann::json j) {
    j.erase("name");
    return j;
  };
  CHECK(strip(space_to_json(C)) == strip(space_to_json(P)));
}

TEST_CASE("genus one curve") {
  SpaceSpec C = make_curve(1, true);
  CHECK(C.basis_size() == 4);
  CHECK_FALSE(C.trace_supported());
  int odd = 0;
  for (const auto& b : C.basis())
    if (b.c == -1) {
      ++odd;
      CHECK(b.w == -1);
      CHECK_FALSE(b.e.has_value());
    }
  CHECK(odd == 2);
  SpaceSpec open = make_curve(1, false);
  CHECK(open.basis_size() == 3);
}

TEST_CASE("custom spaces are validated") {
  CHECK_NOTHROW(SpaceSpec::create(two_class_def()));
  auto noFund = two_class_def();
  noFund.basis[0].c = -1;
  noFund.basis[0].w = -1;
  noFund.basis[0].e.reset();
  noFund.mult.clear();
  CHECK_THROWS_AS(SpaceSpec::create(noFund), ValidationError);
  auto nonComm = two_class_def();
  nonComm.mult = {{1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, 0, 2}};
  CHECK_THROWS_AS(SpaceSpec::create(nonComm), ValidationError);
  auto badDegree = two_class_def();
  badDegree.mult.push_back({0, 0, 1, 1});
  CHECK_THROWS_AS(SpaceSpec::create(badDegree), ValidationError);

  SpaceDefinition nonAssoc;
  nonAssoc.dimX = 1;
  nonAssoc.basis = {{-2, -2, 1, "pt"}, {0, 0, 0, "a"}, {0, 0, 0, "b"}};
  nonAssoc.mult = {{1, 1, 2, 1}, {1, 2, 1, 1}, {2, 1, 1, 1}};
  CHECK_THROWS_AS(SpaceSpec::create(nonAssoc), ValidationError);

  auto badQ = two_class_def();
  badQ.counts = PointCounts{BigInt(6), big({7})};
  CHECK_THROWS_AS(SpaceSpec::create(badQ), ValidationError);
}

TEST_CASE("space json round trip and file schema") {
  for (const auto& name : all_builtins()) {
    SpaceSpec X = space_by_name(name, BigInt(3), 6);
    nlohmann::json j = space_to_json(X);
    CHECK(space_to_json(space_from_json(j)) == j);
  }
  auto j = nlohmann::json::parse(R"({"dimX": 1, "basis": [{"c": -2, "w": -2, "e": 1}, {"c": 0, "w": 0, "e": 0}],
      "mult": [[1, 1, 1, 1], [0, 1, 0, "1"], [1, 0, 0, 1]], "q": 2, "pointCounts": [3, 5, 9]})");
  SpaceSpec X = space_from_json(j);
  CHECK(X.point_counts()->N == big({3, 5, 9}));
  CHECK_THROWS_AS(space_from_json(nlohmann::json::parse(R"({"basis": []})")), ValidationError);
  CHECK_THROWS_AS(space_by_name("Q7"), DomainError);
}

TEST_CASE("closed points examples") {
  CHECK(closed_points(BigInt(2), big({2, 4, 8}), 3).M == big({2, 1, 2}));
  CHECK(closed_points(BigInt(2), big({3, 5, 9}), 3).M == big({3, 1, 2}));
  CHECK(closed_points(BigInt(2), big({1, 1, 1}), 3).M == big({1, 0, 0}));
  CHECK_THROWS_AS(closed_points(BigInt(2), big({1, 2}), 2), InconsistencyError);
  CHECK_THROWS_AS(closed_points(BigInt(2), big({1, 2}), 3), DomainError);
}

TEST_CASE("moebius") {
  std::vector<int> expect{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) CHECK(moebius(n) == expect[n - 1]);
}

TEST_CASE("property: moebius round trip on built-in and random counts") {
  for (const auto& name : {"A1", "A2", "P1", "P2", "P3"})
    for (long q : {2, 3, 4, 5, 7, 8, 9}) {
      SpaceSpec X = space_by_name(name, BigInt(q), 12);
      const auto& N = X.point_counts()->N;
      auto cp = closed_points(BigInt(q), N, 12);
      for (const auto& m : cp.M) CHECK(m >= 0);
      CHECK(point_counts_from_closed(cp) == N);
    }
  for (int trial = 0; trial < 50; ++trial) {
    ClosedPointCounts cp{BigInt(2), {}};
    for (int e = 0; e < 8; ++e) cp.M.emplace_back(gen::uniform(0, 20));
    auto N = point_counts_from_closed(cp);
    CHECK(closed_points(BigInt(2), N, 8).M == cp.M);
  }
}

TEST_CASE("rational point count from the basis") {
  for (const auto& name : {"A1", "A2", "A3", "P1", "P2", "P3"})
    for (long q : {2, 3, 5}) {
      SpaceSpec X = space_by_name(name, BigInt(q), 3);
      Rational s = 0;
      for (const auto& b : X.basis()) s += ((b.c % 2 == 0) ? 1 : -1) * rpow(Rational(q), *b.e);
      CHECK(s == Rational(X.point_counts()->N[0]));
    }
  CHECK(make_affine(1, BigInt(2)).point_counts()->N[0] == 2);
}

TEST_CASE("property: built-in rings are graded-commutative and associative") {
  for (const auto& name : all_builtins()) {
    SpaceSpec X = space_by_name(name);
    const std::size_t B = X.basis_size();
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t j = 0; j < B; ++j) {
        int sign = (X.hc_degree(i) % 2 && X.hc_degree(j) % 2) ? -1 : 1;
        ClassVector ji = X.multiply_basis(j, i);
        for (auto& [k, v] : ji) v *= sign;
        CHECK(X.multiply_basis(i, j) == ji);
        for (std::size_t k = 0; k < B; ++k)
          CHECK(X.multiply(X.multiply_basis(i, j), ClassVector{{k, 1}}) ==
                X.multiply(ClassVector{{i, 1}}, X.multiply_basis(j, k)));
      }
  }
}

TEST_CASE("n-fold products") {
  CHECK(make_affine(1).nfold_products_vanish(2));
  CHECK(make_affine(2).nfold_products_vanish(3));
  CHECK_FALSE(make_projective_line().nfold_products_vanish(2));
  CHECK_FALSE(make_curve(1, false).nfold_products_vanish(2));
  CHECK(make_curve(1, false).nfold_products_vanish(3));
}
