#include "catch_amalgamated.hpp"

#include "gen.hpp"

using namespace chevstab;

namespace {

Truncation fin(std::initializer_list<int> n) { return Truncation::finite(MultiDegree(n)); }

std::vector<Truncation> truncations() {
  return {fin({2}), fin({3}), fin({1, 1}), fin({2, 1}), fin({1, 1, 1}), Truncation::infinite(1),
          Truncation::infinite(2)};
}

std::vector<std::string> builtins() { return {"A1", "A2", "P1", "P2", "genus:1", "genus:1:open", "genus:2"}; }

}  // namespace

TEST_CASE("truncations") {
  CHECK(fin({1, 2}).arity() == 3);
  CHECK(Truncation::infinite(2).is_infinite());
  CHECK(Truncation::infinite(2).to_string() == "inf");
  CHECK_THROWS_AS(fin({1}), DomainError);
  CHECK_THROWS_AS(fin({0, 2}), DomainError);
  CHECK_THROWS_AS(Truncation::infinite(0), DomainError);
}

TEST_CASE("build_gmn one color, n = 2") {
  LInftyModel g = build_gmn(1, fin({2}), 1);
  REQUIRE(g.size() == 2);
  CHECK(g.cls(0).kind == ClassKind::Unit);
  CHECK(g.cls(0).gr == MultiDegree{1});
  CHECK(g.cls(0).c == 1);
  CHECK(g.cls(1).kind == ClassKind::Y);
  CHECK(g.cls(1).gr == MultiDegree{2});
  CHECK(g.cls(1).c == 2);
  REQUIRE(g.bracket().size() == 1);
  CHECK(g.bracket()[0].inputs == std::vector<std::size_t>{0, 0});
  CHECK(g.bracket()[0].output == 1);
  CHECK(g.bracket()[0].coeff == 1);
}

TEST_CASE("build_gmn infinite and two colors") {
  LInftyModel inf = build_gmn(2, Truncation::infinite(2), 1);
  CHECK(inf.size() == 2);
  CHECK(inf.abelian());
  CHECK(inf.has_units());
  LInftyModel g = build_gmn(2, fin({1, 1}), 1);
  REQUIRE(g.size() == 3);
  CHECK(g.cls(2).c == 2);
  CHECK(g.cls(2).gr == MultiDegree{1, 1});
  REQUIRE(g.bracket().size() == 1);
  CHECK(g.bracket()[0].inputs == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(build_gmn(2, fin({2}), 1), DomainError);
}

TEST_CASE("tensor with the affine line") {
  LInftyModel g = make_model(make_affine(1), fin({2}));
  REQUIRE(g.size() == 2);
  CHECK(g.cls(0).c == -1);
  CHECK(g.cls(0).e == 0);
  CHECK(g.cls(1).c == 0);
  CHECK(g.cls(1).e == -1);
  CHECK(g.abelian());
  LInftyModel h = make_model(make_affine(1), Truncation::infinite(1));
  CHECK(h.size() == 1);
  CHECK(h.abelian());
}

TEST_CASE("tensor with the projective line") {
  LInftyModel g = make_model(make_projective_line(), fin({2}));
  REQUIRE(g.size() == 4);
  auto find = [&](const std::string& label) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.cls(i).label == label) return i;
    FAIL("missing " << label);
    return std::size_t(0);
  };
  std::size_t uPt = find("[pt]*u1"), uOne = find("1_c*u1"), yPt = find("[pt]*y"), yOne = find("1_c*y");
  std::map<std::vector<std::size_t>, std::pair<std::size_t, Rational>> terms;
  for (const auto& t : g.bracket()) terms[t.inputs] = {t.output, t.coeff};
  REQUIRE(terms.size() == 2);
  CHECK(terms.at({uOne, uOne}) == std::pair<std::size_t, Rational>{yOne, 1});
  CHECK(terms.at({std::min(uPt, uOne), std::max(uPt, uOne)}) == std::pair<std::size_t, Rational>{yPt, 1});
}

TEST_CASE("quot_un examples") {
  LInftyModel a = quot_un(make_model(make_affine(1), fin({2})));
  REQUIRE(a.size() == 1);
  CHECK(a.cls(0).label == "[X]*y");
  CHECK(quot_un(build_gmn(2, Truncation::infinite(2), 1)).size() == 0);
  LInftyModel p = quot_un(make_model(make_projective_line(), fin({2})));
  REQUIRE(p.size() == 3);
  CHECK(p.cls(0).label == "1_c*u1");
  CHECK(p.cls(0).c == 1);
  REQUIRE(p.bracket().size() == 1);
  CHECK(p.bracket()[0].inputs == std::vector<std::size_t>{0, 0});
  CHECK(p.warnings().empty());
  CHECK_THROWS_AS(quot_un(quot_un(make_model(make_affine(1), fin({2})))), PreconditionError);
}

TEST_CASE("quot_un warns below degree zero") {
  SpaceDefinition def;
  def.dimX = 1;
  def.basis = {{-2, -2, 1, "pt"}, {-1, -1, std::nullopt, "h"}};
  CHECK_NOTHROW(SpaceSpec::create(def));
  LInftyModel g = quot_un(make_model(SpaceSpec::create(def), Truncation::infinite(1)));
  CHECK(g.size() == 1);
  CHECK(g.warnings().empty());
  LInftyModel raw = quot_un(LInftyModel(Truncation::infinite(1), 1,
                                        {{ClassKind::Unit, 0, std::nullopt, MultiDegree{1}, 1, 2, -1, "u"},
                                         {ClassKind::Gen, 0, std::nullopt, MultiDegree{1}, -1, 0, 0, "v"}},
                                        {}, false));
  CHECK(raw.size() == 1);
  CHECK(raw.warnings().size() == 1);
}

TEST_CASE("non-formal spaces are refused") {
  SpaceDefinition def;
  def.dimX = 1;
  def.basis = {{-2, -2, 1, "pt"}};
  def.formal = false;
  CHECK_THROWS_AS(make_model(SpaceSpec::create(def), fin({2})), UnsupportedError);
}

TEST_CASE("property: class bookkeeping for every built model") {
  for (const auto& name : builtins()) {
    SpaceSpec X = space_by_name(name);
    const int d = X.dim();
    for (const auto& n : truncations()) {
      LInftyModel g = make_model(X, n);
      CHECK(check_bracket_degrees(g).empty());
      CHECK(g.has_units());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& c = g.cls(i);
        const auto& h = X.basis_class(*c.spaceIndex);
        if (c.kind == ClassKind::Y) {
          CHECK(c.gr == n.n());
          CHECK(c.c == h.c + 2 * d * n.arity() - 2);
          if (h.e) CHECK(c.e == *h.e - d * n.arity());
        } else {
          CHECK(c.gr == MultiDegree::unit(n.colors(), static_cast<std::size_t>(c.color)));
          CHECK(c.c == h.c + 2 * d - 1);
          if (h.e) CHECK(c.e == *h.e - d);
          CHECK((c.kind == ClassKind::Unit) == (*c.spaceIndex == X.fundamental_index()));
        }
      }
      for (const auto& t : g.bracket()) {
        MultiDegree colors = MultiDegree::zero(n.colors());
        for (auto i : t.inputs) colors = colors + g.cls(i).gr;
        CHECK(colors == n.n());
      }
    }
  }
}

TEST_CASE("property: affine spaces give abelian models") {
  for (int d = 1; d <= 4; ++d)
    for (const auto& n : truncations()) CHECK(make_model(make_affine(d), n).abelian());
}

TEST_CASE("property: rescaling the outputs keeps betti") {
  for (const auto& name : {"P1", "P2", "genus:1"})
    for (const auto& n : {fin({2}), fin({1, 1}), fin({3})}) {
      LInftyModel g = make_model(space_by_name(name), n);
      std::map<std::size_t, Rational> factor;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g.cls(i).kind == ClassKind::Y) {
          Rational r = 0;
          while (r == 0) r = gen::small_rational();
          factor[i] = r;
        }
      LInftyModel h = rescale_outputs(g, factor);
      for (const auto& d : degrees_up_to_total(n.colors(), 4)) CHECK(betti(g, d) == betti(h, d));
    }
}

TEST_CASE("model dump is deterministic") {
  auto g = make_model(make_curve(1, true), fin({1, 1}));
  auto h = make_model(make_curve(1, true), fin({1, 1}));
  CHECK(dump_model(g) == dump_model(h));
  CHECK(dump_model(g).find("bracket") != std::string::npos);
}
