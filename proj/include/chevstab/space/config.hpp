#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "space.hpp"

namespace chevstab {

inline constexpr int kDefaultCountDepth = 16;

namespace detail {

inline PointCounts tate_counts(const BigInt& q, int depth, const std::vector<int>& exps) {
  PointCounts pc{q, {}};
  for (int e = 1; e <= depth; ++e) {
    BigInt s = 0;
    for (int x : exps) s += ipow(q, static_cast<unsigned long>(x * e));
    pc.N.push_back(s);
  }
  return pc;
}

inline void check_q(const std::optional<BigInt>& q) {
  if (q && !is_prime_power(*q)) throw DomainError("q must be a prime power, got " + q->get_str());
}

}  // namespace detail

inline SpaceSpec make_affine(int d, std::optional<BigInt> q = std::nullopt,
                             int depth = kDefaultCountDepth) {
  if (d < 1) throw DomainError("affine dimension must be positive");
  detail::check_q(q);
  SpaceDefinition def;
  def.name = "A" + std::to_string(d);
  def.dimX = d;
  def.basis = {{-2 * d, -2 * d, d, "[X]"}};
  if (q) def.counts = detail::tate_counts(*q, depth, {d});
  def.family = SpaceFamily::Affine;
  def.familyParam = d;
  return SpaceSpec::create(std::move(def));
}

// basis index i is the class of H_c-degree 2(d - i); index 0 is the point class
inline SpaceSpec make_projective_space(int d, std::optional<BigInt> q = std::nullopt,
                                       int depth = kDefaultCountDepth) {
  if (d < 1) throw DomainError("projective dimension must be positive");
  detail::check_q(q);
  SpaceDefinition def;
  def.name = "P" + std::to_string(d);
  def.dimX = d;
  auto idx = [d](int j) { return static_cast<std::size_t>(d - j); };
  for (int i = 0; i <= d; ++i) {
    int j = d - i;
    def.basis.push_back({-2 * j, -2 * j, j, j == d ? "[pt]" : (j == 0 ? "1_c" : "H^" + std::to_string(j))});
  }
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) def.mult.push_back({idx(a), idx(b), idx(a + b), Rational(1)});
  if (q) {
    std::vector<int> exps;
    for (int j = 0; j <= d; ++j) exps.push_back(j);
    def.counts = detail::tate_counts(*q, depth, exps);
  }
  def.family = SpaceFamily::ProjSpace;
  def.familyParam = d;
  def.proper = true;
  return SpaceSpec::create(std::move(def));
}

inline SpaceSpec make_projective_line(std::optional<BigInt> q = std::nullopt,
                                      int depth = kDefaultCountDepth) {
  return make_projective_space(1, q, depth);
}

// smooth curve of genus g; the open variant removes one point
inline SpaceSpec make_curve(int g, bool proper, std::optional<BigInt> q = std::nullopt,
                            int depth = kDefaultCountDepth) {
  if (g < 0) throw DomainError("genus must be nonnegative");
  if (g == 0) return proper ? make_projective_line(q, depth) : make_affine(1, q, depth);
  detail::check_q(q);
  SpaceDefinition def;
  def.name = "genus:" + std::to_string(g) + (proper ? "" : ":open");
  def.dimX = 1;
  def.basis.push_back({-2, -2, 1, "[pt]"});
  for (int i = 1; i <= g; ++i) def.basis.push_back({-1, -1, std::nullopt, "a" + std::to_string(i)});
  for (int i = 1; i <= g; ++i) def.basis.push_back({-1, -1, std::nullopt, "b" + std::to_string(i)});
  auto a = [](int i) { return static_cast<std::size_t>(i); };
  auto b = [g](int i) { return static_cast<std::size_t>(g + i); };
  for (int i = 1; i <= g; ++i) {
    def.mult.push_back({a(i), b(i), 0, Rational(1)});
    def.mult.push_back({b(i), a(i), 0, Rational(-1)});
  }
  if (proper) {
    std::size_t u = def.basis.size();
    def.basis.push_back({0, 0, 0, "1_c"});
    for (std::size_t i = 0; i < u; ++i) {
      def.mult.push_back({u, i, i, Rational(1)});
      def.mult.push_back({i, u, i, Rational(1)});
    }
    def.mult.push_back({u, u, u, Rational(1)});
  }
  def.family = SpaceFamily::Curve;
  def.familyParam = g;
  def.proper = proper;
  // eigenvalues of Frobenius on H^1 are not determined by the genus
  return SpaceSpec::create(std::move(def));
}

namespace detail {

inline Rational parse_coeff(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    Rational r;
    if (r.set_str(v.get<std::string>(), 10) != 0) throw ValidationError("bad rational coefficient");
    r.canonicalize();
    return r;
  }
  throw ValidationError("mult coefficient must be an integer or a string \"p/q\"");
}

inline BigInt parse_big(const nlohmann::json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long>());
  if (v.is_string()) {
    BigInt z;
    if (z.set_str(v.get<std::string>(), 10) != 0) throw ValidationError("bad integer");
    return z;
  }
  throw ValidationError("expected an integer");
}

}  // namespace detail

// Schema:
// {"name": str, "dimX": int,
//  "basis": [{"c": int, "w": int, "e": int|null, "label": str}, ...],
//  "fundamental": int (optional),
//  "mult": [[i, j, k, coeff], ...]   coeff an integer or "p/q",
//  "q": int, "pointCounts": [N_1, N_2, ...] (optional, integers or decimal strings),
//  "formal": bool (default true)}
inline SpaceSpec space_from_json(const nlohmann::json& j) {
  try {
    SpaceDefinition def;
    def.name = j.value("name", std::string("custom"));
    def.dimX = j.at("dimX").get<int>();
    for (const auto& b : j.at("basis")) {
      SpaceClass sc;
      sc.c = b.at("c").get<int>();
      sc.w = b.at("w").get<int>();
      if (b.contains("e") && !b.at("e").is_null()) sc.e = b.at("e").get<int>();
      sc.label = b.value("label", std::string());
      def.basis.push_back(sc);
    }
    if (j.contains("fundamental")) def.fundamental = j.at("fundamental").get<std::size_t>();
    if (j.contains("mult"))
      for (const auto& t : j.at("mult")) {
        if (!t.is_array() || t.size() != 4) throw ValidationError("mult entries are [i, j, k, coeff]");
        def.mult.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(),
                            t[2].get<std::size_t>(), detail::parse_coeff(t[3])});
      }
    if (j.contains("pointCounts")) {
      if (!j.contains("q")) throw ValidationError("pointCounts given without q");
      PointCounts pc{detail::parse_big(j.at("q")), {}};
      for (const auto& n : j.at("pointCounts")) pc.N.push_back(detail::parse_big(n));
      def.counts = pc;
    }
    def.formal = j.value("formal", true);
    return SpaceSpec::create(std::move(def));
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("bad space config: ") + ex.what());
  }
}

inline SpaceSpec space_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open space file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("space file is not valid JSON: " + std::string(ex.what()));
  }
  return space_from_json(j);
}

// A<d>, P<d>, genus:<g>, genus:<g>:open
inline SpaceSpec space_by_name(const std::string& name, std::optional<BigInt> q = std::nullopt,
                               int depth = kDefaultCountDepth) {
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("unknown space name: " + name);
    return std::stoi(s);
  };
  if (name.size() >= 2 && name[0] == 'A') return make_affine(parse_int(name.substr(1)), q, depth);
  if (name.size() >= 2 && name[0] == 'P')
    return make_projective_space(parse_int(name.substr(1)), q, depth);
  if (name.rfind("genus:", 0) == 0) {
    std::string rest = name.substr(6);
    bool open = false;
    if (auto pos = rest.find(":open"); pos != std::string::npos && pos + 5 == rest.size()) {
      open = true;
      rest = rest.substr(0, pos);
    }
    return make_curve(parse_int(rest), !open, q, depth);
  }
  throw DomainError("unknown space name: " + name);
}

inline nlohmann::json space_to_json(const SpaceSpec& s) {
  nlohmann::json j;
  j["name"] = s.name();
  j["dimX"] = s.dim();
  j["fundamental"] = s.fundamental_index();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : s.basis())
    basis.push_back({{"c", b.c}, {"w", b.w}, {"e", b.e ? nlohmann::json(*b.e) : nlohmann::json()},
                     {"label", b.label}});
  j["basis"] = basis;
  nlohmann::json mult = nlohmann::json::array();
  for (const auto& m : s.mult_entries()) mult.push_back({m.i, m.j, m.k, m.coeff.get_str()});
  j["mult"] = mult;
  if (s.point_counts()) {
    j["q"] = s.point_counts()->q.get_str();
    nlohmann::json n = nlohmann::json::array();
    for (const auto& x : s.point_counts()->N) n.push_back(x.get_str());
    j["pointCounts"] = n;
  }
  j["formal"] = s.formal();
  return j;
}

}  // namespace chevstab
