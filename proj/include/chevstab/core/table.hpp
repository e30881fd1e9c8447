#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "multidegree.hpp"
#include "rational.hpp"

namespace chevstab {

struct TableKey {
  MultiDegree d;
  int c = 0;
  int w = 0;
  std::optional<int> e;

  auto operator<=>(const TableKey&) const = default;
  bool operator==(const TableKey&) const = default;
};

// (multidegree, c, w, e) -> dim; only positive dims are stored.
// A table with zero colors is a stable table keyed by the empty multidegree.
class CohomologyTable {
 public:
  explicit CohomologyTable(std::size_t numColors = 1) : m_(numColors) {}

  std::size_t num_colors() const { return m_; }
  const std::map<TableKey, std::uint64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  void add(const TableKey& key, std::uint64_t dim) {
    if (key.d.size() != m_) throw ShapeError("table key has wrong number of colors");
    if (dim == 0) return;
    entries_[key] += dim;
  }
  void add(const MultiDegree& d, int c, int w, std::optional<int> e, std::uint64_t dim) {
    add(TableKey{d, c, w, e}, dim);
  }
  void merge(const CohomologyTable& o) {
    if (o.m_ != m_) throw ShapeError("merging tables with different color counts");
    for (const auto& [k, v] : o.entries_) entries_[k] += v;
  }

  std::uint64_t dim(const TableKey& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second;
  }

  // dimension of H^c at d summed over weights
  std::uint64_t dim_at(const MultiDegree& d, int c) const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : entries_)
      if (k.d == d && k.c == c) s += v;
    return s;
  }

  std::vector<MultiDegree> multidegrees() const {
    std::vector<MultiDegree> out;
    for (const auto& [k, v] : entries_)
      if (out.empty() || out.back() != k.d) out.push_back(k.d);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  CohomologyTable restricted_to(const MultiDegree& d) const {
    CohomologyTable t(m_);
    for (const auto& [k, v] : entries_)
      if (k.d == d) t.add(k, v);
    return t;
  }

  bool has_frob() const {
    for (const auto& [k, v] : entries_)
      if (!k.e) return false;
    return true;
  }

  // Tate type: every key has e and w = -2e
  bool is_tate() const {
    for (const auto& [k, v] : entries_)
      if (!k.e || k.w != -2 * *k.e) return false;
    return true;
  }

  BigInt total_dimension() const {
    BigInt s = 0;
    for (const auto& [k, v] : entries_) s += from_u64(v);
    return s;
  }
  BigInt euler_characteristic() const {
    BigInt s = 0;
    for (const auto& [k, v] : entries_) s += (k.c % 2 == 0 ? 1 : -1) * from_u64(v);
    return s;
  }

  int max_degree() const {
    int m = 0;
    for (const auto& [k, v] : entries_) m = std::max(m, k.c);
    return m;
  }

  bool operator==(const CohomologyTable& o) const = default;

 private:
  std::size_t m_;
  std::map<TableKey, std::uint64_t> entries_;
};

inline std::string to_tsv(const CohomologyTable& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.num_colors(); ++i) out << "d" << (i + 1) << "\t";
  out << "c\tw\te\tdim\n";
  for (const auto& [k, v] : t.entries()) {
    for (int p : k.d.parts()) out << p << "\t";
    out << k.c << "\t" << k.w << "\t";
    if (k.e)
      out << *k.e;
    else
      out << "-";
    out << "\t" << v << "\n";
  }
  return out.str();
}

inline CohomologyTable from_tsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty table text");
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string f;
    while (std::getline(h, f, '\t')) header.push_back(f);
  }
  if (header.size() < 4) throw ValidationError("table header too short");
  std::size_t m = header.size() - 4;
  for (std::size_t i = 0; i < m; ++i)
    if (header[i] != "d" + std::to_string(i + 1)) throw ValidationError("bad table header");
  if (header[m] != "c" || header[m + 1] != "w" || header[m + 2] != "e" || header[m + 3] != "dim")
    throw ValidationError("bad table header");
  CohomologyTable t(m);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream r(line);
    std::string x;
    while (std::getline(r, x, '\t')) f.push_back(x);
    if (f.size() != m + 4) throw ValidationError("bad table row: " + line);
    try {
      std::vector<int> d;
      for (std::size_t i = 0; i < m; ++i) d.push_back(std::stoi(f[i]));
      std::optional<int> e;
      if (f[m + 2] != "-") e = std::stoi(f[m + 2]);
      std::uint64_t dim = std::stoull(f[m + 3]);
      if (dim == 0) throw ValidationError("zero dimension in table row");
      t.add(MultiDegree(d), std::stoi(f[m]), std::stoi(f[m + 1]), e, dim);
    } catch (const std::logic_error&) {
      throw ValidationError("bad number in table row: " + line);
    }
  }
  return t;
}

inline nlohmann::json to_json(const CohomologyTable& t) {
  nlohmann::json j;
  j["m"] = t.num_colors();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, v] : t.entries()) {
    nlohmann::json row;
    row["d"] = std::vector<int>(k.d.parts().begin(), k.d.parts().end());
    row["c"] = k.c;
    row["w"] = k.w;
    row["e"] = k.e ? nlohmann::json(*k.e) : nlohmann::json(nullptr);
    row["dim"] = v;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline CohomologyTable table_from_json(const nlohmann::json& j) {
  try {
    CohomologyTable t(j.at("m").get<std::size_t>());
    for (const auto& row : j.at("entries")) {
      std::optional<int> e;
      if (!row.at("e").is_null()) e = row.at("e").get<int>();
      auto dim = row.at("dim").get<std::uint64_t>();
      if (dim == 0) throw ValidationError("zero dimension in table entry");
      t.add(MultiDegree(row.at("d").get<std::vector<int>>()), row.at("c").get<int>(),
            row.at("w").get<int>(), e, dim);
    }
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("bad table json: ") + ex.what());
  }
}

}  // namespace chevstab
