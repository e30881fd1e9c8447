#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chevstab/chevstab.hpp"

namespace chevstab::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct Options {
  std::string space = "A1";
  std::string spaceFile;
  std::string q;
  int m = 0;
  std::string n = "2";
  int dmax = -1;
  int cmax = -1;
  std::string d;
  std::string mode = "both";
  std::string out;
  bool json = false;
  bool tsv = false;
  unsigned jobs = 0;
  std::string suite;
  bool spaceGiven = false;
  bool nGiven = false;
};

inline std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> v;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(std::string("bad ") + what + ": " + s);
    v.push_back(std::stoi(part));
  }
  if (v.empty()) throw UsageError(std::string("empty ") + what);
  return v;
}

inline Truncation parse_truncation(const std::string& n, int m) {
  if (n == "inf") {
    if (m < 0) throw UsageError("--m must be positive");
    return Truncation::infinite(m == 0 ? 1 : static_cast<std::size_t>(m));
  }
  std::vector<int> parts = parse_int_list(n, "--n");
  if (m != 0 && static_cast<std::size_t>(m) != parts.size())
    throw UsageError("--m " + std::to_string(m) + " does not match --n " + n);
  try {
    return Truncation::finite(MultiDegree(parts));
  } catch (const DomainError& e) {
    throw UsageError(std::string("bad --n: ") + e.what());
  }
}

inline std::optional<BigInt> parse_q(const Options& o) {
  if (o.q.empty()) return std::nullopt;
  if (o.q.find_first_not_of("0123456789") != std::string::npos) throw UsageError("bad --q " + o.q);
  BigInt q(o.q);
  if (!is_prime_power(q)) throw UsageError("--q must be a prime power");
  return q;
}

inline SpaceSpec load_space(const Options& o, const std::string& name, int depth = kDefaultCountDepth) {
  if (!o.spaceFile.empty()) return space_from_file(o.spaceFile);
  try {
    return space_by_name(name, parse_q(o), depth);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

inline unsigned jobs_of(const Options& o) { return o.jobs ? o.jobs : default_jobs(); }

inline std::string degree_tag(const MultiDegree& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "-" : "") + std::to_string(d[i]);
  return s;
}

inline std::string file_safe(std::string s) {
  for (char& c : s)
    if (c == ':' || c == ',' || c == '/' || c == '(' || c == ')') c = '_';
  return s;
}

// ---------------------------------------------------------------- betti

inline int cmd_betti(const Options& o, std::ostream& out) {
  if (o.dmax < 0) throw UsageError("betti needs --dmax");
  SpaceSpec X = load_space(o, o.space);
  Truncation n = parse_truncation(o.n, o.m);
  LInftyModel g = make_model(X, n);
  std::vector<MultiDegree> degrees = degrees_in_box(MultiDegree::diagonal(n.colors(), o.dmax));
  CohomologyTable all = betti_grid(g, degrees, jobs_of(o));
  bool writeTsv = o.tsv || !o.json;
  bool writeJson = o.json || !o.tsv;
  if (o.out.empty()) {
    if (o.json && !o.tsv)
      out << to_json(all).dump(2) << "\n";
    else
      out << to_tsv(all);
    return kExitOk;
  }
  std::filesystem::create_directories(o.out);
  std::string stem = "betti_" + file_safe(X.name()) + "_n" + file_safe(n.to_string());
  std::size_t files = 0;
  for (const auto& d : degrees) {
    CohomologyTable t = all.restricted_to(d);
    std::string base = o.out + "/" + stem + "_d" + degree_tag(d);
    if (writeTsv) std::ofstream(base + ".tsv") << to_tsv(t);
    if (writeJson) std::ofstream(base + ".json") << to_json(t).dump(2) << "\n";
    ++files;
  }
  out << "wrote " << files << " tables to " << o.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify suites

struct SuiteResult {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string firstCounterexample;
  void fail(const std::string& what) {
    ++checks;
    ++failures;
    if (firstCounterexample.empty()) firstCounterexample = what;
  }
  void pass() { ++checks; }
  void merge(const SuiteResult& o) {
    checks += o.checks;
    failures += o.failures;
    if (firstCounterexample.empty()) firstCounterexample = o.firstCounterexample;
  }
};

inline std::vector<std::string> builtin_names() { return {"A1", "A2", "P1", "P2", "genus:1"}; }

inline std::vector<Truncation> default_ns() {
  return {Truncation::finite(MultiDegree{2}), Truncation::finite(MultiDegree{3}),
          Truncation::finite(MultiDegree{1, 1})};
}

inline SuiteResult suite_stability(const Options& o, std::ostream& out) {
  struct Config {
    std::string space;
    Truncation n;
    int dmax, cmax;
  };
  std::vector<Config> configs;
  if (o.spaceGiven || o.nGiven || !o.spaceFile.empty()) {
    configs.push_back({o.space, parse_truncation(o.n, o.m), o.dmax < 0 ? 8 : o.dmax, o.cmax < 0 ? 4 : o.cmax});
  } else {
    configs = {{"A1", Truncation::finite(MultiDegree{2}), 10, 4},
               {"A2", Truncation::finite(MultiDegree{2}), 6, 3},
               {"A1", Truncation::finite(MultiDegree{3}), 8, 4},
               {"A1", Truncation::finite(MultiDegree{1, 2}), 5, 3}};
  }
  SuiteResult res;
  for (const auto& cfg : configs) {
    SpaceSpec X = load_space(o, cfg.space);
    LInftyModel g = make_model(X, cfg.n);
    for (std::size_t k = 0; k < cfg.n.colors(); ++k) {
      StabilityReport rep = verify_stability(g, k, MultiDegree::diagonal(cfg.n.colors(), cfg.dmax), cfg.cmax,
                                             std::nullopt, jobs_of(o));
      std::string head = X.name() + " n=" + cfg.n.to_string() + " " + rep.profile.to_string();
      out << head << " checked=" << rep.checked << " violations=" << rep.violations << " "
          << (rep.pass() ? "PASS" : "FAIL") << "\n";
      if (rep.pass())
        res.pass();
      else
        res.fail(head + ": " + rep.first_counterexample());
    }
  }
  return res;
}

inline DecatMode mode_for(const LInftyModel& g) { return g.all_trace() ? DecatMode::Trace : DecatMode::Weight; }

inline SuiteResult suite_plethystic(const Options& o, std::ostream& out) {
  std::vector<std::string> spaces = o.spaceGiven ? std::vector<std::string>{o.space} : builtin_names();
  std::vector<Truncation> ns = o.nGiven ? std::vector<Truncation>{parse_truncation(o.n, o.m)} : default_ns();
  const int D = o.dmax < 0 ? 6 : o.dmax;
  SuiteResult res;
  for (const auto& name : spaces)
    for (const auto& n : ns) {
      SpaceSpec X = load_space(o, name);
      LInftyModel g = make_model(X, n);
      DecatMode mode = mode_for(g);
      CohomologyTable b = betti_grid(g, degrees_up_to_total(n.colors(), D), jobs_of(o));
      TruncatedSeries lhs = chi_gr(b, D, mode);
      TruncatedSeries rhs = chi_via_plethystic_exp(class_table(g), D, mode);
      std::string head = X.name() + " n=" + n.to_string() + " D=" + std::to_string(D) +
                         (mode == DecatMode::Trace ? " (t,q)" : " (t,w)");
      bool ok = lhs == rhs;
      out << head << " " << (ok ? "PASS" : "FAIL") << "\n";
      if (ok)
        res.pass();
      else
        res.fail(head + ": chi_gr and plethystic exponential differ");
    }
  return res;
}

inline SuiteResult suite_density(const Options& o, std::ostream& out) {
  SuiteResult res;
  std::vector<std::pair<std::string, Truncation>> configs;
  if (o.spaceGiven || o.nGiven || !o.spaceFile.empty())
    configs.emplace_back(o.space, parse_truncation(o.n, o.m));
  else
    configs = {{"A1", Truncation::finite(MultiDegree{2})}, {"A1", Truncation::finite(MultiDegree{3})},
               {"A1", Truncation::finite(MultiDegree{1, 1})}};
  const int dMax = o.dmax < 0 ? 8 : o.dmax;
  for (const auto& [name, n] : configs) {
    Options oq = o;
    if (oq.q.empty()) oq.q = "2";
    SpaceSpec X = load_space(oq, name, std::max<int>(kDefaultCountDepth, static_cast<int>(n.colors()) * dMax));
    DensityEmpirical de = density_empirical(X, n, dMax);
    LaurentQW target = zeta_inverse(X, X.dim() * n.arity());
    out << "# " << X.name() << " q=" << X.point_counts()->q.get_str() << " n=" << n.to_string()
        << " target " << target.to_string() << "\n";
    out << "d,ratio_num,ratio_den,target\n";
    for (std::size_t d = 0; d < de.ratios.size(); ++d)
      out << d << "," << de.ratios[d].get_num().get_str() << "," << de.ratios[d].get_den().get_str() << ","
          << de.target.get_str() << "\n";
    std::string head = X.name() + " n=" + n.to_string();
    if (de.firstHold) {
      out << head << " ratio equals target from d=" << *de.firstHold << " PASS\n";
      res.pass();
    } else {
      out << head << " ratio does not settle on the target by d=" << dMax << " FAIL\n";
      res.fail(head + ": ratio at d=" + std::to_string(dMax) + " is " + de.ratios.back().get_str() +
               ", target " + de.target.get_str());
    }
    // Euler product against the CE tables, at numeric q
    const int D = std::min(dMax, 6);
    LInftyModel g = make_model(X, n);
    LInftyModel gInf = make_model(X, Truncation::infinite(n.colors()));
    auto degs = degrees_up_to_total(n.colors(), D);
    TruncatedSeries num = series_collapse(chi_gr(betti_grid(g, degs, jobs_of(o)), D, DecatMode::Trace));
    TruncatedSeries den = series_collapse(chi_gr(betti_grid(gInf, degs, jobs_of(o)), D, DecatMode::Trace));
    Rational q(X.point_counts()->q);
    TruncatedSeries quotient = series_evaluate_q(series_mul(num, series_inverse(den)), q);
    bool ok = quotient == density_series(X, n, D);
    out << head << " Euler product equals chi_gr quotient through t^" << D << " " << (ok ? "PASS" : "FAIL") << "\n";
    if (ok)
      res.pass();
    else
      res.fail(head + ": density series differs from the chi_gr quotient");
  }
  return res;
}

inline SuiteResult suite_lefschetz(const Options& o, std::ostream& out) {
  std::vector<std::string> spaces = o.spaceGiven ? std::vector<std::string>{o.space}
                                                 : std::vector<std::string>{"A1", "A2", "P1"};
  std::vector<Truncation> ns = o.nGiven ? std::vector<Truncation>{parse_truncation(o.n, o.m)}
                                        : std::vector<Truncation>{Truncation::finite(MultiDegree{2}),
                                                                  Truncation::finite(MultiDegree{3}),
                                                                  Truncation::finite(MultiDegree{1, 1}),
                                                                  Truncation::finite(MultiDegree{2, 1})};
  std::vector<std::uint64_t> qs;
  if (o.q.empty())
    qs = {2};
  else
    qs = {static_cast<std::uint64_t>(std::stoull(o.q))};
  const int D = o.dmax < 0 ? 5 : o.dmax;
  SuiteResult res;
  for (const auto& name : spaces)
    for (auto q : qs)
      for (const auto& n : ns) {
        Options oq = o;
        oq.q = std::to_string(q);
        SpaceSpec X = load_space(oq, name);
        LInftyModel g = make_model(X, n);
        for (const auto& d : degrees_up_to_total(n.colors(), D)) {
          LefschetzReport r = lefschetz_check(X, q, g, d, jobs_of(o));
          out << X.name() << " q=" << q << " n=" << n.to_string() << " " << r.to_string() << "\n";
          if (r.ok)
            res.pass();
          else
            res.fail(X.name() + " q=" + std::to_string(q) + " n=" + n.to_string() + " " + r.to_string());
        }
      }
  return res;
}

inline SuiteResult suite_filtration(const Options& o, std::ostream& out) {
  std::vector<std::string> spaces = o.spaceGiven ? std::vector<std::string>{o.space} : builtin_names();
  std::vector<Truncation> ns = o.nGiven ? std::vector<Truncation>{parse_truncation(o.n, o.m)} : default_ns();
  const int D = o.dmax < 0 ? 5 : o.dmax;
  SuiteResult res;
  for (const auto& name : spaces)
    for (const auto& n : ns) {
      SpaceSpec X = load_space(o, name);
      LInftyModel g = make_model(X, n);
      std::size_t bad = 0;
      std::string first;
      for (const auto& d : degrees_up_to_total(n.colors(), D)) {
        FiltrationReport r = sym_filtration_check(g, d);
        if (!r.ok) {
          ++bad;
          if (first.empty()) first = r.failures.front();
        }
      }
      std::string head = X.name() + " n=" + n.to_string() + " |d|<=" + std::to_string(D);
      out << head << " " << (bad ? "FAIL" : "PASS") << "\n";
      if (bad)
        res.fail(head + ": " + first);
      else
        res.pass();
    }
  return res;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  static const std::vector<std::string> suites = {"stability", "plethystic", "density", "lefschetz",
                                                  "filtration"};
  std::vector<std::string> run;
  if (o.suite == "all")
    run = suites;
  else if (std::find(suites.begin(), suites.end(), o.suite) != suites.end())
    run = {o.suite};
  else
    throw UsageError("unknown suite " + o.suite);
  SuiteResult total;
  for (const auto& s : run) {
    out << "== " << s << "\n";
    SuiteResult r;
    if (s == "stability") r = suite_stability(o, out);
    if (s == "plethystic") r = suite_plethystic(o, out);
    if (s == "density") r = suite_density(o, out);
    if (s == "lefschetz") r = suite_lefschetz(o, out);
    if (s == "filtration") r = suite_filtration(o, out);
    total.merge(r);
  }
  out << "checks " << total.checks << " failures " << total.failures << "\n";
  if (total.failures) {
    out << "first counterexample: " << total.firstCounterexample << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- density / stable / count

inline int cmd_density(const Options& o, std::ostream& out) {
  Truncation n = parse_truncation(o.n, o.m);
  const int D = o.dmax < 0 ? 8 : o.dmax;
  Options oq = o;
  if (oq.q.empty()) oq.q = "2";
  SpaceSpec X = load_space(oq, o.space, std::max(kDefaultCountDepth, D));
  TruncatedSeries s = density_series(X, n, D);
  std::vector<Rational> partial = partial_sums_at_one(s);
  out << "d,coefficient,partial_product_at_t1\n";
  for (int d = 0; d <= D; ++d)
    out << d << "," << s.coefficient(MultiDegree{d}).constant().get_str() << "," << partial[d].get_str() << "\n";
  if (!n.is_infinite()) {
    LaurentQW z = zeta_inverse(X, X.dim() * n.arity());
    out << "target," << z.to_string() << "," << z.evaluate(Rational(X.point_counts()->q), 1).get_str() << "\n";
  }
  return kExitOk;
}

inline int cmd_stable(const Options& o, std::ostream& out) {
  SpaceSpec X = load_space(o, o.space);
  Truncation n = parse_truncation(o.n, o.m);
  const int cMax = o.cmax < 0 ? 6 : o.cmax;
  LInftyModel g = make_model(X, n);
  CohomologyTable st = stable_betti(g, cMax, std::nullopt);
  out << "# stable cohomology through degree " << cMax << "\n" << to_tsv(st);
  out << "poincare\t" << poincare(st).to_string() << "\n";
  out << "virtual_poincare\t" << poincare_virtual(st).to_string() << "\n";
  if (n.is_infinite()) return kExitOk;
  StableDensity sd;
  try {
    sd = stable_density(X, n);
  } catch (const DomainError&) {
    sd = stable_density(X, n, cMax);
  }
  out << "# stable density" << (sd.complete ? "" : " through degree " + std::to_string(cMax)) << "\n"
      << to_tsv(sd.table);
  out << "density_poincare\t" << sd.poincare.to_string() << "\n";
  out << "density_virtual_poincare\t" << sd.virtualPoincare.to_string() << "\n";
  if (sd.trace) {
    out << "trace\t" << sd.trace->to_string() << "\n";
    out << "zeta_inverse(" << X.dim() * n.arity() << ")\t" << sd.zetaInverse->to_string() << "\n";
    out << "trace_matches\t" << (sd.traceMatches ? "yes" : "no") << "\n";
    return sd.traceMatches ? kExitOk : kExitCheckFailed;
  }
  out << "trace\tunavailable (classes without frobExp)\n";
  return kExitOk;
}

inline int cmd_count(const Options& o, std::ostream& out) {
  Truncation n = parse_truncation(o.n, o.m);
  if (o.d.empty()) throw UsageError("count needs --d");
  MultiDegree d(parse_int_list(o.d, "--d"));
  if (d.size() != n.colors()) throw UsageError("--d has a different number of colors than --n");
  if (o.q.empty()) throw UsageError("count needs --q");
  std::uint64_t q = std::stoull(o.q);
  Options oq = o;
  SpaceSpec X = load_space(oq, o.space, std::max(kDefaultCountDepth, d.total()));
  if (o.mode != "brute" && o.mode != "euler" && o.mode != "both") throw UsageError("--mode is brute, euler or both");
  std::optional<BigInt> brute, euler;
  if (o.mode != "euler") {
    brute = count_points_brute(count_space_of(X), q, n, d, jobs_of(o)).count;
    out << "brute " << brute->get_str() << "\n";
  }
  if (o.mode != "brute") {
    euler = count_points_euler(X, n, d).count;
    out << "euler " << euler->get_str() << "\n";
  }
  if (brute && euler && *brute != *euler) {
    out << "mismatch\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- entry point

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology tables of generalized configuration spaces"};
  app.require_subcommand(1);
  Options o;

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--space", o.space, "A1, A2, P1, P2, genus:g or genus:g:open");
    sub->add_option("--space-file", o.spaceFile, "JSON space description");
    sub->add_option("--q", o.q, "prime power");
    sub->add_option("--m", o.m, "number of colors");
    sub->add_option("--n", o.n, "exponents, comma separated, or inf");
    sub->add_option("--jobs", o.jobs, "parallel width (default CHEVSTAB_JOBS or 1)");
  };
  auto* betti = app.add_subcommand("betti", "cohomology tables for all d <= dmax");
  add_space(betti);
  betti->add_option("--dmax", o.dmax, "largest degree per color")->required();
  betti->add_option("--out", o.out, "directory for one TSV/JSON file per multidegree");
  betti->add_flag("--json", o.json, "JSON output");
  betti->add_flag("--tsv", o.tsv, "TSV output");

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  add_space(verify);
  verify->add_option("suite", o.suite, "stability, plethystic, density, lefschetz, filtration or all")
      ->required();
  verify->add_option("--dmax", o.dmax, "degree bound");
  verify->add_option("--cmax", o.cmax, "cohomological degree bound");

  auto* density = app.add_subcommand("density", "Euler product of the density series");
  add_space(density);
  density->add_option("--dmax", o.dmax, "truncation degree (default 8)");

  auto* stable = app.add_subcommand("stable", "stable cohomology and stable density");
  add_space(stable);
  stable->add_option("--cmax", o.cmax, "cohomological degree bound (default 6)");

  auto* count = app.add_subcommand("count", "point counts over F_q");
  add_space(count);
  count->add_option("--d", o.d, "multidegree, comma separated")->required();
  count->add_option("--mode", o.mode, "brute, euler or both");

  std::vector<const char*> argv{"chevstab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (auto* sub : {betti, verify, density, stable, count}) {
    if (!sub->parsed()) continue;
    o.spaceGiven = sub->count("--space") > 0;
    o.nGiven = sub->count("--n") > 0;
  }
  try {
    if (betti->parsed()) return cmd_betti(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (density->parsed()) return cmd_density(o, out);
    if (stable->parsed()) return cmd_stable(o, out);
    if (count->parsed()) return cmd_count(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace chevstab::cli
