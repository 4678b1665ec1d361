// Command-line front end: configuration, suite composition, and report output.
#pragma once

#include "arithgeo/classical.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/globalzeta.hpp"
#include "arithgeo/quadfield.hpp"
#include "arithgeo/report.hpp"
#include "arithgeo/varzeta.hpp"
#include "arithgeo/witt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace arithgeo::cli {

enum class Format { tsv, json };

constexpr std::uint64_t kMaxLimit = 5000;
constexpr std::uint64_t kMaxNorm = 1000;
constexpr unsigned kMaxDegree = 12;
constexpr std::uint64_t kMaxNmax = 1000;

/// Bounds shared by every oracle: the default desk-scale sizes.
constexpr std::uint64_t kEulerBound = 300;
constexpr std::uint64_t kQuadOracleBound = 100;
constexpr unsigned kPolyEulerDegree = 3;
constexpr unsigned kPolyOracleDegree = 2;

struct RunConfig {
  std::string command;  // verify | table | zeta | witt
  std::string suite = "all";
  std::string fn;
  std::uint64_t limit = 500;
  std::optional<std::int64_t> field;
  std::uint64_t norm = 200;
  unsigned degree = 8;
  std::uint64_t nmax = 60;
  std::optional<std::uint64_t> prime_bound;
  std::optional<std::string> spec_path;
  std::optional<std::string> builtin;
  std::optional<std::uint32_t> p;
  unsigned k = 2;
  Format format = Format::tsv;
  std::uint64_t seed = 1;

  /// Throws InputError when a bound is out of range or a required option is missing.
  void validate() const {
    auto require = [](bool ok, const std::string& msg) {
      if (!ok) throw InputError(msg);
    };
    require(limit >= 1 && limit <= kMaxLimit, "--limit must be in 1.." + std::to_string(kMaxLimit));
    require(norm >= 1 && norm <= kMaxNorm, "--norm must be in 1.." + std::to_string(kMaxNorm));
    require(degree >= 1 && degree <= kMaxDegree, "--degree must be in 1.." + std::to_string(kMaxDegree));
    require(nmax >= 1 && nmax <= kMaxNmax, "--nmax must be in 1.." + std::to_string(kMaxNmax));
    require(!(spec_path && builtin), "--spec and --builtin are mutually exclusive");
    if (command == "verify") {
      static const std::vector<std::string> suites = {"classical", "quadfield", "variety", "global", "witt", "all"};
      require(std::find(suites.begin(), suites.end(), suite) != suites.end(), "unknown suite '" + suite + "'");
      if (suite == "variety" || suite == "global")
        require(spec_path || builtin, "suite '" + suite + "' needs --spec or --builtin");
    }
    if (command == "zeta") require(spec_path || builtin, "zeta needs --spec or --builtin");
    if (command == "witt") require(p.has_value(), "witt needs --p");
    if (field) (void)quadfield::QuadraticField(*field);
  }
};

// Suites.

inline CheckReport classical_suite(std::uint64_t limit) {
  CheckReport report;
  report.suite = "classical";
  for (const auto& [name, which] : classical::kClassicalIdentityNames) {
    const bool counting =
        which == classical::ClassicalIdentity::SIGMA_P1_COUNT || which == classical::ClassicalIdentity::P1_PSI_COUNT;
    report.add(classical::verify_classical_identity(which, counting ? std::min(limit, classical::kP1CountBound) : limit));
  }
  if (limit >= 2) report.add(classical::euler_check(std::min(limit, kEulerBound)));
  report.add(classical::verify_sl2_index(std::min(limit, classical::kSl2DefaultCap)));
  return report;
}

inline CheckReport quadfield_suite(std::int64_t d, std::uint64_t norm) {
  const quadfield::QuadraticField K(d);
  CheckReport report;
  report.suite = "quadfield";
  for (const auto& [name, which] : quadfield::kQuadIdentityNames)
    report.add(quadfield::verify_quadfield_identity(
        which, K, quadfield::is_oracle_identity(which) ? std::min(norm, kQuadOracleBound) : norm));
  report.add(quadfield::euler_check_K(K, std::min(norm, kQuadOracleBound)));
  report.add(quadfield::verify_sl2_index_K(K, std::min(norm, quadfield::kSl2NormCap)));
  return report;
}

inline varzeta::VarietySpec load_variety(const RunConfig& cfg) {
  varzeta::VarietySpec V;
  if (cfg.builtin) {
    V = varzeta::builtin_variety(*cfg.builtin);
  } else {
    std::ifstream in(*cfg.spec_path);
    if (!in) throw InputError("cannot read spec file '" + *cfg.spec_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    V = varzeta::parse_variety_spec(text.str());
  }
  if (cfg.p && !V.global) V = V.with_prime(*cfg.p);
  return V;
}

/// Series identities of one variety plus, at q <= 3, the F_q[t] oracles.
inline CheckReport variety_report(const varzeta::VarietySpec& V, unsigned D) {
  CheckReport report = varzeta::variety_suite(varzeta::compute_variety_data(V, D));
  report.add(varzeta::base_change_discrepancy(V, std::min(D, 4U)));
  const std::uint32_t q = V.prime();
  if (q <= 3) {
    report.add(varzeta::euler_check_poly(q, kPolyEulerDegree));
    report.add(varzeta::verify_poly_psi_oracle(q, kPolyOracleDegree));
  }
  return report;
}

inline CheckReport global_report(const varzeta::VarietySpec& tmpl, std::uint64_t nmax,
                                 std::optional<std::uint64_t> prime_bound) {
  return globalzeta::global_suite(globalzeta::GlobalModel(tmpl, nmax, prime_bound), nmax);
}

/// Fields, varieties and templates exercised by `verify all`.
inline constexpr std::int64_t kAllFields[] = {-1, 5, -5, 2};
inline constexpr std::pair<const char*, std::uint32_t> kAllVarieties[] = {{"P1", 2}, {"Gm", 3}, {"A2", 2}};
inline constexpr const char* kAllTemplates[] = {"point", "P1", "Gm", "A1"};

/// y^2 z = x^3 - x z^2 over F_3, the cubic curve used by `verify all`.
inline varzeta::VarietySpec cubic_curve() {
  return varzeta::parse_variety_spec("p=3\nambient=projective\ndim=2\npoly=y^2*z - x^3 + x*z^2\n");
}

inline CheckReport cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  CheckReport report;
  report.suite = cfg.suite;
  if (cfg.suite == "classical") {
    report.append(classical_suite(cfg.limit));
  } else if (cfg.suite == "quadfield") {
    report.append(quadfield_suite(cfg.field.value_or(-1), cfg.norm));
  } else if (cfg.suite == "variety") {
    report.append(variety_report(load_variety(cfg), cfg.degree));
  } else if (cfg.suite == "global") {
    report.append(global_report(load_variety(cfg), cfg.nmax, cfg.prime_bound));
  } else if (cfg.suite == "witt") {
    report.append(witt::witt_suite(cfg.seed));
  } else {
    report.append(classical_suite(cfg.limit));
    for (std::int64_t d : kAllFields) report.append(quadfield_suite(d, cfg.norm));
    for (const auto& [name, q] : kAllVarieties)
      report.append(variety_report(varzeta::builtin_variety(name).with_prime(q), cfg.degree));
    report.append(variety_report(cubic_curve(), cfg.degree));
    for (const char* name : kAllTemplates)
      report.append(global_report(varzeta::builtin_variety(name), cfg.nmax, cfg.prime_bound));
    report.add(globalzeta::verify_point_classical(std::max<std::uint64_t>(cfg.nmax, 200)));
    report.append(witt::witt_suite(cfg.seed));
  }
  return report;
}

// Output.

inline nlohmann::json to_json(const Params& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

inline nlohmann::json report_json(const CheckReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"id", c.id}, {"params", to_json(c.params)}, {"status", to_string(c.status)}, {"detail", c.detail}});
  const auto first = report.first_failure();
  return {{"suite", report.suite},
          {"exit_status", report.exit_status()},
          {"summary",
           {{"pass", report.count(CheckStatus::pass)},
            {"fail", report.count(CheckStatus::fail)},
            {"skip", report.count(CheckStatus::skip)}}},
          {"first_failure", first ? nlohmann::json(first->id) : nlohmann::json(nullptr)},
          {"checks", checks}};
}

inline std::string params_string(const Params& params) {
  std::string s;
  for (const auto& [k, v] : params) s += (s.empty() ? "" : ",") + k + "=" + v;
  return s.empty() ? "-" : s;
}

inline void write_report(const CheckReport& report, Format format, std::ostream& out) {
  if (format == Format::json) {
    out << report_json(report).dump(2) << "\n";
    return;
  }
  out << "id\tparams\tstatus\tdetail\n";
  for (const auto& c : report.checks)
    out << c.id << "\t" << params_string(c.params) << "\t" << to_string(c.status) << "\t" << c.detail << "\n";
  out << "# suite=" << report.suite << " pass=" << report.count(CheckStatus::pass)
      << " fail=" << report.count(CheckStatus::fail) << " skip=" << report.count(CheckStatus::skip) << "\n";
  if (const auto first = report.first_failure()) out << "# first_failure=" << first->id << "\n";
}

using Rows = std::vector<std::pair<std::string, std::string>>;

inline void write_rows(const Rows& rows, const std::string& key_name, Format format, std::ostream& out) {
  if (format == Format::json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [k, v] : rows) j.push_back({k, v});
    out << j.dump() << "\n";
    return;
  }
  out << key_name << "\tvalue\n";
  for (const auto& [k, v] : rows) out << k << "\t" << v << "\n";
}

/// Classical values f(1..limit), or with a field, f over every ideal of norm <= limit
/// keyed "norm:ideal" in (norm, ideal) order.
inline void cmd_table(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  Rows rows;
  if (cfg.field) {
    const quadfield::QuadraticField K(*cfg.field);
    const auto f = quadfield::ideal_function(K, quadfield::parse_ideal_fn(cfg.fn));
    for (const auto& e : quadfield::enumerate_ideals(K, cfg.limit))
      rows.emplace_back(std::to_string(e.norm) + ":" + e.ideal.to_string(), f(e.ideal).str());
    write_rows(rows, "ideal", cfg.format, out);
    return;
  }
  const classical::ClassicalFn f = classical::parse_classical_fn(cfg.fn);
  for (std::uint64_t n = 1; n <= cfg.limit; ++n) rows.emplace_back(std::to_string(n), to_display(classical::evaluate(f, n)));
  write_rows(rows, "n", cfg.format, out);
}

inline constexpr std::pair<const char*, varzeta::CycleFn> kSeriesRows[] = {
    {"Z", varzeta::CycleFn::zeta}, {"Phi", varzeta::CycleFn::phi}, {"S1", varzeta::CycleFn::sigma1},
    {"Psi", varzeta::CycleFn::psi}, {"Lambda", varzeta::CycleFn::lambda}};

template <class Series>
std::vector<std::string> coefficient_strings(const Series& s) {
  std::vector<std::string> v;
  for (std::size_t i = s.first_index(); i <= s.bound(); ++i) v.push_back(to_string(s[i]));
  return v;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

/// Series of a variety to degree D, or for a global template the Dirichlet coefficients
/// to Nmax, followed by the identity checks.
inline CheckReport cmd_zeta(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const varzeta::VarietySpec V = load_variety(cfg);
  nlohmann::json j;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  CheckReport report;
  if (V.global) {
    const globalzeta::GlobalModel model(V, cfg.nmax, cfg.prime_bound);
    for (const auto& [name, fn] : kSeriesRows)
      rows.emplace_back(name, coefficient_strings(globalzeta::global_dirichlet(model, fn, cfg.nmax).coeffs));
    report = globalzeta::global_suite(model, cfg.nmax);
    j = {{"variety", V.label}, {"Nmax", cfg.nmax}, {"prime_bound", model.prime_bound()}};
    std::vector<std::uint64_t> skipped = model.skipped_primes();
    j["skipped_primes"] = skipped;
  } else {
    const auto data = varzeta::compute_variety_data(V, cfg.degree);
    for (const auto& [name, fn] : kSeriesRows)
      rows.emplace_back(name, coefficient_strings(varzeta::cycle_series(fn, data.closed_points, cfg.degree)));
    std::vector<std::string> counts, points;
    for (unsigned m = 1; m <= cfg.degree; ++m) {
      counts.push_back(data.counts[m - 1].str());
      points.push_back(data.closed_points.b[m].str());
    }
    rows.emplace_back("N", counts);
    rows.emplace_back("b", points);
    report = varzeta::variety_suite(data);
    j = {{"variety", V.label}, {"q", V.prime()}, {"degree", cfg.degree}};
  }
  if (cfg.format == Format::json) {
    nlohmann::json series = nlohmann::json::object();
    for (const auto& [name, coeffs] : rows) series[name] = coeffs;
    j["series"] = series;
    j["report"] = report_json(report);
    out << j.dump(2) << "\n";
  } else {
    for (const auto& [name, coeffs] : rows) out << name << "\t" << join(coeffs) << "\n";
    for (const auto& c : report.checks) out << "# " << c.id << "\t" << to_string(c.status) << "\t" << c.detail << "\n";
  }
  return report;
}

inline nlohmann::json quotient_group_json(const witt::QuotientGroupReport& r) {
  nlohmann::json j = {{"p", r.p},
                      {"k", r.k},
                      {"big_group_order", r.big_order},
                      {"subgroup_order", r.sub_order},
                      {"coset_count", r.coset_count},
                      {"psi", r.psi.str()},
                      {"subgroup_verified", r.subgroup_verified},
                      {"units_exhaustive", r.units_exhaustive},
                      {"matches_psi", r.matches_psi()}};
  j["cyclic_observed"] = r.cyclic ? nlohmann::json(*r.cyclic) : nlohmann::json(nullptr);
  return j;
}

inline int cmd_witt(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto r = witt::psi_group(*cfg.p, cfg.k);
  const nlohmann::json j = quotient_group_json(r);
  if (cfg.format == Format::json) {
    out << j.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : j.items()) out << key << "\t" << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return r.subgroup_verified && r.matches_psi() ? 0 : 1;
}

// Entry point.

/// Registers the subcommands on app, writing the parsed options into cfg.
inline void configure(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  std::map<std::string, Format> formats{{"tsv", Format::tsv}, {"json", Format::json}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "tsv or json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto variety_options = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "variety spec file");
    sub->add_option("--builtin", cfg.builtin, "point, A1, A2, Gm, P1 or P2");
    sub->add_option("--p", cfg.p, "base prime for the variety");
    sub->add_option("--degree", cfg.degree, "series degree D");
    sub->add_option("--nmax", cfg.nmax, "Dirichlet bound for global templates");
    sub->add_option("--prime-bound", cfg.prime_bound, "exclude primes above this bound");
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", cfg.suite, "classical | quadfield | variety | global | witt | all");
  verify->add_option("--limit", cfg.limit, "bound on n");
  verify->add_option("--field", cfg.field, "squarefree d selecting Q(sqrt(d))");
  verify->add_option("--norm", cfg.norm, "bound on ideal norms");
  verify->add_option("--seed", cfg.seed, "seed for sampled checks");
  variety_options(verify);
  common(verify);
  verify->callback([&] { cfg.command = "verify"; });

  auto* table = app.add_subcommand("table", "tabulate an arithmetic function");
  table->add_option("fn", cfg.fn, "function name")->required();
  table->add_option("--limit", cfg.limit, "bound on n or on ideal norms");
  table->add_option("--field", cfg.field, "squarefree d selecting Q(sqrt(d))");
  common(table);
  table->callback([&] { cfg.command = "table"; });

  auto* zeta = app.add_subcommand("zeta", "zeta and cycle series of a variety");
  variety_options(zeta);
  common(zeta);
  zeta->callback([&] { cfg.command = "zeta"; });

  auto* witt_cmd = app.add_subcommand("witt", "the quotient group W_k(F_p^2)^x / W_k(F_p)^x");
  witt_cmd->add_option("--p", cfg.p, "prime")->required();
  witt_cmd->add_option("--k", cfg.k, "Witt length");
  common(witt_cmd);
  witt_cmd->callback([&] { cfg.command = "witt"; });
}

/// The witt report is JSON unless --format says otherwise.
inline void apply_defaults(const CLI::App& app, RunConfig& cfg) {
  if (cfg.command == "witt" && app.get_subcommand("witt")->count("--format") == 0) cfg.format = Format::json;
}

/// Parses argv into a validated RunConfig. Throws CLI::ParseError or InputError.
inline RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app("arithgeo");
  RunConfig cfg;
  configure(app, cfg);
  app.parse(argc, argv);
  apply_defaults(app, cfg);
  cfg.validate();
  return cfg;
}

/// Runs the command line; returns 0 on success, 1 on a verification failure, 2 on a usage or input error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("arithgeo: exact arithmetic functions over graded monoids");
  RunConfig cfg;
  configure(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  apply_defaults(app, cfg);
  try {
    if (cfg.command == "verify") {
      const CheckReport report = cmd_verify(cfg);
      write_report(report, cfg.format, out);
      return report.exit_status();
    }
    if (cfg.command == "table") {
      cmd_table(cfg, out);
      return 0;
    }
    if (cfg.command == "zeta") return cmd_zeta(cfg, out).exit_status();
    if (cfg.command == "witt") return cmd_witt(cfg, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace arithgeo::cli
