#include "arithgeo/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace arithgeo;
using namespace arithgeo::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "arithgeo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return (std::filesystem::path(ARITHGEO_SAMPLES_DIR) / name).string(); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

}  // namespace

TEST(Config, ParsesOptions) {
  const char* argv[] = {"arithgeo", "verify", "quadfield", "--field", "-5", "--norm", "50", "--format", "json"};
  const RunConfig cfg = parse_args(9, argv);
  EXPECT_EQ(cfg.command, "verify");
  EXPECT_EQ(cfg.suite, "quadfield");
  EXPECT_EQ(cfg.field, -5);
  EXPECT_EQ(cfg.norm, 50U);
  EXPECT_EQ(cfg.format, Format::json);

  const char* witt_argv[] = {"arithgeo", "witt", "--p", "2", "--k", "3"};
  const RunConfig w = parse_args(6, witt_argv);
  EXPECT_EQ(w.format, Format::json);
  EXPECT_EQ(w.p, 2U);
  EXPECT_EQ(w.k, 3U);
}

TEST(Config, RejectsBadInput) {
  RunConfig bounds;
  bounds.command = "verify";
  bounds.suite = "classical";
  bounds.limit = 0;
  EXPECT_THROW(bounds.validate(), InputError);
  bounds.limit = kMaxLimit + 1;
  EXPECT_THROW(bounds.validate(), InputError);
  RunConfig c;
  c.command = "verify";
  c.suite = "variety";
  EXPECT_THROW(c.validate(), InputError);
  c.builtin = "P1";
  EXPECT_NO_THROW(c.validate());
  c.spec_path = "x.var";
  EXPECT_THROW(c.validate(), InputError);
  RunConfig f;
  f.command = "verify";
  f.field = 4;
  EXPECT_THROW(f.validate(), InputError);

  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "nope"},
           {"verify", "classical", "--limit", "0"},
           {"verify", "classical", "--unknown", "1"},
           {"table", "bogus"},
           {"table"},
           {"zeta"},
           {"zeta", "--builtin", "P7"},
           {"witt"},
           {"witt", "--p", "5", "--k", "4"},
           {"verify", "quadfield", "--field", "9"},
           {"verify", "classical", "--format", "xml"},
           {}}) {
    const Outcome o = run_args(args);
    EXPECT_EQ(o.code, 2) << (args.empty() ? "<none>" : args[0]) << " " << o.err;
    EXPECT_NE(o.err.find("error"), std::string::npos);
  }
}

TEST(Config, ParseErrorsCarryPositions) {
  const auto dir = std::filesystem::temp_directory_path() / "arithgeo_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "bad.var").string();
  {
    std::ofstream out(path);
    out << "p=3\nambient=projective\ndim=2\npoly=x^2+y\n";
  }
  const Outcome o = run_args({"zeta", "--spec", path, "--degree", "3"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("line 4"), std::string::npos) << o.err;
  // y is reported under its canonical name x1
  EXPECT_NE(o.err.find("monomial x1 has degree 1, expected 2"), std::string::npos) << o.err;
  EXPECT_EQ(run_args({"zeta", "--spec", (dir / "missing.var").string()}).code, 2);
}

TEST(Table, Examples) {
  Outcome o = run_args({"table", "phi", "--limit", "5"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "n\tvalue\n1\t1\n2\t1\n3\t2\n4\t2\n5\t4\n");
  o = run_args({"table", "psi", "--limit", "1"});
  EXPECT_EQ(lines(o.out).back(), "1\t1");
  o = run_args({"table", "sigma1", "--limit", "6"});
  EXPECT_EQ(lines(o.out).back(), "6\t12");
  o = run_args({"table", "sigma1", "--limit", "3", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(o.out), nlohmann::json::parse(R"([["1","1"],["2","3"],["3","4"]])"));
  o = run_args({"table", "phi", "--field", "-1", "--limit", "5"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(lines(o.out).size(), 6U);  // header, norms 1, 2, 4, 5, 5
}

TEST(Zeta, Examples) {
  Outcome o = run_args({"zeta", "--builtin", "P1", "--p", "2", "--degree", "4"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(lines(o.out).front(), "Z\t1 3 7 15 31");
  o = run_args({"zeta", "--builtin", "point", "--p", "7", "--degree", "3"});
  EXPECT_EQ(lines(o.out).front(), "Z\t1 1 1 1");
  o = run_args({"zeta", "--spec", sample("cubic_curve.var"), "--degree", "4", "--format", "json"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  const auto data = varzeta::compute_variety_data(varzeta::parse_variety_spec(
                                                      "p=3\nambient=projective\ndim=2\npoly=y^2*z - x^3 + x*z^2"),
                                                  4);
  const auto z = varzeta::zeta_series(data.closed_points, 4);
  for (unsigned i = 0; i <= 4; ++i) EXPECT_EQ(j["series"]["Z"][i].get<std::string>(), to_string(z[i]));
  EXPECT_EQ(j["report"]["exit_status"], 0);
}

TEST(Witt, ReportJson) {
  const Outcome o = run_args({"witt", "--p", "2", "--k", "2"});
  EXPECT_EQ(o.code, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["big_group_order"], 12);
  EXPECT_EQ(j["subgroup_order"], 2);
  EXPECT_EQ(j["coset_count"], 6);
  EXPECT_EQ(j["psi"], "6");
  EXPECT_EQ(j["subgroup_verified"], true);
}

TEST(Verify, ClassicalReportsTheSigmaP1Conflict) {
  const Outcome o = run_args({"verify", "classical", "--limit", "100"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("SIGMA_P1_COUNT\tbound=60\tfail\tfirst counterexample n=4"), std::string::npos);
  EXPECT_NE(o.out.find("# first_failure=SIGMA_P1_COUNT"), std::string::npos);
  for (const char* id : {"MU_ZETA_DELTA", "PHI_MU", "PSI_ABSMU", "R2_CHI", "EULER", "SL2_INDEX"})
    EXPECT_NE(o.out.find(std::string(id) + "\t"), std::string::npos) << id;
}

TEST(Verify, QuadfieldJsonRoundTrip) {
  const Outcome o = run_args({"verify", "quadfield", "--field", "-1", "--norm", "60", "--format", "json"});
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["suite"], "quadfield");
  EXPECT_EQ(j["exit_status"], o.code);
  EXPECT_EQ(j["first_failure"], "SIGMAK_ORACLE");
  std::size_t pass = 0;
  for (const auto& c : j["checks"]) {
    ASSERT_TRUE(c.contains("id") && c.contains("params") && c.contains("status") && c.contains("detail"));
    pass += c["status"] == "pass";
  }
  EXPECT_EQ(j["summary"]["pass"], pass);
  EXPECT_EQ(j["summary"]["fail"], 1);
}

TEST(Verify, VarietyAndGlobalPass) {
  Outcome o = run_args({"verify", "variety", "--builtin", "Gm", "--p", "3", "--degree", "6"});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  o = run_args({"verify", "variety", "--spec", sample("hyperbola_line.var"), "--degree", "4"});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  o = run_args({"verify", "global", "--builtin", "P1", "--nmax", "40"});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  EXPECT_NE(o.out.find("PHI_EULER_FACTOR_DISCREPANCY"), std::string::npos);
  o = run_args({"verify", "global", "--spec", sample("global_cubic.var"), "--nmax", "30", "--prime-bound", "5"});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  EXPECT_NE(o.out.find("primes above 5 excluded"), std::string::npos);
}

TEST(Verify, DeterministicForFixedSeed) {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.suite = "classical";
  cfg.limit = 80;
  EXPECT_EQ(report_json(cmd_verify(cfg)).dump(), report_json(cmd_verify(cfg)).dump());
  const auto a = witt::verify_ghost_homomorphism(3, 3, 50, 9), b = witt::verify_ghost_homomorphism(3, 3, 50, 9);
  EXPECT_EQ(a.detail, b.detail);
}
