#include "arithgeo/globalzeta.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace arithgeo;
using namespace arithgeo::globalzeta;

namespace {

VarietySpec read_sample(const char* name) {
  std::ifstream in(std::filesystem::path(ARITHGEO_SAMPLES_DIR) / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return varzeta::parse_variety_spec(ss.str());
}

GlobalModel model_of(const char* builtin, std::uint64_t nmax) {
  return GlobalModel(varzeta::builtin_variety(builtin), nmax);
}

// sigma_1 by a plain divisor loop, independent of factorization.
std::uint64_t divisor_sum(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

}  // namespace

TEST(Model, Basics) {
  EXPECT_EQ(max_exponent(2, 100), 6U);
  EXPECT_EQ(max_exponent(7, 100), 2U);
  EXPECT_EQ(max_exponent(101, 100), 0U);
  EXPECT_EQ(max_exponent(2, std::numeric_limits<std::uint64_t>::max()), 63U);
  EXPECT_THROW(GlobalModel(varzeta::builtin_variety("P1").with_prime(2), 10), InputError);
  EXPECT_THROW(model_of("P1", 0), InputError);
  const auto m = model_of("P1", 30);
  EXPECT_EQ(m.primes().size(), 10U);
  EXPECT_TRUE(m.skipped_primes().empty());
  EXPECT_TRUE(m.covers(30));
}

TEST(LocalSeries, Examples) {
  const auto point = model_of("point", 100);
  EXPECT_EQ(local_series(point, 3, CycleFn::zeta).to_string(), "1 1 1 1 1");
  // 1 + sum_k (p^k - p^(k-1)) t^k at p = 3
  EXPECT_EQ(local_series(point, 3, CycleFn::phi).to_string(), "1 2 6 18 54");
  EXPECT_EQ(local_series(model_of("P1", 100), 2, CycleFn::zeta).to_string(), "1 3 7 15 31 63 127");
}

TEST(GlobalDirichletSeries, Examples) {
  const auto point = model_of("point", 200);
  const auto zeta = global_dirichlet(point, CycleFn::zeta, 200);
  const auto phi = global_dirichlet(point, CycleFn::phi, 200);
  const auto p1 = global_dirichlet(model_of("P1", 100), CycleFn::zeta, 100);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    ASSERT_EQ(zeta.coeffs[n], 1);
    ASSERT_EQ(phi.coeffs[n], BigInt(classical::phi_by_counting(n)));
    if (n <= 100) { ASSERT_EQ(p1.coeffs[n], BigInt(divisor_sum(n))) << n; }
  }
  EXPECT_THROW(global_dirichlet(point, CycleFn::zeta, 201), InputError);
}

TEST(GlobalDirichletSeries, PointReproducesClassical) {
  const auto r = verify_point_classical(200);
  EXPECT_TRUE(r.passed()) << r.detail;
}

TEST(Identities, HoldForTemplates) {
  for (const char* name : {"point", "P1", "Gm", "A1"}) {
    const auto model = model_of(name, 60);
    for (const auto& [id, which] : kGlobalIdentityNames) {
      const auto r = verify_global_identity(which, model, 60);
      EXPECT_TRUE(r.passed()) << name << " " << id << ": " << r.detail;
    }
  }
  EXPECT_TRUE(verify_global_identity(GlobalIdentity::GLOBAL_PHI, model_of("P2", 1), 1).passed());
  EXPECT_THROW(parse_global_identity("GLOBAL_TAU"), InputError);
}

TEST(Identities, CubicTemplateOverSmallPrimes) {
  const GlobalModel cubic(read_sample("global_cubic.var"), 30, 5);
  for (const auto& [id, which] : kGlobalIdentityNames) {
    const auto r = verify_global_identity(which, cubic, 30);
    EXPECT_TRUE(r.passed()) << id << ": " << r.detail;
    EXPECT_NE(r.detail.find("primes above 5 excluded"), std::string::npos) << r.detail;
  }
}

TEST(Identities, SkippedPrimesAreReported) {
  // with a tiny budget the fibers at 3 and 5 cannot be counted at the required degree
  const GlobalModel cubic(read_sample("global_cubic.var"), 30, 5, 20);
  const auto skipped = cubic.skipped_primes();
  EXPECT_FALSE(skipped.empty());
  const auto r = verify_global_identity(GlobalIdentity::GLOBAL_SIGMA, cubic, 30);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_NE(r.detail.find("skipped primes:"), std::string::npos) << r.detail;
  EXPECT_THROW(local_series(cubic, skipped.front(), CycleFn::zeta), ResourceError);
}

TEST(Discrepancy, DisplayedEulerFactorDisagreesAtFour) {
  const auto r = verify_euler_factor_discrepancy(model_of("point", 100), 100);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_NE(r.detail.find("witness n=4 (p=2, p^2): displayed Euler product gives 1, Phi_X gives 2"), std::string::npos)
      << r.detail;
  EXPECT_NE(r.detail.find("zeta quotient identity holds"), std::string::npos);
  // below 4 there is nothing to witness
  EXPECT_TRUE(verify_euler_factor_discrepancy(model_of("point", 3), 3).failed());
}

TEST(Suite, GlobalSuiteForPoint) {
  const auto report = global_suite(model_of("point", 60), 60);
  EXPECT_FALSE(report.any_failed());
  EXPECT_EQ(report.checks.size(), 6U);
  EXPECT_EQ(report.checks.back().id, "POINT_CLASSICAL");
}
