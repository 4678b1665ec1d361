#include "arithgeo/finite_field.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace arithgeo;
using namespace arithgeo::ff;

TEST(PrimePolys, IrreducibilityAgreesWithRootSearchInLowDegree) {
  // a polynomial of degree 2 or 3 over F_p is irreducible exactly when it has no root
  for (std::uint32_t p : {2U, 3U, 5U})
    for (int deg = 2; deg <= 3; ++deg) {
      std::uint64_t count = 1;
      for (int i = 0; i < deg; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        PrimePoly f(deg + 1, 0);
        f[deg] = 1;
        std::uint64_t c = code;
        for (int i = 0; i < deg; ++i, c /= p) f[i] = static_cast<std::uint32_t>(c % p);
        bool has_root = false;
        for (std::uint64_t x = 0; x < p; ++x) {
          std::uint64_t v = 0;
          for (int i = deg; i >= 0; --i) v = (v * x + f[i]) % p;
          if (v == 0) has_root = true;
        }
        ASSERT_EQ(poly_fp::is_irreducible(f, p), !has_root) << "p=" << p << " code=" << code;
      }
    }
}

TEST(PrimePolys, CountOfIrreducibleQuartics) {
  // monic irreducibles of degree 4 over F_2: (2^4 - 2^2) / 4 = 3
  int n = 0;
  for (std::uint32_t code = 0; code < 16; ++code) {
    PrimePoly f{code & 1U, (code >> 1) & 1U, (code >> 2) & 1U, (code >> 3) & 1U, 1};
    if (poly_fp::is_irreducible(f, 2)) ++n;
  }
  EXPECT_EQ(n, 3);
}

TEST(Extension, ChosenModuli) {
  EXPECT_EQ(ExtensionField(2, 2).modulus(), (PrimePoly{1, 1, 1}));
  EXPECT_EQ(ExtensionField(2, 2).modulus_string(), "x^2 + x + 1");
  EXPECT_EQ(ExtensionField(3, 2).modulus(), (PrimePoly{1, 0, 1}));
  EXPECT_EQ(ExtensionField(2, 3).modulus(), (PrimePoly{1, 1, 0, 1}));
  EXPECT_EQ(ExtensionField(5, 1).modulus(), (PrimePoly{0, 1}));
  EXPECT_EQ(ExtensionField(3, 4).size(), 81U);
}

TEST(Extension, RejectsBadParameters) {
  EXPECT_THROW(ExtensionField(4, 1), InputError);
  EXPECT_THROW(ExtensionField(1, 1), InputError);
  EXPECT_THROW(ExtensionField(2, 0), ResourceError);
  EXPECT_THROW(ExtensionField(2, 9), ResourceError);
  EXPECT_THROW(ExtensionField(101, 4), ResourceError);
  EXPECT_THROW(ExtensionField(3, 1).inv(0), DomainError);
}

TEST(Extension, FieldAxiomsOnRandomSamples) {
  std::mt19937_64 rng(20261016);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 3}, {2, 5}, {3, 2}, {3, 3}, {5, 2}, {7, 1}}) {
    const ExtensionField F(p, m);
    std::uniform_int_distribution<Elem> pick(0, F.size() - 1);
    for (int i = 0; i < 400; ++i) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      ASSERT_EQ(F.add(a, b), F.add(b, a));
      ASSERT_EQ(F.mul(a, b), F.mul(b, a));
      ASSERT_EQ(F.mul(a, b), F.mul_by_polynomials(a, b));
      ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      ASSERT_EQ(F.add(a, F.neg(a)), F.zero());
      ASSERT_EQ(F.sub(F.add(a, b), b), a);
      if (a != 0) { ASSERT_EQ(F.mul(a, F.inv(a)), F.one()); }
      // Frobenius is additive and a^Q = a
      ASSERT_EQ(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b)));
      ASSERT_EQ(F.pow(a, F.size()), a);
    }
  }
}

TEST(Extension, PrimitiveElementGeneratesUnits) {
  const ExtensionField F(3, 3);
  std::set<Elem> seen;
  for (std::uint64_t e = 0; e + 1 < F.size(); ++e) seen.insert(F.exp(e));
  EXPECT_EQ(seen.size(), F.size() - 1);
  EXPECT_EQ(seen.count(0), 0U);
  for (Elem a = 1; a < F.size(); ++a) EXPECT_EQ(F.exp(F.log(a)), a);
}

TEST(Extension, CoefficientsRoundTrip) {
  const ExtensionField F(3, 2);
  for (Elem a = 0; a < F.size(); ++a) EXPECT_EQ(F.from_coefficients(F.coefficients(a)), a);
  EXPECT_EQ(F.from_int(-1), 2U);
  EXPECT_EQ(F.from_int(7), 1U);
  // x^2 = -1 in F_9 built from x^2 + 1
  const Elem x = F.from_coefficients({0, 1});
  EXPECT_EQ(F.mul(x, x), F.from_int(-1));
}

TEST(FieldPolys, RootCountMatchesEvaluation) {
  std::mt19937_64 rng(7);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 4}, {3, 2}, {5, 1}, {7, 2}}) {
    const ExtensionField F(p, m);
    const FieldPoly R(F);
    std::uniform_int_distribution<Elem> pick(0, F.size() - 1);
    for (int trial = 0; trial < 150; ++trial) {
      const int deg = 1 + static_cast<int>(rng() % 6);
      FieldPoly::Coeffs f(deg + 1);
      for (auto& c : f) c = pick(rng);
      if (f.back() == 0) f.back() = 1;
      std::uint64_t roots = 0;
      for (Elem y = 0; y < F.size(); ++y)
        if (R.evaluate(f, y) == 0) ++roots;
      ASSERT_EQ(R.count_roots(f), roots);
    }
    // y^Q - y vanishes everywhere
    FieldPoly::Coeffs all(F.size() + 1, 0);
    all[F.size()] = 1;
    all[1] = F.neg(1);
    EXPECT_EQ(R.count_roots(all), F.size());
    EXPECT_EQ(R.count_roots({5 % F.size() == 0 ? 1U : 5 % F.size()}), 0U);
    EXPECT_THROW(R.count_roots({}), InternalError);
  }
}
