#include "arithgeo/quadfield.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace arithgeo;
using namespace arithgeo::quadfield;

namespace {

const std::vector<std::int64_t> kFields{-1, 5, -5, 2};

// Kronecker character of the discriminant, from root counting mod p (no Legendre formula).
int kronecker_by_roots(std::int64_t D, std::uint64_t p) {
  if (p == 2) {
    const std::int64_t r = ((D % 8) + 8) % 8;
    if (r % 2 == 0) return 0;
    return r == 1 ? 1 : -1;
  }
  const auto sp = static_cast<std::int64_t>(p);
  const std::int64_t Dm = ((D % sp) + sp) % sp;
  if (Dm == 0) return 0;
  int roots = 0;
  for (std::int64_t x = 0; x < sp; ++x)
    if ((x * x) % sp == Dm) ++roots;
  return roots - 1;
}

int kronecker_char(std::int64_t D, std::uint64_t n) {
  int v = 1;
  for (const auto& [p, k] : classical::Factorization(n).factors())
    for (std::uint32_t i = 0; i < k; ++i) v *= kronecker_by_roots(D, p);
  return v;
}

// Dedekind zeta coefficient a_n = sum over m | n of chi_D(m).
std::int64_t ideal_count_oracle(std::int64_t D, std::uint64_t n) {
  std::int64_t s = 0;
  for (std::uint64_t m = 1; m <= n; ++m)
    if (n % m == 0) s += kronecker_char(D, m);
  return s;
}

MonoidElement atom_over(const QuadraticField& K, std::uint64_t p, int index = 0) {
  return MonoidElement::atom(K.split_prime(p).at(static_cast<std::size_t>(index)).id());
}

}  // namespace

TEST(Field, Construction) {
  const QuadraticField gauss(-1);
  EXPECT_EQ(gauss.discriminant(), -4);
  EXPECT_FALSE(gauss.omega_is_half_integral());
  const QuadraticField golden(5);
  EXPECT_EQ(golden.discriminant(), 5);
  EXPECT_TRUE(golden.omega_is_half_integral());
  EXPECT_EQ(QuadraticField(-3).discriminant(), -3);
  EXPECT_EQ(QuadraticField(2).discriminant(), 8);
  EXPECT_THROW(QuadraticField(12), InputError);
  EXPECT_THROW(QuadraticField(1), InputError);
  EXPECT_THROW(QuadraticField(0), InputError);
  // omega^2 = omega + 1 in Q(sqrt 5)
  EXPECT_EQ(golden.multiply({0, 1}, {0, 1}), (QuadraticField::Element{1, 1}));
  EXPECT_EQ(gauss.multiply({0, 1}, {0, 1}), (QuadraticField::Element{-1, 0}));
}

TEST(Splitting, GaussianExamples) {
  const QuadraticField K(-1);
  const auto five = K.split_prime(5);
  ASSERT_EQ(five.size(), 2U);
  EXPECT_EQ(five[0].kind, SplitKind::split);
  EXPECT_EQ(five[0].norm, 5U);
  EXPECT_EQ(five[1].norm, 5U);
  const auto three = K.split_prime(3);
  ASSERT_EQ(three.size(), 1U);
  EXPECT_EQ(three[0].kind, SplitKind::inert);
  EXPECT_EQ(three[0].norm, 9U);
  const auto two = K.split_prime(2);
  ASSERT_EQ(two.size(), 1U);
  EXPECT_EQ(two[0].kind, SplitKind::ramified);
  EXPECT_THROW(K.split_prime(9), InputError);
}

TEST(Splitting, TwoFollowsDiscriminantRules) {
  EXPECT_EQ(QuadraticField(17).split_prime(2)[0].kind, SplitKind::split);
  EXPECT_EQ(QuadraticField(5).split_prime(2)[0].kind, SplitKind::inert);
  EXPECT_EQ(QuadraticField(-7).split_prime(2)[0].kind, SplitKind::split);
  EXPECT_EQ(QuadraticField(3).split_prime(2)[0].kind, SplitKind::ramified);
  EXPECT_EQ(QuadraticField(2).split_prime(2)[0].kind, SplitKind::ramified);
}

TEST(Enumeration, CountsMatchCharacterSums) {
  for (std::int64_t d : kFields) {
    const QuadraticField K(d);
    const auto ideals = enumerate_ideals(K, 200);
    std::vector<std::int64_t> counts(201, 0);
    for (const auto& e : ideals) ++counts[e.norm];
    for (std::uint64_t n = 1; n <= 200; ++n) ASSERT_EQ(counts[n], ideal_count_oracle(K.discriminant(), n)) << d << " " << n;
    for (std::uint64_t p : classical::primes_up_to(50)) {
      const auto atoms = K.split_prime(p);
      switch (atoms[0].kind) {
        case SplitKind::split: ASSERT_EQ(counts[p], 2); break;
        case SplitKind::ramified: ASSERT_EQ(counts[p], 1); break;
        case SplitKind::inert:
          ASSERT_EQ(counts[p], 0);
          if (p * p <= 200) { ASSERT_GE(counts[p * p], 1); }
          break;
      }
    }
    for (std::size_t i = 1; i < ideals.size(); ++i)
      ASSERT_TRUE(std::make_pair(ideals[i - 1].norm, ideals[i - 1].ideal) < std::make_pair(ideals[i].norm, ideals[i].ideal));
  }
  const QuadraticField gauss(-1);
  const auto small = enumerate_ideals(gauss, 9);
  EXPECT_TRUE(small.front().ideal.is_identity());
  std::int64_t fives = 0, nines = 0;
  for (const auto& e : small) {
    fives += e.norm == 5;
    nines += e.norm == 9;
  }
  EXPECT_EQ(fives, 2);
  EXPECT_EQ(nines, 1);
  // Q(i): number of ideals of norm n is r2(n)/4
  const auto ideals = enumerate_ideals(gauss, 300);
  std::vector<std::uint64_t> counts(301, 0);
  for (const auto& e : ideals) ++counts[e.norm];
  for (std::uint64_t n = 1; n <= 300; ++n) ASSERT_EQ(4 * counts[n], classical::r2(n));
}

TEST(Formulas, Examples) {
  const QuadraticField K(-1);
  const MonoidElement unit;
  EXPECT_EQ(phi_K(K, unit), 1);
  EXPECT_EQ(sigma1_K(K, unit), 1);
  EXPECT_EQ(psi_K(K, unit), 1);
  const auto p5 = atom_over(K, 5);
  EXPECT_EQ(phi_K(K, p5), 4);
  EXPECT_EQ(sigma1_K(K, p5), 6);
  EXPECT_EQ(psi_K(K, p5), 6);
  const auto two = MonoidElement::atom(K.split_prime(2)[0].id(), 2);
  EXPECT_EQ(norm(K, two), 4);
  EXPECT_EQ(phi_K(K, two), 2);
  EXPECT_EQ(sigma1_K(K, two), 7);
  EXPECT_EQ(psi_K(K, two), 6);
  EXPECT_EQ(lambda_K(two), 1);
  EXPECT_EQ(lambda_K(p5), -1);
}

TEST(Formulas, MultiplicativeOnCoprimeIdealsAndSquarefreeAgreement) {
  for (std::int64_t d : kFields) {
    const QuadraticField K(d);
    const auto ideals = enumerate_ideals(K, 200);
    for (const auto& a : ideals) {
      if (a.ideal.is_squarefree()) { ASSERT_EQ(psi_K(K, a.ideal), sigma1_K(K, a.ideal)); }
      for (const auto& b : ideals) {
        if (a.norm * b.norm > 200) break;
        if (!a.ideal.coprime_to(b.ideal)) continue;
        const auto ab = a.ideal * b.ideal;
        ASSERT_EQ(phi_K(K, ab), phi_K(K, a.ideal) * phi_K(K, b.ideal));
        ASSERT_EQ(sigma1_K(K, ab), sigma1_K(K, a.ideal) * sigma1_K(K, b.ideal));
        ASSERT_EQ(psi_K(K, ab), psi_K(K, a.ideal) * psi_K(K, b.ideal));
      }
    }
  }
}

TEST(Pushforward, Examples) {
  const QuadraticField K(-1);
  const auto zeta = dirichlet_pushforward(K, ideal_function(K, IdealFnId::zeta), 10);
  EXPECT_EQ(zeta[5], 2);
  EXPECT_EQ(zeta[3], 0);
  const auto delta = dirichlet_pushforward(K, ideal_function(K, IdealFnId::delta), 10);
  EXPECT_EQ(delta, DirichletSeries::one(SeriesMode::dirichlet, 10));
  const auto phi = dirichlet_pushforward(K, ideal_function(K, IdealFnId::phi), 10);
  EXPECT_EQ(phi[2], 1);
  EXPECT_THROW(parse_ideal_fn("tau"), InputError);
}

TEST(Hnf, LatticesHaveTheRightIndex) {
  for (std::int64_t d : kFields) {
    const QuadraticField K(d);
    for (const auto& e : enumerate_ideals(K, 150)) {
      const HnfBasis h = ideal_lattice(K, e.ideal);
      ASSERT_EQ(static_cast<std::uint64_t>(h.index()), e.norm) << d << " " << e.ideal.to_string();
      ASSERT_GT(h.a, 0);
      ASSERT_GT(h.c, 0);
      ASSERT_GE(h.b, 0);
      ASSERT_LT(h.b, h.a);
    }
  }
  // conjugate split primes give different lattices
  const QuadraticField K(-1);
  EXPECT_NE(ideal_lattice(K, atom_over(K, 5, 0)), ideal_lattice(K, atom_over(K, 5, 1)));
  EXPECT_EQ(ideal_lattice(K, atom_over(K, 5, 0) * atom_over(K, 5, 1)), (HnfBasis{5, 0, 5}));
}

TEST(QuotientRing, Examples) {
  const QuadraticField K(-1);
  const QuotientRingModel split(K, atom_over(K, 5));
  EXPECT_EQ(split.size(), 5U);
  EXPECT_EQ(split.unit_count(), 4U);
  EXPECT_EQ(split.p1_count(), 6U);
  const QuotientRingModel two(K, MonoidElement::atom(K.split_prime(2)[0].id(), 2));
  EXPECT_EQ(two.size(), 4U);
  EXPECT_EQ(two.unit_count(), 2U);
  const QuotientRingModel zero(K, MonoidElement{});
  EXPECT_EQ(zero.size(), 1U);
  EXPECT_EQ(zero.unit_count(), 1U);
  EXPECT_EQ(zero.p1_count(), 1U);
  const QuotientRingModel f9(K, atom_over(K, 3));
  EXPECT_EQ(f9.unit_count(), 8U);
  for (std::uint32_t u : f9.units()) EXPECT_EQ(f9.pow_mod(u, 8), f9.one());
  const auto big = MonoidElement::atom(K.split_prime(3)[0].id(), 3);  // norm 729
  EXPECT_THROW(QuotientRingModel(K, big), ResourceError);
}

TEST(QuotientRing, SampledRingAxioms) {
  std::mt19937_64 rng(5);
  for (std::int64_t d : kFields) {
    const QuadraticField K(d);
    for (const auto& e : enumerate_ideals(K, 60)) {
      const QuotientRingModel R(K, e.ideal);
      ASSERT_EQ(R.size(), e.norm);
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(R.size() - 1));
      for (int i = 0; i < 50; ++i) {
        const auto x = pick(rng), y = pick(rng), z = pick(rng);
        ASSERT_EQ(R.mul(x, y), R.mul(y, x));
        ASSERT_EQ(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)));
        ASSERT_EQ(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)));
        ASSERT_EQ(R.mul(x, R.one()), x);
        ASSERT_EQ(R.add(x, R.neg(x)), R.zero());
      }
    }
  }
}

TEST(Identities, AllFormulaIdentitiesPass) {
  for (std::int64_t d : kFields) {
    const QuadraticField K(d);
    for (const auto& [name, which] : kQuadIdentityNames) {
      if (is_oracle_identity(which)) continue;
      const auto r = verify_quadfield_identity(which, K, 200);
      EXPECT_TRUE(r.passed()) << d << " " << name << ": " << r.detail;
    }
  }
}

TEST(Identities, OraclesAgreeExceptSigmaAtNonSquarefreeIdeals) {
  for (std::int64_t d : kFields) {
    const QuadraticField K(d);
    const auto phi = verify_quadfield_identity(QuadIdentity::PHIK_ORACLE, K, 100);
    EXPECT_TRUE(phi.passed()) << phi.detail;
    const auto psi = verify_quadfield_identity(QuadIdentity::PSIK_P1_ORACLE, K, 100);
    EXPECT_TRUE(psi.passed()) << psi.detail;
    const auto sigma = verify_quadfield_identity(QuadIdentity::SIGMAK_ORACLE, K, 100);
    EXPECT_TRUE(sigma.failed()) << sigma.detail;
  }
  const auto gauss = verify_quadfield_identity(QuadIdentity::SIGMAK_ORACLE, QuadraticField(-1), 100);
  EXPECT_NE(gauss.detail.find("(norm 4): formula=7 exhaustive=6"), std::string::npos) << gauss.detail;
  EXPECT_THROW(verify_quadfield_identity(QuadIdentity::PHIK_ORACLE, QuadraticField(-1), 401), ResourceError);
  EXPECT_THROW(parse_quad_identity("PHIK"), InputError);
}

TEST(Euler, Passes) {
  const auto r = euler_check_K(QuadraticField(-5), 60);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_TRUE(euler_check_K(QuadraticField(-1), 100).passed());
}

TEST(Sl2, ExamplesAndIndexEqualsPsi) {
  const QuadraticField K(-1);
  EXPECT_EQ(sl2_index_K(K, MonoidElement{}), 1U);
  EXPECT_EQ(sl2_index_K(K, MonoidElement::atom(K.split_prime(2)[0].id())), 3U);
  EXPECT_EQ(sl2_index_K(K, atom_over(K, 3)), 10U);
  EXPECT_THROW(sl2_index_K(K, atom_over(K, 17)), ResourceError);
  for (std::int64_t d : {-1, 5}) {
    const auto r = verify_sl2_index_K(QuadraticField(d), 16);
    EXPECT_TRUE(r.passed()) << r.detail;
  }
}
