// The ideal monoid of a quadratic field K = Q(sqrt d).
//
// Ideals are monoid elements over prime-ideal atoms; the formula layer
// (phi_K, sigma_{1,K}, psi_K, lambda_K, Dedekind zeta coefficients) works on
// those elements alone. The quotient-ring layer builds O_K / a explicitly from
// a Hermite-normal-form lattice and answers unit, P^1 and SL_2 questions by
// exhaustive search; it is the independent oracle for the formula layer.
#pragma once

#include "arithgeo/bigint.hpp"
#include "arithgeo/classical.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/monoid.hpp"
#include "arithgeo/report.hpp"
#include "arithgeo/series.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arithgeo::quadfield {

enum class SplitKind { split, inert, ramified };

inline const char* to_string(SplitKind k) {
  switch (k) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
  }
  return "?";
}

struct PrimeIdealAtom {
  std::uint64_t p = 0;
  SplitKind kind = SplitKind::inert;
  int conjugate_index = 0;
  int residue_degree = 1;
  std::uint64_t norm = 0;
  /// omega = root (mod this prime); only meaningful when residue_degree == 1.
  std::int64_t root = 0;

  AtomId id() const { return static_cast<AtomId>(2 * p + conjugate_index); }
};

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_squarefree(std::int64_t d) {
  const std::uint64_t n = static_cast<std::uint64_t>(d < 0 ? -d : d);
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % (k * k) == 0) return false;
  return true;
}

}  // namespace detail

/// K = Q(sqrt d) with integral basis {1, omega}; omega = (1 + sqrt d)/2 when
/// d = 1 (mod 4), otherwise sqrt d. Elements x + y*omega are stored as (x, y).
class QuadraticField {
 public:
  explicit QuadraticField(std::int64_t d) : d_(d) {
    if (d == 0 || d == 1) throw InputError("d must be a squarefree integer other than 0 and 1");
    if (!detail::is_squarefree(d)) throw InputError("d=" + std::to_string(d) + " is not squarefree");
    half_ = detail::mod(d, 4) == 1;
    disc_ = half_ ? d : 4 * d;
    // omega^2 = c0 + c1*omega
    c0_ = half_ ? (d - 1) / 4 : d;
    c1_ = half_ ? 1 : 0;
  }

  std::int64_t d() const { return d_; }
  std::int64_t discriminant() const { return disc_; }
  bool omega_is_half_integral() const { return half_; }
  std::int64_t omega_sq_const() const { return c0_; }
  std::int64_t omega_sq_linear() const { return c1_; }

  using Element = std::array<std::int64_t, 2>;

  Element multiply(const Element& u, const Element& v) const {
    const std::int64_t yy = u[1] * v[1];
    return {u[0] * v[0] + yy * c0_, u[0] * v[1] + u[1] * v[0] + yy * c1_};
  }

  /// The prime ideals above p, in conjugate-index order.
  std::vector<PrimeIdealAtom> split_prime(std::uint64_t p) const {
    if (!classical::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    const auto sp = static_cast<std::int64_t>(p);
    // roots of X^2 - c1 X - c0 mod p, found by exhaustive search
    std::vector<std::int64_t> roots;
    for (std::int64_t r = 0; r < sp; ++r)
      if (detail::mod(r * r - c1_ * r - c0_, sp) == 0) roots.push_back(r);
    SplitKind kind;
    if (p == 2) {
      if (detail::mod(disc_, 2) == 0)
        kind = SplitKind::ramified;
      else
        kind = detail::mod(d_, 8) == 1 ? SplitKind::split : SplitKind::inert;
    } else {
      const std::int64_t dm = detail::mod(disc_, sp);
      if (dm == 0)
        kind = SplitKind::ramified;
      else
        kind = powmod(static_cast<std::uint64_t>(dm), (p - 1) / 2, p) == 1 ? SplitKind::split : SplitKind::inert;
    }
    const std::size_t expected_roots = kind == SplitKind::split ? 2 : kind == SplitKind::ramified ? 1 : 0;
    if (roots.size() != expected_roots)
      throw InternalError("splitting of " + std::to_string(p) + " disagrees with the minimal polynomial of omega");
    std::vector<PrimeIdealAtom> out;
    if (kind == SplitKind::inert) {
      out.push_back({p, kind, 0, 2, p * p, 0});
    } else {
      for (std::size_t i = 0; i < roots.size(); ++i) out.push_back({p, kind, static_cast<int>(i), 1, p, roots[i]});
    }
    return out;
  }

  /// The prime ideal with this atom id.
  PrimeIdealAtom atom(AtomId id) const {
    const auto p = static_cast<std::uint64_t>(id / 2);
    const int idx = static_cast<int>(id % 2);
    for (const auto& a : split_prime(p))
      if (a.conjugate_index == idx) return a;
    throw InputError("no prime ideal with id " + std::to_string(id) + " in Q(sqrt " + std::to_string(d_) + ")");
  }

  std::string name() const { return "Q(sqrt(" + std::to_string(d_) + "))"; }

 private:
  std::int64_t d_;
  std::int64_t disc_;
  bool half_;
  std::int64_t c0_;
  std::int64_t c1_;
};

/// Ideal monoid with every prime ideal of norm <= bound; complete through `bound`.
inline FreeMonoid ideal_monoid(const QuadraticField& K, std::uint64_t bound) {
  std::vector<Atom> atoms;
  for (std::uint64_t p : classical::primes_up_to(bound))
    for (const auto& a : K.split_prime(p))
      if (a.norm <= bound) atoms.push_back({a.id(), a.norm});
  return FreeMonoid(GradingMode::multiplicative, std::move(atoms), bound);
}

struct IdealEntry {
  MonoidElement ideal;
  std::uint64_t norm;
};

/// All ideals of norm <= bound, sorted by (norm, element).
inline std::vector<IdealEntry> enumerate_ideals(const QuadraticField& K, std::uint64_t bound) {
  const FreeMonoid m = ideal_monoid(K, bound);
  std::vector<IdealEntry> out;
  for (auto& e : m.elements_up_to(bound)) out.push_back({e, m.weight(e)});
  return out;
}

inline BigInt norm(const QuadraticField& K, const MonoidElement& a) {
  BigInt n = 1;
  for (const auto& [id, k] : a.entries()) n *= ipow(BigInt(K.atom(id).norm), k);
  return n;
}

namespace detail {

template <class Local>
BigInt product_over_primes(const QuadraticField& K, const MonoidElement& a, Local&& local) {
  BigInt v = 1;
  for (const auto& [id, k] : a.entries()) v *= local(BigInt(K.atom(id).norm), k);
  return v;
}

}  // namespace detail

/// phi_K(a) = N(a) prod (1 - 1/N(p)).
inline BigInt phi_K(const QuadraticField& K, const MonoidElement& a) {
  return detail::product_over_primes(K, a, [](const BigInt& q, std::uint32_t k) { return BigInt(ipow(q, k - 1) * (q - 1)); });
}

/// sigma_{1,K}(a) = prod (N(p)^{k+1} - 1)/(N(p) - 1).
inline BigInt sigma1_K(const QuadraticField& K, const MonoidElement& a) {
  return detail::product_over_primes(K, a, [](const BigInt& q, std::uint32_t k) {
    return BigInt((ipow(q, k + 1) - 1) / (q - 1));
  });
}

/// psi_K(a) = N(a) prod (1 + 1/N(p)).
inline BigInt psi_K(const QuadraticField& K, const MonoidElement& a) {
  return detail::product_over_primes(K, a, [](const BigInt& q, std::uint32_t k) { return BigInt(ipow(q, k - 1) * (q + 1)); });
}

inline int lambda_K(const MonoidElement& a) { return a.total_exponent() % 2 == 0 ? 1 : -1; }

enum class IdealFnId { zeta, mu, abs_mu, delta, norm, phi, sigma1, psi, lambda };

inline IdealFnId parse_ideal_fn(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, IdealFnId>, 9> kNames{{
      {"zeta", IdealFnId::zeta}, {"mu", IdealFnId::mu}, {"abs_mu", IdealFnId::abs_mu},
      {"delta", IdealFnId::delta}, {"norm", IdealFnId::norm}, {"phi", IdealFnId::phi},
      {"sigma1", IdealFnId::sigma1}, {"psi", IdealFnId::psi}, {"lambda", IdealFnId::lambda},
  }};
  for (const auto& [k, v] : kNames)
    if (k == name) return v;
  throw InputError("unknown ideal function '" + std::string(name) + "'");
}

inline ArithmeticFunction ideal_function(const QuadraticField& K, IdealFnId f) {
  switch (f) {
    case IdealFnId::zeta: return zeta_function();
    case IdealFnId::mu: return mobius_function();
    case IdealFnId::abs_mu: return abs_mobius_function();
    case IdealFnId::delta: return delta_function();
    case IdealFnId::norm: return ArithmeticFunction::from_rule("N", [K](const MonoidElement& a) { return norm(K, a); });
    case IdealFnId::phi: return ArithmeticFunction::from_rule("phi_K", [K](const MonoidElement& a) { return phi_K(K, a); });
    case IdealFnId::sigma1:
      return ArithmeticFunction::from_rule("sigma1_K", [K](const MonoidElement& a) { return sigma1_K(K, a); });
    case IdealFnId::psi: return ArithmeticFunction::from_rule("psi_K", [K](const MonoidElement& a) { return psi_K(K, a); });
    case IdealFnId::lambda:
      return ArithmeticFunction::from_rule("lambda_K", [](const MonoidElement& a) { return BigInt(lambda_K(a)); });
  }
  throw InputError("unknown ideal function");
}

/// (N_* f)(n) = sum of f over ideals of norm n, for n <= bound.
inline DirichletSeries dirichlet_pushforward(const QuadraticField& K, const ArithmeticFunction& f, std::uint64_t bound) {
  return pushforward_series(f, ideal_monoid(K, bound), bound);
}

/// Lattice a*Z + (b + c*omega)*Z in Hermite normal form: a, c > 0 and 0 <= b < a.
struct HnfBasis {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  std::int64_t index() const { return a * c; }
  friend bool operator==(const HnfBasis&, const HnfBasis&) = default;
};

/// HNF of the Z-span of integer vectors (x, y); the span must have full rank.
inline HnfBasis hermite_normal_form(std::vector<QuadraticField::Element> vs) {
  // Euclid on the second coordinate until a single vector has y != 0
  while (true) {
    std::size_t pivot = vs.size();
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (vs[i][1] != 0 && (pivot == vs.size() || std::abs(vs[i][1]) < std::abs(vs[pivot][1]))) pivot = i;
    if (pivot == vs.size()) throw InternalError("lattice is not of full rank");
    bool reduced = false;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i == pivot || vs[i][1] == 0) continue;
      const std::int64_t q = vs[i][1] / vs[pivot][1];
      vs[i][0] -= q * vs[pivot][0];
      vs[i][1] -= q * vs[pivot][1];
      reduced = true;
    }
    if (!reduced) {
      HnfBasis h;
      auto top = vs[pivot];
      if (top[1] < 0) top = {-top[0], -top[1]};
      std::int64_t g = 0;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (i != pivot) g = std::gcd(g, vs[i][0]);
      if (g == 0) throw InternalError("lattice is not of full rank");
      h.a = g;
      h.c = top[1];
      h.b = detail::mod(top[0], g);
      return h;
    }
  }
}

inline HnfBasis multiply_ideals(const QuadraticField& K, const HnfBasis& I, const HnfBasis& J) {
  const std::array<QuadraticField::Element, 2> u{{{I.a, 0}, {I.b, I.c}}};
  const std::array<QuadraticField::Element, 2> v{{{J.a, 0}, {J.b, J.c}}};
  std::vector<QuadraticField::Element> gens;
  for (const auto& x : u)
    for (const auto& y : v) gens.push_back(K.multiply(x, y));
  return hermite_normal_form(std::move(gens));
}

/// Z-basis of a prime ideal: (p) when inert, (p, omega - r) otherwise.
inline HnfBasis prime_ideal_lattice(const QuadraticField& K, const PrimeIdealAtom& P) {
  const auto p = static_cast<std::int64_t>(P.p);
  std::vector<QuadraticField::Element> gens{{p, 0}, {0, p}};
  if (P.residue_degree == 1) {
    const QuadraticField::Element g{-P.root, 1};
    gens.push_back(g);
    gens.push_back(K.multiply(g, {0, 1}));
  }
  return hermite_normal_form(std::move(gens));
}

inline HnfBasis ideal_lattice(const QuadraticField& K, const MonoidElement& a) {
  HnfBasis h;
  for (const auto& [id, k] : a.entries()) {
    const HnfBasis P = prime_ideal_lattice(K, K.atom(id));
    for (std::uint32_t i = 0; i < k; ++i) h = multiply_ideals(K, h, P);
  }
  return h;
}

constexpr std::uint64_t kQuotientRingCap = 400;
constexpr std::uint64_t kSl2NormCap = 16;

/// O_K / a as an explicit finite ring with a full multiplication table.
/// Residue (x, y) with 0 <= x < a, 0 <= y < c has index y*a + x.
class QuotientRingModel {
 public:
  QuotientRingModel(const QuadraticField& K, const MonoidElement& ideal, std::uint64_t cap = kQuotientRingCap)
      : K_(K), ideal_(ideal) {
    const BigInt n = norm(K, ideal);
    if (n > cap) throw ResourceError("quotient ring of norm " + n.str() + " exceeds cap " + std::to_string(cap));
    hnf_ = ideal_lattice(K, ideal);
    size_ = static_cast<std::size_t>(hnf_.index());
    if (BigInt(size_) != n)
      throw InternalError("HNF index " + std::to_string(size_) + " differs from the ideal norm " + n.str());
    ring_ = TableRing(
        size_, reduce({1, 0}), [&](std::uint32_t i, std::uint32_t j) {
          const auto u = coords(i), v = coords(j);
          return reduce({u[0] + v[0], u[1] + v[1]});
        },
        [&](std::uint32_t i, std::uint32_t j) { return reduce(K.multiply(coords(i), coords(j))); });
  }

  std::size_t size() const { return size_; }
  const HnfBasis& lattice() const { return hnf_; }
  const MonoidElement& ideal() const { return ideal_; }
  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return ring_.one(); }

  QuadraticField::Element coords(std::size_t i) const {
    return {static_cast<std::int64_t>(i % static_cast<std::size_t>(hnf_.a)),
            static_cast<std::int64_t>(i / static_cast<std::size_t>(hnf_.a))};
  }

  /// Index of the residue class of x + y*omega.
  std::uint32_t reduce(QuadraticField::Element e) const {
    const std::int64_t q = (e[1] - detail::mod(e[1], hnf_.c)) / hnf_.c;
    e[1] -= q * hnf_.c;
    e[0] -= q * hnf_.b;
    e[0] = detail::mod(e[0], hnf_.a);
    return static_cast<std::uint32_t>(e[1] * hnf_.a + e[0]);
  }

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return ring_.mul(i, j); }
  std::uint32_t add(std::uint32_t i, std::uint32_t j) const { return ring_.add(i, j); }
  std::uint32_t neg(std::uint32_t i) const { return ring_.neg(i); }
  std::uint32_t sub(std::uint32_t i, std::uint32_t j) const { return ring_.sub(i, j); }
  std::uint32_t pow_mod(std::uint32_t base, const BigInt& e) const { return ring_.pow(base, e); }
  bool is_unit(std::uint32_t x) const { return ring_.is_unit(x); }
  std::vector<std::uint32_t> units() const { return ring_.units(); }
  std::uint64_t unit_count() const { return ring_.unit_count(); }
  /// #P^1(O_K/a): pairs generating the unit ideal, modulo scaling by units.
  std::uint64_t p1_count() const { return ring_.p1_count(); }
  /// [SL_2(O_K/a) : upper triangular mod a] by enumerating all 2x2 matrices.
  Sl2Count sl2_count(std::uint64_t cap = kSl2NormCap) const { return ring_.sl2_count(cap); }

 private:
  QuadraticField K_;
  MonoidElement ideal_;
  HnfBasis hnf_;
  std::size_t size_ = 1;
  TableRing ring_;
};

inline QuotientRingModel quotient_ring(const QuadraticField& K, const MonoidElement& a,
                                       std::uint64_t cap = kQuotientRingCap) {
  return QuotientRingModel(K, a, cap);
}

inline std::uint64_t sl2_index_K(const QuadraticField& K, const MonoidElement& a, std::uint64_t cap = kSl2NormCap) {
  if (norm(K, a) > cap) throw ResourceError("sl2_index_K: norm " + norm(K, a).str() + " exceeds cap " + std::to_string(cap));
  return QuotientRingModel(K, a).sl2_count(cap).index;
}

enum class QuadIdentity {
  MUK_ZETA_DELTA,
  PHIK_RECURSION,
  PHIK_ZETA_QUOTIENT,
  SIGMAK_SERIES,
  PSIK_ABSMU,
  PSIK_SERIES,
  LAMBDAK_DELTA,
  PHIK_ORACLE,
  SIGMAK_ORACLE,
  PSIK_P1_ORACLE,
};

inline constexpr std::array<std::pair<std::string_view, QuadIdentity>, 10> kQuadIdentityNames{{
    {"MUK_ZETA_DELTA", QuadIdentity::MUK_ZETA_DELTA},
    {"PHIK_RECURSION", QuadIdentity::PHIK_RECURSION},
    {"PHIK_ZETA_QUOTIENT", QuadIdentity::PHIK_ZETA_QUOTIENT},
    {"SIGMAK_SERIES", QuadIdentity::SIGMAK_SERIES},
    {"PSIK_ABSMU", QuadIdentity::PSIK_ABSMU},
    {"PSIK_SERIES", QuadIdentity::PSIK_SERIES},
    {"LAMBDAK_DELTA", QuadIdentity::LAMBDAK_DELTA},
    {"PHIK_ORACLE", QuadIdentity::PHIK_ORACLE},
    {"SIGMAK_ORACLE", QuadIdentity::SIGMAK_ORACLE},
    {"PSIK_P1_ORACLE", QuadIdentity::PSIK_P1_ORACLE},
}};

inline std::string_view identity_name(QuadIdentity id) {
  for (const auto& [name, v] : kQuadIdentityNames)
    if (v == id) return name;
  return "?";
}

inline QuadIdentity parse_quad_identity(std::string_view name) {
  for (const auto& [key, v] : kQuadIdentityNames)
    if (key == name) return v;
  throw InputError("unknown quadratic-field identity '" + std::string(name) + "'");
}

inline bool is_oracle_identity(QuadIdentity id) {
  return id == QuadIdentity::PHIK_ORACLE || id == QuadIdentity::SIGMAK_ORACLE || id == QuadIdentity::PSIK_P1_ORACLE;
}

namespace detail {

inline std::string describe(const QuadraticField& K, const MonoidElement& a) {
  return a.to_string() + " (norm " + norm(K, a).str() + ")";
}

inline CheckResult compare_on_ideals(std::string id, Params params, const QuadraticField& K,
                                     const ArithmeticFunction& lhs, const ArithmeticFunction& rhs,
                                     std::uint64_t bound) {
  for (const auto& e : enumerate_ideals(K, bound)) {
    const BigInt l = lhs(e.ideal), r = rhs(e.ideal);
    if (l != r)
      return make_result(std::move(id), std::move(params), false,
                         "first counterexample " + describe(K, e.ideal) + ": lhs=" + l.str() + " rhs=" + r.str());
  }
  return make_result(std::move(id), std::move(params), true, "exact for all ideals of norm <= " + std::to_string(bound));
}

inline CheckResult compare_dirichlet(std::string id, Params params, const DirichletSeries& lhs,
                                     const DirichletSeries& rhs) {
  if (auto n = first_mismatch(lhs, rhs))
    return make_result(std::move(id), std::move(params), false,
                       "first mismatching coefficient n=" + std::to_string(*n) + ": lhs=" + lhs[*n].str() +
                           " rhs=" + rhs[*n].str());
  return make_result(std::move(id), std::move(params), true,
                     "Dirichlet coefficients agree for n <= " + std::to_string(std::min(lhs.bound(), rhs.bound())));
}

}  // namespace detail

/// Checks one identity on the ideal monoid of K for all norms <= bound.
inline CheckResult verify_quadfield_identity(QuadIdentity which, const QuadraticField& K, std::uint64_t bound) {
  const std::string id(identity_name(which));
  Params params{{"d", std::to_string(K.d())}, {"bound", std::to_string(bound)}};
  if (is_oracle_identity(which) && bound > kQuotientRingCap)
    throw ResourceError(id + ": norm bound " + std::to_string(bound) + " exceeds the quotient-ring cap");
  auto f = [&](IdealFnId fid) { return ideal_function(K, fid); };
  const FreeMonoid monoid = ideal_monoid(K, bound);
  const DirichletSeries zetaK = pushforward_series(zeta_function(), monoid, bound);

  switch (which) {
    case QuadIdentity::MUK_ZETA_DELTA:
      return detail::compare_on_ideals(id, params, K, convolve(mobius_function(), zeta_function()), delta_function(),
                                       bound);
    case QuadIdentity::PHIK_RECURSION:
      return detail::compare_on_ideals(id, params, K, convolve(f(IdealFnId::phi), zeta_function()),
                                       f(IdealFnId::norm), bound);
    case QuadIdentity::PHIK_ZETA_QUOTIENT: {
      auto r = detail::compare_on_ideals(id, params, K, f(IdealFnId::phi),
                                         convolve(f(IdealFnId::norm), mobius_function()), bound);
      if (!r.passed()) return r;
      const DirichletSeries phi_s = pushforward_series(f(IdealFnId::phi), monoid, bound);
      return detail::compare_dirichlet(id, params, phi_s * zetaK, zetaK.shift(1));
    }
    case QuadIdentity::SIGMAK_SERIES: {
      auto r = detail::compare_on_ideals(id, params, K, f(IdealFnId::sigma1),
                                         convolve(f(IdealFnId::norm), zeta_function()), bound);
      if (!r.passed()) return r;
      const DirichletSeries s = pushforward_series(f(IdealFnId::sigma1), monoid, bound);
      return detail::compare_dirichlet(id, params, s, zetaK * zetaK.shift(1));
    }
    case QuadIdentity::PSIK_ABSMU:
      return detail::compare_on_ideals(id, params, K, f(IdealFnId::psi),
                                       convolve(f(IdealFnId::norm), abs_mobius_function()), bound);
    case QuadIdentity::PSIK_SERIES: {
      auto r = detail::compare_on_ideals(id, params, K, f(IdealFnId::psi),
                                         convolve(f(IdealFnId::norm), abs_mobius_function()), bound);
      if (!r.passed()) return r;
      r = detail::compare_on_ideals(id, params, K, convolve(abs_mobius_function(), f(IdealFnId::lambda)),
                                    delta_function(), bound);
      if (!r.passed()) return r;
      // |mu_K| series = zeta_K(s)/zeta_K(2s), and psi_K(s) zeta_K(2s) = zeta_K(s) zeta_K(s-1)
      const DirichletSeries absmu = pushforward_series(abs_mobius_function(), monoid, bound);
      r = detail::compare_dirichlet(id, params, absmu * zetaK.dilate(2), zetaK);
      if (!r.passed()) return r;
      const DirichletSeries psi_s = pushforward_series(f(IdealFnId::psi), monoid, bound);
      return detail::compare_dirichlet(id, params, psi_s * zetaK.dilate(2), zetaK * zetaK.shift(1));
    }
    case QuadIdentity::LAMBDAK_DELTA: {
      auto r = detail::compare_on_ideals(id, params, K, convolve(f(IdealFnId::lambda), abs_mobius_function()),
                                         delta_function(), bound);
      if (!r.passed()) return r;
      const DirichletSeries lam = pushforward_series(f(IdealFnId::lambda), monoid, bound);
      return detail::compare_dirichlet(id, params, lam * zetaK, zetaK.dilate(2));
    }
    case QuadIdentity::PHIK_ORACLE:
    case QuadIdentity::SIGMAK_ORACLE:
    case QuadIdentity::PSIK_P1_ORACLE: {
      for (const auto& e : enumerate_ideals(K, bound)) {
        const QuotientRingModel R(K, e.ideal);
        BigInt formula, oracle;
        if (which == QuadIdentity::PHIK_ORACLE) {
          formula = phi_K(K, e.ideal);
          oracle = R.unit_count();
        } else {
          formula = which == QuadIdentity::SIGMAK_ORACLE ? sigma1_K(K, e.ideal) : psi_K(K, e.ideal);
          oracle = R.p1_count();
        }
        if (formula != oracle)
          return make_result(id, params, false,
                             "first counterexample " + detail::describe(K, e.ideal) + ": formula=" + formula.str() +
                                 " exhaustive=" + oracle.str());
      }
      return make_result(id, params, true, "formula = exhaustive count for all ideals of norm <= " + std::to_string(bound));
    }
  }
  throw InputError("unknown quadratic-field identity");
}

/// alpha^{phi_K(b)} = 1 in O_K/b for every ideal b of norm <= bound and every unit alpha.
inline CheckResult euler_check_K(const QuadraticField& K, std::uint64_t bound) {
  Params params{{"d", std::to_string(K.d())}, {"bound", std::to_string(bound)}};
  if (bound > kQuotientRingCap) throw ResourceError("euler_check_K: norm bound exceeds the quotient-ring cap");
  std::uint64_t checked = 0, failures = 0;
  std::string first;
  for (const auto& e : enumerate_ideals(K, bound)) {
    const QuotientRingModel R(K, e.ideal);
    const BigInt exponent = phi_K(K, e.ideal);
    for (std::uint32_t u : R.units()) {
      ++checked;
      if (R.pow_mod(u, exponent) != R.one() && failures++ == 0) first = detail::describe(K, e.ideal);
    }
  }
  std::string detail = std::to_string(checked) + " unit residues, " + std::to_string(failures) + " failures";
  if (failures != 0) detail += "; first counterexample at " + first;
  return make_result("EULER_K", params, failures == 0, detail);
}

/// sl2_index_K(a) = psi_K(a) for every ideal of norm <= bound (bound <= 16).
inline CheckResult verify_sl2_index_K(const QuadraticField& K, std::uint64_t bound) {
  Params params{{"d", std::to_string(K.d())}, {"bound", std::to_string(bound)}};
  for (const auto& e : enumerate_ideals(K, bound)) {
    const std::uint64_t idx = sl2_index_K(K, e.ideal);
    if (BigInt(idx) != psi_K(K, e.ideal))
      return make_result("SL2_INDEX_K", params, false,
                         "first counterexample " + detail::describe(K, e.ideal) + ": index=" + std::to_string(idx) +
                             " psi_K=" + psi_K(K, e.ideal).str());
  }
  return make_result("SL2_INDEX_K", params, true, "index = psi_K for all ideals of norm <= " + std::to_string(bound));
}

}  // namespace arithgeo::quadfield
