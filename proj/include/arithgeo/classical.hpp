// Arithmetic functions on the multiplicative monoid of positive integers.
#pragma once

#include "arithgeo/bigint.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/finite_ring.hpp"
#include "arithgeo/monoid.hpp"
#include "arithgeo/report.hpp"
#include "arithgeo/series.hpp"

#include <array>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arithgeo::classical {

/// Shared, lazily grown list of primes. Safe to use from several threads.
class PrimeSieve {
 public:
  static PrimeSieve& instance() {
    static PrimeSieve sieve;
    return sieve;
  }

  /// All primes <= n, in increasing order.
  std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    grow(n);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : primes_) {
      if (p > n) break;
      out.push_back(p);
    }
    return out;
  }

  bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    std::lock_guard<std::mutex> lock(mutex_);
    if (n <= limit_) return composite_[n] == 0;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  /// Primes p with p*p <= n, for trial division.
  std::vector<std::uint64_t> trial_divisors(std::uint64_t n) {
    std::uint64_t r = 1;
    while ((r + 1) * (r + 1) <= n) ++r;
    return primes_up_to(r);
  }

 private:
  void grow(std::uint64_t n) {
    if (n <= limit_) return;
    std::uint64_t target = std::max<std::uint64_t>(n, 2 * limit_);
    composite_.assign(target + 1, 0);
    primes_.clear();
    for (std::uint64_t i = 2; i <= target; ++i) {
      if (composite_[i] != 0) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= target; j += i) composite_[j] = 1;
    }
    limit_ = target;
  }

  std::mutex mutex_;
  std::uint64_t limit_ = 1;
  std::vector<std::uint8_t> composite_ = {1, 1};
  std::vector<std::uint64_t> primes_;
};

inline bool is_prime(std::uint64_t n) { return PrimeSieve::instance().is_prime(n); }

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) { return PrimeSieve::instance().primes_up_to(n); }

/// n = prod p_i^k_i with strictly increasing primes.
class Factorization {
 public:
  using Factor = std::pair<std::uint64_t, std::uint32_t>;

  explicit Factorization(std::uint64_t n) : n_(n) {
    if (n == 0) throw DomainError("cannot factor 0");
    std::uint64_t m = n;
    for (std::uint64_t p : PrimeSieve::instance().trial_divisors(n)) {
      if (p * p > m) break;
      std::uint32_t k = 0;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      if (k != 0) factors_.emplace_back(p, k);
    }
    if (m > 1) factors_.emplace_back(m, 1);
  }

  std::uint64_t value() const { return n_; }
  const std::vector<Factor>& factors() const& { return factors_; }
  std::vector<Factor> factors() && { return std::move(factors_); }

  /// Omega(n): number of prime factors with multiplicity.
  std::uint32_t big_omega() const {
    std::uint32_t s = 0;
    for (const auto& f : factors_) s += f.second;
    return s;
  }

  bool is_squarefree() const {
    for (const auto& f : factors_)
      if (f.second > 1) return false;
    return true;
  }

  /// The element of the monoid N^x; atom ids are the primes themselves.
  MonoidElement element() const {
    std::vector<MonoidElement::Entry> e;
    for (const auto& [p, k] : factors_) e.emplace_back(static_cast<AtomId>(p), k);
    return MonoidElement::from_entries(std::move(e));
  }

 private:
  std::uint64_t n_;
  std::vector<Factor> factors_;
};

inline MonoidElement element_of(std::uint64_t n) { return Factorization(n).element(); }

/// Inverse of element_of: the integer whose factorization is e.
inline std::uint64_t value_of(const MonoidElement& e) {
  std::uint64_t n = 1;
  for (const auto& [id, k] : e.entries())
    for (std::uint32_t i = 0; i < k; ++i) n *= static_cast<std::uint64_t>(id);
  return n;
}

/// N^x with every prime <= bound registered; complete through `bound`.
inline FreeMonoid natural_monoid(std::uint64_t bound) {
  std::vector<Atom> atoms;
  for (std::uint64_t p : primes_up_to(bound)) atoms.push_back({static_cast<AtomId>(p), p});
  return FreeMonoid(GradingMode::multiplicative, std::move(atoms), bound);
}

namespace detail {
inline void require_positive(std::uint64_t n, const char* fn) {
  if (n == 0) throw DomainError(std::string(fn) + "(0) is undefined");
}
}  // namespace detail

inline std::uint64_t phi(std::uint64_t n) {
  detail::require_positive(n, "phi");
  std::uint64_t r = n;
  for (const auto& [p, k] : Factorization(n).factors()) r = r / p * (p - 1);
  return r;
}

/// #{1 <= r <= n : gcd(r, n) = 1}.
inline std::uint64_t phi_by_counting(std::uint64_t n) {
  detail::require_positive(n, "phi");
  std::uint64_t c = 0;
  for (std::uint64_t r = 1; r <= n; ++r)
    if (std::gcd(r, n) == 1) ++c;
  return c;
}

constexpr unsigned kMaxSigmaPower = 8;

/// sum of d^m over the divisors d of n, for 0 <= m <= 8.
inline BigInt sigma(unsigned m, std::uint64_t n) {
  detail::require_positive(n, "sigma");
  if (m > kMaxSigmaPower) throw DomainError("sigma_m is provided for m <= 8");
  BigInt r = 1;
  for (const auto& [p, k] : Factorization(n).factors()) {
    const BigInt pm = ipow(BigInt(p), m);
    BigInt term = 1, s = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      term *= pm;
      s += term;
    }
    r *= s;
  }
  return r;
}

inline std::uint64_t psi(std::uint64_t n) {
  detail::require_positive(n, "psi");
  std::uint64_t r = n;
  for (const auto& [p, k] : Factorization(n).factors()) r = r / p * (p + 1);
  return r;
}

inline int liouville(std::uint64_t n) {
  detail::require_positive(n, "lambda");
  return Factorization(n).big_omega() % 2 == 0 ? 1 : -1;
}

inline int mu(std::uint64_t n) {
  detail::require_positive(n, "mu");
  Factorization f(n);
  if (!f.is_squarefree()) return 0;
  return f.factors().size() % 2 == 0 ? 1 : -1;
}

inline int abs_mu(std::uint64_t n) { return mu(n) == 0 ? 0 : 1; }

/// The nontrivial character mod 4.
inline int chi_minus1(std::uint64_t n) {
  detail::require_positive(n, "chi_-1");
  if (n % 2 == 0) return 0;
  return n % 4 == 1 ? 1 : -1;
}

/// #{(x, y) in Z^2 : x^2 + y^2 = n}.
inline std::uint64_t r2(std::uint64_t n) {
  detail::require_positive(n, "r2");
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x * x <= n; ++x) {
    const std::uint64_t rest = n - x * x;
    std::uint64_t y = 0;
    while ((y + 1) * (y + 1) <= rest) ++y;
    if (y * y != rest) continue;
    count += (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
  }
  return count;
}

inline bool is_square(std::uint64_t n) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

/// #P^1(Z/n): pairs (a, b) mod n with gcd(a, b, n) = 1, modulo (Z/n)^x scaling.
inline std::uint64_t p1_count(std::uint64_t n) {
  detail::require_positive(n, "P1 count");
  std::uint64_t pairs = 0;
  for (std::uint64_t a = 0; a < n; ++a) {
    const std::uint64_t g = std::gcd(a, n);
    for (std::uint64_t b = 0; b < n; ++b)
      if (std::gcd(g, b) == 1) ++pairs;
  }
  const std::uint64_t units = phi_by_counting(n);
  if (pairs % units != 0) throw InternalError("unit scaling is not free on P^1(Z/" + std::to_string(n) + ")");
  return pairs / units;
}

enum class ClassicalFnId {
  zeta,
  mu,
  abs_mu,
  id,
  id_pow_m,
  phi,
  sigma_m,
  psi,
  lambda,
  chi_minus1,
  r2,
  delta,
  square_indicator
};

inline constexpr std::array<std::pair<std::string_view, ClassicalFnId>, 13> kClassicalFnNames{{
    {"zeta", ClassicalFnId::zeta},
    {"mu", ClassicalFnId::mu},
    {"abs_mu", ClassicalFnId::abs_mu},
    {"id", ClassicalFnId::id},
    {"id_pow", ClassicalFnId::id_pow_m},
    {"phi", ClassicalFnId::phi},
    {"sigma", ClassicalFnId::sigma_m},
    {"psi", ClassicalFnId::psi},
    {"lambda", ClassicalFnId::lambda},
    {"chi_minus1", ClassicalFnId::chi_minus1},
    {"r2", ClassicalFnId::r2},
    {"delta", ClassicalFnId::delta},
    {"square_indicator", ClassicalFnId::square_indicator},
}};

/// A classical function together with its power parameter m (for id^m and sigma_m).
struct ClassicalFn {
  ClassicalFnId id;
  unsigned m = 1;
};

/// Accepts names such as "phi", "sigma1", "sigma_3", "id_pow2".
inline ClassicalFn parse_classical_fn(std::string_view name) {
  for (const auto& [key, id] : kClassicalFnNames) {
    if (name == key) return {id, 1};
    if ((id == ClassicalFnId::sigma_m || id == ClassicalFnId::id_pow_m) && name.substr(0, key.size()) == key) {
      std::string_view rest = name.substr(key.size());
      if (!rest.empty() && rest.front() == '_') rest.remove_prefix(1);
      if (rest.size() == 1 && rest[0] >= '0' && rest[0] <= '8') return {id, static_cast<unsigned>(rest[0] - '0')};
    }
  }
  throw InputError("unknown classical function '" + std::string(name) + "'");
}

inline BigInt evaluate(const ClassicalFn& f, std::uint64_t n) {
  detail::require_positive(n, "f");
  switch (f.id) {
    case ClassicalFnId::zeta: return 1;
    case ClassicalFnId::mu: return mu(n);
    case ClassicalFnId::abs_mu: return abs_mu(n);
    case ClassicalFnId::id: return n;
    case ClassicalFnId::id_pow_m: return ipow(BigInt(n), f.m);
    case ClassicalFnId::phi: return phi(n);
    case ClassicalFnId::sigma_m: return sigma(f.m, n);
    case ClassicalFnId::psi: return psi(n);
    case ClassicalFnId::lambda: return liouville(n);
    case ClassicalFnId::chi_minus1: return chi_minus1(n);
    case ClassicalFnId::r2: return r2(n);
    case ClassicalFnId::delta: return n == 1 ? 1 : 0;
    case ClassicalFnId::square_indicator: return is_square(n) ? 1 : 0;
  }
  throw InputError("unknown classical function");
}

/// Lifts an integer function to an arithmetic function on the monoid N^x.
inline ArithmeticFunction on_naturals(std::string name, std::function<BigInt(std::uint64_t)> f) {
  return ArithmeticFunction::from_rule(std::move(name),
                                       [f = std::move(f)](const MonoidElement& e) { return f(value_of(e)); });
}

inline ArithmeticFunction as_arithmetic_function(const ClassicalFn& f) {
  return on_naturals("f", [f](std::uint64_t n) { return evaluate(f, n); });
}

/// Dirichlet coefficients f(1..bound).
inline DirichletSeries dirichlet_series(const ClassicalFn& f, std::uint64_t bound) {
  DirichletSeries s = make_dirichlet_series(bound);
  for (std::uint64_t n = 1; n <= bound; ++n) s[n] = evaluate(f, n);
  return s;
}

enum class ClassicalIdentity {
  MU_ZETA_DELTA,
  PHI_RECURSION,
  PHI_MU,
  PHI_ZETA_QUOTIENT,
  PHI_PRODUCT_COUNT,
  SIGMA_SERIES,
  SIGMA_P1_COUNT,
  P1_PSI_COUNT,
  PSI_ABSMU,
  PSI_SERIES,
  LAMBDA_SQUARE,
  LAMBDA_MU_SQFREE_PART,
  LAMBDA_ABSMU_DELTA,
  R2_CHI,
};

inline constexpr std::array<std::pair<std::string_view, ClassicalIdentity>, 14> kClassicalIdentityNames{{
    {"MU_ZETA_DELTA", ClassicalIdentity::MU_ZETA_DELTA},
    {"PHI_RECURSION", ClassicalIdentity::PHI_RECURSION},
    {"PHI_MU", ClassicalIdentity::PHI_MU},
    {"PHI_ZETA_QUOTIENT", ClassicalIdentity::PHI_ZETA_QUOTIENT},
    {"PHI_PRODUCT_COUNT", ClassicalIdentity::PHI_PRODUCT_COUNT},
    {"SIGMA_SERIES", ClassicalIdentity::SIGMA_SERIES},
    {"SIGMA_P1_COUNT", ClassicalIdentity::SIGMA_P1_COUNT},
    {"P1_PSI_COUNT", ClassicalIdentity::P1_PSI_COUNT},
    {"PSI_ABSMU", ClassicalIdentity::PSI_ABSMU},
    {"PSI_SERIES", ClassicalIdentity::PSI_SERIES},
    {"LAMBDA_SQUARE", ClassicalIdentity::LAMBDA_SQUARE},
    {"LAMBDA_MU_SQFREE_PART", ClassicalIdentity::LAMBDA_MU_SQFREE_PART},
    {"LAMBDA_ABSMU_DELTA", ClassicalIdentity::LAMBDA_ABSMU_DELTA},
    {"R2_CHI", ClassicalIdentity::R2_CHI},
}};

inline std::string_view identity_name(ClassicalIdentity id) {
  for (const auto& [name, v] : kClassicalIdentityNames)
    if (v == id) return name;
  return "?";
}

inline ClassicalIdentity parse_classical_identity(std::string_view name) {
  for (const auto& [key, v] : kClassicalIdentityNames)
    if (key == name) return v;
  throw InputError("unknown classical identity '" + std::string(name) + "'");
}

/// Largest n for which the brute-force P^1 count is run by default.
constexpr std::uint64_t kP1CountBound = 60;

namespace detail {

/// Elementwise comparison of two functions on N^x over 1..bound.
inline CheckResult compare_functions(std::string id, Params params, const ArithmeticFunction& lhs,
                                     const ArithmeticFunction& rhs, std::uint64_t bound) {
  return compare_range(std::move(id), std::move(params), 1, bound,
                       [&](std::uint64_t n) { return lhs(element_of(n)); },
                       [&](std::uint64_t n) { return rhs(element_of(n)); });
}

inline CheckResult compare_series(std::string id, Params params, const DirichletSeries& lhs,
                                  const DirichletSeries& rhs) {
  return compare_range(std::move(id), std::move(params), 1, std::min(lhs.bound(), rhs.bound()),
                       [&](std::uint64_t n) { return lhs[n]; }, [&](std::uint64_t n) { return rhs[n]; });
}

inline ArithmeticFunction fn(ClassicalFnId id, unsigned m = 1) { return as_arithmetic_function({id, m}); }

}  // namespace detail

/// Checks one classical identity coefficientwise for all n <= bound.
inline CheckResult verify_classical_identity(ClassicalIdentity which, std::uint64_t bound) {
  if (bound < 1) throw InputError("bound must be >= 1");
  using detail::fn;
  const std::string id(identity_name(which));
  Params params{{"bound", std::to_string(bound)}};
  const DirichletSeries zeta_s = dirichlet_series({ClassicalFnId::zeta}, bound);

  switch (which) {
    case ClassicalIdentity::MU_ZETA_DELTA: {
      // Recursive incidence-algebra mu on N^x, not the closed form.
      const FreeMonoid nat = natural_monoid(bound);
      const auto mu_rec = mobius_function();
      const auto lhs = convolve(mu_rec, zeta_function());
      const auto rhs = convolve(zeta_function(), mu_rec);
      if (auto bad = first_difference(lhs, delta_function(), nat, bound))
        return make_result(id, params, false, "mu*zeta != delta at n=" + std::to_string(value_of(*bad)));
      if (auto bad = first_difference(rhs, delta_function(), nat, bound))
        return make_result(id, params, false, "zeta*mu != delta at n=" + std::to_string(value_of(*bad)));
      return make_result(id, params, true, "mu*zeta = zeta*mu = delta for n <= " + std::to_string(bound));
    }
    case ClassicalIdentity::PHI_RECURSION:
      return compare_range(id, params, 1, bound,
                           [](std::uint64_t n) {
                             std::uint64_t s = 0;
                             for (std::uint64_t d = 1; d <= n; ++d)
                               if (n % d == 0) s += phi(d);
                             return s;
                           },
                           [](std::uint64_t n) { return n; });
    case ClassicalIdentity::PHI_MU:
      return detail::compare_functions(id, params, fn(ClassicalFnId::phi),
                                       convolve(fn(ClassicalFnId::id), mobius_function()), bound);
    case ClassicalIdentity::PHI_ZETA_QUOTIENT: {
      const DirichletSeries quotient = zeta_s.shift(1) / zeta_s;
      return detail::compare_series(id, params, dirichlet_series({ClassicalFnId::phi}, bound), quotient);
    }
    case ClassicalIdentity::PHI_PRODUCT_COUNT:
      return compare_range(id, params, 1, bound, [](std::uint64_t n) { return phi(n); },
                           [](std::uint64_t n) { return phi_by_counting(n); });
    case ClassicalIdentity::SIGMA_SERIES: {
      for (unsigned m = 0; m <= kMaxSigmaPower; ++m) {
        auto r = detail::compare_series(id, params, dirichlet_series({ClassicalFnId::sigma_m, m}, bound),
                                        zeta_s * zeta_s.shift(m));
        if (!r.passed()) {
          r.detail = "m=" + std::to_string(m) + ": " + r.detail;
          return r;
        }
      }
      return make_result(id, params, true, "sigma_m = zeta(s)zeta(s-m) for m <= 8, n <= " + std::to_string(bound));
    }
    case ClassicalIdentity::SIGMA_P1_COUNT:
      return compare_range(id, params, 1, bound, [](std::uint64_t n) { return sigma(1, n); },
                           [](std::uint64_t n) { return BigInt(p1_count(n)); });
    case ClassicalIdentity::P1_PSI_COUNT:
      return compare_range(id, params, 1, bound, [](std::uint64_t n) { return psi(n); },
                           [](std::uint64_t n) { return p1_count(n); });
    case ClassicalIdentity::PSI_ABSMU:
      return detail::compare_functions(id, params, fn(ClassicalFnId::psi),
                                       convolve(fn(ClassicalFnId::id), abs_mobius_function()), bound);
    case ClassicalIdentity::PSI_SERIES: {
      // psi(s) zeta(2s) = zeta(s) zeta(s-1), cleared of division
      const DirichletSeries lhs = dirichlet_series({ClassicalFnId::psi}, bound) * zeta_s.dilate(2);
      return detail::compare_series(id, params, lhs, zeta_s * zeta_s.shift(1));
    }
    case ClassicalIdentity::LAMBDA_SQUARE:
      return compare_range(id, params, 1, bound,
                           [](std::uint64_t n) {
                             int s = 0;
                             for (std::uint64_t d = 1; d <= n; ++d)
                               if (n % d == 0) s += liouville(d);
                             return s;
                           },
                           [](std::uint64_t n) { return is_square(n) ? 1 : 0; });
    case ClassicalIdentity::LAMBDA_MU_SQFREE_PART: {
      auto r = compare_range(id, params, 1, bound, [](std::uint64_t n) { return liouville(n); },
                             [](std::uint64_t n) {
                               std::uint64_t part = 1;
                               for (const auto& [p, k] : Factorization(n).factors())
                                 if (k % 2 == 1) part *= p;
                               return mu(part);
                             });
      if (!r.passed()) return r;
      return compare_range(id, params, 1, bound, [](std::uint64_t n) { return liouville(n); },
                           [](std::uint64_t n) {
                             int s = 0;
                             for (std::uint64_t d = 1; d * d <= n; ++d)
                               if (n % (d * d) == 0) s += mu(n / (d * d));
                             return s;
                           });
    }
    case ClassicalIdentity::LAMBDA_ABSMU_DELTA: {
      auto r = detail::compare_functions(id, params, convolve(fn(ClassicalFnId::lambda), abs_mobius_function()),
                                         delta_function(), bound);
      if (!r.passed()) return r;
      const DirichletSeries lhs = dirichlet_series({ClassicalFnId::lambda}, bound) * zeta_s;
      return detail::compare_series(id, params, lhs, zeta_s.dilate(2));
    }
    case ClassicalIdentity::R2_CHI: {
      const auto rhs = convolve(zeta_function(), fn(ClassicalFnId::chi_minus1));
      return compare_range(id, params, 1, bound, [](std::uint64_t n) { return BigInt(r2(n)); },
                           [&](std::uint64_t n) { return BigInt(4 * rhs(element_of(n))); });
    }
  }
  throw InputError("unknown classical identity");
}

/// a^phi(n) = 1 (mod n) for every 2 <= n <= bound and every unit a mod n.
inline CheckResult euler_check(std::uint64_t bound) {
  Params params{{"bound", std::to_string(bound)}};
  if (bound < 2) throw InputError("euler_check needs bound >= 2");
  std::uint64_t checked = 0, failures = 0;
  std::string first;
  for (std::uint64_t n = 2; n <= bound; ++n) {
    const std::uint64_t e = phi(n);
    for (std::uint64_t a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      ++checked;
      if (powmod(a, e, n) != 1) {
        if (failures++ == 0) first = "n=" + std::to_string(n) + " a=" + std::to_string(a);
      }
    }
  }
  std::string detail = std::to_string(checked) + " pairs, " + std::to_string(failures) + " failures";
  if (failures != 0) detail += "; first counterexample " + first;
  return make_result("EULER", params, failures == 0, detail);
}

constexpr std::uint64_t kSl2DefaultCap = 24;

/// [SL_2(Z/n) : Gamma_0(n) mod n] by enumerating all n^4 matrices.
inline Sl2Count sl2_count(std::uint64_t n, std::uint64_t cap = kSl2DefaultCap) {
  detail::require_positive(n, "sl2_index");
  if (n > cap) throw ResourceError("sl2_index: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  Sl2Count c;
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t cc = 0; cc < n; ++cc)
        for (std::uint64_t d = 0; d < n; ++d) {
          if ((a * d + n * n - b * cc % n) % n != 1 % n) continue;
          ++c.group_order;
          if (cc == 0) ++c.gamma0_order;
        }
  if (c.gamma0_order == 0 || c.group_order % c.gamma0_order != 0)
    throw InternalError("Gamma_0 order does not divide SL_2 order");
  c.index = c.group_order / c.gamma0_order;
  return c;
}

inline std::uint64_t sl2_index(std::uint64_t n, std::uint64_t cap = kSl2DefaultCap) { return sl2_count(n, cap).index; }

/// sl2_index(n) = psi(n) for every n <= bound (bound <= 24).
inline CheckResult verify_sl2_index(std::uint64_t bound) {
  return compare_range("SL2_INDEX", {{"bound", std::to_string(bound)}}, 1, bound,
                       [](std::uint64_t n) { return sl2_index(n); }, [](std::uint64_t n) { return psi(n); });
}

}  // namespace arithgeo::classical
