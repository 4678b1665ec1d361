// Zeta functions of varieties over prime fields: closed-point spectra, generating
// functions over effective 0-cycles, their identities, and Euler's theorem in
// F_q[t]/(g).
#pragma once

#include "arithgeo/classical.hpp"
#include "arithgeo/finite_ring.hpp"
#include "arithgeo/monoid.hpp"
#include "arithgeo/report.hpp"
#include "arithgeo/series.hpp"
#include "arithgeo/variety.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arithgeo::varzeta {

/// Numbers b_d of closed points of each degree d <= D on a variety over F_q.
struct ClosedPointSpectrum {
  std::uint64_t q = 0;
  std::vector<BigInt> b;  // b[0] unused

  unsigned degree_bound() const { return b.empty() ? 0 : static_cast<unsigned>(b.size() - 1); }

  /// N_m = sum over d | m of d * b_d.
  BigInt point_count(unsigned m) const {
    BigInt n = 0;
    for (unsigned d = 1; d <= m; ++d)
      if (m % d == 0) n += BigInt(d) * b.at(d);
    return n;
  }
};

/// b_d = (1/d) * sum_{e | d} mu(e) N_{d/e}, from counts[m-1] = N_m. Throws
/// InvalidCountsError when some b_d is not a nonnegative integer.
inline ClosedPointSpectrum spectrum(std::uint64_t q, const std::vector<BigInt>& counts) {
  ClosedPointSpectrum s;
  s.q = q;
  s.b.assign(counts.size() + 1, BigInt(0));
  for (unsigned d = 1; d <= counts.size(); ++d) {
    BigInt sum = 0;
    for (unsigned e = 1; e <= d; ++e)
      if (d % e == 0) sum += BigInt(classical::mu(e)) * counts[d / e - 1];
    if (sum % d != 0)
      throw InvalidCountsError("point counts give a non-integral number of closed points of degree " +
                               std::to_string(d) + ": " + sum.str() + "/" + std::to_string(d));
    s.b[d] = sum / d;
    if (s.b[d] < 0)
      throw InvalidCountsError("point counts give " + s.b[d].str() + " closed points of degree " + std::to_string(d));
  }
  return s;
}

/// Default truncation degree: 8 over F_2 and F_3, 4 over F_5, 3 beyond.
inline unsigned default_degree_bound(std::uint64_t q) { return q <= 3 ? 8 : q <= 5 ? 4 : 3; }

/// Point counts N_1..N_D and the resulting spectrum, computed once per variety.
struct VarietyData {
  VarietySpec spec;
  unsigned D = 0;
  std::vector<BigInt> counts;
  ClosedPointSpectrum closed_points;
};

inline VarietyData compute_variety_data(const VarietySpec& V, unsigned D, std::uint64_t budget = kEnumerationBudget) {
  VarietyData data{V, D, {}, {}};
  for (unsigned m = 1; m <= D; ++m) data.counts.emplace_back(count_points(V, m, budget));
  data.closed_points = spectrum(V.prime(), data.counts);
  return data;
}

enum class CycleFn { zeta, phi, sigma1, psi, lambda };

inline constexpr std::pair<std::string_view, CycleFn> kCycleFnNames[] = {
    {"zeta", CycleFn::zeta}, {"phi", CycleFn::phi}, {"sigma1", CycleFn::sigma1},
    {"psi", CycleFn::psi},   {"lambda", CycleFn::lambda}};

inline std::string_view cycle_fn_name(CycleFn f) {
  for (const auto& [name, id] : kCycleFnNames)
    if (id == f) return name;
  return "?";
}

inline CycleFn parse_cycle_fn(std::string_view s) {
  for (const auto& [name, id] : kCycleFnNames)
    if (name == s) return id;
  throw InputError("unknown 0-cycle function '" + std::string(s) + "'");
}

namespace detail {

inline PowerSeries series_pow(PowerSeries base, BigInt e) {
  PowerSeries r = PowerSeries::one(SeriesMode::power, base.bound());
  while (e > 0) {
    if ((e & 1) != 0) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

/// 1 + c * t^d as a series to degree D.
inline PowerSeries binomial(unsigned D, unsigned d, const BigInt& c) {
  PowerSeries s = PowerSeries::one(SeriesMode::power, D);
  if (d <= D) s[d] += Rational(c);
  return s;
}

/// Closed-form series of fn restricted to the multiples of one closed point of degree d.
inline PowerSeries local_factor(CycleFn fn, std::uint64_t q, unsigned d, unsigned D) {
  const BigInt Q = ipow(BigInt(q), d);
  const PowerSeries one = PowerSeries::one(SeriesMode::power, D);
  switch (fn) {
    case CycleFn::zeta:
      return binomial(D, d, -1).inverse();
    case CycleFn::phi: {
      PowerSeries num = make_power_series(D);
      if (d <= D) num[d] = Rational(Q - 1);
      return one + num / binomial(D, d, -Q);
    }
    case CycleFn::sigma1:
      return (binomial(D, d, -1) * binomial(D, d, -Q)).inverse();
    case CycleFn::psi:
      return binomial(D, d, 1) / binomial(D, d, -Q);
    case CycleFn::lambda:
      return binomial(D, d, 1).inverse();
  }
  throw InternalError("unhandled 0-cycle function");
}

}  // namespace detail

/// Z(X, t) = prod_d (1 - t^d)^(-b_d), truncated at degree D.
inline PowerSeries zeta_series(const ClosedPointSpectrum& s, unsigned D) {
  if (D > s.degree_bound())
    throw InputError("spectrum is known to degree " + std::to_string(s.degree_bound()) + ", requested " +
                     std::to_string(D));
  PowerSeries z = PowerSeries::one(SeriesMode::power, D);
  for (unsigned d = 1; d <= D; ++d) {
    // (1 - u)^(-b) = sum_k C(b + k - 1, k) u^k
    PowerSeries f = make_power_series(D);
    BigInt c = 1;
    for (unsigned k = 0; k * d <= D; ++k) {
      f[k * d] = Rational(c);
      c = c * (s.b[d] + k) / (k + 1);
    }
    z = z * f;
  }
  return z;
}

/// sum over effective 0-cycles a of fn(a) t^deg(a), as a product of local factors.
inline PowerSeries cycle_series(CycleFn fn, const ClosedPointSpectrum& s, unsigned D) {
  if (D > s.degree_bound())
    throw InputError("spectrum is known to degree " + std::to_string(s.degree_bound()) + ", requested " +
                     std::to_string(D));
  PowerSeries r = PowerSeries::one(SeriesMode::power, D);
  for (unsigned d = 1; d <= D; ++d)
    if (s.b[d] != 0) r = r * detail::series_pow(detail::local_factor(fn, s.q, d, D), s.b[d]);
  return r;
}

/// Atom identifiers of the 0-cycle monoid: the i-th closed point of degree d.
inline AtomId closed_point_id(unsigned d, std::uint64_t i) { return (static_cast<AtomId>(d) << 32) | static_cast<AtomId>(i); }
inline unsigned closed_point_degree(AtomId id) { return static_cast<unsigned>(id >> 32); }

/// The monoid of effective 0-cycles of degree <= D, graded additively by degree.
inline FreeMonoid zero_cycle_monoid(const ClosedPointSpectrum& s, unsigned D) {
  std::vector<Atom> atoms;
  for (unsigned d = 1; d <= D && d <= s.degree_bound(); ++d)
    for (std::uint64_t i = 0; BigInt(i) < s.b[d]; ++i) atoms.push_back({closed_point_id(d, i), d});
  return FreeMonoid(GradingMode::additive, std::move(atoms), std::min(D, s.degree_bound()));
}

/// fn on 0-cycles from its value on multiples k*x of a closed point x of degree d.
inline ArithmeticFunction cycle_function(CycleFn fn, std::uint64_t q) {
  return ArithmeticFunction::multiplicative(std::string(cycle_fn_name(fn)) + "_X", [fn, q](AtomId id, std::uint32_t k) -> BigInt {
    const BigInt Q = ipow(BigInt(q), closed_point_degree(id));
    switch (fn) {
      case CycleFn::zeta:
        return BigInt(1);
      case CycleFn::phi:
        return ipow(Q, k) - ipow(Q, k - 1);
      case CycleFn::sigma1: {
        BigInt s = 0;
        for (std::uint32_t j = 0; j <= k; ++j) s += ipow(Q, j);
        return s;
      }
      case CycleFn::psi:
        return ipow(Q, k - 1) * (Q + 1);
      case CycleFn::lambda:
        return BigInt(k % 2 == 0 ? 1 : -1);
    }
    throw InternalError("unhandled 0-cycle function");
  });
}

/// Direct sum of fn over every effective 0-cycle of degree <= D.
inline PowerSeries cycle_series_by_enumeration(CycleFn fn, const ClosedPointSpectrum& s, unsigned D) {
  const FreeMonoid monoid = zero_cycle_monoid(s, D);
  return to_rational(pushforward_series(cycle_function(fn, s.q), monoid, D));
}

enum class VarietyIdentity {
  SPECTRUM_INTEGRAL,
  COUNT_ORACLE,
  ZETA_CYCLE_ENUMERATION,
  CYCLE_SERIES_ENUMERATION,
  FROBENIUS_ORBITS,
  PHI_X_QUOTIENT,
  SIGMA_X_PRODUCT,
  PSI_X_FORMULA,
  LAMBDA_X_QUOTIENT,
  PRODUCT_A1,
};

inline constexpr std::pair<std::string_view, VarietyIdentity> kVarietyIdentityNames[] = {
    {"SPECTRUM_INTEGRAL", VarietyIdentity::SPECTRUM_INTEGRAL},
    {"COUNT_ORACLE", VarietyIdentity::COUNT_ORACLE},
    {"ZETA_CYCLE_ENUMERATION", VarietyIdentity::ZETA_CYCLE_ENUMERATION},
    {"CYCLE_SERIES_ENUMERATION", VarietyIdentity::CYCLE_SERIES_ENUMERATION},
    {"FROBENIUS_ORBITS", VarietyIdentity::FROBENIUS_ORBITS},
    {"PHI_X_QUOTIENT", VarietyIdentity::PHI_X_QUOTIENT},
    {"SIGMA_X_PRODUCT", VarietyIdentity::SIGMA_X_PRODUCT},
    {"PSI_X_FORMULA", VarietyIdentity::PSI_X_FORMULA},
    {"LAMBDA_X_QUOTIENT", VarietyIdentity::LAMBDA_X_QUOTIENT},
    {"PRODUCT_A1", VarietyIdentity::PRODUCT_A1},
};

inline std::string_view identity_name(VarietyIdentity id) {
  for (const auto& [name, which] : kVarietyIdentityNames)
    if (which == id) return name;
  return "?";
}

inline VarietyIdentity parse_variety_identity(std::string_view s) {
  for (const auto& [name, which] : kVarietyIdentityNames)
    if (name == s) return which;
  throw InputError("unknown variety identity '" + std::string(s) + "'");
}

/// Enumeration oracles stop at this degree.
constexpr unsigned kCycleEnumerationDegree = 5;
constexpr unsigned kFrobeniusOrbitDegree = 4;
/// Tuple budget of the exhaustive recount behind COUNT_ORACLE.
constexpr std::uint64_t kRecountBudget = std::uint64_t{1} << 18;

namespace detail {

inline CheckResult compare_series(std::string id, Params params, const PowerSeries& lhs, const PowerSeries& rhs,
                                  const std::string& lhs_name, const std::string& rhs_name) {
  if (const auto k = first_mismatch(lhs, rhs))
    return make_result(std::move(id), std::move(params), false,
                       "first mismatch at degree " + std::to_string(*k) + ": " + lhs_name + "=" + arithgeo::to_string(lhs[*k]) +
                           " " + rhs_name + "=" + arithgeo::to_string(rhs[*k]));
  return make_result(std::move(id), std::move(params), true,
                     "exact through degree " + std::to_string(std::min(lhs.bound(), rhs.bound())) + ": " +
                         lhs.to_string());
}

}  // namespace detail

inline CheckResult verify_variety_identity(VarietyIdentity which, const VarietyData& data,
                                           std::uint64_t budget = kEnumerationBudget) {
  const std::string id(identity_name(which));
  const auto& s = data.closed_points;
  const unsigned D = data.D;
  const Params params{{"variety", data.spec.label}, {"p", std::to_string(s.q)}, {"D", std::to_string(D)}};
  const PowerSeries Z = zeta_series(s, D);
  const auto q = Rational(static_cast<long long>(s.q));
  switch (which) {
    case VarietyIdentity::SPECTRUM_INTEGRAL: {
      // spectrum() already rejected non-integral or negative values
      for (unsigned m = 1; m <= D; ++m)
        if (s.point_count(m) != data.counts[m - 1])
          return make_result(id, params, false,
                             "N_" + std::to_string(m) + "=" + data.counts[m - 1].str() + " but the spectrum gives " +
                                 s.point_count(m).str());
      std::string b;
      for (unsigned d = 1; d <= D; ++d) b += (d > 1 ? " " : "") + s.b[d].str();
      return make_result(id, params, true, "b = " + b);
    }
    case VarietyIdentity::COUNT_ORACLE: {
      unsigned checked = 0;
      for (unsigned m = 1; m <= D; ++m) {
        std::uint64_t brute = 0;
        try {
          brute = count_points_bruteforce(data.spec, m, std::min(budget, kRecountBudget));
        } catch (const ResourceError&) {
          break;
        }
        if (BigInt(brute) != data.counts[m - 1])
          return make_result(id, params, false,
                             "first mismatch at m=" + std::to_string(m) + ": chart count=" + data.counts[m - 1].str() +
                                 " exhaustive=" + std::to_string(brute));
        ++checked;
      }
      if (checked == 0)
        return {id, params, CheckStatus::skip, "exhaustive enumeration exceeds the budget already at m=1"};
      return make_result(id, params, true, "chart counts equal exhaustive counts for m <= " + std::to_string(checked));
    }
    case VarietyIdentity::ZETA_CYCLE_ENUMERATION: {
      const unsigned d = std::min(D, kCycleEnumerationDegree);
      return detail::compare_series(id, params, Z.truncated(d), cycle_series_by_enumeration(CycleFn::zeta, s, d), "Z",
                                    "cycles");
    }
    case VarietyIdentity::CYCLE_SERIES_ENUMERATION: {
      const unsigned d = std::min(D, kCycleEnumerationDegree);
      for (CycleFn fn : {CycleFn::phi, CycleFn::sigma1, CycleFn::psi, CycleFn::lambda}) {
        auto r = detail::compare_series(id, params, cycle_series(fn, s, d), cycle_series_by_enumeration(fn, s, d),
                                        "product", "enumeration");
        if (!r.passed()) {
          r.detail = std::string(cycle_fn_name(fn)) + ": " + r.detail;
          return r;
        }
      }
      return make_result(id, params, true,
                         "phi, sigma1, psi, lambda series equal direct 0-cycle sums through degree " + std::to_string(d));
    }
    case VarietyIdentity::FROBENIUS_ORBITS: {
      unsigned checked = 0;
      for (unsigned d = 1; d <= std::min(D, kFrobeniusOrbitDegree); ++d) {
        std::uint64_t orbits = 0;
        try {
          orbits = frobenius_orbit_count(data.spec, d, budget);
        } catch (const ResourceError&) {
          break;
        }
        if (BigInt(orbits) != s.b[d])
          return make_result(id, params, false,
                             "first mismatch at d=" + std::to_string(d) + ": b_d=" + s.b[d].str() +
                                 " Frobenius orbits=" + std::to_string(orbits));
        ++checked;
      }
      if (checked == 0) return {id, params, CheckStatus::skip, "point listing exceeds the budget already at d=1"};
      return make_result(id, params, true, "b_d equals the number of Frobenius orbits of size d for d <= " +
                                               std::to_string(checked));
    }
    case VarietyIdentity::PHI_X_QUOTIENT:
      return detail::compare_series(id, params, cycle_series(CycleFn::phi, s, D), Z.scale_variable(q) / Z, "Phi",
                                    "Z(qt)/Z(t)");
    case VarietyIdentity::SIGMA_X_PRODUCT:
      return detail::compare_series(id, params, cycle_series(CycleFn::sigma1, s, D), Z * Z.scale_variable(q), "S1",
                                    "Z(t)Z(qt)");
    case VarietyIdentity::PSI_X_FORMULA:
      return detail::compare_series(id, params, cycle_series(CycleFn::psi, s, D),
                                    Z * Z.scale_variable(q) / Z.substitute_power(2), "Psi", "Z(t)Z(qt)/Z(t^2)");
    case VarietyIdentity::LAMBDA_X_QUOTIENT:
      return detail::compare_series(id, params, cycle_series(CycleFn::lambda, s, D), Z.substitute_power(2) / Z,
                                    "Lambda", "Z(t^2)/Z(t)");
    case VarietyIdentity::PRODUCT_A1: {
      if (data.spec.times_a1) return {id, params, CheckStatus::skip, "variety already carries an affine-line factor"};
      const VarietyData line = compute_variety_data(data.spec.times_affine_line(), D, budget);
      return detail::compare_series(id, params, zeta_series(line.closed_points, D), Z.scale_variable(q), "Z(X x A1,t)",
                                    "Z(X,qt)");
    }
  }
  throw InternalError("unhandled variety identity");
}

inline CheckResult verify_variety_identity(VarietyIdentity which, const VarietySpec& V, unsigned D) {
  return verify_variety_identity(which, compute_variety_data(V, D));
}

/// Every variety identity in declaration order.
inline CheckReport variety_suite(const VarietyData& data, std::uint64_t budget = kEnumerationBudget) {
  CheckReport report;
  report.suite = "variety";
  for (const auto& [name, which] : kVarietyIdentityNames) {
    try {
      report.add(verify_variety_identity(which, data, budget));
    } catch (const ResourceError& e) {
      report.add({std::string(name), {{"variety", data.spec.label}}, CheckStatus::skip, e.what()});
    }
  }
  return report;
}

/// Z of the base change to F_{q^2} is built from the counts N_{2m}; it is not Z(X, t^2),
/// which is the substitution a formula in terms of Z(X_{F_{q^2}}, t) would need.
inline CheckResult base_change_discrepancy(const VarietySpec& V, unsigned D) {
  const VarietyData data = compute_variety_data(V, 2 * D);
  std::vector<BigInt> doubled;
  for (unsigned m = 1; m <= D; ++m) doubled.push_back(data.counts[2 * m - 1]);
  const PowerSeries over_q2 = zeta_series(spectrum(V.prime() * V.prime(), doubled), D);
  const PowerSeries substituted = zeta_series(data.closed_points, D).substitute_power(2);
  const Params params{{"variety", V.label}, {"p", std::to_string(V.prime())}, {"D", std::to_string(D)}};
  if (const auto k = first_mismatch(over_q2, substituted))
    return make_result("PSI_X_BASE_CHANGE_DISCREPANCY", params, true,
                       "Z(X over F_q^2, t) and Z(X, t^2) differ at degree " + std::to_string(*k) + ": " +
                           arithgeo::to_string(over_q2[*k]) + " vs " + arithgeo::to_string(substituted[*k]));
  return make_result("PSI_X_BASE_CHANGE_DISCREPANCY", params, false,
                     "no witness found through degree " + std::to_string(D));
}

// F_q[t]/(g) for a monic g over a prime field.

/// Polynomials over F_q with coefficients lowest degree first.
using PrimePoly = ff::PrimePoly;

inline std::uint64_t encode(const PrimePoly& f, std::uint32_t q) {
  std::uint64_t code = 0;
  for (std::size_t i = f.size(); i-- > 0;) code = code * q + f[i];
  return code;
}

inline PrimePoly decode(std::uint64_t code, std::uint32_t q, std::size_t n) {
  PrimePoly f(n, 0);
  for (std::size_t i = 0; i < n; ++i, code /= q) f[i] = static_cast<std::uint32_t>(code % q);
  return f;
}

inline std::string poly_string(const PrimePoly& f) {
  std::string s;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (f[i] != 1 || i == 0) s += std::to_string(f[i]);
    if (i > 0) s += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

constexpr std::uint64_t kPolyQuotientCap = 1024;

/// The ring F_q[t]/(g) with residues encoded as base-q digit strings of degree < deg g.
class PolyQuotient {
 public:
  PolyQuotient(std::uint32_t q, PrimePoly g, std::uint64_t cap = kPolyQuotientCap) : q_(q), g_(std::move(g)) {
    if (!classical::is_prime(q)) throw InputError("q=" + std::to_string(q) + " must be prime");
    ff::poly_fp::trim(g_);
    if (g_.size() < 2 || g_.back() != 1) throw InputError("modulus must be monic of degree >= 1");
    n_ = g_.size() - 1;
    size_ = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      size_ *= q_;
      if (size_ > cap) throw ResourceError("F_q[t]/(g) has more than " + std::to_string(cap) + " elements");
    }
    ring_ = TableRing(
        size_, size_ == 1 ? 0 : 1,
        [&](std::uint32_t i, std::uint32_t j) {
          PrimePoly a = decode(i, q_, n_), b = decode(j, q_, n_);
          for (std::size_t k = 0; k < n_; ++k) a[k] = (a[k] + b[k]) % q_;
          return static_cast<std::uint32_t>(encode(a, q_));
        },
        [&](std::uint32_t i, std::uint32_t j) {
          PrimePoly a = decode(i, q_, n_), b = decode(j, q_, n_);
          ff::poly_fp::trim(a);
          ff::poly_fp::trim(b);
          return static_cast<std::uint32_t>(encode(ff::poly_fp::mulmod(a, b, g_, q_), q_));
        });
  }

  std::uint32_t q() const { return q_; }
  const PrimePoly& modulus() const { return g_; }
  std::size_t size() const { return size_; }
  const TableRing& ring() const { return ring_; }

  std::uint64_t unit_count() const { return ring_.unit_count(); }

  /// #{f : deg f < deg g, gcd(f, g) = 1}.
  std::uint64_t coprime_count() const {
    std::uint64_t c = 0;
    for (std::uint64_t code = 0; code < size_; ++code)
      if (is_coprime(code)) ++c;
    return c;
  }

  bool is_coprime(std::uint64_t code) const {
    PrimePoly f = decode(code, q_, n_);
    ff::poly_fp::trim(f);
    if (f.empty()) return n_ == 0;
    return ff::poly_fp::degree(ff::poly_fp::gcd(f, g_, q_)) == 0;
  }

  std::uint32_t pow_mod(std::uint32_t f, const BigInt& e) const { return ring_.pow(f, e); }

 private:
  std::uint32_t q_;
  PrimePoly g_;
  std::size_t n_ = 0;
  std::size_t size_ = 1;
  TableRing ring_;
};

inline PolyQuotient poly_quotient(std::uint32_t q, const PrimePoly& g, std::uint64_t cap = kPolyQuotientCap) {
  return PolyQuotient(q, g, cap);
}

/// Factorization of a monic g into monic irreducibles, by trial division.
inline std::vector<std::pair<PrimePoly, std::uint32_t>> factor_monic(PrimePoly g, std::uint32_t q) {
  ff::poly_fp::trim(g);
  std::vector<std::pair<PrimePoly, std::uint32_t>> out;
  const int n = ff::poly_fp::degree(g);
  for (int d = 1; d <= n && ff::poly_fp::degree(g) > 0; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::uint64_t code = 0; code < count && ff::poly_fp::degree(g) >= d; ++code) {
      PrimePoly h = decode(code, q, static_cast<std::size_t>(d));
      h.push_back(1);
      if (!ff::poly_fp::is_irreducible(h, q)) continue;
      std::uint32_t k = 0;
      while (ff::poly_fp::degree(g) >= d && ff::poly_fp::mod(g, h, q).empty()) {
        // exact division by a monic h
        PrimePoly quotient(g.size() - h.size() + 1, 0), r = g;
        for (std::size_t i = quotient.size(); i-- > 0;) {
          const std::uint32_t c = r[i + h.size() - 1];
          quotient[i] = c;
          for (std::size_t j = 0; j < h.size(); ++j) r[i + j] = (r[i + j] + q - (c * h[j]) % q) % q;
        }
        g = quotient;
        ff::poly_fp::trim(g);
        ++k;
      }
      if (k > 0) out.emplace_back(h, k);
    }
  }
  return out;
}

/// phi_X and psi_X of the divisor of zeros of g on the affine line, from its factorization.
inline std::pair<BigInt, BigInt> phi_psi_of_divisor(const PrimePoly& g, std::uint32_t q) {
  BigInt phi = 1, psi = 1;
  for (const auto& [h, k] : factor_monic(g, q)) {
    const BigInt Q = ipow(BigInt(q), static_cast<std::uint64_t>(ff::poly_fp::degree(h)));
    phi *= ipow(Q, k) - ipow(Q, k - 1);
    psi *= ipow(Q, k - 1) * (Q + 1);
  }
  return {phi, psi};
}

/// For every monic g of degree 1..degree_bound and every residue f coprime to g:
/// f^{#units} = 1, #units = #coprime residues = phi_X(div g).
inline CheckResult euler_check_poly(std::uint32_t q, unsigned degree_bound) {
  const Params params{{"q", std::to_string(q)}, {"degree_bound", std::to_string(degree_bound)}};
  std::uint64_t moduli = 0, pairs = 0;
  for (unsigned n = 1; n <= degree_bound; ++n) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      PrimePoly g = decode(code, q, n);
      g.push_back(1);
      const PolyQuotient R(q, g);
      const std::uint64_t units = R.unit_count();
      const std::uint64_t coprime = R.coprime_count();
      const BigInt phi = phi_psi_of_divisor(g, q).first;
      ++moduli;
      if (units != coprime || BigInt(units) != phi)
        return make_result("EULER_POLY", params, false,
                           "g=" + poly_string(g) + ": unit count " + std::to_string(units) + ", coprime count " +
                               std::to_string(coprime) + ", phi_X(div g)=" + phi.str());
      for (std::uint64_t f = 0; f < R.size(); ++f) {
        if (!R.is_coprime(f)) continue;
        ++pairs;
        if (R.pow_mod(static_cast<std::uint32_t>(f), BigInt(units)) != R.ring().one())
          return make_result("EULER_POLY", params, false,
                             "g=" + poly_string(g) + ", f=" + poly_string(decode(f, q, n)) + ": f^" +
                                 std::to_string(units) + " != 1");
      }
    }
  }
  return make_result("EULER_POLY", params, true,
                     std::to_string(moduli) + " moduli, " + std::to_string(pairs) + " pairs, 0 failures");
}

constexpr std::uint64_t kPolySl2Cap = 27;

/// psi_X(div g) against #P^1(F_q[t]/(g)) and, when |F_q[t]/(g)| <= 27, the SL_2 index.
inline CheckResult verify_poly_psi_oracle(std::uint32_t q, unsigned degree_bound) {
  const Params params{{"q", std::to_string(q)}, {"degree_bound", std::to_string(degree_bound)}};
  std::uint64_t moduli = 0, sl2 = 0;
  for (unsigned n = 1; n <= degree_bound; ++n) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      PrimePoly g = decode(code, q, n);
      g.push_back(1);
      const PolyQuotient R(q, g);
      const BigInt psi = phi_psi_of_divisor(g, q).second;
      const std::uint64_t p1 = R.ring().p1_count();
      ++moduli;
      if (BigInt(p1) != psi)
        return make_result("PSI_X_POLY_ORACLE", params, false,
                           "g=" + poly_string(g) + ": #P^1=" + std::to_string(p1) + " psi_X(div g)=" + psi.str());
      if (R.size() <= kPolySl2Cap) {
        const std::uint64_t index = R.ring().sl2_count(kPolySl2Cap).index;
        ++sl2;
        if (BigInt(index) != psi)
          return make_result("PSI_X_POLY_ORACLE", params, false,
                             "g=" + poly_string(g) + ": SL_2 index=" + std::to_string(index) + " psi_X(div g)=" +
                                 psi.str());
      }
    }
  }
  return make_result("PSI_X_POLY_ORACLE", params, true,
                     std::to_string(moduli) + " moduli match #P^1, " + std::to_string(sl2) + " also match the SL_2 index");
}

}  // namespace arithgeo::varzeta
