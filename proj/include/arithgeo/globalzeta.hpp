// Arithmetic schemes given by integer equations: Dirichlet series assembled from
// the 0-cycle series of their fibers over each prime.
#pragma once

#include "arithgeo/classical.hpp"
#include "arithgeo/report.hpp"
#include "arithgeo/series.hpp"
#include "arithgeo/varzeta.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arithgeo::globalzeta {

using varzeta::ClosedPointSpectrum;
using varzeta::CycleFn;
using varzeta::VarietySpec;

/// Largest exponent e with p^e <= n.
inline unsigned max_exponent(std::uint64_t p, std::uint64_t n) {
  unsigned e = 0;
  for (std::uint64_t v = p; v <= n; v *= p) {
    ++e;
    if (v > n / p) break;
  }
  return e;
}

/// A template over Z, reduced fiber by fiber. Fibers are computed lazily and cached;
/// a fiber whose point counts exceed the enumeration budget is recorded as skipped.
class GlobalModel {
 public:
  GlobalModel(VarietySpec tmpl, std::uint64_t nmax, std::optional<std::uint64_t> prime_bound = std::nullopt,
              std::uint64_t budget = varzeta::kEnumerationBudget)
      : tmpl_(std::move(tmpl)), nmax_(nmax), prime_bound_(prime_bound.value_or(nmax)), budget_(budget),
        cache_(std::make_shared<Cache>()) {
    if (nmax_ < 1) throw InputError("Nmax must be at least 1");
    if (tmpl_.p) throw InputError("a global template must not fix p");
    tmpl_.global = true;
    tmpl_.validate();
  }

  const VarietySpec& template_spec() const { return tmpl_; }
  std::uint64_t nmax() const { return nmax_; }
  std::uint64_t prime_bound() const { return prime_bound_; }
  std::uint64_t budget() const { return budget_; }

  std::vector<std::uint64_t> primes() const { return classical::primes_up_to(std::min(prime_bound_, nmax_)); }

  /// The model of X x A1 with the same bounds.
  GlobalModel times_affine_line() const {
    VarietySpec t = tmpl_;
    t.global = false;
    t = t.times_affine_line();
    return GlobalModel(t, nmax_, prime_bound_, budget_);
  }

  /// Spectrum of the fiber at p through degree floor(log_p Nmax), or the reason it was skipped.
  const std::optional<ClosedPointSpectrum>& fiber(std::uint64_t p) const {
    auto it = cache_->fibers.find(p);
    if (it != cache_->fibers.end()) return it->second;
    std::optional<ClosedPointSpectrum> s;
    try {
      const VarietySpec local = tmpl_.with_prime(static_cast<std::uint32_t>(p));
      s = varzeta::compute_variety_data(local, max_exponent(p, nmax_), budget_).closed_points;
    } catch (const ResourceError& e) {
      cache_->skip_reasons[p] = e.what();
    }
    return cache_->fibers.emplace(p, std::move(s)).first->second;
  }

  bool skipped(std::uint64_t p) const { return p > prime_bound_ || !fiber(p).has_value(); }

  std::string skip_reason(std::uint64_t p) const {
    if (p > prime_bound_) return "beyond the prime bound";
    auto it = cache_->skip_reasons.find(p);
    return it == cache_->skip_reasons.end() ? "" : it->second;
  }

  /// Primes <= min(P, Nmax) whose fibers could not be counted.
  std::vector<std::uint64_t> skipped_primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : primes())
      if (skipped(p)) out.push_back(p);
    return out;
  }

  /// True when every prime factor of n has a computed fiber.
  bool covers(std::uint64_t n) const {
    for (const auto& [p, k] : classical::Factorization(n).factors())
      if (skipped(p)) return false;
    return true;
  }

 private:
  struct Cache {
    std::map<std::uint64_t, std::optional<ClosedPointSpectrum>> fibers;
    std::map<std::uint64_t, std::string> skip_reasons;
  };
  VarietySpec tmpl_;
  std::uint64_t nmax_;
  std::uint64_t prime_bound_;
  std::uint64_t budget_;
  std::shared_ptr<Cache> cache_;
};

/// The fn-series of the fiber at p, to degree floor(log_p Nmax).
inline PowerSeries local_series(const GlobalModel& model, std::uint64_t p, CycleFn fn) {
  const auto& s = model.fiber(p);
  if (!s) throw ResourceError("fiber at p=" + std::to_string(p) + " is unavailable: " + model.skip_reason(p));
  return varzeta::cycle_series(fn, *s, s->degree_bound());
}

struct GlobalDirichlet {
  DirichletSeries coeffs;
  std::vector<bool> covered;  // covered[n]: every prime factor of n was computed
  std::vector<std::uint64_t> skipped_primes;
};

namespace detail {

inline BigInt integral(const Rational& r) {
  if (denominator(r) != 1) throw InternalError("non-integral local coefficient " + to_string(r));
  return numerator(r);
}

/// a_n = prod over p^e || n of local[p][e]; uncovered n get 0.
template <class Local>
GlobalDirichlet assemble(const GlobalModel& model, std::uint64_t nmax, Local&& local) {
  GlobalDirichlet g{make_dirichlet_series(nmax), std::vector<bool>(nmax + 1, false), model.skipped_primes()};
  std::map<std::uint64_t, PowerSeries> cache;
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    if (!model.covers(n)) continue;
    g.covered[n] = true;
    BigInt a = 1;
    for (const auto& [p, k] : classical::Factorization(n).factors()) {
      auto it = cache.find(p);
      if (it == cache.end()) it = cache.emplace(p, local(p)).first;
      a *= integral(it->second[k]);
    }
    g.coeffs[n] = a;
  }
  return g;
}

}  // namespace detail

inline GlobalDirichlet global_dirichlet(const GlobalModel& model, CycleFn fn, std::uint64_t nmax) {
  if (nmax > model.nmax()) throw InputError("Nmax exceeds the model's bound " + std::to_string(model.nmax()));
  return detail::assemble(model, nmax, [&](std::uint64_t p) { return local_series(model, p, fn); });
}

enum class GlobalIdentity { GLOBAL_PHI, GLOBAL_SIGMA, GLOBAL_PSI, GLOBAL_MULTIPLICATIVE };

inline constexpr std::pair<std::string_view, GlobalIdentity> kGlobalIdentityNames[] = {
    {"GLOBAL_PHI", GlobalIdentity::GLOBAL_PHI},
    {"GLOBAL_SIGMA", GlobalIdentity::GLOBAL_SIGMA},
    {"GLOBAL_PSI", GlobalIdentity::GLOBAL_PSI},
    {"GLOBAL_MULTIPLICATIVE", GlobalIdentity::GLOBAL_MULTIPLICATIVE},
};

inline std::string_view identity_name(GlobalIdentity id) {
  for (const auto& [name, which] : kGlobalIdentityNames)
    if (which == id) return name;
  return "?";
}

inline GlobalIdentity parse_global_identity(std::string_view s) {
  for (const auto& [name, which] : kGlobalIdentityNames)
    if (name == s) return which;
  throw InputError("unknown global identity '" + std::string(s) + "'");
}

namespace detail {

inline Params global_params(const GlobalModel& model, std::uint64_t nmax) {
  return {{"template", model.template_spec().label},
          {"Nmax", std::to_string(nmax)},
          {"prime_bound", std::to_string(model.prime_bound())}};
}

inline std::string coverage_note(const GlobalModel& model, const std::vector<bool>& covered) {
  const auto skipped = model.skipped_primes();
  std::uint64_t n_covered = 0;
  for (std::size_t n = 1; n < covered.size(); ++n) n_covered += covered[n];
  std::string s = "checked on " + std::to_string(n_covered) + " of " + std::to_string(covered.size() - 1) + " indices";
  if (model.prime_bound() < model.nmax()) s += "; primes above " + std::to_string(model.prime_bound()) + " excluded";
  if (!skipped.empty()) {
    s += "; skipped primes:";
    for (std::uint64_t p : skipped)
      if (p <= model.prime_bound()) s += " " + std::to_string(p) + " (" + model.skip_reason(p) + ")";
  }
  return s;
}

inline CheckResult compare_covered(std::string id, Params params, const DirichletSeries& lhs, const DirichletSeries& rhs,
                                   const std::vector<bool>& covered, const std::string& note) {
  for (std::size_t n = 1; n < covered.size(); ++n)
    if (covered[n] && lhs[n] != rhs[n])
      return make_result(std::move(id), std::move(params), false,
                         "first counterexample n=" + std::to_string(n) + ": lhs=" + lhs[n].str() + " rhs=" +
                             rhs[n].str() + "; " + note);
  return make_result(std::move(id), std::move(params), true, "exact; " + note);
}

}  // namespace detail

/// Dirichlet identities checked on every n whose prime factors all have computed fibers.
inline CheckResult verify_global_identity(GlobalIdentity which, const GlobalModel& model, std::uint64_t nmax) {
  const std::string id(identity_name(which));
  const Params params = detail::global_params(model, nmax);
  const GlobalDirichlet zeta = global_dirichlet(model, CycleFn::zeta, nmax);
  const std::string note = detail::coverage_note(model, zeta.covered);
  switch (which) {
    case GlobalIdentity::GLOBAL_PHI: {
      // Phi_X = zeta_X(s-1)/zeta_X(s), cleared of division
      const GlobalDirichlet phi = global_dirichlet(model, CycleFn::phi, nmax);
      return detail::compare_covered(id, params, phi.coeffs * zeta.coeffs, zeta.coeffs.shift(1), zeta.covered, note);
    }
    case GlobalIdentity::GLOBAL_SIGMA: {
      const GlobalDirichlet sigma = global_dirichlet(model, CycleFn::sigma1, nmax);
      return detail::compare_covered(id, params, sigma.coeffs, zeta.coeffs * zeta.coeffs.shift(1), zeta.covered, note);
    }
    case GlobalIdentity::GLOBAL_PSI: {
      if (model.template_spec().times_a1)
        return {id, params, CheckStatus::skip, "template already carries an affine-line factor"};
      // Psi_X zeta_X(2s) = zeta_X(s) zeta_{X x A1}(s)
      const GlobalModel line = model.times_affine_line();
      const GlobalDirichlet psi = global_dirichlet(model, CycleFn::psi, nmax);
      const GlobalDirichlet zeta_line = global_dirichlet(line, CycleFn::zeta, nmax);
      std::vector<bool> covered = zeta.covered;
      for (std::size_t n = 1; n < covered.size(); ++n) covered[n] = covered[n] && zeta_line.covered[n];
      return detail::compare_covered(id, params, psi.coeffs * zeta.coeffs.dilate(2), zeta.coeffs * zeta_line.coeffs,
                                     covered, detail::coverage_note(model, covered));
    }
    case GlobalIdentity::GLOBAL_MULTIPLICATIVE: {
      for (CycleFn fn : {CycleFn::zeta, CycleFn::phi, CycleFn::sigma1, CycleFn::psi, CycleFn::lambda}) {
        const GlobalDirichlet g = fn == CycleFn::zeta ? zeta : global_dirichlet(model, fn, nmax);
        for (std::uint64_t m = 2; m <= nmax; ++m)
          for (std::uint64_t n = 2; m * n <= nmax; ++n) {
            if (!g.covered[m * n] || std::gcd(m, n) != 1) continue;
            if (g.coeffs[m * n] != g.coeffs[m] * g.coeffs[n])
              return make_result(id, params, false,
                                 std::string(varzeta::cycle_fn_name(fn)) + ": first counterexample m=" +
                                     std::to_string(m) + " n=" + std::to_string(n) + ": a_mn=" +
                                     g.coeffs[m * n].str() + " a_m*a_n=" + BigInt(g.coeffs[m] * g.coeffs[n]).str());
          }
      }
      return make_result(id, params, true, "a_mn = a_m a_n for coprime m, n for every series; " + note);
    }
  }
  throw InternalError("unhandled global identity");
}

/// The point template reproduces the classical phi, sigma_1 and psi series.
inline CheckResult verify_point_classical(std::uint64_t nmax) {
  const GlobalModel model(varzeta::builtin_variety("point"), nmax);
  const Params params{{"Nmax", std::to_string(nmax)}};
  const auto phi = global_dirichlet(model, CycleFn::phi, nmax);
  const auto sigma = global_dirichlet(model, CycleFn::sigma1, nmax);
  const auto psi = global_dirichlet(model, CycleFn::psi, nmax);
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    const BigInt want_phi(classical::phi(n)), want_sigma = classical::sigma(1, n), want_psi(classical::psi(n));
    if (phi.coeffs[n] != want_phi || sigma.coeffs[n] != want_sigma || psi.coeffs[n] != want_psi)
      return make_result("POINT_CLASSICAL", params, false,
                         "first counterexample n=" + std::to_string(n) + ": (phi, sigma1, psi) global=(" +
                             phi.coeffs[n].str() + ", " + sigma.coeffs[n].str() + ", " + psi.coeffs[n].str() +
                             ") classical=(" + want_phi.str() + ", " + want_sigma.str() + ", " + want_psi.str() + ")");
  }
  return make_result("POINT_CLASSICAL", params, true,
                     "global Phi, S1, Psi of the point equal the classical phi, sigma_1, psi for n <= " +
                         std::to_string(nmax));
}

/// Compares the Euler product prod_x (1 - (N(x) - 1) N(x)^-s)^-1 with Phi_X. For a closed
/// point of degree d on the fiber at p, N(x) = p^d, so the fiber contributes
/// prod_d (1 - (p^d - 1) t^d)^(-b_d). The check passes when that product disagrees with
/// Phi_X while Phi_X zeta_X = zeta_X(s-1) holds; the detail names the smallest witness.
inline CheckResult verify_euler_factor_discrepancy(const GlobalModel& model, std::uint64_t nmax) {
  const Params params = detail::global_params(model, nmax);
  const std::string id = "PHI_EULER_FACTOR_DISCREPANCY";
  const GlobalDirichlet phi = global_dirichlet(model, CycleFn::phi, nmax);
  const GlobalDirichlet displayed = detail::assemble(model, nmax, [&](std::uint64_t p) {
    const auto& s = *model.fiber(p);
    const unsigned D = s.degree_bound();
    PowerSeries r = PowerSeries::one(SeriesMode::power, D);
    for (unsigned d = 1; d <= D; ++d) {
      if (s.b[d] == 0) continue;
      const BigInt N = ipow(BigInt(p), d);
      PowerSeries factor = PowerSeries::one(SeriesMode::power, D);
      factor[d] = Rational(BigInt(1 - N));
      r = r * varzeta::detail::series_pow(factor.inverse(), s.b[d]);
    }
    return r;
  });
  const CheckResult quotient = verify_global_identity(GlobalIdentity::GLOBAL_PHI, model, nmax);
  std::optional<std::uint64_t> witness;
  for (std::uint64_t n = 1; n <= nmax && !witness; ++n)
    if (phi.covered[n] && phi.coeffs[n] != displayed.coeffs[n]) witness = n;
  std::string detail;
  if (witness) {
    const std::uint64_t n = *witness;
    const auto factors = classical::Factorization(n).factors();
    detail = "witness n=" + std::to_string(n);
    if (factors.size() == 1)
      detail += " (p=" + std::to_string(factors[0].first) + ", p^" + std::to_string(factors[0].second) + ")";
    detail += ": displayed Euler product gives " + displayed.coeffs[n].str() + ", Phi_X gives " + phi.coeffs[n].str();
  } else {
    detail = "no disagreement between the displayed Euler product and Phi_X for n <= " + std::to_string(nmax);
  }
  detail += "; zeta quotient identity " + std::string(quotient.passed() ? "holds" : "fails") + " (" + quotient.detail + ")";
  return make_result(id, params, witness.has_value() && quotient.passed(), detail);
}

/// The identities plus the discrepancy witness (and, for the point, the classical comparison).
inline CheckReport global_suite(const GlobalModel& model, std::uint64_t nmax) {
  CheckReport report;
  report.suite = "global";
  for (const auto& [name, which] : kGlobalIdentityNames) report.add(verify_global_identity(which, model, nmax));
  report.add(verify_euler_factor_discrepancy(model, nmax));
  if (model.template_spec().polys.empty() && model.template_spec().dim == 0 &&
      model.template_spec().ambient == varzeta::Ambient::affine && !model.template_spec().times_a1)
    report.add(verify_point_classical(nmax));
  return report;
}

}  // namespace arithgeo::globalzeta
