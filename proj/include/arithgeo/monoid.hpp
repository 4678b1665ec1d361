// Free commutative graded monoids and their incidence algebras.
//
// A monoid is always presented as free on an explicit list of atoms (primes,
// prime ideals, closed points). Elements are finite multisets of atoms, and
// arithmetic functions are exact-integer functions on elements with a
// memoized evaluation rule. Convolution, the recursive Moebius function,
// convolution inversion and pushforward along the grading are defined here
// once and reused by every concrete monoid.
#pragma once

#include "arithgeo/bigint.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/series.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arithgeo {

using AtomId = std::int64_t;

struct Atom {
  AtomId id;
  std::uint64_t weight;
};

class MonoidElement {
 public:
  using Entry = std::pair<AtomId, std::uint32_t>;

  MonoidElement() = default;

  static MonoidElement atom(AtomId id, std::uint32_t exponent = 1) {
    return from_entries({{id, exponent}});
  }

  /// Sorts by atom id, merges repeated ids and drops zero exponents.
  static MonoidElement from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    MonoidElement e;
    for (const auto& [id, k] : entries) {
      if (k == 0) continue;
      if (!e.entries_.empty() && e.entries_.back().first == id)
        e.entries_.back().second += k;
      else
        e.entries_.emplace_back(id, k);
    }
    return e;
  }

  const std::vector<Entry>& entries() const& { return entries_; }
  std::vector<Entry> entries() && { return std::move(entries_); }
  bool is_identity() const { return entries_.empty(); }
  std::size_t distinct_atoms() const { return entries_.size(); }

  std::uint32_t exponent(AtomId id) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{id, 0});
    return it != entries_.end() && it->first == id ? it->second : 0;
  }

  /// Total number of atoms counted with multiplicity.
  std::uint64_t total_exponent() const {
    std::uint64_t s = 0;
    for (const auto& entry : entries_) s += entry.second;
    return s;
  }

  bool is_squarefree() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& en) { return en.second == 1; });
  }

  friend MonoidElement operator*(const MonoidElement& a, const MonoidElement& b) {
    std::vector<Entry> all = a.entries_;
    all.insert(all.end(), b.entries_.begin(), b.entries_.end());
    return from_entries(std::move(all));
  }

  bool divides(const MonoidElement& other) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const Entry& en) { return other.exponent(en.first) >= en.second; });
  }

  /// Exact quotient this / d, or nullopt when d does not divide this.
  std::optional<MonoidElement> divide(const MonoidElement& d) const {
    if (!d.divides(*this)) return std::nullopt;
    MonoidElement q;
    for (const auto& [id, k] : entries_) {
      const std::uint32_t r = k - d.exponent(id);
      if (r != 0) q.entries_.emplace_back(id, r);
    }
    return q;
  }

  /// True when the two elements share no atom.
  bool coprime_to(const MonoidElement& other) const {
    return std::none_of(entries_.begin(), entries_.end(),
                        [&](const Entry& en) { return other.exponent(en.first) != 0; });
  }

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
  friend auto operator<=>(const MonoidElement& a, const MonoidElement& b) { return a.entries_ <=> b.entries_; }

  std::string to_string() const {
    if (entries_.empty()) return "1";
    std::string out;
    for (const auto& [id, k] : entries_) {
      if (!out.empty()) out += "*";
      out += "a" + std::to_string(id);
      if (k != 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

struct MonoidElementHash {
  std::size_t operator()(const MonoidElement& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& [id, k] : e.entries()) {
      h ^= std::hash<AtomId>{}(id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<std::uint32_t>{}(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// All (d, e/d) with d running over sub-multisets of e, in lexicographic
/// order of the exponent vector indexed by atom id.
inline std::vector<std::pair<MonoidElement, MonoidElement>> divisor_pairs(const MonoidElement& e) {
  const auto& entries = e.entries();
  std::vector<std::uint32_t> exps(entries.size(), 0);
  std::vector<std::pair<MonoidElement, MonoidElement>> out;
  while (true) {
    std::vector<MonoidElement::Entry> lo, hi;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (exps[i] != 0) lo.emplace_back(entries[i].first, exps[i]);
      if (exps[i] != entries[i].second) hi.emplace_back(entries[i].first, entries[i].second - exps[i]);
    }
    out.emplace_back(MonoidElement::from_entries(std::move(lo)), MonoidElement::from_entries(std::move(hi)));
    // odometer with the first atom as the most significant digit
    std::size_t i = entries.size();
    while (i > 0) {
      --i;
      if (exps[i] < entries[i].second) {
        ++exps[i];
        break;
      }
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (entries.empty()) return out;
  }
}

inline std::vector<MonoidElement> divisors(const MonoidElement& e) {
  std::vector<MonoidElement> out;
  for (auto& pr : divisor_pairs(e)) out.push_back(std::move(pr.first));
  return out;
}

enum class GradingMode { multiplicative, additive };

/// A free commutative monoid on registered atoms together with the grading
/// induced by atom weights. `complete_through` records the largest weight up
/// to which the atom list is known to be exhaustive (nullopt: the list is the
/// whole monoid).
class FreeMonoid {
 public:
  FreeMonoid(GradingMode mode, std::vector<Atom> atoms, std::optional<std::uint64_t> complete_through = std::nullopt)
      : data_(std::make_shared<Data>()) {
    data_->mode = mode;
    data_->complete_through = complete_through;
    for (const Atom& a : atoms) {
      if (a.weight < 1) throw InputError("atom " + std::to_string(a.id) + " has weight 0");
      if (mode == GradingMode::multiplicative && a.weight < 2)
        throw LocalFinitenessError("multiplicative atom " + std::to_string(a.id) + " has weight 1");
      if (!data_->weights.emplace(a.id, a.weight).second)
        throw InputError("duplicate atom id " + std::to_string(a.id));
    }
    data_->atoms = std::move(atoms);
    std::sort(data_->atoms.begin(), data_->atoms.end(),
              [](const Atom& x, const Atom& y) { return std::tie(x.weight, x.id) < std::tie(y.weight, y.id); });
  }

  GradingMode mode() const { return data_->mode; }
  const std::vector<Atom>& atoms() const { return data_->atoms; }
  std::optional<std::uint64_t> complete_through() const { return data_->complete_through; }
  bool has_atom(AtomId id) const { return data_->weights.count(id) != 0; }

  std::uint64_t atom_weight(AtomId id) const {
    auto it = data_->weights.find(id);
    if (it == data_->weights.end()) throw InputError("unknown atom id " + std::to_string(id));
    return it->second;
  }

  /// Homomorphic weight: product of weight^k (multiplicative) or sum of weight*k (additive).
  std::uint64_t weight(const MonoidElement& e) const {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t w = mode() == GradingMode::multiplicative ? 1 : 0;
    for (const auto& [id, k] : e.entries()) {
      const std::uint64_t aw = atom_weight(id);
      for (std::uint32_t i = 0; i < k; ++i) {
        if (mode() == GradingMode::multiplicative) {
          if (w > kMax / aw) throw ResourceError("element weight overflows 64 bits");
          w *= aw;
        } else {
          if (w > kMax - aw) throw ResourceError("element weight overflows 64 bits");
          w += aw;
        }
      }
    }
    return w;
  }

  /// Every element of weight <= bound, sorted by (weight, element).
  std::vector<MonoidElement> elements_up_to(std::uint64_t bound) const {
    std::vector<std::pair<std::uint64_t, MonoidElement>> found;
    const bool mult = mode() == GradingMode::multiplicative;
    std::vector<MonoidElement::Entry> current;
    const auto& as = atoms();
    // depth-first over atoms in weight order, choosing an exponent for each
    std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t start, std::uint64_t w) {
      found.emplace_back(w, MonoidElement::from_entries(current));
      for (std::size_t i = start; i < as.size(); ++i) {
        const std::uint64_t aw = as[i].weight;
        if (mult ? w > bound / aw : w + aw > bound) break;
        std::uint64_t nw = w;
        for (std::uint32_t k = 1;; ++k) {
          if (mult ? nw > bound / aw : nw + aw > bound) break;
          nw = mult ? nw * aw : nw + aw;
          current.emplace_back(as[i].id, k);
          walk(i + 1, nw);
          current.pop_back();
        }
      }
    };
    if (bound >= (mult ? 1U : 0U)) walk(0, mult ? 1 : 0);
    std::sort(found.begin(), found.end());
    std::vector<MonoidElement> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
  }

  /// Throws LocalFinitenessError unless the registered atoms cover every weight <= bound.
  void require_complete_through(std::uint64_t bound) const {
    if (data_->complete_through && *data_->complete_through < bound)
      throw LocalFinitenessError("atoms are registered only through weight " +
                                 std::to_string(*data_->complete_through) + ", requested " + std::to_string(bound));
  }

 private:
  struct Data {
    GradingMode mode = GradingMode::multiplicative;
    std::vector<Atom> atoms;
    std::map<AtomId, std::uint64_t> weights;
    std::optional<std::uint64_t> complete_through;
  };
  std::shared_ptr<Data> data_;
};

inline std::uint64_t weight(const MonoidElement& e, const FreeMonoid& g) { return g.weight(e); }

enum class EvalRule { tabulated, recursive, product };

/// Exact-integer function on monoid elements. Values are memoized per
/// function object; copies share the cache. Evaluation is thread-safe.
class ArithmeticFunction {
 public:
  using Rule = std::function<BigInt(const MonoidElement&, const ArithmeticFunction& self)>;
  using LocalRule = std::function<BigInt(AtomId, std::uint32_t exponent)>;

  ArithmeticFunction(std::string name, EvalRule kind, Rule rule) : state_(std::make_shared<State>()) {
    state_->name = std::move(name);
    state_->kind = kind;
    state_->rule = std::move(rule);
  }

  /// Values given by a table; elements outside the table are a domain error.
  static ArithmeticFunction tabulated(std::string name,
                                      std::unordered_map<MonoidElement, BigInt, MonoidElementHash> table) {
    auto shared = std::make_shared<const decltype(table)>(std::move(table));
    return ArithmeticFunction(std::move(name), EvalRule::tabulated,
                              [shared](const MonoidElement& e, const ArithmeticFunction& self) -> BigInt {
                                auto it = shared->find(e);
                                if (it == shared->end())
                                  throw DomainError(self.name() + " is not tabulated at " + e.to_string());
                                return it->second;
                              });
  }

  static ArithmeticFunction from_rule(std::string name, std::function<BigInt(const MonoidElement&)> f) {
    return ArithmeticFunction(std::move(name), EvalRule::recursive,
                              [f = std::move(f)](const MonoidElement& e, const ArithmeticFunction&) { return f(e); });
  }

  /// f(prod a_i^k_i) = prod local(a_i, k_i); f(1) = 1.
  static ArithmeticFunction multiplicative(std::string name, LocalRule local) {
    return ArithmeticFunction(std::move(name), EvalRule::product,
                              [local = std::move(local)](const MonoidElement& e, const ArithmeticFunction&) {
                                BigInt v = 1;
                                for (const auto& [id, k] : e.entries()) {
                                  v *= local(id, k);
                                  if (v == 0) break;
                                }
                                return v;
                              });
  }

  BigInt operator()(const MonoidElement& e) const {
    {
      std::lock_guard<std::mutex> lock(state_->mutex);
      auto it = state_->cache.find(e);
      if (it != state_->cache.end()) return it->second;
    }
    BigInt v = state_->rule(e, *this);
    std::lock_guard<std::mutex> lock(state_->mutex);
    state_->cache.emplace(e, v);
    return v;
  }

  const std::string& name() const { return state_->name; }
  EvalRule rule_kind() const { return state_->kind; }

 private:
  struct State {
    std::string name;
    EvalRule kind = EvalRule::recursive;
    Rule rule;
    std::mutex mutex;
    std::unordered_map<MonoidElement, BigInt, MonoidElementHash> cache;
  };
  std::shared_ptr<State> state_;
};

inline ArithmeticFunction delta_function() {
  return ArithmeticFunction::from_rule("delta", [](const MonoidElement& e) { return BigInt(e.is_identity() ? 1 : 0); });
}

inline ArithmeticFunction zeta_function() {
  return ArithmeticFunction::from_rule("zeta", [](const MonoidElement&) { return BigInt(1); });
}

/// mu(1) = 1 and mu(x) = -sum of mu(a) over proper divisors a of x.
inline ArithmeticFunction mobius_function() {
  return ArithmeticFunction("mu", EvalRule::recursive, [](const MonoidElement& e, const ArithmeticFunction& self) {
    if (e.is_identity()) return BigInt(1);
    BigInt s = 0;
    for (const auto& [a, b] : divisor_pairs(e))
      if (!b.is_identity()) s += self(a);
#ifdef ARITHGEO_FAULT_INJECT_MOBIUS
    // deliberately wrong on cubes of atoms, for exercising failure reporting
    if (e.distinct_atoms() == 1 && e.total_exponent() == 3) return BigInt(1) - s;
#endif
    return BigInt(-s);
  });
}

inline ArithmeticFunction abs_mobius_function() {
  auto mu = mobius_function();
  return ArithmeticFunction::from_rule("abs_mu", [mu](const MonoidElement& e) { return BigInt(abs(mu(e))); });
}

/// f(x) = g(weight(x)) for a function g of the grade.
inline ArithmeticFunction graded_function(std::string name, const FreeMonoid& monoid,
                                          std::function<BigInt(std::uint64_t)> g) {
  return ArithmeticFunction::from_rule(std::move(name),
                                       [monoid, g = std::move(g)](const MonoidElement& e) { return g(monoid.weight(e)); });
}

/// The norm N(x) = weight(x) of a multiplicatively graded monoid.
inline ArithmeticFunction norm_function(const FreeMonoid& monoid) {
  return graded_function("norm", monoid, [](std::uint64_t w) { return BigInt(w); });
}

/// (f*g)(x) = sum over d | x of f(d) g(x/d).
inline ArithmeticFunction convolve(const ArithmeticFunction& f, const ArithmeticFunction& g) {
  return ArithmeticFunction("(" + f.name() + "*" + g.name() + ")", EvalRule::recursive,
                            [f, g](const MonoidElement& e, const ArithmeticFunction&) {
                              BigInt s = 0;
                              for (const auto& [a, b] : divisor_pairs(e)) {
                                BigInt fa = f(a);
                                if (fa != 0) s += fa * g(b);
                              }
                              return s;
                            });
}

/// Convolution inverse; requires f(1) = +-1.
inline ArithmeticFunction invert(const ArithmeticFunction& f) {
  const BigInt f1 = f(MonoidElement{});
  auto inv1 = detail::unit_inverse(f1);
  if (!inv1) throw DomainError(f.name() + "(1) = " + f1.str() + " is not invertible over the integers");
  return ArithmeticFunction("inv(" + f.name() + ")", EvalRule::recursive,
                            [f, u = *inv1](const MonoidElement& e, const ArithmeticFunction& self) {
                              if (e.is_identity()) return u;
                              BigInt s = 0;
                              for (const auto& [a, b] : divisor_pairs(e)) {
                                if (a.is_identity()) continue;
                                BigInt fa = f(a);
                                if (fa != 0) s += fa * self(b);
                              }
                              return BigInt(-u * s);
                            });
}

/// First element (in weight order) of weight <= bound where f and g differ.
inline std::optional<MonoidElement> first_difference(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                                     const FreeMonoid& monoid, std::uint64_t bound) {
  for (const auto& e : monoid.elements_up_to(bound))
    if (f(e) != g(e)) return e;
  return std::nullopt;
}

struct InversionReport {
  bool forward_holds = false;   // f = g * zeta
  bool backward_holds = false;  // g = f * mu
  std::optional<MonoidElement> counterexample;
  std::string detail;

  bool passed() const { return forward_holds && backward_holds; }
  /// The two relations hold or fail together.
  bool equivalence_holds() const { return forward_holds == backward_holds; }
};

/// Checks f = g*zeta and g = f*mu on all elements of weight <= bound.
inline InversionReport mobius_inversion_check(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                              const FreeMonoid& monoid, std::uint64_t bound) {
  InversionReport r;
  const auto forward = first_difference(f, convolve(g, zeta_function()), monoid, bound);
  const auto backward = first_difference(g, convolve(f, mobius_function()), monoid, bound);
  r.forward_holds = !forward;
  r.backward_holds = !backward;
  if (forward) {
    r.counterexample = forward;
    r.detail = f.name() + " != " + g.name() + "*zeta at " + forward->to_string();
  } else if (backward) {
    r.counterexample = backward;
    r.detail = g.name() + " != " + f.name() + "*mu at " + backward->to_string();
  }
  return r;
}

/// Coefficient at n (multiplicative grading, Dirichlet series) or at d
/// (additive grading, power series) is the sum of f over elements of that weight.
inline TruncatedSeries<BigInt> pushforward_series(const ArithmeticFunction& f, const FreeMonoid& monoid,
                                                  std::uint64_t bound) {
  monoid.require_complete_through(bound);
  const SeriesMode mode = monoid.mode() == GradingMode::multiplicative ? SeriesMode::dirichlet : SeriesMode::power;
  TruncatedSeries<BigInt> s(mode, bound);
  for (const auto& e : monoid.elements_up_to(bound)) s[monoid.weight(e)] += f(e);
  return s;
}

}  // namespace arithgeo
