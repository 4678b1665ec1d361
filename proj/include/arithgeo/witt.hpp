// p-typical Witt vectors of finite length: universal addition and multiplication
// polynomials over Z, arithmetic over finite fields, unit groups, and the quotient
// groups W_k(F_{q^2})^x / W_k(F_q)^x whose orders are psi values.
#pragma once

#include "arithgeo/classical.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/finite_field.hpp"
#include "arithgeo/polynomial.hpp"
#include "arithgeo/quadfield.hpp"
#include "arithgeo/report.hpp"
#include "arithgeo/varzeta.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace arithgeo::witt {

/// Ghost components w_i = sum_{j <= i} p^j v_j^{p^{i-j}}.
inline std::vector<BigInt> ghost(const std::vector<BigInt>& v, std::uint64_t p) {
  std::vector<BigInt> w(v.size(), BigInt(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      w[i] += ipow(BigInt(p), j) * ipow(v[j], ipow(BigInt(p), i - j).convert_to<std::uint64_t>());
  return w;
}

constexpr unsigned kMaxLength = 4;
/// Largest number of term products one polynomial multiplication may perform.
constexpr std::uint64_t kMaxTermProducts = 4'000'000;

/// S_i and P_i in the variables X_0..X_{k-1} (indices 0..k-1) and Y_0..Y_{k-1} (indices k..2k-1).
struct WittUniversalPolys {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::vector<IntPoly> S;
  std::vector<IntPoly> P;
};

namespace detail {

inline IntPoly checked_mul(const IntPoly& a, const IntPoly& b, std::uint32_t p, unsigned k) {
  if (static_cast<std::uint64_t>(a.term_count()) * b.term_count() > kMaxTermProducts)
    throw ResourceError("universal Witt polynomials for p=" + std::to_string(p) + ", k=" + std::to_string(k) +
                        " need a product of " + std::to_string(a.term_count()) + " x " + std::to_string(b.term_count()) +
                        " terms, beyond the cap of " + std::to_string(kMaxTermProducts));
  return a * b;
}

inline IntPoly checked_pow(IntPoly base, std::uint64_t e, std::uint32_t p, unsigned k) {
  IntPoly r(1);
  for (; e > 0; e >>= 1) {
    if (e & 1U) r = checked_mul(r, base, p, k);
    if (e > 1) base = checked_mul(base, base, p, k);
  }
  return r;
}

/// Solves ghost(Z) = target level by level: p^n Z_n = target_n - sum_{j<n} p^j Z_j^{p^{n-j}}.
inline std::vector<IntPoly> solve_ghost(const std::vector<IntPoly>& target, std::uint32_t p, unsigned k) {
  std::vector<IntPoly> Z;
  std::vector<IntPoly> powers;  // powers[j] = Z_j^{p^{n-j}} at the current level n
  for (unsigned n = 0; n < target.size(); ++n) {
    for (auto& pw : powers) pw = checked_pow(pw, p, p, k);
    IntPoly rest = target[n];
    BigInt pj = 1;
    for (unsigned j = 0; j < n; ++j, pj *= p) rest -= pj * powers[j];
    IntPoly zn;
    const BigInt pn = ipow(BigInt(p), n);
    if (!rest.divide_exact(pn, zn))
      throw InternalError("ghost equation at level " + std::to_string(n) + " is not divisible by " + pn.str() +
                          " over Z");
    Z.push_back(zn);
    powers.push_back(zn);
  }
  return Z;
}

inline std::vector<IntPoly> ghost_polys(std::uint32_t p, unsigned k, std::size_t offset) {
  std::vector<IntPoly> w;
  for (unsigned n = 0; n < k; ++n) {
    IntPoly s;
    BigInt pj = 1;
    for (unsigned j = 0; j <= n; ++j, pj *= p)
      s += pj * IntPoly::variable(offset + j, static_cast<std::uint32_t>(ipow(BigInt(p), n - j)));
    w.push_back(s);
  }
  return w;
}

}  // namespace detail

/// Computed once per (p, k) and cached. Throws ResourceError when a multiplication would
/// exceed kMaxTermProducts and InternalError when some ghost division is inexact.
inline const WittUniversalPolys& universal_polys(std::uint32_t p, unsigned k) {
  if (!classical::is_prime(p)) throw InputError("p=" + std::to_string(p) + " is not prime");
  if (k < 1 || k > kMaxLength) throw ResourceError("Witt length k must be in 1.." + std::to_string(kMaxLength));
  static std::mutex lock;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const WittUniversalPolys>> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find({p, k}); it != cache.end()) return *it->second;
  }
  auto polys = std::make_shared<WittUniversalPolys>();
  polys->p = p;
  polys->k = k;
  const auto wx = detail::ghost_polys(p, k, 0), wy = detail::ghost_polys(p, k, k);
  std::vector<IntPoly> sum, prod;
  for (unsigned n = 0; n < k; ++n) {
    sum.push_back(wx[n] + wy[n]);
    prod.push_back(detail::checked_mul(wx[n], wy[n], p, k));
  }
  polys->S = detail::solve_ghost(sum, p, k);
  polys->P = detail::solve_ghost(prod, p, k);
  std::lock_guard<std::mutex> guard(lock);
  return *cache.emplace(std::make_pair(p, k), std::move(polys)).first->second;
}

/// Evaluates a universal polynomial on integer Witt vectors x and y.
inline BigInt evaluate(const IntPoly& f, const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  std::vector<BigInt> v = x;
  v.insert(v.end(), y.begin(), y.end());
  return f.evaluate(v);
}

/// Witt vectors (a_0, ..., a_{k-1}) with coordinates in F_{p^a}.
using WittVector = std::vector<ff::Elem>;

/// W_k(F_{p^a}): the universal polynomials reduced mod p and evaluated with field tables.
class WittRing {
 public:
  WittRing(std::uint32_t p, unsigned a, unsigned k) : field_(std::make_shared<ff::ExtensionField>(p, a)), k_(k) {
    const auto& u = universal_polys(p, k);
    for (const auto& f : u.S) sum_.push_back(compile(f));
    for (const auto& f : u.P) prod_.push_back(compile(f));
  }

  const ff::ExtensionField& field() const { return *field_; }
  std::uint32_t p() const { return field_->characteristic(); }
  unsigned length() const { return k_; }

  /// q^k elements, indexed by base-q digits with a_0 least significant.
  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < k_; ++i) n *= field_->size();
    return n;
  }

  WittVector element(std::uint64_t index) const {
    WittVector v(k_);
    for (unsigned i = 0; i < k_; ++i, index /= field_->size()) v[i] = static_cast<ff::Elem>(index % field_->size());
    return v;
  }

  std::uint64_t index(const WittVector& v) const {
    std::uint64_t n = 0;
    for (unsigned i = k_; i-- > 0;) n = n * field_->size() + v[i];
    return n;
  }

  WittVector zero() const { return WittVector(k_, 0); }
  WittVector one() const {
    WittVector v(k_, 0);
    v[0] = 1;
    return v;
  }

  WittVector add(const WittVector& u, const WittVector& v) const { return apply(sum_, u, v); }
  WittVector mul(const WittVector& u, const WittVector& v) const { return apply(prod_, u, v); }

  WittVector pow(WittVector base, std::uint64_t e) const {
    WittVector r = one();
    for (; e > 0; e >>= 1) {
      if (e & 1U) r = mul(r, base);
      if (e > 1) base = mul(base, base);
    }
    return r;
  }

  /// Exhaustive search for a multiplicative inverse.
  std::optional<WittVector> inverse_by_search(const WittVector& u) const {
    const WittVector e = one();
    for (std::uint64_t i = 0; i < size(); ++i) {
      WittVector v = element(i);
      if (mul(u, v) == e) return v;
    }
    return std::nullopt;
  }

 private:
  struct CompiledTerm {
    ff::Elem coef;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
  };
  using Compiled = std::vector<CompiledTerm>;

  Compiled compile(const IntPoly& f) const {
    Compiled c;
    const BigInt p = this->p();
    for (const auto& [m, coef] : f.terms()) {
      BigInt r = coef % p;
      if (r < 0) r += p;
      if (r == 0) continue;
      CompiledTerm t{field_->from_int(static_cast<std::int64_t>(r)), {}};
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) t.powers.emplace_back(i, m[i]);
      c.push_back(std::move(t));
    }
    return c;
  }

  WittVector apply(const std::vector<Compiled>& polys, const WittVector& u, const WittVector& v) const {
    if (u.size() != k_ || v.size() != k_) throw InputError("Witt vectors of mismatched length");
    for (unsigned i = 0; i < k_; ++i)
      if (u[i] >= field_->size() || v[i] >= field_->size())
        throw InputError("Witt vector coordinate outside F_" + std::to_string(field_->size()));
    const ff::ExtensionField& F = *field_;
    WittVector r(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      ff::Elem s = 0;
      for (const CompiledTerm& t : polys[i]) {
        ff::Elem x = t.coef;
        for (const auto& [var, e] : t.powers) {
          const ff::Elem base = var < k_ ? u[var] : v[var - k_];
          if (base == 0) {
            x = 0;
            break;
          }
          x = F.mul(x, F.pow(base, e));
        }
        s = F.add(s, x);
      }
      r[i] = s;
    }
    return r;
  }

  std::shared_ptr<ff::ExtensionField> field_;
  unsigned k_;
  std::vector<Compiled> sum_;
  std::vector<Compiled> prod_;
};

/// Rings up to this size have their units found by exhaustive inverse search.
constexpr std::uint64_t kExhaustiveUnitCap = 1024;
/// Largest W_k(F_{p^{2a}}) the quotient-group construction will enumerate.
constexpr std::uint64_t kMaxWittGroupSize = std::uint64_t{1} << 18;

struct UnitCount {
  std::uint64_t units = 0;
  bool exhaustive = false;  // every element was tested by inverse search
};

/// #W_k(F_q)^x. Exhaustive inverse search up to kExhaustiveUnitCap elements, where
/// the criterion "a_0 != 0" is also checked element by element; beyond that the
/// criterion alone is used.
inline UnitCount unit_count(const WittRing& R) {
  UnitCount c;
  if (R.size() <= kExhaustiveUnitCap) {
    c.exhaustive = true;
    for (std::uint64_t i = 0; i < R.size(); ++i) {
      const WittVector v = R.element(i);
      const bool invertible = R.inverse_by_search(v).has_value();
      if (invertible != (v[0] != 0))
        throw InternalError("Witt vector " + std::to_string(i) + " contradicts the unit criterion a_0 != 0");
      c.units += invertible;
    }
  } else {
    for (std::uint64_t i = 0; i < R.size(); ++i) c.units += R.element(i)[0] != 0;
  }
  return c;
}

struct QuotientGroupReport {
  std::uint32_t p = 0;
  unsigned k = 0;
  unsigned a = 1;  // base field F_{p^a} inside F_{p^{2a}}
  std::uint64_t big_order = 0;
  std::uint64_t sub_order = 0;
  std::uint64_t coset_count = 0;
  BigInt psi;  // p^{a(k-1)} (p^a + 1)
  bool subgroup_verified = false;
  bool units_exhaustive = false;
  std::optional<bool> cyclic;  // observation only

  bool matches_psi() const { return BigInt(coset_count) == psi; }
};

/// Builds W_k(F_{p^{2a}})^x, embeds W_k(F_{p^a})^x coordinatewise through the subfield
/// {x : x^{p^a} = x}, checks it is a subgroup, and counts cosets by marking u*H.
inline QuotientGroupReport psi_group(std::uint32_t p, unsigned k, unsigned a = 1) {
  if (a < 1) throw InputError("base field degree must be positive");
  {
    std::uint64_t size = 1;
    for (unsigned i = 0; i < 2 * a * k; ++i) {
      size *= p;
      if (size > kMaxWittGroupSize)
        throw ResourceError("W_" + std::to_string(k) + "(F_" + std::to_string(p) + "^" + std::to_string(2 * a) +
                            ") exceeds " + std::to_string(kMaxWittGroupSize) + " elements");
    }
  }
  const WittRing big(p, 2 * a, k);
  const ff::ExtensionField& F = big.field();
  std::uint64_t Qa = 1;
  for (unsigned i = 0; i < a; ++i) Qa *= p;
  std::vector<ff::Elem> subfield;
  for (ff::Elem x = 0; x < F.size(); ++x)
    if (F.pow(x, Qa) == x) subfield.push_back(x);
  if (subfield.size() != Qa) throw InternalError("subfield of the wrong size");

  QuotientGroupReport r;
  r.p = p;
  r.k = k;
  r.a = a;
  r.psi = ipow(BigInt(Qa), k - 1) * (Qa + 1);

  const UnitCount bu = unit_count(big);
  r.big_order = bu.units;
  r.units_exhaustive = bu.exhaustive;

  // H: vectors over the subfield with a_0 != 0
  std::vector<WittVector> H;
  {
    WittVector v(k, 0);
    std::vector<std::size_t> digit(k, 0);
    while (true) {
      for (unsigned i = 0; i < k; ++i) v[i] = subfield[digit[i]];
      if (v[0] != 0) H.push_back(v);
      unsigned i = 0;
      for (; i < k; ++i) {
        if (++digit[i] < subfield.size()) break;
        digit[i] = 0;
      }
      if (i == k) break;
    }
  }
  r.sub_order = H.size();
  if (a == 1 && bu.exhaustive) {
    const WittRing small(p, 1, k);
    if (unit_count(small).units != H.size()) throw InternalError("embedded unit group has the wrong order");
  }

  // subgroup: closed under products and containing inverses
  std::unordered_map<std::uint64_t, std::size_t> in_H;
  for (std::size_t i = 0; i < H.size(); ++i) in_H.emplace(big.index(H[i]), i);
  bool closed = true;
  for (const auto& x : H) {
    bool has_inverse = false;
    for (const auto& y : H) {
      const WittVector xy = big.mul(x, y);
      if (!in_H.count(big.index(xy))) closed = false;
      if (xy == big.one()) has_inverse = true;
    }
    closed = closed && has_inverse;
  }
  r.subgroup_verified = closed;

  // cosets u*H
  std::vector<std::int64_t> coset_of(big.size(), -1);
  std::vector<WittVector> reps;
  for (std::uint64_t i = 0; i < big.size(); ++i) {
    const WittVector u = big.element(i);
    if (u[0] == 0 || coset_of[i] >= 0) continue;
    const auto id = static_cast<std::int64_t>(reps.size());
    reps.push_back(u);
    for (const auto& h : H) {
      const std::uint64_t j = big.index(big.mul(u, h));
      if (coset_of[j] >= 0 && coset_of[j] != id) throw InternalError("cosets overlap");
      coset_of[j] = id;
    }
  }
  r.coset_count = reps.size();
  if (r.coset_count * r.sub_order != r.big_order)
    throw InternalError("coset count times subgroup order differs from the group order");

  // cyclic when some coset has order equal to the number of cosets
  const std::int64_t identity = coset_of[big.index(big.one())];
  bool cyclic = false;
  for (const auto& g : reps) {
    WittVector x = g;
    std::uint64_t order = 1;
    while (coset_of[big.index(x)] != identity) {
      x = big.mul(x, g);
      ++order;
    }
    if (order == r.coset_count) {
      cyclic = true;
      break;
    }
  }
  r.cyclic = cyclic;
  return r;
}

/// Cached psi_group results keyed by (p, k, a).
class QuotientGroupCache {
 public:
  const QuotientGroupReport& get(std::uint32_t p, unsigned k, unsigned a = 1) {
    auto key = std::make_tuple(p, k, a);
    auto it = reports_.find(key);
    if (it == reports_.end()) it = reports_.emplace(key, psi_group(p, k, a)).first;
    return it->second;
  }

 private:
  std::map<std::tuple<std::uint32_t, unsigned, unsigned>, QuotientGroupReport> reports_;
};

/// #G(n) as the product of per-prime-power coset counts.
inline BigInt G_n_order(std::uint64_t n, QuotientGroupCache* cache = nullptr) {
  if (n < 1) throw DomainError("G(n) needs n >= 1");
  QuotientGroupCache local;
  QuotientGroupCache& c = cache ? *cache : local;
  BigInt order = 1;
  for (const auto& [p, k] : classical::Factorization(n).factors())
    order *= c.get(static_cast<std::uint32_t>(p), k).coset_count;
  return order;
}

inline std::string describe(const QuotientGroupReport& r) {
  return "#W_" + std::to_string(r.k) + "(F_" + std::to_string(r.p) + "^" + std::to_string(2 * r.a) +
         ")^x=" + std::to_string(r.big_order) + ", #W_" + std::to_string(r.k) + "(F_" + std::to_string(r.p) + "^" +
         std::to_string(r.a) + ")^x=" + std::to_string(r.sub_order) + ", cosets=" + std::to_string(r.coset_count) +
         ", psi=" + r.psi.str();
}

// Checks.

/// ghost(u + v) = ghost(u) + ghost(v) and ghost(u * v) = ghost(u) * ghost(v) on random integer vectors.
inline CheckResult verify_ghost_homomorphism(std::uint32_t p, unsigned k, unsigned samples, std::uint64_t seed) {
  const Params params{{"p", std::to_string(p)}, {"k", std::to_string(k)}, {"samples", std::to_string(samples)},
                      {"seed", std::to_string(seed)}};
  const auto& u = universal_polys(p, k);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-6, 6);
  for (unsigned s = 0; s < samples; ++s) {
    std::vector<BigInt> x(k), y(k);
    for (auto& c : x) c = pick(rng);
    for (auto& c : y) c = pick(rng);
    std::vector<BigInt> sum(k), prod(k);
    for (unsigned i = 0; i < k; ++i) {
      sum[i] = evaluate(u.S[i], x, y);
      prod[i] = evaluate(u.P[i], x, y);
    }
    const auto gx = ghost(x, p), gy = ghost(y, p), gs = ghost(sum, p), gp = ghost(prod, p);
    for (unsigned i = 0; i < k; ++i)
      if (gs[i] != gx[i] + gy[i] || gp[i] != gx[i] * gy[i])
        return make_result("WITT_GHOST_HOMOMORPHISM", params, false,
                           "sample " + std::to_string(s) + ", ghost component " + std::to_string(i) + " disagrees");
  }
  return make_result("WITT_GHOST_HOMOMORPHISM", params, true,
                     std::to_string(samples) + " samples; S and P term counts " +
                         std::to_string(u.S.back().term_count()) + ", " + std::to_string(u.P.back().term_count()));
}

/// Rings up to this size are checked on every triple; larger ones on sampled triples.
constexpr std::uint64_t kExhaustiveTripleCap = 64;
constexpr unsigned kSampledTriples = 3000;

/// Commutativity, associativity and distributivity of W_k(F_{p^a}).
inline CheckResult verify_ring_axioms(std::uint32_t p, unsigned a, unsigned k, std::uint64_t seed) {
  const WittRing R(p, a, k);
  const bool exhaustive = R.size() <= kExhaustiveTripleCap;
  const Params params{{"q", std::to_string(R.field().size())}, {"k", std::to_string(k)}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, R.size() - 1);
  const std::uint64_t total = exhaustive ? R.size() * R.size() * R.size() : kSampledTriples;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t i = t % R.size(), j = t / R.size() % R.size(), l = t / R.size() / R.size();
    if (!exhaustive) {
      i = pick(rng);
      j = pick(rng);
      l = pick(rng);
    }
    const WittVector x = R.element(i), y = R.element(j), z = R.element(l);
    const char* broken = nullptr;
    if (R.add(x, y) != R.add(y, x) || R.mul(x, y) != R.mul(y, x))
      broken = "commutativity";
    else if (R.add(R.add(x, y), z) != R.add(x, R.add(y, z)) || R.mul(R.mul(x, y), z) != R.mul(x, R.mul(y, z)))
      broken = "associativity";
    else if (R.mul(x, R.add(y, z)) != R.add(R.mul(x, y), R.mul(x, z)))
      broken = "distributivity";
    else if (R.add(x, R.zero()) != x || R.mul(x, R.one()) != x)
      broken = "identity elements";
    if (broken)
      return make_result("WITT_RING_AXIOMS", params, false,
                         std::string(broken) + " fails on elements " + std::to_string(i) + ", " + std::to_string(j) +
                             ", " + std::to_string(l));
  }
  return make_result("WITT_RING_AXIOMS", params, true,
                     std::to_string(total) + (exhaustive ? " triples (all)" : " sampled triples"));
}

/// #W_k(F_q)^x = q^{k-1}(q - 1).
inline CheckResult verify_unit_count(std::uint32_t p, unsigned a, unsigned k) {
  const WittRing R(p, a, k);
  const UnitCount c = unit_count(R);
  const std::uint64_t q = R.field().size();
  const BigInt want = ipow(BigInt(q), k - 1) * (q - 1);
  const Params params{{"q", std::to_string(q)}, {"k", std::to_string(k)}};
  return make_result("WITT_UNIT_COUNT", params, BigInt(c.units) == want,
                     "#units=" + std::to_string(c.units) + " expected " + want.str() +
                         (c.exhaustive ? " (exhaustive inverse search)" : " (criterion a_0 != 0)"));
}

inline CheckResult verify_psi_group(std::uint32_t p, unsigned k, QuotientGroupCache* cache = nullptr) {
  QuotientGroupCache local;
  const Params params{{"p", std::to_string(p)}, {"k", std::to_string(k)}};
  const QuotientGroupReport& r = (cache ? *cache : local).get(p, k);
  std::string detail = describe(r);
  if (r.cyclic) detail += *r.cyclic ? "; observed cyclic" : "; observed non-cyclic";
  return make_result("WITT_PSI_GROUP", params, r.subgroup_verified && r.matches_psi(), detail);
}

inline CheckResult verify_G_n(std::uint64_t n, QuotientGroupCache* cache = nullptr) {
  const Params params{{"n", std::to_string(n)}};
  const BigInt order = G_n_order(n, cache);
  const BigInt want(classical::psi(n));
  return make_result("WITT_G_N", params, order == want, "#G(n)=" + order.str() + " psi(n)=" + want.str());
}

/// For every effective 0-cycle sum k_i x_i of degree <= D, prod #G over its points with
/// the residue field F_{q^{deg x}} equals psi_X of the cycle.
inline CheckResult verify_variety_G(const varzeta::ClosedPointSpectrum& s, unsigned D, QuotientGroupCache* cache = nullptr) {
  QuotientGroupCache local;
  QuotientGroupCache& c = cache ? *cache : local;
  const Params params{{"q", std::to_string(s.q)}, {"D", std::to_string(D)}};
  const FreeMonoid cycles = varzeta::zero_cycle_monoid(s, D);
  const auto psi = varzeta::cycle_function(varzeta::CycleFn::psi, s.q);
  std::uint64_t checked = 0;
  for (const auto& alpha : cycles.elements_up_to(D)) {
    BigInt order = 1;
    for (const auto& [id, k] : alpha.entries())
      order *= c.get(static_cast<std::uint32_t>(s.q), k, varzeta::closed_point_degree(id)).coset_count;
    ++checked;
    if (order != psi(alpha))
      return make_result("WITT_VARIETY_G", params, false,
                         "cycle " + alpha.to_string() + ": #G=" + order.str() + " psi_X=" + psi(alpha).str());
  }
  return make_result("WITT_VARIETY_G", params, true,
                     std::to_string(checked) + " cycles; residue fields taken per point as F_{q^deg(x)}");
}

/// For every ideal of norm <= bound, prod #G over its prime powers with residue field
/// O_K/p = F_{N(p)} equals psi_K.
inline CheckResult verify_number_field_G(const quadfield::QuadraticField& K, std::uint64_t bound,
                                         QuotientGroupCache* cache = nullptr) {
  QuotientGroupCache local;
  QuotientGroupCache& c = cache ? *cache : local;
  const Params params{{"field", K.name()}, {"norm_bound", std::to_string(bound)}};
  std::uint64_t checked = 0;
  for (const auto& e : quadfield::enumerate_ideals(K, bound)) {
    BigInt order = 1;
    for (const auto& [id, k] : e.ideal.entries()) {
      const auto atom = K.atom(id);
      order *= c.get(static_cast<std::uint32_t>(atom.p), k, static_cast<unsigned>(atom.residue_degree)).coset_count;
    }
    ++checked;
    const BigInt want = quadfield::psi_K(K, e.ideal);
    if (order != want)
      return make_result("WITT_NUMBER_FIELD_G", params, false,
                         "ideal " + e.ideal.to_string() + " (norm " + std::to_string(e.norm) + "): #G=" + order.str() +
                             " psi_K=" + want.str());
  }
  return make_result("WITT_NUMBER_FIELD_G", params, true, std::to_string(checked) + " ideals");
}

/// (p, k) pairs whose quotient groups G(p^k) are constructed by the suite.
inline const std::vector<std::pair<std::uint32_t, unsigned>>& psi_group_cases() {
  static const std::vector<std::pair<std::uint32_t, unsigned>> cases = {
      {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {5, 3}, {2, 4}};
  return cases;
}

inline constexpr std::uint64_t kGnCases[] = {12, 18, 45, 100};

/// Ghost homomorphism, ring axioms, unit counts, G(p^k), G(n), and the hooks for P^1 over F_2
/// and the Gaussian integers.
inline CheckReport witt_suite(std::uint64_t seed) {
  CheckReport report;
  report.suite = "witt";
  for (std::uint32_t p : {2U, 3U, 5U})
    for (unsigned k = 1; k <= kMaxLength; ++k) report.add(verify_ghost_homomorphism(p, k, 200, seed + 131 * p + k));
  for (const auto& [p, k] : psi_group_cases()) {
    report.add(verify_ring_axioms(p, 1, k, seed + 7 * p + k));
    report.add(verify_unit_count(p, 1, k));
  }
  for (const auto& [p, k] : psi_group_cases()) {
    if (ipow(BigInt(p), 2 * k) > kExhaustiveUnitCap) continue;
    report.add(verify_ring_axioms(p, 2, k, seed + 11 * p + k));
    report.add(verify_unit_count(p, 2, k));
  }
  QuotientGroupCache cache;
  for (const auto& [p, k] : psi_group_cases()) report.add(verify_psi_group(p, k, &cache));
  for (std::uint64_t n : kGnCases) report.add(verify_G_n(n, &cache));
  const auto P1 = varzeta::compute_variety_data(varzeta::builtin_variety("P1").with_prime(2), 3);
  report.add(verify_variety_G(P1.closed_points, 3, &cache));
  report.add(verify_number_field_G(quadfield::QuadraticField(-1), 30, &cache));
  return report;
}

}  // namespace arithgeo::witt
