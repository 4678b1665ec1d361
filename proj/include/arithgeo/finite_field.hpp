// Finite fields F_{p^m} and univariate polynomials over them.
//
// An element of F_{p^m} is stored as the integer sum c_i p^i of the
// coefficients of its residue modulo the defining polynomial. Multiplication
// goes through discrete log / exponential tables built from a primitive
// element, so every field operation is a table lookup or an m-digit loop.
#pragma once

#include "arithgeo/classical.hpp"
#include "arithgeo/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace arithgeo::ff {

using Elem = std::uint32_t;

/// Coefficients over F_p, lowest degree first, no trailing zeros (zero polynomial is empty).
using PrimePoly = std::vector<std::uint32_t>;

namespace poly_fp {

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const PrimePoly& f) { return static_cast<int>(f.size()) - 1; }

inline std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

inline PrimePoly sub(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline PrimePoly mod(PrimePoly a, const PrimePoly& f, std::uint32_t p) {
  trim(a);
  const int df = degree(f);
  const std::uint64_t lead_inv = inverse(f.back(), p);
  while (degree(a) >= df) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - f.size();
    for (std::size_t i = 0; i < f.size(); ++i) a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * f[i] % p) % p);
    trim(a);
  }
  return a;
}

inline PrimePoly mul(const PrimePoly& a, const PrimePoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  PrimePoly out(r.begin(), r.end());
  trim(out);
  return out;
}

inline PrimePoly mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f, std::uint32_t p) {
  return mod(mul(a, b, p), f, p);
}

/// x^(p^k) mod f.
inline PrimePoly frobenius_power_of_x(std::uint64_t k, const PrimePoly& f, std::uint32_t p) {
  PrimePoly r = mod({0, 1}, f, p);
  for (std::uint64_t i = 0; i < k; ++i) {
    // raise to the p-th power by repeated multiplication
    PrimePoly base = r, acc{1};
    for (std::uint32_t e = p; e > 0; e >>= 1) {
      if (e & 1U) acc = mulmod(acc, base, f, p);
      base = mulmod(base, base, f, p);
    }
    r = acc;
  }
  return r;
}

inline PrimePoly gcd(PrimePoly a, PrimePoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test: x^(p^m) = x mod f and gcd(x^(p^(m/l)) - x, f) = 1 for each prime l | m.
inline bool is_irreducible(const PrimePoly& f, std::uint32_t p) {
  const int m = degree(f);
  if (m < 1) return false;
  if (m == 1) return true;
  if (frobenius_power_of_x(static_cast<std::uint64_t>(m), f, p) != mod({0, 1}, f, p)) return false;
  for (const auto& [l, k] : classical::Factorization(static_cast<std::uint64_t>(m)).factors()) {
    const PrimePoly h = sub(frobenius_power_of_x(static_cast<std::uint64_t>(m) / l, f, p), {0, 1}, p);
    if (degree(gcd(h, f, p)) != 0) return false;
  }
  return true;
}

}  // namespace poly_fp

constexpr unsigned kMaxExtensionDegree = 8;
constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 22;

class ExtensionField {
 public:
  /// F_{p^m} with the smallest monic irreducible modulus, comparing the
  /// coefficient strings (c_{m-1}, ..., c_0) lexicographically.
  ExtensionField(std::uint32_t p, unsigned m) : p_(p), m_(m) {
    if (!classical::is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    if (m < 1 || m > kMaxExtensionDegree)
      throw ResourceError("extension degree " + std::to_string(m) + " outside 1.." + std::to_string(kMaxExtensionDegree));
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
      q *= p;
      if (q > kMaxFieldSize) throw ResourceError("field of size " + std::to_string(p) + "^" + std::to_string(m) + " exceeds the table budget");
    }
    q_ = static_cast<Elem>(q);
    pow_p_.resize(m + 1, 1);
    for (unsigned i = 1; i <= m; ++i) pow_p_[i] = pow_p_[i - 1] * p;
    find_modulus();
    build_tables();
  }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  Elem size() const { return q_; }
  const PrimePoly& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  /// The residue of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const {
    const auto sp = static_cast<std::int64_t>(p_);
    return static_cast<Elem>(((n % sp) + sp) % sp);
  }

  std::vector<std::uint32_t> coefficients(Elem a) const {
    std::vector<std::uint32_t> c(m_);
    for (unsigned i = 0; i < m_; ++i, a /= p_) c[i] = a % p_;
    return c;
  }

  Elem from_coefficients(const std::vector<std::uint32_t>& c) const {
    Elem a = 0;
    for (unsigned i = 0; i < m_ && i < c.size(); ++i) a += (c[i] % p_) * pow_p_[i];
    return a;
  }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem r = 0;
    for (unsigned i = 0; i < m_; ++i, a /= p_, b /= p_) r += ((a % p_ + b % p_) % p_) * pow_p_[i];
    return r;
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    Elem r = 0;
    for (unsigned i = 0; i < m_; ++i, a /= p_) r += ((p_ - a % p_) % p_) * pow_p_[i];
    return r;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("division by zero in F_" + std::to_string(q_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  }

  /// The absolute Frobenius a -> a^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }

  Elem primitive_element() const { return exp_.size() > 1 ? exp_[1] : 1; }
  std::uint32_t log(Elem a) const { return log_.at(a); }
  Elem exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  /// Multiplication of residues modulo the defining polynomial, without tables.
  Elem mul_by_polynomials(Elem a, Elem b) const {
    PrimePoly x = coefficients(a), y = coefficients(b);
    poly_fp::trim(x);
    poly_fp::trim(y);
    return from_coefficients(poly_fp::mulmod(x, y, modulus_, p_));
  }

  std::string modulus_string() const {
    std::string s;
    for (int i = static_cast<int>(m_); i >= 0; --i) {
      const std::uint32_t c = modulus_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!s.empty()) s += " + ";
      if (c != 1 || i == 0) s += std::to_string(c);
      if (c != 1 && i > 0) s += "*";
      if (i > 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return s;
  }

 private:
  void find_modulus() {
    if (m_ == 1) {
      modulus_ = {0, 1};
      return;
    }
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m_; ++i) count *= p_;
    for (std::uint64_t code = 0; code < count; ++code) {
      // code read base p with c_{m-1} most significant
      PrimePoly f(m_ + 1, 0);
      f[m_] = 1;
      std::uint64_t c = code;
      for (unsigned i = 0; i < m_; ++i, c /= p_) f[i] = static_cast<std::uint32_t>(c % p_);
      if (f[0] == 0) continue;
      if (poly_fp::is_irreducible(f, p_)) {
        modulus_ = f;
        return;
      }
    }
    throw InternalError("no irreducible polynomial of degree " + std::to_string(m_) + " over F_" + std::to_string(p_));
  }

  void build_tables() {
    const Elem order = q_ - 1;
    std::vector<std::uint64_t> prime_divisors;
    for (const auto& [l, k] : classical::Factorization(order == 0 ? 1 : order).factors()) prime_divisors.push_back(l);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
      Elem r = 1;
      for (; e > 0; e >>= 1) {
        if (e & 1U) r = mul_by_polynomials(r, a);
        a = mul_by_polynomials(a, a);
      }
      return r;
    };
    Elem g = 0;
    for (Elem cand = 1; cand < q_; ++cand) {
      bool primitive = true;
      for (std::uint64_t l : prime_divisors)
        if (slow_pow(cand, order / l) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        g = cand;
        break;
      }
    }
    if (g == 0) throw InternalError("no primitive element found");
    exp_.resize(order);
    log_.assign(q_, 0);
    Elem x = 1;
    for (Elem i = 0; i < order; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = mul_by_polynomials(x, g);
    }
    if (x != 1) throw InternalError("primitive element has the wrong order");
  }

  std::uint32_t p_;
  unsigned m_;
  Elem q_ = 0;
  std::vector<Elem> pow_p_;
  PrimePoly modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

inline ExtensionField make_extension(std::uint32_t p, unsigned m) { return ExtensionField(p, m); }

/// Univariate polynomials over an ExtensionField, lowest degree first and trimmed.
class FieldPoly {
 public:
  using Coeffs = std::vector<Elem>;

  explicit FieldPoly(const ExtensionField& F) : F_(&F) {}

  static void trim(Coeffs& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  static int degree(const Coeffs& f) { return static_cast<int>(f.size()) - 1; }

  Coeffs mod(Coeffs a, const Coeffs& f) const {
    trim(a);
    const Elem lead_inv = F_->inv(f.back());
    while (degree(a) >= degree(f)) {
      const Elem c = F_->mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - f.size();
      for (std::size_t i = 0; i < f.size(); ++i) a[shift + i] = F_->sub(a[shift + i], F_->mul(c, f[i]));
      trim(a);
    }
    return a;
  }

  Coeffs mul(const Coeffs& a, const Coeffs& b) const {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F_->add(r[i + j], F_->mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f) const { return mod(mul(a, b), f); }

  Coeffs gcd(Coeffs a, Coeffs b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Coeffs r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  /// y^e mod f.
  Coeffs pow_y_mod(std::uint64_t e, const Coeffs& f) const {
    Coeffs r = mod({1}, f), base = mod({0, 1}, f);
    for (; e > 0; e >>= 1) {
      if (e & 1U) r = mulmod(r, base, f);
      base = mulmod(base, base, f);
    }
    return r;
  }

  Elem evaluate(const Coeffs& f, Elem y) const {
    Elem r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = F_->add(F_->mul(r, y), f[i]);
    return r;
  }

  /// Number of distinct roots in the field of a nonzero polynomial: deg gcd(f, y^Q - y).
  std::uint64_t count_roots(Coeffs f) const {
    trim(f);
    if (f.empty()) throw InternalError("count_roots of the zero polynomial");
    const int d = degree(f);
    if (d == 0) return 0;
    if (d == 1) return 1;
    Coeffs h = pow_y_mod(F_->size(), f);
    if (h.size() < 2) h.resize(2, 0);
    h[1] = F_->sub(h[1], 1);
    trim(h);
    if (h.empty()) return static_cast<std::uint64_t>(d);
    return static_cast<std::uint64_t>(degree(gcd(f, h)));
  }

 private:
  const ExtensionField* F_;
};

}  // namespace arithgeo::ff
