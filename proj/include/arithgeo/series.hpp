// Truncated formal series with exact coefficients.
//
// Two gradings share one container:
//   * Dirichlet mode: coefficients a_1..a_N of sum a_n n^{-s}; index 0 is unused
//     and always zero. Products are Dirichlet convolutions.
//   * Power mode: coefficients c_0..c_D of sum c_d t^d. Products are Cauchy
//     products.
// Every operation truncates at the smaller bound of its operands.
#pragma once

#include "arithgeo/bigint.hpp"
#include "arithgeo/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace arithgeo {

enum class SeriesMode { dirichlet, power };

namespace detail {

inline std::optional<BigInt> unit_inverse(const BigInt& c) {
  if (c == 1 || c == -1) return c;
  return std::nullopt;
}

inline std::optional<Rational> unit_inverse(const Rational& c) {
  if (c == 0) return std::nullopt;
  return Rational(1) / c;
}

}  // namespace detail

template <class Coeff>
class TruncatedSeries {
 public:
  TruncatedSeries(SeriesMode mode, std::size_t bound) : mode_(mode), coeffs_(bound + 1, Coeff(0)) {}

  /// Dirichlet mode: coeffs[n] is a_n and coeffs[0] is ignored.
  TruncatedSeries(SeriesMode mode, std::vector<Coeff> coeffs) : mode_(mode), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Coeff(0));
    if (mode_ == SeriesMode::dirichlet) coeffs_[0] = Coeff(0);
  }

  static TruncatedSeries one(SeriesMode mode, std::size_t bound) {
    TruncatedSeries s(mode, bound);
    const std::size_t lead = mode == SeriesMode::dirichlet ? 1 : 0;
    if (lead <= bound) s.coeffs_[lead] = Coeff(1);
    return s;
  }

  SeriesMode mode() const { return mode_; }
  std::size_t bound() const { return coeffs_.size() - 1; }
  std::size_t first_index() const { return mode_ == SeriesMode::dirichlet ? 1 : 0; }

  const Coeff& operator[](std::size_t i) const { return coeffs_.at(i); }
  Coeff& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  TruncatedSeries truncated(std::size_t bound) const {
    TruncatedSeries r(mode_, bound);
    for (std::size_t i = 0; i <= std::min(bound, this->bound()); ++i) r.coeffs_[i] = coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = common_bound(a, b);
    TruncatedSeries r(a.mode_, n);
    for (std::size_t i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = common_bound(a, b);
    TruncatedSeries r(a.mode_, n);
    for (std::size_t i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator*(const Coeff& k, const TruncatedSeries& a) {
    TruncatedSeries r = a;
    for (auto& c : r.coeffs_) c *= k;
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = common_bound(a, b);
    TruncatedSeries r(a.mode_, n);
    if (a.mode_ == SeriesMode::power) {
      for (std::size_t i = 0; i <= n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    } else {
      for (std::size_t i = 1; i <= n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 1; i * j <= n; ++j) r.coeffs_[i * j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

  /// Multiplicative inverse; the leading coefficient must be a unit of Coeff.
  TruncatedSeries inverse() const {
    const std::size_t n = bound();
    TruncatedSeries r(mode_, n);
    if (n < first_index()) return r;
    auto lead_inv = detail::unit_inverse(coeffs_[first_index()]);
    if (!lead_inv) throw DomainError("series leading coefficient is not invertible");
    if (mode_ == SeriesMode::power) {
      r.coeffs_[0] = *lead_inv;
      for (std::size_t k = 1; k <= n; ++k) {
        Coeff acc(0);
        for (std::size_t i = 1; i <= k; ++i) acc += coeffs_[i] * r.coeffs_[k - i];
        r.coeffs_[k] = -(*lead_inv) * acc;
      }
    } else {
      std::vector<Coeff> acc(n + 1, Coeff(0));
      for (std::size_t m = 1; m <= n; ++m) {
        r.coeffs_[m] = m == 1 ? *lead_inv : -(*lead_inv) * acc[m];
        if (r.coeffs_[m] == 0) continue;
        for (std::size_t d = 2; d * m <= n; ++d) acc[d * m] += coeffs_[d] * r.coeffs_[m];
      }
    }
    return r;
  }

  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b.inverse(); }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.mode_ == b.mode_ && a.coeffs_ == b.coeffs_;
  }

  /// Power mode: t -> k*t.
  TruncatedSeries scale_variable(const Coeff& k) const {
    require(SeriesMode::power, "scale_variable");
    TruncatedSeries r = *this;
    Coeff factor(1);
    for (auto& c : r.coeffs_) {
      c *= factor;
      factor *= k;
    }
    return r;
  }

  /// Power mode: t -> t^k.
  TruncatedSeries substitute_power(std::size_t k) const {
    require(SeriesMode::power, "substitute_power");
    TruncatedSeries r(mode_, bound());
    for (std::size_t i = 0; i * k <= bound(); ++i) r.coeffs_[i * k] = coeffs_[i];
    return r;
  }

  /// Dirichlet mode: s -> s - m, i.e. a_n -> n^m a_n.
  TruncatedSeries shift(unsigned m) const {
    require(SeriesMode::dirichlet, "shift");
    TruncatedSeries r = *this;
    for (std::size_t n = 1; n <= bound(); ++n) r.coeffs_[n] *= Coeff(ipow(BigInt(n), m));
    return r;
  }

  /// Dirichlet mode: s -> k*s, moving a_n to index n^k.
  TruncatedSeries dilate(unsigned k) const {
    require(SeriesMode::dirichlet, "dilate");
    TruncatedSeries r(mode_, bound());
    for (std::size_t n = 1;; ++n) {
      const BigInt idx = ipow(BigInt(n), k);
      if (idx > bound()) break;
      r.coeffs_[static_cast<std::size_t>(idx)] = coeffs_[n];
      if (k == 0) break;
    }
    return r;
  }

  /// First index where the two series differ, if any (compared up to the common bound).
  friend std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = common_bound(a, b);
    for (std::size_t i = a.first_index(); i <= n; ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return i;
    return std::nullopt;
  }

  std::string to_string(const std::string& sep = " ") const {
    std::string out;
    for (std::size_t i = first_index(); i <= bound(); ++i) {
      if (i != first_index()) out += sep;
      out += arithgeo::to_string(coeffs_[i]);
    }
    return out;
  }

 private:
  static std::size_t common_bound(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.mode_ != b.mode_) throw InputError("cannot combine Dirichlet and power series");
    return std::min(a.bound(), b.bound());
  }

  void require(SeriesMode m, const char* op) const {
    if (mode_ != m) throw InputError(std::string(op) + ": wrong series mode");
  }

  SeriesMode mode_;
  std::vector<Coeff> coeffs_;
};

using DirichletSeries = TruncatedSeries<BigInt>;
using PowerSeries = TruncatedSeries<Rational>;

inline PowerSeries make_power_series(std::size_t bound) { return PowerSeries(SeriesMode::power, bound); }
inline DirichletSeries make_dirichlet_series(std::size_t bound) { return DirichletSeries(SeriesMode::dirichlet, bound); }

/// Convert an integer power series to rational coefficients.
inline PowerSeries to_rational(const TruncatedSeries<BigInt>& s) {
  PowerSeries r(s.mode(), s.bound());
  for (std::size_t i = 0; i <= s.bound(); ++i) r[i] = Rational(s[i]);
  return r;
}

}  // namespace arithgeo
