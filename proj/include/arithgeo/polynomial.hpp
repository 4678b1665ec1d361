// Multivariate polynomials with integer coefficients, and a small parser for
// expressions such as "y^2*z - x^3 + x*z^2".
#pragma once

#include "arithgeo/bigint.hpp"
#include "arithgeo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arithgeo {

/// Exponent vector; trailing zeros are always stripped so that x0*x1 is the same
/// monomial however many variables are in scope.
using Monomial = std::vector<std::uint32_t>;

inline void normalize(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

inline std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

class IntPoly {
 public:
  using Terms = std::map<Monomial, BigInt>;

  IntPoly() = default;
  IntPoly(std::int64_t c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[{}] = c;
  }
  IntPoly(const BigInt& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[{}] = c;
  }

  static IntPoly variable(std::size_t index, std::uint32_t exponent = 1) {
    IntPoly p;
    Monomial m(index + 1, 0);
    m[index] = exponent;
    normalize(m);
    p.terms_[m] = 1;
    return p;
  }

  static IntPoly monomial(Monomial m, BigInt c) {
    IntPoly p;
    normalize(m);
    if (c != 0) p.terms_[std::move(m)] = std::move(c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Number of variable slots used, i.e. one more than the largest variable index.
  std::size_t arity() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return n;
  }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  BigInt coefficient(const Monomial& m) const {
    Monomial key = m;
    normalize(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  IntPoly& operator+=(const IntPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  IntPoly& operator-=(const IntPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator-(const IntPoly& a) { return IntPoly() - a; }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(std::max(ma.size(), mb.size()), 0);
        for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
        for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

  friend IntPoly operator*(const BigInt& k, IntPoly a) {
    if (k == 0) return IntPoly();
    for (auto& [m, c] : a.terms_) c *= k;
    return a;
  }

  IntPoly pow(std::uint64_t e) const {
    IntPoly r(1), base = *this;
    for (; e > 0; e >>= 1) {
      if (e & 1U) r *= base;
      if (e > 1) base *= base;
    }
    return r;
  }

  /// Exact division of every coefficient; nullopt-like failure reported through the flag.
  bool divide_exact(const BigInt& d, IntPoly& out) const {
    out = IntPoly();
    for (const auto& [m, c] : terms_) {
      if (c % d != 0) return false;
      out.terms_[m] = c / d;
    }
    return true;
  }

  /// Substitute x_i -> images[i]; variables beyond images.size() are an error.
  IntPoly substitute(const std::vector<IntPoly>& images) const {
    IntPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.size() > images.size()) throw InputError("substitution misses a variable");
      IntPoly t(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) t *= images[i].pow(m[i]);
      r += t;
    }
    return r;
  }

  BigInt evaluate(const std::vector<BigInt>& values) const {
    BigInt r = 0;
    for (const auto& [m, c] : terms_) {
      if (m.size() > values.size()) throw InputError("evaluation misses a variable");
      BigInt t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) t *= ipow(values[i], m[i]);
      r += t;
    }
    return r;
  }

  /// Every monomial has the same total degree (the zero polynomial counts as homogeneous).
  bool is_homogeneous() const { return !first_inhomogeneous_term(); }

  /// A monomial whose degree differs from the first term's, if any.
  std::optional<Monomial> first_inhomogeneous_term() const {
    if (terms_.empty()) return std::nullopt;
    // the leading degree is that of the highest-degree term
    const std::uint64_t d = degree();
    for (const auto& [m, c] : terms_)
      if (total_degree(m) != d) return m;
    return std::nullopt;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    // highest degree first, then by reverse exponent order
    std::vector<std::pair<Monomial, BigInt>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
      const auto dx = total_degree(x.first), dy = total_degree(y.first);
      if (dx != dy) return dx > dy;
      return x.first > y.first;
    });
    for (const auto& [m, c] : ordered) {
      BigInt a = abs(c);
      if (s.empty())
        s += c < 0 ? "-" : "";
      else
        s += c < 0 ? " - " : " + ";
      const std::string mon = monomial_string(m, names);
      if (mon.empty())
        s += a.str();
      else if (a == 1)
        s += mon;
      else
        s += a.str() + "*" + mon;
    }
    return s;
  }

  static std::string variable_name(std::size_t i, const std::vector<std::string>& names) {
    return i < names.size() ? names[i] : "x" + std::to_string(i);
  }

  static std::string monomial_string(const Monomial& m, const std::vector<std::string>& names = {}) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += variable_name(i, names);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

 private:
  void add_term(Monomial m, const BigInt& c) {
    normalize(m);
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
      terms_.erase(it);
    }
  }

  Terms terms_;
};

constexpr std::size_t kMaxVariables = 10;
constexpr std::uint32_t kMaxParsedExponent = 64;

/// Recursive-descent parser. Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | variable | '(' expr ')'
///   variable := 'x' digit | 'x' | 'y' | 'z' | 'w'      (x, y, z, w stand for x0, x1, x2, x3)
/// Whitespace is ignored. Errors carry the 1-based line and column.
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0)
      : text_(text), line_(line), offset_(column_offset) {}

  IntPoly parse() {
    IntPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, static_cast<int>(line_), static_cast<int>(offset_ + pos_ + 1)); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  IntPoly expr() {
    IntPoly r = term();
    while (true) {
      if (accept('+'))
        r += term();
      else if (accept('-'))
        r -= term();
      else
        return r;
    }
  }

  IntPoly term() {
    IntPoly r = unary();
    while (accept('*')) r *= unary();
    return r;
  }

  IntPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  IntPoly power() {
    IntPoly base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t at = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a nonnegative integer exponent");
      const BigInt e = integer();
      if (e > kMaxParsedExponent) {
        pos_ = at;
        fail("exponent exceeds " + std::to_string(kMaxParsedExponent));
      }
      return base.pow(static_cast<std::uint64_t>(e));
    }
    return base;
  }

  BigInt integer() {
    BigInt v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  IntPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly(integer());
    if (c == '(') {
      ++pos_;
      IntPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      const std::size_t index = static_cast<std::size_t>(text_[pos_ + 1] - '0');
      if (pos_ + 2 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
        fail("variable index out of range x0..x9");
      pos_ += 2;
      return IntPoly::variable(index);
    }
    static constexpr std::string_view kAliases = "xyzw";
    if (const auto k = kAliases.find(c); k != std::string_view::npos) {
      ++pos_;
      return IntPoly::variable(k);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

inline IntPoly parse_polynomial(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0) {
  return PolynomialParser(text, line, column_offset).parse();
}

}  // namespace arithgeo
