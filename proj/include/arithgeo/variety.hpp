// Varieties cut out by integer polynomials in affine or projective space, their
// reductions mod p, a line-oriented description format, and point counting over
// finite fields.
#pragma once

#include "arithgeo/classical.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/finite_field.hpp"
#include "arithgeo/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace arithgeo::varzeta {

enum class Ambient { affine, projective };

inline const char* to_string(Ambient a) { return a == Ambient::affine ? "affine" : "projective"; }

/// A system of polynomial equations in affine n-space (variables x0..x{n-1}) or
/// projective n-space (homogeneous x0..xn), optionally multiplied by an affine
/// line whose coordinate is the next variable index.
struct VarietySpec {
  Ambient ambient = Ambient::affine;
  unsigned dim = 0;
  std::vector<IntPoly> polys;
  std::optional<std::uint32_t> p;  // base prime; unset for a global template
  bool global = false;
  bool times_a1 = false;
  std::string label = "variety";

  std::size_t ambient_vars() const { return ambient == Ambient::projective ? dim + 1 : dim; }
  std::size_t total_vars() const { return ambient_vars() + (times_a1 ? 1 : 0); }

  std::uint32_t prime() const {
    if (!p) throw InputError(label + " has no base prime");
    return *p;
  }

  VarietySpec with_prime(std::uint32_t prime) const {
    VarietySpec v = *this;
    v.p = prime;
    v.global = false;
    v.validate();
    return v;
  }

  VarietySpec times_affine_line() const {
    if (times_a1) throw InputError(label + " already carries an affine-line factor");
    VarietySpec v = *this;
    v.times_a1 = true;
    v.label = label + " x A1";
    v.validate();
    return v;
  }

  /// Throws InputError on an ill-formed description.
  void validate() const {
    if (total_vars() > kMaxVariables)
      throw InputError("at most " + std::to_string(kMaxVariables) + " variables are supported");
    if (p && !classical::is_prime(*p)) throw InputError("p=" + std::to_string(*p) + " is not prime");
    if (p && global) throw InputError("a global template cannot fix p");
    for (const IntPoly& f : polys) {
      if (f.arity() > ambient_vars())
        throw InputError("polynomial " + f.to_string() + " uses x" + std::to_string(f.arity() - 1) +
                         " outside the ambient space");
      if (ambient == Ambient::projective)
        if (auto m = f.first_inhomogeneous_term())
          throw InputError("polynomial " + f.to_string() + " is not homogeneous: monomial " +
                           describe_monomial(*m) + " has degree " + std::to_string(total_degree(*m)) + ", expected " +
                           std::to_string(f.degree()));
    }
  }

  static std::string describe_monomial(const Monomial& m) {
    const std::string s = IntPoly::monomial_string(m);
    return s.empty() ? "1" : s;
  }
};

inline constexpr std::string_view kBuiltinNames[] = {"point", "A1", "A2", "Gm", "P1", "P2"};

/// point, A1, A2, Gm (the hyperbola x0*x1 = 1 in A2), P1, P2.
inline VarietySpec builtin_variety(std::string_view name) {
  VarietySpec v;
  v.label = std::string(name);
  if (name == "point") {
    v.ambient = Ambient::affine;
    v.dim = 0;
  } else if (name == "A1" || name == "A2") {
    v.ambient = Ambient::affine;
    v.dim = name == "A1" ? 1 : 2;
  } else if (name == "Gm") {
    v.ambient = Ambient::affine;
    v.dim = 2;
    v.polys.push_back(IntPoly::variable(0) * IntPoly::variable(1) - IntPoly(1));
  } else if (name == "P1" || name == "P2") {
    v.ambient = Ambient::projective;
    v.dim = name == "P1" ? 1 : 2;
  } else {
    throw InputError("unknown builtin variety '" + std::string(name) + "' (expected point, A1, A2, Gm, P1 or P2)");
  }
  return v;
}

/// Parses the line-oriented description format:
///   # comment
///   builtin=P1            (or ambient=affine|projective together with dim=N)
///   poly=y^2*z - x^3 + x*z^2   (repeatable)
///   p=3                   (or the bare line `global` for a template over Z)
///   times=A1
/// Every error is a ParseError carrying the line and column.
inline VarietySpec parse_variety_spec(std::string_view text) {
  VarietySpec v;
  std::optional<std::string> builtin;
  std::optional<Ambient> ambient;
  std::optional<unsigned> dim;
  std::vector<std::pair<IntPoly, std::size_t>> polys;  // with line numbers
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  std::size_t builtin_line = 0;

  auto trim = [](std::string_view s, std::size_t& lead) {
    lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    std::size_t end = s.size();
    while (end > lead && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(lead, end - lead);
  };
  auto parse_unsigned = [](std::string_view s, std::size_t line, std::size_t col) {
    if (s.empty() || s.size() > 9) throw ParseError("expected a nonnegative integer", static_cast<int>(line), static_cast<int>(col));
    unsigned long long v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("expected a nonnegative integer", static_cast<int>(line), static_cast<int>(col + i));
      v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    return v;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string_view content = trim(raw, lead);
    if (content.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const int line = static_cast<int>(line_no);
    const auto eq = content.find('=');
    std::size_t key_lead = 0;
    const std::string key(trim(content.substr(0, eq), key_lead));
    const std::size_t key_col = lead + 1;
    if (eq == std::string_view::npos) {
      if (key != "global") throw ParseError("expected key=value", line, static_cast<int>(key_col));
      if (v.global) throw ParseError("duplicate key 'global'", line, static_cast<int>(key_col));
      v.global = true;
      continue;
    }
    std::size_t value_lead = 0;
    const std::string_view value = trim(content.substr(eq + 1), value_lead);
    const std::size_t value_col = lead + eq + 1 + value_lead + 1;
    if (key != "poly") {
      for (const auto& s : seen)
        if (s == key) throw ParseError("duplicate key '" + key + "'", line, static_cast<int>(key_col));
      seen.push_back(key);
    }
    if (key == "p") {
      const auto p = parse_unsigned(value, line_no, value_col);
      if (!classical::is_prime(p)) throw ParseError("p=" + std::to_string(p) + " is not prime", line, static_cast<int>(value_col));
      v.p = static_cast<std::uint32_t>(p);
    } else if (key == "global") {
      if (value != "true" && value != "yes" && value != "1")
        throw ParseError("global takes no value other than true", line, static_cast<int>(value_col));
      v.global = true;
    } else if (key == "ambient") {
      if (value == "affine")
        ambient = Ambient::affine;
      else if (value == "projective")
        ambient = Ambient::projective;
      else
        throw ParseError("ambient must be affine or projective", line, static_cast<int>(value_col));
    } else if (key == "dim") {
      const auto d = parse_unsigned(value, line_no, value_col);
      if (d >= kMaxVariables) throw ParseError("dim exceeds " + std::to_string(kMaxVariables - 1), line, static_cast<int>(value_col));
      dim = static_cast<unsigned>(d);
    } else if (key == "poly") {
      if (value.empty()) throw ParseError("empty polynomial", line, static_cast<int>(value_col));
      polys.emplace_back(parse_polynomial(value, line_no, value_col - 1), line_no);
    } else if (key == "builtin") {
      try {
        v = [&] {
          VarietySpec b = builtin_variety(value);
          b.p = v.p;
          b.global = v.global;
          return b;
        }();
      } catch (const InputError& e) {
        throw ParseError(e.what(), line, static_cast<int>(value_col));
      }
      builtin = std::string(value);
      builtin_line = line_no;
    } else if (key == "times") {
      if (value != "A1") throw ParseError("times supports only A1", line, static_cast<int>(value_col));
      v.times_a1 = true;
    } else {
      throw ParseError("unknown key '" + key + "'", line, static_cast<int>(key_col));
    }
    if (end == text.size()) break;
  }

  if (builtin) {
    if (ambient || dim || !polys.empty())
      throw ParseError("builtin cannot be combined with ambient, dim or poly", static_cast<int>(builtin_line), 1);
  } else {
    if (!ambient) throw ParseError("missing key 'ambient'", static_cast<int>(line_no), 1);
    if (!dim) throw ParseError("missing key 'dim'", static_cast<int>(line_no), 1);
    v.ambient = *ambient;
    v.dim = *dim;
    for (const auto& [f, l] : polys) {
      if (f.arity() > v.ambient_vars())
        throw ParseError("variable x" + std::to_string(f.arity() - 1) + " is outside the ambient space", static_cast<int>(l), 1);
      if (v.ambient == Ambient::projective)
        if (auto m = f.first_inhomogeneous_term())
          throw ParseError("polynomial is not homogeneous: monomial " + VarietySpec::describe_monomial(*m) +
                               " has degree " + std::to_string(total_degree(*m)) + ", expected " +
                               std::to_string(f.degree()),
                           static_cast<int>(l), 1);
      v.polys.push_back(f);
    }
    v.label = std::string(to_string(v.ambient)) + " variety in dimension " + std::to_string(v.dim);
  }
  if (v.global && v.p) throw ParseError("global and p are mutually exclusive", static_cast<int>(line_no), 1);
  if (v.times_a1) v.label += " x A1";
  if (v.total_vars() > kMaxVariables) throw ParseError("too many variables", static_cast<int>(line_no), 1);
  return v;
}

/// Largest number of coordinate tuples any single enumeration may visit.
constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 24;

namespace detail {

struct ReducedTerm {
  ff::Elem coef;
  std::vector<std::pair<std::size_t, std::uint32_t>> powers;  // (variable, exponent > 0)
};
using ReducedPoly = std::vector<ReducedTerm>;

inline std::vector<ReducedPoly> reduce_system(const VarietySpec& V, const ff::ExtensionField& F) {
  std::vector<ReducedPoly> out;
  const BigInt p = V.prime();
  for (const IntPoly& f : V.polys) {
    ReducedPoly r;
    for (const auto& [m, c] : f.terms()) {
      BigInt cm = c % p;
      if (cm < 0) cm += p;
      if (cm == 0) continue;
      ReducedTerm t{F.from_int(static_cast<std::int64_t>(cm)), {}};
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) t.powers.emplace_back(i, m[i]);
      r.push_back(std::move(t));
    }
    out.push_back(std::move(r));
  }
  return out;
}

enum class Role : std::int8_t { free, zero, one };

/// Coordinate patterns covering the point set exactly once: the whole space for
/// affine ambients, and for projective ones the pieces where x_i is the last
/// nonzero homogeneous coordinate, scaled to 1.
inline std::vector<std::vector<Role>> strata(const VarietySpec& V) {
  std::vector<std::vector<Role>> out;
  const std::size_t n = V.total_vars();
  if (V.ambient == Ambient::affine) {
    out.emplace_back(n, Role::free);
    return out;
  }
  for (std::size_t i = 0; i <= V.dim; ++i) {
    std::vector<Role> roles(n, Role::free);
    roles[i] = Role::one;
    for (std::size_t j = i + 1; j <= V.dim; ++j) roles[j] = Role::zero;
    out.push_back(std::move(roles));
  }
  return out;
}

/// Restriction of a reduced polynomial to a stratum: terms through a zero coordinate vanish
/// and coordinates equal to one drop out.
inline ReducedPoly restrict_to(const ReducedPoly& f, const std::vector<Role>& roles, const ff::ExtensionField& F) {
  std::vector<std::pair<std::vector<std::pair<std::size_t, std::uint32_t>>, ff::Elem>> merged;
  for (const ReducedTerm& t : f) {
    bool killed = false;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
    for (const auto& [v, e] : t.powers) {
      if (roles[v] == Role::zero) killed = true;
      if (roles[v] == Role::free) powers.emplace_back(v, e);
    }
    if (killed) continue;
    bool found = false;
    for (auto& [pw, c] : merged)
      if (pw == powers) {
        c = F.add(c, t.coef);
        found = true;
        break;
      }
    if (!found) merged.emplace_back(std::move(powers), t.coef);
  }
  ReducedPoly r;
  for (auto& [pw, c] : merged)
    if (c != 0) r.push_back({c, std::move(pw)});
  return r;
}

inline std::uint64_t checked_power(std::uint64_t base, std::size_t e, std::uint64_t budget, const std::string& what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > budget / base)
      throw ResourceError(what + ": " + std::to_string(base) + "^" + std::to_string(e) + " tuples exceed the budget of " +
                          std::to_string(budget));
    r *= base;
  }
  return r;
}

inline ff::Elem evaluate(const ReducedPoly& f, const std::vector<ff::Elem>& point, const ff::ExtensionField& F) {
  ff::Elem s = 0;
  for (const ReducedTerm& t : f) {
    ff::Elem v = t.coef;
    for (const auto& [var, e] : t.powers) v = F.mul(v, F.pow(point[var], e));
    s = F.add(s, v);
  }
  return s;
}

/// Odometer over all assignments of field elements to `vars` inside `point`.
template <class Visit>
void for_each_assignment(const std::vector<std::size_t>& vars, std::vector<ff::Elem>& point, ff::Elem q, Visit&& visit) {
  for (std::size_t v : vars) point[v] = 0;
  while (true) {
    visit();
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++point[vars[i]] < q) break;
      point[vars[i]] = 0;
    }
    if (i == vars.size()) return;
  }
}

}  // namespace detail

/// Number of F_{p^m}-points. Each projective piece fixes its last nonzero coordinate
/// to 1; within a piece, coordinates absent from every equation contribute a factor
/// of q^m, one present coordinate is solved by counting the roots of the gcd of the
/// specialized equations, and the remaining ones are enumerated.
inline std::uint64_t count_points(const VarietySpec& V, unsigned m, std::uint64_t budget = kEnumerationBudget) {
  const ff::ExtensionField F(V.prime(), m);
  const ff::FieldPoly R(F);
  const ff::Elem Q = F.size();
  const auto system = detail::reduce_system(V, F);
  std::uint64_t total = 0;
  for (const auto& roles : detail::strata(V)) {
    std::vector<detail::ReducedPoly> eqs;
    bool contradiction = false;
    for (const auto& f : system) {
      auto r = detail::restrict_to(f, roles, F);
      if (r.empty()) continue;
      if (r.size() == 1 && r[0].powers.empty()) contradiction = true;  // nonzero constant
      eqs.push_back(std::move(r));
    }
    if (contradiction) continue;
    // which free coordinates occur, and with what top exponent
    std::vector<std::uint32_t> top(V.total_vars(), 0);
    for (const auto& f : eqs)
      for (const auto& t : f)
        for (const auto& [v, e] : t.powers) top[v] = std::max(top[v], e);
    std::vector<std::size_t> present;
    std::size_t absent = 0;
    for (std::size_t v = 0; v < roles.size(); ++v) {
      if (roles[v] != detail::Role::free) continue;
      if (top[v] > 0)
        present.push_back(v);
      else
        ++absent;
    }
    const std::uint64_t free_factor = detail::checked_power(Q, absent, std::numeric_limits<std::uint64_t>::max() / Q,
                                                            "count_points");
    if (present.empty()) {
      total += free_factor;  // no equations left on this piece
      continue;
    }
    // solve the coordinate of smallest top exponent
    std::size_t solve = present.front();
    for (std::size_t v : present)
      if (top[v] < top[solve]) solve = v;
    std::vector<std::size_t> enumerated;
    for (std::size_t v : present)
      if (v != solve) enumerated.push_back(v);
    detail::checked_power(Q, enumerated.size(), budget, "count_points");

    std::vector<ff::Elem> point(V.total_vars(), 0);
    for (std::size_t v = 0; v < roles.size(); ++v)
      if (roles[v] == detail::Role::one) point[v] = 1;
    std::uint64_t piece = 0;
    detail::for_each_assignment(enumerated, point, Q, [&] {
      std::optional<ff::FieldPoly::Coeffs> g;
      for (const auto& f : eqs) {
        ff::FieldPoly::Coeffs u(top[solve] + 1, 0);
        for (const auto& t : f) {
          ff::Elem v = t.coef;
          std::uint32_t e_solve = 0;
          for (const auto& [var, e] : t.powers) {
            if (var == solve)
              e_solve = e;
            else
              v = F.mul(v, F.pow(point[var], e));
          }
          u[e_solve] = F.add(u[e_solve], v);
        }
        ff::FieldPoly::trim(u);
        if (u.empty()) continue;
        g = g ? R.gcd(*g, u) : u;
      }
      piece += g ? R.count_roots(*g) : Q;
    });
    total += piece * free_factor;
  }
  return total;
}

/// Independent count by evaluating the equations on every coordinate tuple; projective
/// solutions are counted as nonzero tuples and divided by q^m - 1.
inline std::uint64_t count_points_bruteforce(const VarietySpec& V, unsigned m, std::uint64_t budget = kEnumerationBudget) {
  const ff::ExtensionField F(V.prime(), m);
  const ff::Elem Q = F.size();
  const auto system = detail::reduce_system(V, F);
  detail::checked_power(Q, V.total_vars(), budget, "count_points_bruteforce");
  std::vector<std::size_t> vars(V.total_vars());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
  std::vector<ff::Elem> point(vars.size(), 0);
  std::uint64_t solutions = 0;
  const bool projective = V.ambient == Ambient::projective;
  detail::for_each_assignment(vars, point, Q, [&] {
    if (projective) {
      bool all_zero = true;
      for (std::size_t i = 0; i <= V.dim; ++i) all_zero = all_zero && point[i] == 0;
      if (all_zero) return;
    }
    for (const auto& f : system)
      if (detail::evaluate(f, point, F) != 0) return;
    ++solutions;
  });
  if (!projective) return solutions;
  if (solutions % (Q - 1) != 0)
    throw InternalError("projective solution count " + std::to_string(solutions) + " is not divisible by " +
                        std::to_string(Q - 1));
  return solutions / (Q - 1);
}

/// Every F_{p^m}-point in normalized coordinates (projective points scaled so the last
/// nonzero homogeneous coordinate is 1).
inline std::vector<std::vector<ff::Elem>> list_points(const VarietySpec& V, const ff::ExtensionField& F,
                                                      std::uint64_t budget = kEnumerationBudget) {
  const auto system = detail::reduce_system(V, F);
  std::vector<std::vector<ff::Elem>> out;
  for (const auto& roles : detail::strata(V)) {
    std::vector<std::size_t> vars;
    std::vector<ff::Elem> point(roles.size(), 0);
    for (std::size_t v = 0; v < roles.size(); ++v) {
      if (roles[v] == detail::Role::free) vars.push_back(v);
      if (roles[v] == detail::Role::one) point[v] = 1;
    }
    detail::checked_power(F.size(), vars.size(), budget, "list_points");
    detail::for_each_assignment(vars, point, F.size(), [&] {
      for (const auto& f : system)
        if (detail::evaluate(f, point, F) != 0) return;
      out.push_back(point);
    });
  }
  return out;
}

/// Closed points of degree exactly d, as orbits of size d of the p-power Frobenius
/// acting on the F_{p^d}-points.
inline std::uint64_t frobenius_orbit_count(const VarietySpec& V, unsigned d, std::uint64_t budget = kEnumerationBudget) {
  if (d < 1) throw InputError("frobenius_orbit_count needs d >= 1");
  const ff::ExtensionField F(V.prime(), d);
  const auto points = list_points(V, F, budget);
  auto key = [&](const std::vector<ff::Elem>& pt) {
    std::uint64_t k = 0;
    for (ff::Elem c : pt) k = k * F.size() + c;
    return k;
  };
  std::unordered_set<std::uint64_t> visited;
  std::uint64_t orbits = 0;
  for (const auto& pt : points) {
    if (visited.count(key(pt))) continue;
    std::vector<ff::Elem> cur = pt;
    unsigned size = 0;
    do {
      visited.insert(key(cur));
      for (auto& c : cur) c = F.frobenius(c);
      ++size;
    } while (cur != pt);
    if (size == d) ++orbits;
  }
  return orbits;
}

}  // namespace arithgeo::varzeta
