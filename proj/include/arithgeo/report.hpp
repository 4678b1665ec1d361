// Pass/fail/skip records produced by every verifier.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace arithgeo {

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "?";
}

using Params = std::vector<std::pair<std::string, std::string>>;

struct CheckResult {
  std::string id;
  Params params;
  CheckStatus status = CheckStatus::pass;
  std::string detail;

  bool passed() const { return status == CheckStatus::pass; }
  bool failed() const { return status == CheckStatus::fail; }
};

inline CheckResult make_result(std::string id, Params params, bool ok, std::string detail) {
  return {std::move(id), std::move(params), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

template <class T>
std::string to_display(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::to_string(v);
  } else if constexpr (std::is_convertible_v<T, std::string>) {
    return std::string(v);
  } else {
    return v.str();
  }
}

/// Compares lhs(i) and rhs(i) for i in [from, to]; on failure the detail names the smallest i.
template <class Lhs, class Rhs>
CheckResult compare_range(std::string id, Params params, std::uint64_t from, std::uint64_t to, Lhs&& lhs, Rhs&& rhs,
                          const std::string& index_name = "n") {
  for (std::uint64_t i = from; i <= to; ++i) {
    auto a = lhs(i);
    auto b = rhs(i);
    if (a != b)
      return make_result(std::move(id), std::move(params), false,
                         "first counterexample " + index_name + "=" + std::to_string(i) + ": lhs=" + to_display(a) +
                             " rhs=" + to_display(b));
  }
  return make_result(std::move(id), std::move(params), true,
                     "exact for " + index_name + " in [" + std::to_string(from) + ", " + std::to_string(to) + "]");
}

struct CheckReport {
  std::string suite;
  std::vector<CheckResult> checks;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void append(const CheckReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

  bool any_failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed(); });
  }

  std::optional<CheckResult> first_failure() const {
    for (const auto& c : checks)
      if (c.failed()) return c;
    return std::nullopt;
  }

  /// 0 when nothing failed, 1 otherwise. Skips never affect the status.
  int exit_status() const { return any_failed() ? 1 : 0; }

  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
  }
};

}  // namespace arithgeo
