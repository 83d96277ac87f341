#pragma once

// Test-only reference computations. Nothing here calls into the code it checks.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Code words in canonical order: "", "0", "1", "00", "01", ... up to `count` words.
inline std::vector<std::string> enumerate_code_words(std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (unsigned len = 0; out.size() < count; ++len) {
    const std::uint64_t words = std::uint64_t{1} << len;
    for (std::uint64_t v = 0; v < words && out.size() < count; ++v) {
      std::string w(len, '0');
      for (unsigned i = 0; i < len; ++i)
        if ((v >> (len - 1 - i)) & 1U) w[i] = '1';
      out.push_back(std::move(w));
    }
  }
  return out;
}

// Elias-gamma length of n >= 1: 2 * floor(log2 n) + 1.
inline unsigned gamma_length(std::uint64_t n) {
  unsigned floor_log = 0;
  while ((n >> (floor_log + 1)) != 0) ++floor_log;
  return 2 * floor_log + 1;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Variables with box constraints and order constraints C(from) >= C(to).
struct OrderProblem {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::pair<int, int>> greater_equal;
};

struct OrderSolution {
  std::vector<double> min_value;
  std::vector<double> max_value;
};

// Exhaustive search over assignments drawn from `values`. Empty if infeasible.
inline std::optional<OrderSolution> solve_by_enumeration(const OrderProblem& p,
                                                         const std::vector<double>& values) {
  const std::size_t n = p.lower.size();
  std::vector<std::size_t> idx(n, 0);
  OrderSolution sol{std::vector<double>(n, kInf), std::vector<double>(n, -kInf)};
  bool feasible = false;
  std::vector<double> c(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) c[i] = values[idx[i]];
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = c[i] >= p.lower[i] && c[i] <= p.upper[i];
    for (const auto& [a, b] : p.greater_equal) {
      if (!ok) break;
      ok = c[a] >= c[b];
    }
    if (ok) {
      feasible = true;
      for (std::size_t i = 0; i < n; ++i) {
        sol.min_value[i] = std::min(sol.min_value[i], c[i]);
        sol.max_value[i] = std::max(sol.max_value[i], c[i]);
      }
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == n) break;
  }
  if (!feasible) return std::nullopt;
  return sol;
}

} // namespace oracle
