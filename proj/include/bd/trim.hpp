#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "bd/core.hpp"

namespace bd {

enum class Objective { l1, l2 };

// l_1(q) = (c-1)q1 - q2 and l_2(q) = (c-1)q2 - q1, both scaled by den(c).
inline __int128 objective_value(Objective obj, Weight q1, Weight q2, const Rational& c) {
  const __int128 a = static_cast<__int128>(c.num() - c.den());
  const __int128 d = c.den();
  return obj == Objective::l1 ? a * q1 - d * q2 : a * q2 - d * q1;
}

// True iff every coordinate ratio lies in [e^-eps, e^eps], with 0/0 = 1.
template <std::size_t D>
bool approximates(const std::array<long double, D>& a, const std::array<long double, D>& b, long double eps) {
  for (std::size_t k = 0; k < D; ++k) {
    if (a[k] == 0 || b[k] == 0) {
      if (a[k] != b[k]) return false;
      continue;
    }
    if (std::fabs(std::log(a[k]) - std::log(b[k])) > eps) return false;
  }
  return true;
}

namespace detail {

struct CellHash {
  template <std::size_t D>
  std::size_t operator()(const std::array<std::int64_t, D>& key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto k : key) h = (h ^ static_cast<std::uint64_t>(k)) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

// Indices of the points kept by Trim, in processing order (objective descending, then `tie_less`).
// A kept point removes every later point it eps-approximates; with eps = 0 only exact duplicates go.
template <std::size_t D, class TieLess>
std::vector<std::size_t> trim_indices(const std::vector<std::array<long double, D>>& coords,
                                      const std::vector<__int128>& objective, double eps, TieLess tie_less) {
  const std::size_t m = coords.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (objective[a] != objective[b]) return objective[a] > objective[b];
    if (tie_less(a, b)) return true;
    if (tie_less(b, a)) return false;
    return a < b;
  });
  std::vector<std::size_t> kept;
  if (eps <= 0) {
    std::map<std::array<long double, D>, bool> seen;
    for (std::size_t i : order) {
      if (seen.emplace(coords[i], true).second) kept.push_back(i);
    }
    return kept;
  }
  using Key = std::array<std::int64_t, D>;
  constexpr std::int64_t kZero = std::numeric_limits<std::int64_t>::min();
  std::vector<std::array<long double, D>> logs(m);
  std::vector<Key> keys(m);
  for (std::size_t i : order) {
    for (std::size_t k = 0; k < D; ++k) {
      if (coords[i][k] <= 0) {
        logs[i][k] = 0;
        keys[i][k] = kZero;
      } else {
        logs[i][k] = std::log(coords[i][k]);
        keys[i][k] = static_cast<std::int64_t>(std::floor(logs[i][k] / eps));
      }
    }
  }
  auto close = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < D; ++k) {
      if ((keys[a][k] == kZero) != (keys[b][k] == kZero)) return false;
      if (keys[a][k] != kZero && std::fabs(logs[a][k] - logs[b][k]) > static_cast<long double>(eps)) return false;
    }
    return true;
  };
  std::vector<char> alive(m, 1);
  if (m <= 64) {
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t i = order[a];
      if (!alive[i]) continue;
      kept.push_back(i);
      for (std::size_t b = a + 1; b < m; ++b) {
        if (alive[order[b]] && close(i, order[b])) alive[order[b]] = 0;
      }
    }
    return kept;
  }
  std::unordered_map<Key, std::vector<std::size_t>, detail::CellHash> cells;
  cells.reserve(m);
  for (std::size_t i : order) cells[keys[i]].push_back(i);
  for (std::size_t i : order) {
    if (!alive[i]) continue;
    alive[i] = 0;
    kept.push_back(i);
    // visit the 3^D neighbouring cells (zero coordinates only match zero)
    std::size_t combos = 1;
    for (std::size_t k = 0; k < D; ++k) combos *= 3;
    for (std::size_t t = 0; t < combos; ++t) {
      Key probe{};
      bool valid = true;
      std::size_t rest = t;
      for (std::size_t k = 0; k < D; ++k, rest /= 3) {
        const int digit = static_cast<int>(rest % 3) - 1;
        if (keys[i][k] == kZero) {
          valid = valid && digit == 0;
          probe[k] = kZero;
        } else {
          probe[k] = keys[i][k] + digit;
        }
      }
      if (!valid) continue;
      auto it = cells.find(probe);
      if (it == cells.end()) continue;
      auto& bucket = it->second;
      std::size_t out = 0;
      for (std::size_t j : bucket) {
        if (!alive[j]) continue;
        if (close(i, j)) {
          alive[j] = 0;
        } else {
          bucket[out++] = j;
        }
      }
      bucket.resize(out);
    }
  }
  return kept;
}

}  // namespace bd
