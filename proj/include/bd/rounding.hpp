#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "bd/core.hpp"
#include "bd/enumerate.hpp"
#include "bd/error.hpp"
#include "bd/lp.hpp"
#include "bd/parallel.hpp"
#include "bd/rng.hpp"

namespace bd {

inline constexpr std::size_t kDefaultPairCap = 20'000'000;

struct RoundingDiagnostics {
  double sum_x = 0;
  double correlation = 0;  // sum of x_A x_B over unordered overlapping pairs
  double ratio = 0;        // correlation / sum_x
  std::vector<std::pair<double, double>> thresholded_ratios;  // (delta, ratio over S_{>= delta})
  double max_threshold_ratio = 0;
  double tau_star = 1;  // smallest tau with the pair sum <= (tau/2) sum_x at every threshold
  double tau_used = 0;
  std::size_t overlapping_pairs = 0;
};

namespace detail {

// Support order used by rounding: weight descending, then lexicographic.
inline std::vector<std::size_t> weight_order(const std::vector<PrimalEntry>& primal) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < primal.size(); ++i) {
    if (primal[i].x > 0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return heavier_first(primal[a].district, primal[b].district);
  });
  return order;
}

}  // namespace detail

// Overlap statistics of a fractional solution. Throws CapExceeded past `pair_cap` overlapping pairs.
inline RoundingDiagnostics correlation_report(const Instance& g, const FractionalStarSolution& frac,
                                              std::size_t pair_cap = kDefaultPairCap) {
  RoundingDiagnostics d;
  const auto order = detail::weight_order(frac.primal);
  std::vector<std::vector<std::size_t>> by_vertex(g.size());
  std::vector<std::size_t> mark(order.size(), SIZE_MAX);
  double prefix_x = 0, prefix_corr = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const PrimalEntry& e = frac.primal[order[r]];
    double overlap = 0;
    for (Index v : e.district.members) {
      for (std::size_t s : by_vertex[v]) {
        if (mark[s] == r) continue;
        mark[s] = r;
        overlap += frac.primal[order[s]].x;
        if (++d.overlapping_pairs > pair_cap) {
          throw CapExceeded("more than " + std::to_string(pair_cap) + " overlapping district pairs");
        }
      }
      by_vertex[v].push_back(r);
    }
    prefix_x += e.x;
    prefix_corr += e.x * overlap;
    const bool last_of_weight =
        r + 1 == order.size() || frac.primal[order[r + 1]].district.weight() != e.district.weight();
    if (last_of_weight) {
      const double ratio = prefix_corr / prefix_x;
      d.thresholded_ratios.emplace_back(static_cast<double>(e.district.weight()), ratio);
      d.max_threshold_ratio = std::max(d.max_threshold_ratio, ratio);
    }
  }
  d.sum_x = prefix_x;
  d.correlation = prefix_corr;
  d.ratio = prefix_x > 0 ? prefix_corr / prefix_x : 0;
  d.tau_star = std::max(1.0, 2 * d.max_threshold_ratio);
  const double bound = std::sqrt(static_cast<double>(g.size())) * d.sum_x;
  if (d.correlation > bound * (1 + 1e-9) + 1e-12) {
    throw Error("overlap correlation " + std::to_string(d.correlation) + " exceeds sqrt(n) * sum_x = " +
                std::to_string(bound));
  }
  return d;
}

// One pass: heaviest first, each district kept with probability x/tau if it fits.
inline Districting round_once(const Instance& g, const FractionalStarSolution& frac, double tau,
                              std::uint64_t seed) {
  if (!(tau >= 1)) throw ParameterError("tau must be at least 1");
  Rng rng(seed);
  std::vector<char> used(g.size(), 0);
  Districting out;
  for (std::size_t i : detail::weight_order(frac.primal)) {
    const PrimalEntry& e = frac.primal[i];
    const bool coin = rng.unit() < e.x / tau;
    if (!coin) continue;
    bool free = true;
    for (Index v : e.district.members) free = free && !used[v];
    if (!free) continue;
    for (Index v : e.district.members) used[v] = 1;
    out.districts.push_back(to_district(g, e.district));
  }
  canonicalize(out);
  return out;
}

// Deterministic rounding by decreasing x (ties: heavier, then lexicographic).
inline Districting round_greedy_by_x(const Instance& g, const FractionalStarSolution& frac) {
  std::vector<std::size_t> order(frac.primal.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (frac.primal[a].x != frac.primal[b].x) return frac.primal[a].x > frac.primal[b].x;
    return heavier_first(frac.primal[a].district, frac.primal[b].district);
  });
  std::vector<char> used(g.size(), 0);
  Districting out;
  for (std::size_t i : order) {
    const PrimalEntry& e = frac.primal[i];
    if (e.x <= 0) continue;
    bool free = true;
    for (Index v : e.district.members) free = free && !used[v];
    if (!free) continue;
    for (Index v : e.district.members) used[v] = 1;
    out.districts.push_back(to_district(g, e.district));
  }
  canonicalize(out);
  return out;
}

struct TauScanResult {
  Districting districting;
  Weight weight = 0;
  RoundingDiagnostics diagnostics;
  std::size_t runs = 0;
};

// Best districting over tau = (1+eps)^k, k = 0..ceil(log_{1+eps} n), `trials` seeds each.
inline TauScanResult round_with_tau_scan(const Instance& g, const FractionalStarSolution& frac, double epsilon,
                                         std::size_t trials, std::uint64_t seed, unsigned threads = 1,
                                         std::size_t pair_cap = kDefaultPairCap) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  const double n = static_cast<double>(std::max<std::size_t>(g.size(), 1));
  const auto levels = static_cast<std::size_t>(std::ceil(std::log(n) / std::log1p(epsilon))) + 1;
  const std::size_t runs = levels * trials;
  std::vector<Districting> results(runs);
  std::vector<Weight> weights(runs, 0);
  parallel_for(runs, threads, [&](std::size_t r) {
    const std::size_t k = r / trials, t = r % trials;
    const double tau = std::pow(1 + epsilon, static_cast<double>(k));
    results[r] = round_once(g, frac, tau, derive_seed(seed, k, t));
    weights[r] = districting_weight(g, results[r]);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs; ++r) {
    if (weights[r] > weights[best]) best = r;
  }
  TauScanResult out;
  out.districting = std::move(results[best]);
  out.weight = weights[best];
  out.runs = runs;
  out.diagnostics = correlation_report(g, frac, pair_cap);
  out.diagnostics.tau_used = std::pow(1 + epsilon, static_cast<double>(best / trials));
  return out;
}

// x on every balanced star district; used to reproduce the gap constructions.
inline FractionalStarSolution uniform_star_fractional(const Instance& g, double x) {
  FractionalStarSolution s;
  for (auto& c : balanced_star_districts(g)) {
    s.lp_value += x * static_cast<double>(c.weight());
    s.primal.push_back({std::move(c), x});
  }
  s.dual.assign(g.size(), 0.0);
  return s;
}

// Fractional solution of the greedy-rounding counterexample: 1/(c-1) on each district centred in X,
// 1 - 1/(c-1) on the district centred at vertex 0.
inline FractionalStarSolution greedy_counterexample_fractional(const Instance& g) {
  if (!g.c().is_integer() || g.c().num() <= 3) throw ParameterError("needs the greedy counterexample instance");
  const auto c = static_cast<Index>(g.c().num());
  FractionalStarSolution s;
  std::vector<Index> sv;
  for (Index i = 0; i < c; ++i) sv.push_back(i);
  s.primal.push_back({Candidate{sv, Index{0}, g.mass_of(sv)}, 1 - 1.0 / static_cast<double>(c - 1)});
  for (Index x = 1; x < c; ++x) {
    std::vector<Index> su{x};
    for (Index y = c; y < g.size(); ++y) su.push_back(y);
    s.primal.push_back({Candidate{su, x, g.mass_of(su)}, 1.0 / static_cast<double>(c - 1)});
  }
  for (const auto& e : s.primal) {
    if (!g.is_balanced(e.district.members)) throw ParameterError("needs the greedy counterexample instance");
    s.lp_value += e.x * static_cast<double>(e.district.weight());
  }
  s.dual.assign(g.size(), 0.0);
  return s;
}

}  // namespace bd
