#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "bd/core.hpp"
#include "bd/enumerate.hpp"
#include "bd/error.hpp"
#include "bd/matching.hpp"

namespace bd {

inline constexpr std::size_t kDefaultGreedyCap = 5'000'000;

namespace detail {

// Scans candidates in the given order and keeps each one that is disjoint from everything kept so far.
inline Districting pack_in_order(const Instance& g, const std::vector<Candidate>& ordered) {
  std::vector<char> used(g.size(), 0);
  Districting out;
  for (const auto& c : ordered) {
    bool free = true;
    for (Index v : c.members) free = free && !used[v];
    if (!free) continue;
    for (Index v : c.members) used[v] = 1;
    out.districts.push_back(to_district(g, c));
  }
  canonicalize(out);
  return out;
}

inline void require_binary(const Instance& g) {
  for (const auto& v : g.vertices()) {
    const bool one = (v.p1 == 1 && v.p2 == 0) || (v.p1 == 0 && v.p2 == 1);
    if (!one) {
      throw ValidationError("vertex " + std::to_string(v.id) + " has weights (" + std::to_string(v.p1) + "," +
                            std::to_string(v.p2) + "); binary weights required");
    }
  }
}

}  // namespace detail

// Greedy hypergraph matching over all balanced connected districts of rank <= k.
inline Districting greedy_rank_k(const Instance& g, std::size_t k, std::size_t cap = kDefaultGreedyCap) {
  if (k < 2) throw ParameterError("rank k must be at least 2");
  auto cands = balanced_connected_districts(g, k, false, cap);
  std::sort(cands.begin(), cands.end(), heavier_first);
  return detail::pack_in_order(g, cands);
}

// Optimum over districtings of rank <= 2. Each balanced singleton gets a pendant node so one
// maximum-weight matching covers singletons and pairs together.
inline Districting exact_rank_2(const Instance& g) {
  const int n = static_cast<int>(g.size());
  std::vector<WeightedEdge> edges;
  int nodes = n;
  for (Index u = 0; u < g.size(); ++u) {
    if (g.is_balanced(std::vector<Index>{u})) edges.push_back({static_cast<int>(u), nodes++, g.weight(u)});
    for (Index v : g.neighbors(u)) {
      std::vector<Index> pair{u, v};
      if (u < v && g.is_balanced(pair)) {
        edges.push_back({static_cast<int>(u), static_cast<int>(v), g.mass_of(pair).total()});
      }
    }
  }
  const auto mate = max_weight_matching(nodes, std::move(edges));
  Districting out;
  for (int u = 0; u < n; ++u) {
    const int m = mate[u];
    if (m >= n) {
      out.districts.push_back(make_district(g, std::vector<Index>{static_cast<Index>(u)}, static_cast<Index>(u)));
    } else if (m > u) {
      std::vector<Index> pair{static_cast<Index>(u), static_cast<Index>(m)};
      out.districts.push_back(make_district(g, pair, pair[0]));
    }
  }
  canonicalize(out);
  return out;
}

// Star greedy on bounded-degree graphs with the singleton swap for heavy centres.
inline Districting greedy_bounded_degree(const Instance& g, std::size_t max_degree = 24) {
  const auto delta = static_cast<Weight>(g.max_degree());
  if (g.max_degree() > max_degree) {
    throw CapExceeded("maximum degree " + std::to_string(g.max_degree()) + " above the star enumeration limit " +
                      std::to_string(max_degree));
  }
  // one entry per (vertex set, centre)
  std::vector<Candidate> stars;
  for (Index v = 0; v < g.size(); ++v) {
    auto nbrs = g.neighbors(v);
    const std::uint64_t subsets = std::uint64_t{1} << nbrs.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      Candidate cand;
      cand.center = v;
      cand.mass = g.mass(v);
      cand.members.push_back(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (mask >> k & 1) {
          cand.members.push_back(nbrs[k]);
          cand.mass += g.mass(nbrs[k]);
        }
      }
      if (!balanced(cand.mass, g.c())) continue;
      std::sort(cand.members.begin(), cand.members.end());
      stars.push_back(std::move(cand));
    }
  }
  std::sort(stars.begin(), stars.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight() != b.weight()) return a.weight() > b.weight();
    return std::tie(a.members, a.center) < std::tie(b.members, b.center);
  });
  std::vector<char> used(g.size(), 0);
  Districting out;
  for (const auto& t : stars) {
    bool free = true;
    for (Index v : t.members) free = free && !used[v];
    if (!free) continue;
    const Index c = *t.center;
    const bool special = delta > 0 && balanced(g.mass(c), g.c()) &&
                         static_cast<Weight>(t.members.size()) == delta + 1 && g.weight(c) * delta >= t.weight();
    if (special) {
      used[c] = 1;
      out.districts.push_back(make_district(g, std::vector<Index>{c}, c));
      continue;
    }
    for (Index v : t.members) used[v] = 1;
    out.districts.push_back(to_district(g, t));
  }
  canonicalize(out);
  return out;
}

namespace detail {

// Largest balanced set made of `forced` plus members of `pool` (binary weights).
// Members of each type are taken by ascending id. Returns an empty vector if nothing balanced exists.
inline std::vector<Index> best_binary_star(const Instance& g, const std::vector<Index>& forced,
                                           const std::vector<Index>& pool) {
  std::vector<Index> ones, twos;
  std::size_t f1 = 0, f2 = 0;
  for (Index v : forced) (g.vertex(v).p1 == 1 ? f1 : f2)++;
  for (Index v : pool) (g.vertex(v).p1 == 1 ? ones : twos).push_back(v);
  std::sort(ones.begin(), ones.end());
  std::sort(twos.begin(), twos.end());
  const Rational& c = g.c();
  std::size_t best_a = 0, best_b = 0;
  bool found = false;
  for (std::size_t a = f1; a <= f1 + ones.size(); ++a) {
    for (std::size_t b = f2; b <= f2 + twos.size(); ++b) {
      if (!balanced(Mass{static_cast<Weight>(a), static_cast<Weight>(b)}, c)) continue;
      const bool better = !found || a + b > best_a + best_b ||
                          (a + b == best_a + best_b && std::min(a, b) > std::min(best_a, best_b));
      if (better) {
        best_a = a;
        best_b = b;
        found = true;
      }
    }
  }
  if (!found) return {};
  std::vector<Index> out = forced;
  out.insert(out.end(), ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(best_a - f1));
  out.insert(out.end(), twos.begin(), twos.begin() + static_cast<std::ptrdiff_t>(best_b - f2));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Local search for binary weights: seed at the smallest uncovered mixed edge, centre on its p2 end,
// then try to move members out into their own larger stars.
inline Districting local_search_binary(const Instance& g) {
  detail::require_binary(g);
  const Rational& c = g.c();
  const auto k = static_cast<std::size_t>((c.num() - c.den()) / c.den());
  const std::size_t n = g.size();
  std::vector<char> covered(n, 0);
  Districting out;
  auto is_p1 = [&](Index v) { return g.vertex(v).p1 == 1; };
  for (;;) {
    bool seeded = false;
    Index u = 0, w = 0;
    for (Index a = 0; a < n && !seeded; ++a) {
      if (covered[a]) continue;
      for (Index b : g.neighbors(a)) {
        if (b < a || covered[b] || is_p1(a) == is_p1(b)) continue;
        u = is_p1(a) ? a : b;
        w = is_p1(a) ? b : a;
        seeded = true;
        break;
      }
    }
    if (!seeded) break;
    std::vector<Index> pool;
    for (Index v : g.neighbors(w)) {
      if (!covered[v] && v != u) pool.push_back(v);
    }
    std::vector<Index> t = detail::best_binary_star(g, {w, u}, pool);
    for (Index v : t) covered[v] = 1;
    std::vector<Index> kept{w};
    for (Index v : t) {
      if (v == w) continue;
      std::vector<Index> free;
      for (Index x : g.neighbors(v)) {
        if (!covered[x]) free.push_back(x);
      }
      auto swap = detail::best_binary_star(g, {v}, free);
      if (swap.size() > k + 1) {
        for (Index x : swap) covered[x] = 1;
        out.districts.push_back(make_district(g, swap, v));
      } else {
        kept.push_back(v);
      }
    }
    std::sort(kept.begin(), kept.end());
    if (g.is_balanced(kept)) {
      out.districts.push_back(make_district(g, kept, w));
    } else {
      for (Index v : kept) covered[v] = 0;
    }
  }
  canonicalize(out);
  return out;
}

// Maximum-cardinality matching between adjacent p1 and p2 vertices; each edge is one district.
inline Districting binary_matching_bound(const Instance& g) {
  detail::require_binary(g);
  const std::size_t n = g.size();
  std::vector<Index> left;
  for (Index v = 0; v < n; ++v) {
    if (g.vertex(v).p1 == 1) left.push_back(v);
  }
  constexpr Index kNone = static_cast<Index>(-1);
  std::vector<Index> match(n, kNone);  // p2 vertex -> matched p1 vertex
  std::vector<std::size_t> seen(n, 0);
  std::size_t stamp = 0;
  auto augment = [&](auto&& self, Index a) -> bool {
    for (Index b : g.neighbors(a)) {
      if (g.vertex(b).p2 != 1 || seen[b] == stamp) continue;
      seen[b] = stamp;
      if (match[b] == kNone || self(self, match[b])) {
        match[b] = a;
        return true;
      }
    }
    return false;
  };
  for (Index a : left) {
    ++stamp;
    augment(augment, a);
  }
  Districting out;
  for (Index b = 0; b < n; ++b) {
    if (match[b] == kNone) continue;
    const Index a = match[b];
    out.districts.push_back(make_district(g, std::vector<Index>{std::min(a, b), std::max(a, b)}, std::min(a, b)));
  }
  canonicalize(out);
  return out;
}

}  // namespace bd
