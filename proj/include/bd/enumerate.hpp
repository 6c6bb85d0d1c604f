#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bd/core.hpp"

namespace bd {

// A candidate district in index form; members sorted ascending.
struct Candidate {
  std::vector<Index> members;
  std::optional<Index> center;
  Mass mass;

  Weight weight() const { return mass.p1 + mass.p2; }
};

// Lexicographic order by member list; used for all deterministic tie-breaks.
inline bool lex_less(const Candidate& a, const Candidate& b) { return a.members < b.members; }

// Max weight first, then lexicographically smaller member list.
inline bool heavier_first(const Candidate& a, const Candidate& b) {
  if (a.weight() != b.weight()) return a.weight() > b.weight();
  return a.members < b.members;
}

namespace detail {

template <class Visit>
bool esu_extend(const Instance& g, std::vector<Index>& sub, std::vector<Index> ext, Index root,
                std::size_t max_size, std::vector<int>& in_nbhd, Visit& visit) {
  if (!visit(sub)) return false;
  if (sub.size() >= max_size) return true;
  while (!ext.empty()) {
    const Index w = ext.back();
    ext.pop_back();
    // exclusive neighbourhood of w: neighbours beyond root not in sub and not adjacent to sub
    std::vector<Index> next = ext;
    for (Index u : g.neighbors(w)) {
      if (u > root && in_nbhd[u] == 0) {
        next.push_back(u);
      }
    }
    for (Index u : g.neighbors(w)) ++in_nbhd[u];
    ++in_nbhd[w];
    sub.push_back(w);
    const bool go_on = esu_extend(g, sub, std::move(next), root, max_size, in_nbhd, visit);
    sub.pop_back();
    --in_nbhd[w];
    for (Index u : g.neighbors(w)) --in_nbhd[u];
    if (!go_on) return false;
  }
  return true;
}

}  // namespace detail

// Calls visit(members) once for every connected vertex set of size <= max_size (members unsorted).
// visit returns false to stop the enumeration.
template <class Visit>
void for_each_connected_subset(const Instance& g, std::size_t max_size, Visit&& visit) {
  if (max_size == 0) return;
  std::vector<int> in_nbhd(g.size(), 0);  // count of sub members equal or adjacent to a vertex
  for (Index v = 0; v < g.size(); ++v) {
    std::vector<Index> sub{v};
    std::vector<Index> ext;
    for (Index u : g.neighbors(v)) {
      if (u > v) ext.push_back(u);
    }
    ++in_nbhd[v];
    for (Index u : g.neighbors(v)) ++in_nbhd[u];
    const bool go_on = detail::esu_extend(g, sub, std::move(ext), v, max_size, in_nbhd, visit);
    --in_nbhd[v];
    for (Index u : g.neighbors(v)) --in_nbhd[u];
    if (!go_on) return;
  }
}

// Every c-balanced star district, one entry per distinct vertex set (center = smallest valid one).
// Throws CapExceeded when more than `cap` distinct districts exist.
inline std::vector<Candidate> balanced_star_districts(const Instance& g, std::size_t cap = SIZE_MAX,
                                                      std::size_t max_degree = 24) {
  std::map<std::vector<Index>, Candidate> found;
  for (Index v = 0; v < g.size(); ++v) {
    auto nbrs = g.neighbors(v);
    if (nbrs.size() > max_degree) {
      throw CapExceeded("vertex " + std::to_string(g.id(v)) + " has degree " + std::to_string(nbrs.size()) +
                        " above the star enumeration limit " + std::to_string(max_degree));
    }
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
      auto [it, inserted] = found.try_emplace(cand.members, cand);
      if (inserted && found.size() > cap) {
        throw CapExceeded("more than " + std::to_string(cap) + " balanced star districts");
      }
    }
  }
  std::vector<Candidate> out;
  out.reserve(found.size());
  for (auto& [key, cand] : found) out.push_back(std::move(cand));
  return out;
}

inline std::optional<Index> star_center(const Instance& g, const std::vector<Index>& sorted_members) {
  for (Index v : sorted_members) {
    bool ok = true;
    for (Index u : sorted_members) {
      if (u != v && !g.adjacent(u, v)) {
        ok = false;
        break;
      }
    }
    if (ok) return v;
  }
  return std::nullopt;
}

// Every c-balanced connected district of rank <= max_rank (stars only if requested), sorted lexicographically.
inline std::vector<Candidate> balanced_connected_districts(const Instance& g, std::size_t max_rank, bool require_star,
                                                           std::size_t cap = SIZE_MAX) {
  std::vector<Candidate> out;
  for_each_connected_subset(g, max_rank, [&](const std::vector<Index>& sub) {
    Candidate cand;
    cand.members = sub;
    std::sort(cand.members.begin(), cand.members.end());
    cand.mass = g.mass_of(cand.members);
    if (!balanced(cand.mass, g.c())) return true;
    cand.center = star_center(g, cand.members);
    if (require_star && !cand.center) return true;
    out.push_back(std::move(cand));
    if (out.size() > cap) throw CapExceeded("more than " + std::to_string(cap) + " balanced districts");
    return true;
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

inline District to_district(const Instance& g, const Candidate& c) { return make_district(g, c.members, c.center); }

}  // namespace bd
