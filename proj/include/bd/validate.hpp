#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bd/core.hpp"

namespace bd {

enum class Violation {
  unknown_vertex,
  empty,
  duplicate_vertex,
  overlap,
  disconnected,
  not_star,
  rank,
  imbalance,
  not_independent,
  unbalanced_separator,
  not_minor,
};

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::unknown_vertex: return "unknown-vertex";
    case Violation::empty: return "empty";
    case Violation::duplicate_vertex: return "duplicate-vertex";
    case Violation::overlap: return "overlap";
    case Violation::disconnected: return "disconnected";
    case Violation::not_star: return "not-star";
    case Violation::rank: return "rank";
    case Violation::imbalance: return "imbalance";
    case Violation::not_independent: return "not-t-hop-independent";
    case Violation::unbalanced_separator: return "unbalanced";
    case Violation::not_minor: return "not-a-minor-witness";
  }
  return "?";
}

struct ReportEntry {
  Violation kind;
  std::vector<std::size_t> items;  // offending district (or class) indices
  std::string message;
};

struct ValidationReport {
  std::vector<ReportEntry> entries;

  bool ok() const { return entries.empty(); }
  std::size_t count(Violation kind) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const ReportEntry& e) { return e.kind == kind; }));
  }
  void add(Violation kind, std::vector<std::size_t> items, std::string message) {
    entries.push_back({kind, std::move(items), std::move(message)});
  }
  std::string summary() const {
    std::string out;
    for (const auto& e : entries) {
      out += to_string(e.kind);
      out += ": ";
      out += e.message;
      out += '\n';
    }
    return out;
  }
};

// Connectivity of the subgraph induced by `members` (sorted indices).
inline bool induced_connected(const Instance& g, const std::vector<Index>& members) {
  if (members.empty()) return false;
  std::vector<Index> stack{members.front()};
  std::vector<char> seen(members.size(), 0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Index u = stack.back();
    stack.pop_back();
    for (Index w : g.neighbors(u)) {
      auto it = std::lower_bound(members.begin(), members.end(), w);
      if (it == members.end() || *it != w) continue;
      auto k = static_cast<std::size_t>(it - members.begin());
      if (seen[k]) continue;
      seen[k] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == members.size();
}

inline bool is_star_with_center(const Instance& g, const std::vector<Index>& members, Index center) {
  if (!std::binary_search(members.begin(), members.end(), center)) return false;
  return std::all_of(members.begin(), members.end(), [&](Index u) { return u == center || g.adjacent(u, center); });
}

inline std::optional<Index> find_star_center(const Instance& g, const std::vector<Index>& members) {
  for (Index v : members) {
    if (is_star_with_center(g, members, v)) return v;
  }
  return std::nullopt;
}

inline ValidationReport validate_districting(const Instance& g, const Districting& t, bool require_star = false,
                                             std::optional<std::size_t> max_rank = std::nullopt) {
  ValidationReport report;
  std::vector<std::size_t> owner(g.size(), SIZE_MAX);
  for (std::size_t k = 0; k < t.districts.size(); ++k) {
    const District& d = t.districts[k];
    const std::string label = "district " + std::to_string(k);
    if (d.vertices.empty()) {
      report.add(Violation::empty, {k}, label + " is empty");
      continue;
    }
    std::vector<Index> members;
    bool unknown = false;
    for (VertexId id : d.vertices) {
      auto i = g.find(id);
      if (!i) {
        report.add(Violation::unknown_vertex, {k}, label + " references unknown vertex " + std::to_string(id));
        unknown = true;
      } else {
        members.push_back(*i);
      }
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      report.add(Violation::duplicate_vertex, {k}, label + " lists a vertex twice");
      members.erase(std::unique(members.begin(), members.end()), members.end());
    }
    for (Index i : members) {
      if (owner[i] != SIZE_MAX && owner[i] != k) {
        report.add(Violation::overlap, {owner[i], k},
                   "districts " + std::to_string(owner[i]) + " and " + std::to_string(k) + " share vertex " +
                       std::to_string(g.id(i)));
      } else {
        owner[i] = k;
      }
    }
    if (unknown || members.empty()) continue;
    if (!induced_connected(g, members)) report.add(Violation::disconnected, {k}, label + " is not connected");
    if (d.center) {
      auto ci = g.find(*d.center);
      if (!ci || !is_star_with_center(g, members, *ci)) {
        report.add(Violation::not_star, {k}, label + " is not a star around vertex " + std::to_string(*d.center));
      }
    } else if (require_star && !find_star_center(g, members)) {
      report.add(Violation::not_star, {k}, label + " has no star center");
    }
    if (max_rank && members.size() > *max_rank) {
      report.add(Violation::rank, {k},
                 label + " has rank " + std::to_string(members.size()) + " > " + std::to_string(*max_rank));
    }
    if (!g.is_balanced(members)) report.add(Violation::imbalance, {k}, label + " is not c-balanced");
  }
  return report;
}

}  // namespace bd
