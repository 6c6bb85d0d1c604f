#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bd/core.hpp"
#include "bd/error.hpp"
#include "bd/io.hpp"
#include "bd/parallel.hpp"
#include "bd/validate.hpp"

namespace bd {

struct ScatteringSeparator {
  std::vector<std::vector<VertexId>> classes;
  int t = 5;
  double delta = 0.5;
  double balance = 0;          // largest component of G - X over n
  std::size_t coveys = 0;      // covey size at halt
  std::size_t split_classes = 0;  // path classes that had to be split to stay t-hop independent
};

struct MinorCertificate {
  std::vector<std::vector<VertexId>> branch_sets;
};

struct SeparatorOutcome {
  std::optional<ScatteringSeparator> separator;
  std::optional<MinorCertificate> certificate;
  std::size_t iterations = 0;
};

// Round-robin 5-colouring of a path: position i goes to class i mod 5.
template <class T>
std::vector<std::vector<T>> color_shortest_path(const std::vector<T>& path) {
  std::vector<std::vector<T>> classes(std::min<std::size_t>(5, path.size()));
  for (std::size_t i = 0; i < path.size(); ++i) classes[i % 5].push_back(path[i]);
  return classes;
}

namespace detail {

// Components of the graph restricted to `keep`; returns the largest (ties: smallest first vertex).
inline std::vector<Index> largest_component(const Instance& g, const std::vector<char>& keep) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Index> best;
  for (Index s = 0; s < g.size(); ++s) {
    if (!keep[s] || seen[s]) continue;
    std::vector<Index> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Index w : g.neighbors(comp[head])) {
        if (keep[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    if (comp.size() > best.size()) best = std::move(comp);
  }
  std::sort(best.begin(), best.end());
  return best;
}

// BFS shortest path inside `in` from a to b, neighbours scanned in ascending order.
inline std::vector<Index> shortest_path_within(const Instance& g, const std::vector<char>& in, Index a, Index b) {
  std::vector<Index> parent(g.size(), static_cast<Index>(g.size()));
  std::vector<Index> queue{a};
  parent[a] = a;
  for (std::size_t head = 0; head < queue.size() && parent[b] == g.size(); ++head) {
    for (Index w : g.neighbors(queue[head])) {
      if (in[w] && parent[w] == g.size()) {
        parent[w] = queue[head];
        queue.push_back(w);
      }
    }
  }
  if (parent[b] == g.size()) throw Error("separator: attachment vertices are not connected in the active subgraph");
  std::vector<Index> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Members of `cls` within distance < t of u in the graph without `removed`.
inline std::vector<Index> close_members(const Instance& g, const std::vector<char>& removed,
                                        const std::vector<char>& in_class, Index u, int t) {
  std::vector<Index> out;
  std::vector<Index> frontier{u}, next;
  std::vector<Index> touched{u};
  std::vector<char> seen(g.size(), 0);
  seen[u] = 1;
  for (int d = 1; d < t && !frontier.empty(); ++d) {
    next.clear();
    for (Index x : frontier) {
      for (Index w : g.neighbors(x)) {
        if (removed[w] || seen[w]) continue;
        seen[w] = 1;
        next.push_back(w);
        if (in_class[w]) out.push_back(w);
      }
    }
    frontier.swap(next);
  }
  return out;
}

// Splits a class greedily so that every part is t-hop independent without `removed`.
inline std::vector<std::vector<Index>> split_independent(const Instance& g, const std::vector<char>& removed,
                                                         const std::vector<Index>& cls, int t) {
  std::vector<char> in_class(g.size(), 0);
  for (Index v : cls) in_class[v] = 1;
  std::vector<int> part(g.size(), -1);
  std::vector<std::vector<Index>> parts;
  for (Index v : cls) {
    std::vector<char> blocked(parts.size() + 1, 0);
    for (Index w : close_members(g, removed, in_class, v, t)) {
      if (part[w] >= 0) blocked[static_cast<std::size_t>(part[w])] = 1;
    }
    std::size_t p = 0;
    while (blocked[p]) ++p;
    if (p == parts.size()) parts.emplace_back();
    parts[p].push_back(v);
    part[v] = static_cast<int>(p);
  }
  return parts;
}

}  // namespace detail

// Covey search: either a scattering separator with t = 5 and balance 1/2, or h pairwise-neighbouring
// connected branch sets (a K_h minor).
inline SeparatorOutcome covey_separator(const Instance& g, int h) {
  if (h < 2) throw ParameterError("h must be at least 2");
  const std::size_t n = g.size();
  SeparatorOutcome out;
  std::vector<std::vector<std::vector<Index>>> coveys;  // each covey as its list of paths
  std::vector<int> owner(n, -1);                        // covey slot of a vertex in X
  std::vector<char> outside_x(n, 1);
  auto members_of = [](const std::vector<std::vector<Index>>& paths) {
    std::vector<Index> m;
    for (const auto& p : paths) m.insert(m.end(), p.begin(), p.end());
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
  };
  auto rebuild_x = [&] {
    std::fill(outside_x.begin(), outside_x.end(), 1);
    std::fill(owner.begin(), owner.end(), -1);
    for (std::size_t i = 0; i < coveys.size(); ++i) {
      for (Index v : members_of(coveys[i])) {
        outside_x[v] = 0;
        owner[v] = static_cast<int>(i);
      }
    }
  };

  std::vector<Index> b = detail::largest_component(g, outside_x);
  std::vector<char> in_b(n, 0);
  for (Index v : b) in_b[v] = 1;
  std::size_t metric = coveys.size() + 2 * b.size();

  while (2 * b.size() > n) {
    ++out.iterations;
    // drop a covey member that no longer touches B
    std::optional<std::size_t> stale;
    for (std::size_t i = 0; i < coveys.size() && !stale; ++i) {
      bool touches = false;
      for (Index v : members_of(coveys[i])) {
        for (Index w : g.neighbors(v)) touches = touches || in_b[w];
        if (touches) break;
      }
      if (!touches) stale = i;
    }
    if (stale) {
      coveys.erase(coveys.begin() + static_cast<std::ptrdiff_t>(*stale));
      rebuild_x();
    } else {
      std::vector<Index> attach;
      for (std::size_t i = 0; i < coveys.size(); ++i) {
        Index a = static_cast<Index>(n);
        for (Index v : b) {
          for (Index w : g.neighbors(v)) {
            if (owner[w] == static_cast<int>(i)) {
              a = v;
              break;
            }
          }
          if (a != n) break;
        }
        attach.push_back(a);
      }
      std::vector<std::vector<Index>> paths;
      if (attach.empty()) {
        paths.push_back({b.front()});
      } else if (attach.size() == 1) {
        paths.push_back({attach.front()});
      } else {
        for (std::size_t i = 0; i + 1 < attach.size(); ++i) {
          paths.push_back(detail::shortest_path_within(g, in_b, attach[i], attach[i + 1]));
        }
      }
      coveys.push_back(std::move(paths));
      rebuild_x();
      if (coveys.size() == static_cast<std::size_t>(h)) {
        MinorCertificate cert;
        for (const auto& c : coveys) {
          std::vector<VertexId> ids;
          for (Index v : members_of(c)) ids.push_back(g.id(v));
          cert.branch_sets.push_back(std::move(ids));
        }
        out.certificate = std::move(cert);
        return out;
      }
      b = detail::largest_component(g, outside_x);
      std::fill(in_b.begin(), in_b.end(), 0);
      for (Index v : b) in_b[v] = 1;
    }
    const std::size_t next_metric = coveys.size() + 2 * b.size();
    if (next_metric >= metric) throw Error("covey search failed to make progress");
    metric = next_metric;
  }

  ScatteringSeparator sep;
  sep.coveys = coveys.size();
  sep.balance = n ? static_cast<double>(b.size()) / static_cast<double>(n) : 0;
  std::vector<char> removed(n, 0), assigned(n, 0);
  for (const auto& covey : coveys) {
    for (const auto& path : covey) {
      for (const auto& cls : color_shortest_path(path)) {
        std::vector<Index> fresh;
        for (Index v : cls) {
          if (!assigned[v]) {
            assigned[v] = 1;
            fresh.push_back(v);
          }
        }
        if (fresh.empty()) continue;
        auto parts = detail::split_independent(g, removed, fresh, sep.t);
        if (parts.size() > 1) ++sep.split_classes;
        for (auto& part : parts) {
          std::vector<VertexId> ids;
          for (Index v : part) ids.push_back(g.id(v));
          std::sort(ids.begin(), ids.end());
          sep.classes.push_back(std::move(ids));
        }
        for (Index v : fresh) removed[v] = 1;
      }
    }
  }
  out.separator = std::move(sep);
  return out;
}

// Disjointness, sequential t-hop independence and delta-balance of a separator.
inline ValidationReport verify_scattering(const Instance& g, const ScatteringSeparator& sep, unsigned threads = 1) {
  ValidationReport report;
  const std::size_t n = g.size();
  std::vector<int> cls_of(n, -1);
  std::vector<std::vector<Index>> classes(sep.classes.size());
  for (std::size_t k = 0; k < sep.classes.size(); ++k) {
    for (VertexId id : sep.classes[k]) {
      auto idx = g.find(id);
      if (!idx) {
        report.add(Violation::unknown_vertex, {k}, "class " + std::to_string(k) + " has unknown vertex " + std::to_string(id));
        continue;
      }
      if (cls_of[*idx] >= 0) {
        report.add(Violation::overlap, {static_cast<std::size_t>(cls_of[*idx]), k},
                   "vertex " + std::to_string(id) + " appears in classes " + std::to_string(cls_of[*idx]) + " and " +
                       std::to_string(k));
        continue;
      }
      cls_of[*idx] = static_cast<int>(k);
      classes[k].push_back(*idx);
    }
  }
  std::vector<char> removed(n, 0);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::vector<char> in_class(n, 0);
    for (Index v : classes[k]) in_class[v] = 1;
    std::vector<std::vector<Index>> hits(classes[k].size());
    parallel_for(classes[k].size(), threads, [&](std::size_t i) {
      hits[i] = detail::close_members(g, removed, in_class, classes[k][i], sep.t);
    });
    for (std::size_t i = 0; i < hits.size(); ++i) {
      for (Index w : hits[i]) {
        if (classes[k][i] < w) {
          report.add(Violation::not_independent, {k},
                     "class " + std::to_string(k) + ": vertices " + std::to_string(g.id(classes[k][i])) + " and " +
                         std::to_string(g.id(w)) + " are closer than " + std::to_string(sep.t) + " hops");
        }
      }
    }
    for (Index v : classes[k]) removed[v] = 1;
  }
  std::vector<char> keep(n);
  for (std::size_t v = 0; v < n; ++v) keep[v] = removed[v] ? 0 : 1;
  const auto largest = detail::largest_component(g, keep);
  if (static_cast<double>(largest.size()) > sep.delta * static_cast<double>(n) + 1e-9) {
    report.add(Violation::unbalanced_separator, {},
               "largest residual component has " + std::to_string(largest.size()) + " of " + std::to_string(n) +
                   " vertices");
  }
  return report;
}

// h disjoint, connected, pairwise adjacent branch sets.
inline ValidationReport check_minor_certificate(const Instance& g, const MinorCertificate& cert, int h) {
  ValidationReport report;
  if (cert.branch_sets.size() != static_cast<std::size_t>(h)) {
    report.add(Violation::not_minor, {},
               "expected " + std::to_string(h) + " branch sets, got " + std::to_string(cert.branch_sets.size()));
  }
  std::vector<int> set_of(g.size(), -1);
  std::vector<std::vector<Index>> sets(cert.branch_sets.size());
  for (std::size_t k = 0; k < cert.branch_sets.size(); ++k) {
    for (VertexId id : cert.branch_sets[k]) {
      auto idx = g.find(id);
      if (!idx) {
        report.add(Violation::unknown_vertex, {k}, "unknown vertex " + std::to_string(id));
        continue;
      }
      if (set_of[*idx] >= 0) {
        report.add(Violation::overlap, {k}, "vertex " + std::to_string(id) + " is in two branch sets");
        continue;
      }
      set_of[*idx] = static_cast<int>(k);
      sets[k].push_back(*idx);
    }
    std::sort(sets[k].begin(), sets[k].end());
    if (sets[k].empty()) {
      report.add(Violation::empty, {k}, "branch set " + std::to_string(k) + " is empty");
    } else if (!induced_connected(g, sets[k])) {
      report.add(Violation::disconnected, {k}, "branch set " + std::to_string(k) + " is not connected");
    }
  }
  const std::size_t m = sets.size();
  std::vector<char> adj(m * m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    for (Index v : sets[k]) {
      for (Index w : g.neighbors(v)) {
        if (set_of[w] >= 0) adj[k * m + static_cast<std::size_t>(set_of[w])] = 1;
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!adj[a * m + b]) {
        report.add(Violation::not_minor, {a, b},
                   "branch sets " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
      }
    }
  }
  return report;
}

inline Json separator_to_json(const SeparatorOutcome& s) {
  Json out = Json::object();
  if (s.separator) {
    out["classes"] = s.separator->classes;
    out["balance"] = s.separator->balance;
    out["coveys"] = s.separator->coveys;
  } else {
    out["classes"] = Json::array();
  }
  out["certificate"] = s.certificate ? Json(s.certificate->branch_sets) : Json(nullptr);
  return out;
}

}  // namespace bd
