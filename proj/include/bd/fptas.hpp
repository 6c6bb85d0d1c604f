#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bd/core.hpp"
#include "bd/trim.hpp"
#include "bd/validate.hpp"
#include "bd/witness.hpp"

namespace bd {

using WitnessId = WitnessArena::Id;

struct ValuePoint2 {
  Weight q1 = 0;
  Weight q2 = 0;
  WitnessId witness = WitnessArena::kNone;
};

// s1, s2: masses of the district still open at the tracked vertex; s3: weight already closed below it.
struct Stamp {
  Weight s1 = 0;
  Weight s2 = 0;
  Weight s3 = 0;
  WitnessId open = WitnessArena::kNone;
  WitnessId done = WitnessArena::kNone;
};

template <class P>
struct TrimmedList {
  std::vector<P> points;
  double epsilon = 0;
  Objective objective = Objective::l1;
};

inline std::array<long double, 2> coordinates(const ValuePoint2& p) {
  return {static_cast<long double>(p.q1), static_cast<long double>(p.q2)};
}
inline std::array<long double, 3> coordinates(const Stamp& s) {
  return {static_cast<long double>(s.s1), static_cast<long double>(s.s2), static_cast<long double>(s.s3)};
}

namespace detail {

inline std::vector<std::size_t> trim_points(const std::vector<ValuePoint2>& pts, Objective obj, double eps,
                                            const Rational& c) {
  std::vector<std::array<long double, 2>> xs;
  std::vector<__int128> ell;
  xs.reserve(pts.size());
  ell.reserve(pts.size());
  for (const auto& p : pts) {
    xs.push_back(coordinates(p));
    ell.push_back(objective_value(obj, p.q1, p.q2, c));
  }
  return trim_indices<2>(xs, ell, eps, [&](std::size_t a, std::size_t b) {
    return std::pair(pts[a].q1, pts[a].q2) < std::pair(pts[b].q1, pts[b].q2);
  });
}

inline std::vector<std::size_t> trim_points(const std::vector<Stamp>& pts, Objective obj, double eps,
                                            const Rational& c) {
  std::vector<std::array<long double, 3>> xs;
  std::vector<__int128> ell;
  xs.reserve(pts.size());
  ell.reserve(pts.size());
  for (const auto& p : pts) {
    xs.push_back(coordinates(p));
    ell.push_back(objective_value(obj, p.s1, p.s2, c));
  }
  return trim_indices<3>(xs, ell, eps, [&](std::size_t a, std::size_t b) {
    if (pts[a].s1 != pts[b].s1) return pts[a].s1 < pts[b].s1;
    if (pts[a].s2 != pts[b].s2) return pts[a].s2 < pts[b].s2;
    return pts[a].s3 > pts[b].s3;
  });
}

}  // namespace detail

// (l_j, eps)-trim: every input point is eps-approximated and l_j-dominated by a kept point.
template <class P>
TrimmedList<P> trim(const std::vector<P>& points, Objective objective, double epsilon, const Rational& c) {
  TrimmedList<P> out;
  out.epsilon = epsilon;
  out.objective = objective;
  for (std::size_t i : detail::trim_points(points, objective, epsilon, c)) out.points.push_back(points[i]);
  return out;
}

struct FptasStats {
  std::size_t max_list_size = 0;
  std::size_t trims = 0;
  double step_epsilon = 0;
};

struct FptasDistrict {
  District district;
  Weight weight = 0;
  FptasStats stats;
};

struct FptasDistricting {
  Districting districting;
  Weight weight = 0;
  FptasStats stats;
};

inline constexpr Weight kExactFallbackWeightCap = 100000;

inline void check_fptas_parameters(const Rational& c, double epsilon) {
  if (c <= Rational(2)) {
    throw ParameterError("the FPTAS needs c > 2 (got c=" + c.to_string() + "); use the exact fallback");
  }
  const double limit = 0.5 * std::log(c.to_double() - 1.0);
  if (!(epsilon > 0) || !(epsilon < limit)) {
    throw ParameterError("epsilon must lie in (0, ln(c-1)/2) = (0, " + std::to_string(limit) + ")");
  }
}

inline void check_exact_fallback(const Instance& g) {
  if (g.total_weight() > kExactFallbackWeightCap) {
    throw ParameterError("exact DP fallback needs w(V) <= " + std::to_string(kExactFallbackWeightCap));
  }
}

namespace detail {

inline FptasDistrict complete_dp(const Instance& g, double step) {
  WitnessArena arena;
  FptasDistrict out;
  out.stats.step_epsilon = step;
  std::vector<ValuePoint2> lists[2] = {{ValuePoint2{}}, {ValuePoint2{}}};
  const Objective objs[2] = {Objective::l1, Objective::l2};
  for (Index v = 0; v < g.size(); ++v) {
    const Vertex& pv = g.vertex(v);
    for (int j = 0; j < 2; ++j) {
      std::vector<ValuePoint2>& list = lists[j];
      const std::size_t base = list.size();
      std::vector<ValuePoint2> cand = list;
      for (const auto& p : list) cand.push_back({p.q1 + pv.p1, p.q2 + pv.p2, WitnessArena::kNone});
      std::vector<ValuePoint2> next;
      for (std::size_t i : trim_points(cand, objs[j], step, g.c())) {
        ValuePoint2 p = cand[i];
        if (i >= base) p.witness = arena.join(list[i - base].witness, arena.leaf(v));
        next.push_back(p);
      }
      ++out.stats.trims;
      list = std::move(next);
      out.stats.max_list_size = std::max(out.stats.max_list_size, list.size());
    }
  }
  const ValuePoint2* best = nullptr;
  for (const auto& list : lists) {
    for (const auto& p : list) {
      if (!balanced({p.q1, p.q2}, g.c())) continue;
      if (!best || p.q1 + p.q2 > best->q1 + best->q2) best = &p;
    }
  }
  if (best) {
    out.weight = best->q1 + best->q2;
    out.district = make_district(g, arena.vertices(best->witness));
  }
  return out;
}

struct RootedTree {
  std::vector<Index> parent;
  std::vector<std::vector<Index>> children;  // ascending
  std::vector<Index> order;                  // parents before children
};

inline RootedTree root_tree(const Instance& g) {
  const std::size_t n = g.size();
  if (n > 0 && g.edge_count() != n - 1) throw ValidationError("instance is not a tree (wrong edge count)");
  RootedTree t;
  t.parent.assign(n, static_cast<Index>(n));
  t.children.assign(n, {});
  if (n == 0) return t;
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  t.order.push_back(0);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    const Index v = t.order[head];
    for (Index u : g.neighbors(v)) {
      if (seen[u]) continue;
      seen[u] = 1;
      t.parent[u] = v;
      t.children[v].push_back(u);
      t.order.push_back(u);
    }
  }
  if (t.order.size() != n) throw ValidationError("instance is not a tree (disconnected)");
  return t;
}

class TreeDp {
 public:
  TreeDp(const Instance& g, double step) : g_(g), step_(step) { stats_.step_epsilon = step; }

  FptasDistricting run(bool star) {
    FptasDistricting out;
    const std::size_t n = g_.size();
    if (n == 0) return out;
    tree_ = root_tree(g_);
    state_.assign(n, {});
    for (auto it = tree_.order.rbegin(); it != tree_.order.rend(); ++it) {
      if (star) {
        visit_star(*it);
      } else {
        visit_general(*it);
      }
    }
    const auto& root = state_[tree_.order.front()];
    const Stamp* best = nullptr;
    for (const auto* list : {&root.closed, &root.l1, &root.l2}) {
      for (const auto& s : *list) {
        if (s.s1 == 0 && s.s2 == 0 && (!best || s.s3 > best->s3)) best = &s;
      }
    }
    if (best) {
      out.weight = best->s3;
      for (const auto& d : arena_.districts(best->done)) {
        std::optional<Index> center;
        if (star) center = find_star_center(g_, d);
        out.districting.districts.push_back(make_district(g_, d, center));
      }
    }
    out.stats = stats_;
    return out;
  }

 private:
  struct Prov {
    std::uint32_t a;
    std::uint32_t b;
  };
  struct VertexLists {
    std::vector<Stamp> l1, l2;  // general mode: full lists; star mode: centre-open lists
    std::vector<Stamp> closed;  // star mode
    std::vector<Stamp> leaf;    // star mode: v waits as a leaf of its parent's star
  };

  void note(std::size_t size) {
    ++stats_.trims;
    stats_.max_list_size = std::max(stats_.max_list_size, size);
  }

  std::vector<Stamp> trimmed(const std::vector<Stamp>& pts, Objective obj) {
    std::vector<Stamp> out;
    for (std::size_t i : trim_points(pts, obj, step_, g_.c())) out.push_back(pts[i]);
    note(out.size());
    return out;
  }

  // Trim(A + B) with witnesses built only for survivors.
  std::vector<Stamp> sum_trim(const std::vector<Stamp>& a, const std::vector<Stamp>& b, Objective obj) {
    std::vector<Stamp> cand;
    std::vector<Prov> prov;
    cand.reserve(a.size() * b.size());
    prov.reserve(a.size() * b.size());
    for (std::uint32_t i = 0; i < a.size(); ++i) {
      for (std::uint32_t j = 0; j < b.size(); ++j) {
        cand.push_back({a[i].s1 + b[j].s1, a[i].s2 + b[j].s2, a[i].s3 + b[j].s3});
        prov.push_back({i, j});
      }
    }
    std::vector<Stamp> out;
    for (std::size_t k : trim_points(cand, obj, step_, g_.c())) {
      Stamp s = cand[k];
      s.open = arena_.join(a[prov[k].a].open, b[prov[k].b].open);
      s.done = arena_.join(a[prov[k].a].done, b[prov[k].b].done);
      out.push_back(s);
    }
    note(out.size());
    return out;
  }

  static std::vector<Stamp> concat(std::initializer_list<const std::vector<Stamp>*> parts) {
    std::vector<Stamp> out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
  }

  Stamp seed(Index v) {
    const Vertex& pv = g_.vertex(v);
    return {pv.p1, pv.p2, 0, arena_.leaf(v), WitnessArena::kNone};
  }

  // Closes the open district of s if it is balanced.
  bool consolidate(const Stamp& s, Stamp& out) {
    if (!balanced({s.s1, s.s2}, g_.c())) return false;
    out = {0, 0, s.s1 + s.s2 + s.s3, WitnessArena::kNone, arena_.join(s.done, arena_.district(s.open))};
    return true;
  }

  void visit_general(Index v) {
    std::vector<Stamp> i1{seed(v)};
    std::vector<Stamp> i2 = i1;
    for (Index u : tree_.children[v]) {
      i1 = sum_trim(i1, state_[u].l1, Objective::l1);
      i2 = sum_trim(i2, state_[u].l2, Objective::l2);
      state_[u] = {};
    }
    std::vector<Stamp> ca;
    for (const auto* list : {&i1, &i2}) {
      for (const Stamp& s : *list) {
        Stamp closed;
        if (consolidate(s, closed)) ca.push_back(closed);
        ca.push_back({0, 0, s.s3, WitnessArena::kNone, s.done});
      }
    }
    VertexLists& mine = state_[v];
    if (v == tree_.order.front()) {
      mine.l1 = trimmed(ca, Objective::l1);
      mine.l2 = trimmed(ca, Objective::l2);
    } else {
      mine.l1 = trimmed(concat({&i1, &ca}), Objective::l1);
      mine.l2 = trimmed(concat({&i2, &ca}), Objective::l2);
    }
  }

  void visit_star(Index v) {
    const auto& kids = tree_.children[v];
    const std::size_t d = kids.size();
    const Stamp empty{};
    // v is the centre; each child is either closed or a leaf of v's star
    std::vector<Stamp> i1{seed(v)};
    std::vector<Stamp> i2 = i1;
    for (Index u : kids) {
      auto options = concat({&state_[u].closed, &state_[u].leaf});
      i1 = sum_trim(i1, options, Objective::l1);
      i2 = sum_trim(i2, options, Objective::l2);
    }
    // prefix[j] / suffix[j]: every child before / from j is closed
    std::vector<std::vector<Stamp>> prefix(d + 1), suffix(d + 1);
    prefix[0] = {empty};
    for (std::size_t j = 0; j < d; ++j) prefix[j + 1] = sum_trim(prefix[j], state_[kids[j]].closed, Objective::l1);
    suffix[d] = {empty};
    for (std::size_t j = d; j-- > 0;) suffix[j] = sum_trim(suffix[j + 1], state_[kids[j]].closed, Objective::l1);

    std::vector<Stamp> closed;
    for (const auto* list : {&i1, &i2}) {
      for (const Stamp& s : *list) {
        Stamp c;
        if (consolidate(s, c)) closed.push_back(c);
      }
    }
    for (const Stamp& z : prefix[d]) closed.push_back({0, 0, z.s3, WitnessArena::kNone, z.done});
    // v is a leaf of child u_j's star, which closes here
    const Vertex& pv = g_.vertex(v);
    for (std::size_t j = 0; j < d; ++j) {
      const VertexLists& child = state_[kids[j]];
      if (child.l1.empty() && child.l2.empty()) continue;
      auto others = j == 0 ? suffix[1] : (j + 1 == d ? prefix[j] : sum_trim(prefix[j], suffix[j + 1], Objective::l1));
      std::vector<Stamp> cand;
      std::vector<Prov> prov;
      auto opens = concat({&child.l1, &child.l2});
      for (std::uint32_t a = 0; a < opens.size(); ++a) {
        const Stamp& o = opens[a];
        if (!balanced({o.s1 + pv.p1, o.s2 + pv.p2}, g_.c())) continue;
        for (std::uint32_t b = 0; b < others.size(); ++b) {
          cand.push_back({0, 0, o.s1 + o.s2 + pv.p1 + pv.p2 + o.s3 + others[b].s3});
          prov.push_back({a, b});
        }
      }
      for (std::size_t k : trim_points(cand, Objective::l1, step_, g_.c())) {
        const Stamp& o = opens[prov[k].a];
        Stamp s = cand[k];
        s.done = arena_.join(arena_.join(o.done, others[prov[k].b].done),
                             arena_.district(arena_.join(o.open, arena_.leaf(v))));
        closed.push_back(s);
      }
      note(closed.size());
    }
    for (Index u : kids) state_[u] = {};
    VertexLists& mine = state_[v];
    mine.closed = trimmed(closed, Objective::l1);
    if (v != tree_.order.front()) {
      mine.l1 = std::move(i1);
      mine.l2 = std::move(i2);
      for (const Stamp& z : prefix[d]) mine.leaf.push_back({pv.p1, pv.p2, z.s3, arena_.leaf(v), z.done});
    }
  }

  const Instance& g_;
  double step_;
  RootedTree tree_;
  std::vector<VertexLists> state_;
  WitnessArena arena_;
  FptasStats stats_;
};

}  // namespace detail

// Best single balanced subset of a complete graph, within e^eps of optimal.
inline FptasDistrict solve_complete(const Instance& g, double epsilon) {
  check_fptas_parameters(g.c(), epsilon);
  const double step = epsilon / static_cast<double>(std::max<std::size_t>(g.size(), 1));
  return detail::complete_dp(g, step);
}

// Untrimmed pseudo-polynomial version; works for any c >= 2.
inline FptasDistrict solve_complete_exact(const Instance& g) {
  check_exact_fallback(g);
  return detail::complete_dp(g, 0.0);
}

// Districting of a tree within e^eps of optimal. Star mode only forms star districts.
inline FptasDistricting solve_tree(const Instance& g, double epsilon, bool require_star = false) {
  check_fptas_parameters(g.c(), epsilon);
  const double n = static_cast<double>(std::max<std::size_t>(g.size(), 1));
  const double step = epsilon / ((require_star ? 3.0 : 2.0) * n);
  return detail::TreeDp(g, step).run(require_star);
}

inline FptasDistricting solve_tree_exact(const Instance& g, bool require_star = false) {
  check_exact_fallback(g);
  return detail::TreeDp(g, 0.0).run(require_star);
}

}  // namespace bd
