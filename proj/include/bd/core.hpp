#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bd/error.hpp"
#include "bd/rational.hpp"

namespace bd {

using VertexId = std::int64_t;
using Weight = std::int64_t;
using Index = std::uint32_t;

struct Vertex {
  VertexId id = 0;
  Weight p1 = 0;
  Weight p2 = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

using Edge = std::pair<VertexId, VertexId>;
using Metadata = std::map<std::string, std::string>;

inline Weight checked_add(Weight a, Weight b) {
  Weight out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ValidationError("weight total overflows 64 bits");
  return out;
}

// Population masses of a vertex set.
struct Mass {
  Weight p1 = 0;
  Weight p2 = 0;

  Weight total() const { return checked_add(p1, p2); }
  Mass& operator+=(const Mass& o) {
    p1 = checked_add(p1, o.p1);
    p2 = checked_add(p2, o.p2);
    return *this;
  }
  friend Mass operator+(Mass a, const Mass& b) { return a += b; }
  friend bool operator==(const Mass&, const Mass&) = default;
};

// min(p1, p2) * c >= p1 + p2, with zero-weight sets never balanced.
inline bool balanced(const Mass& m, const Rational& c) {
  const __int128 total = static_cast<__int128>(m.p1) + m.p2;
  if (total <= 0) return false;
  const __int128 lo = std::min(m.p1, m.p2);
  return lo * c.num() >= total * c.den();
}

class Instance {
 public:
  Instance() = default;

  Instance(Rational c, std::vector<Vertex> vertices, std::vector<Edge> edges, Metadata metadata = {})
      : c_(c), vertices_(std::move(vertices)), metadata_(std::move(metadata)) {
    if (c_ < Rational(2)) throw ValidationError("balance parameter c must be at least 2, got " + c_.to_string());
    std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    Weight total = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Vertex& v = vertices_[i];
      if (i > 0 && vertices_[i - 1].id == v.id) throw ValidationError("duplicate vertex id " + std::to_string(v.id));
      if (v.p1 < 0 || v.p2 < 0) throw ValidationError("negative population on vertex " + std::to_string(v.id));
      total = checked_add(total, checked_add(v.p1, v.p2));
    }
    total_weight_ = total;
    adjacency_.assign(vertices_.size(), {});
    for (const auto& [u, v] : edges) {
      if (u == v) throw ValidationError("self-loop on vertex " + std::to_string(u));
      const Index a = index_of(u);
      const Index b = index_of(v);
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    }
    for (std::size_t i = 0; i < adjacency_.size(); ++i) {
      auto& adj = adjacency_[i];
      std::sort(adj.begin(), adj.end());
      if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) {
        throw ValidationError("duplicate edge at vertex " + std::to_string(vertices_[i].id));
      }
      edge_count_ += adj.size();
    }
    edge_count_ /= 2;
  }

  const Rational& c() const { return c_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(Index i) const { return vertices_[i]; }
  VertexId id(Index i) const { return vertices_[i].id; }
  Mass mass(Index i) const { return {vertices_[i].p1, vertices_[i].p2}; }
  Weight weight(Index i) const { return vertices_[i].p1 + vertices_[i].p2; }
  Weight total_weight() const { return total_weight_; }
  const Metadata& metadata() const { return metadata_; }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Index> neighbors(Index i) const { return adjacency_[i]; }
  std::size_t degree(Index i) const { return adjacency_[i].size(); }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return d;
  }
  bool adjacent(Index a, Index b) const {
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  std::optional<Index> find(VertexId id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, VertexId x) { return v.id < x; });
    if (it == vertices_.end() || it->id != id) return std::nullopt;
    return static_cast<Index>(it - vertices_.begin());
  }
  Index index_of(VertexId id) const {
    auto i = find(id);
    if (!i) throw ValidationError("unknown vertex id " + std::to_string(id));
    return *i;
  }

  // Edges as (smaller id, larger id), sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Index a = 0; a < adjacency_.size(); ++a) {
      for (Index b : adjacency_[a]) {
        if (a < b) out.emplace_back(vertices_[a].id, vertices_[b].id);
      }
    }
    return out;
  }

  Mass mass_of(std::span<const Index> members) const {
    Mass m;
    for (Index i : members) m += mass(i);
    return m;
  }
  bool is_balanced(std::span<const Index> members) const { return balanced(mass_of(members), c_); }

 private:
  Rational c_{2};
  std::vector<Vertex> vertices_;
  std::vector<std::vector<Index>> adjacency_;
  Metadata metadata_;
  Weight total_weight_ = 0;
  std::size_t edge_count_ = 0;
};

struct District {
  std::vector<VertexId> vertices;
  std::optional<VertexId> center;
  friend bool operator==(const District&, const District&) = default;
};

struct Districting {
  std::vector<District> districts;
  friend bool operator==(const Districting&, const Districting&) = default;
};

// Builds a District from internal indices; vertex ids come out sorted.
inline District make_district(const Instance& g, std::span<const Index> members,
                              std::optional<Index> center = std::nullopt) {
  District d;
  d.vertices.reserve(members.size());
  for (Index i : members) d.vertices.push_back(g.id(i));
  std::sort(d.vertices.begin(), d.vertices.end());
  if (center) d.center = g.id(*center);
  return d;
}

inline std::vector<Index> district_indices(const Instance& g, const District& d) {
  std::vector<Index> out;
  out.reserve(d.vertices.size());
  for (VertexId v : d.vertices) out.push_back(g.index_of(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline Mass district_mass(const Instance& g, const District& d) {
  Mass m;
  for (VertexId v : d.vertices) m += g.mass(g.index_of(v));
  return m;
}

inline bool is_c_balanced(const Instance& g, const District& d) { return balanced(district_mass(g, d), g.c()); }

inline Weight districting_weight(const Instance& g, const Districting& t) {
  Weight total = 0;
  for (const auto& d : t.districts) total = checked_add(total, district_mass(g, d).total());
  return total;
}

// Canonical order: vertices sorted inside each district, districts sorted lexicographically.
inline void canonicalize(Districting& t) {
  for (auto& d : t.districts) std::sort(d.vertices.begin(), d.vertices.end());
  std::sort(t.districts.begin(), t.districts.end(),
            [](const District& a, const District& b) { return a.vertices < b.vertices; });
}

}  // namespace bd
