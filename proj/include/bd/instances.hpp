#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bd/core.hpp"
#include "bd/rng.hpp"

namespace bd {

namespace detail {

// (c - 1) * k as an integer, or a parameter error.
inline Weight dangling_weight(const Rational& c, Weight k) {
  const __int128 num = static_cast<__int128>(c.num() - c.den()) * k;
  if (num % c.den() != 0) {
    throw ParameterError("(c-1)*" + std::to_string(k) + " is not an integer for c=" + c.to_string());
  }
  return static_cast<Weight>(num / c.den());
}

inline void require_c(const Rational& c) {
  if (c < Rational(2)) throw ParameterError("c must be at least 2");
}

}  // namespace detail

// side x side grid of p1=1 blocks; each interior block carries a pendant block with p2=(c-1)*5.
inline Instance gen_square_grid(int side, const Rational& c) {
  if (side < 3) throw ParameterError("square grid needs side >= 3");
  detail::require_c(c);
  const Weight heavy = detail::dangling_weight(c, 5);
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  auto id = [&](int r, int col) -> VertexId { return static_cast<VertexId>(r) * side + col; };
  for (int r = 0; r < side; ++r) {
    for (int col = 0; col < side; ++col) {
      vs.push_back({id(r, col), 1, 0});
      if (col + 1 < side) es.emplace_back(id(r, col), id(r, col + 1));
      if (r + 1 < side) es.emplace_back(id(r, col), id(r + 1, col));
    }
  }
  VertexId next = static_cast<VertexId>(side) * side;
  for (int r = 1; r + 1 < side; ++r) {
    for (int col = 1; col + 1 < side; ++col) {
      vs.push_back({next, 0, heavy});
      es.emplace_back(id(r, col), next++);
    }
  }
  return Instance(c, std::move(vs), std::move(es),
                  {{"family", "square-grid"}, {"side", std::to_string(side)}});
}

// Rhombic patch of the triangular lattice: side x side blocks, six neighbours in the interior.
inline Instance gen_triangular_grid(int side, const Rational& c) {
  if (side < 3) throw ParameterError("triangular grid needs side >= 3");
  detail::require_c(c);
  const Weight heavy = detail::dangling_weight(c, 7);
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  auto id = [&](int r, int col) -> VertexId { return static_cast<VertexId>(r) * side + col; };
  for (int r = 0; r < side; ++r) {
    for (int col = 0; col < side; ++col) {
      vs.push_back({id(r, col), 1, 0});
      if (col + 1 < side) es.emplace_back(id(r, col), id(r, col + 1));
      if (r + 1 < side) es.emplace_back(id(r, col), id(r + 1, col));
      if (r + 1 < side && col > 0) es.emplace_back(id(r, col), id(r + 1, col - 1));
    }
  }
  VertexId next = static_cast<VertexId>(side) * side;
  for (int r = 1; r + 1 < side; ++r) {
    for (int col = 1; col + 1 < side; ++col) {
      vs.push_back({next, 0, heavy});
      es.emplace_back(id(r, col), next++);
    }
  }
  return Instance(c, std::move(vs), std::move(es),
                  {{"family", "triangular-grid"}, {"side", std::to_string(side)}});
}

// Elements 1..n become p1=1 blocks; hyperedge j becomes block n+1+j with p2=(c-1)k.
inline Instance gen_hypergraph_reduction(const std::vector<std::vector<VertexId>>& hyperedges, int k,
                                         const Rational& c, VertexId n = 0) {
  detail::require_c(c);
  if (k < 1) throw ParameterError("hyperedge size k must be positive");
  for (const auto& e : hyperedges) {
    if (static_cast<int>(e.size()) != k) throw ParameterError("hypergraph is not " + std::to_string(k) + "-uniform");
    if (std::set<VertexId>(e.begin(), e.end()).size() != e.size()) throw ParameterError("hyperedge repeats an element");
    for (VertexId x : e) {
      if (x < 1) throw ParameterError("hypergraph elements must be numbered from 1");
      n = std::max(n, x);
    }
  }
  const Weight heavy = detail::dangling_weight(c, k);
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (VertexId x = 1; x <= n; ++x) vs.push_back({x, 1, 0});
  for (std::size_t j = 0; j < hyperedges.size(); ++j) {
    const VertexId e = n + 1 + static_cast<VertexId>(j);
    vs.push_back({e, 0, heavy});
    for (VertexId x : hyperedges[j]) es.emplace_back(x, e);
  }
  return Instance(c, std::move(vs), std::move(es),
                  {{"family", "hypergraph-reduction"}, {"k", std::to_string(k)}});
}

// A (ids 0..n-1), B (n..2n-1), R grid (2n..3n-1), n = s^2. A_i wires to row i of R, B_j to column j.
inline Instance gen_grid_bipartite_gap(int s, const Rational& c) {
  if (s < 1) throw ParameterError("sqrt_n must be positive");
  detail::require_c(c);
  const Weight heavy = detail::dangling_weight(c, s);
  const VertexId n = static_cast<VertexId>(s) * s;
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  auto r_id = [&](int i, int j) { return 2 * n + static_cast<VertexId>(i) * s + j; };
  for (int i = 0; i < s; ++i) {
    for (int t = 0; t < s; ++t) {
      const VertexId a = static_cast<VertexId>(i) * s + t;
      const VertexId b = n + a;
      vs.push_back({a, heavy, 0});
      vs.push_back({b, heavy, 0});
      for (int j = 0; j < s; ++j) {
        es.emplace_back(a, r_id(i, j));
        es.emplace_back(b, r_id(j, i));
      }
    }
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) vs.push_back({r_id(i, j), 0, 1});
  }
  return Instance(c, std::move(vs), std::move(es),
                  {{"family", "grid-bipartite-gap"}, {"sqrt_n", std::to_string(s)}});
}

// v = 0 (p1), X = 1..c-1 (p2), then Y: (c-1)n/c p1 blocks followed by n/c-1 p2 blocks.
inline Instance gen_greedy_counterexample(int n, int c) {
  if (c <= 3) throw ParameterError("greedy counterexample needs integer c > 3");
  if (n <= 0 || n % c != 0) throw ParameterError("n must be a positive multiple of c");
  std::vector<Vertex> vs{{0, 1, 0}};
  std::vector<Edge> es;
  for (int x = 1; x < c; ++x) {
    vs.push_back({x, 0, 1});
    es.emplace_back(0, x);
  }
  const int ones = (c - 1) * (n / c);
  const int twos = n / c - 1;
  for (int y = 0; y < ones + twos; ++y) {
    const VertexId id = c + y;
    vs.push_back(y < ones ? Vertex{id, 1, 0} : Vertex{id, 0, 1});
    for (int x = 1; x < c; ++x) es.emplace_back(x, id);
  }
  return Instance(Rational(c), std::move(vs), std::move(es),
                  {{"family", "greedy-counterexample"}, {"n", std::to_string(n)}});
}

enum class RandomKind { tree, complete, grid_subgraph, gnp };

inline RandomKind parse_random_kind(const std::string& s) {
  if (s == "tree") return RandomKind::tree;
  if (s == "complete") return RandomKind::complete;
  if (s == "grid_subgraph" || s == "grid-subgraph") return RandomKind::grid_subgraph;
  if (s == "gnp") return RandomKind::gnp;
  throw ParameterError("unknown random kind '" + s + "'");
}

inline const char* to_string(RandomKind k) {
  switch (k) {
    case RandomKind::tree: return "tree";
    case RandomKind::complete: return "complete";
    case RandomKind::grid_subgraph: return "grid_subgraph";
    case RandomKind::gnp: return "gnp";
  }
  return "?";
}

struct RandomOptions {
  Rational c{3};
  double edge_probability = 0.3;  // gnp
  double keep_probability = 0.85;  // grid_subgraph
};

// Vertex ids 0..n-1, weights uniform in [0, max_weight]. Tree: parent of i uniform in [0, i).
inline Instance gen_random(RandomKind kind, int n, Weight max_weight, std::uint64_t seed,
                           const RandomOptions& opt = {}) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  if (max_weight < 0) throw ParameterError("max_weight must be nonnegative");
  detail::require_c(opt.c);
  Rng rng(seed);
  std::vector<Vertex> vs;
  for (int i = 0; i < n; ++i) {
    const Weight p1 = rng.uniform(0, max_weight);
    const Weight p2 = rng.uniform(0, max_weight);
    vs.push_back({i, p1, p2});
  }
  std::vector<Edge> es;
  switch (kind) {
    case RandomKind::tree:
      for (int i = 1; i < n; ++i) es.emplace_back(rng.uniform(0, i - 1), i);
      break;
    case RandomKind::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
      break;
    case RandomKind::grid_subgraph: {
      const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
      for (int i = 0; i < n; ++i) {
        const int col = i % side;
        if (col + 1 < side && i + 1 < n && rng.bernoulli(opt.keep_probability)) es.emplace_back(i, i + 1);
        if (i + side < n && rng.bernoulli(opt.keep_probability)) es.emplace_back(i, i + side);
      }
      break;
    }
    case RandomKind::gnp:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.bernoulli(opt.edge_probability)) es.emplace_back(i, j);
      break;
  }
  return Instance(opt.c, std::move(vs), std::move(es),
                  {{"family", std::string("random-") + to_string(kind)}, {"seed", std::to_string(seed)}});
}

}  // namespace bd
