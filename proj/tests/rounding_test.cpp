#include <gtest/gtest.h>

#include <cmath>

#include "bd/instances.hpp"
#include "bd/rounding.hpp"
#include "bd/validate.hpp"

namespace bd {
namespace {

FractionalStarSolution single(const Instance& g, std::vector<Index> members, double x) {
  FractionalStarSolution s;
  auto center = star_center(g, members);
  s.primal.push_back({Candidate{members, center, g.mass_of(members)}, x});
  s.dual.assign(g.size(), 0.0);
  return s;
}

// Overlapping-pair sum by brute force over all pairs.
double naive_correlation(const FractionalStarSolution& f) {
  double sum = 0;
  for (std::size_t i = 0; i < f.primal.size(); ++i) {
    for (std::size_t j = i + 1; j < f.primal.size(); ++j) {
      const auto& a = f.primal[i].district.members;
      const auto& b = f.primal[j].district.members;
      bool meet = false;
      for (Index v : a) meet = meet || std::binary_search(b.begin(), b.end(), v);
      if (meet) sum += f.primal[i].x * f.primal[j].x;
    }
  }
  return sum;
}

TEST(RoundOnce, SingleDistrictAlwaysSelected) {
  Instance g(3, {{0, 1, 1}}, {});
  auto f = single(g, {0}, 1.0);
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_EQ(round_once(g, f, 1.0, s).districts.size(), 1u);
  EXPECT_THROW(round_once(g, f, 0.5, 1), ParameterError);
}

TEST(RoundOnce, DisjointDistrictsAllSelected) {
  Instance g(3, {{0, 1, 1}, {1, 1, 1}, {2, 2, 1}, {3, 0, 1}}, {{0, 1}, {2, 3}});
  auto f = single(g, {0, 1}, 1.0);
  f.primal.push_back({Candidate{{2, 3}, Index{2}, g.mass_of(std::vector<Index>{2, 3})}, 1.0});
  auto t = round_once(g, f, 1.0, 9);
  EXPECT_EQ(t.districts.size(), 2u);
  auto scan = round_with_tau_scan(g, f, 0.1, 1, 3);
  EXPECT_EQ(scan.weight, 8);
  EXPECT_EQ(scan.diagnostics.tau_used, 1.0);
  EXPECT_EQ(scan.diagnostics.correlation, 0.0);
}

TEST(RoundOnce, DeterministicAndValid) {
  auto g = gen_square_grid(8, 3);
  auto f = uniform_star_fractional(g, 0.2);
  auto a = round_once(g, f, 1.2, 77);
  EXPECT_EQ(a, round_once(g, f, 1.2, 77));
  EXPECT_TRUE(validate_districting(g, a, true).ok());
  auto s1 = round_with_tau_scan(g, f, 0.2, 5, 4, 1);
  auto s4 = round_with_tau_scan(g, f, 0.2, 5, 4, 4);
  EXPECT_EQ(s1.districting, s4.districting);
  EXPECT_EQ(s1.weight, s4.weight);
}

TEST(Correlation, MatchesNaivePairSum) {
  for (int side : {4, 6, 9}) {
    auto g = gen_triangular_grid(side, 3);
    auto f = uniform_star_fractional(g, 1.0 / 7);
    auto d = correlation_report(g, f);
    EXPECT_NEAR(d.correlation, naive_correlation(f), 1e-9);
    EXPECT_NEAR(d.sum_x, static_cast<double>(f.primal.size()) / 7, 1e-9);
  }
  auto g = gen_random(RandomKind::grid_subgraph, 14, 6, 3);
  auto f = solve_star_lp(g, 0.1);
  auto d = correlation_report(g, f);
  EXPECT_NEAR(d.correlation, naive_correlation(f), 1e-9);
  EXPECT_LE(d.correlation, std::sqrt(14.0) * d.sum_x);
  EXPECT_THROW(correlation_report(g, f, 0), CapExceeded);
}

TEST(Correlation, GridConstants) {
  auto sq = gen_square_grid(30, 3);
  auto dsq = correlation_report(sq, uniform_star_fractional(sq, 0.2));
  EXPECT_NEAR(dsq.ratio, 6.0 / 5, 0.1 * 6.0 / 5);
  auto tri = gen_triangular_grid(30, 3);
  auto dtri = correlation_report(tri, uniform_star_fractional(tri, 1.0 / 7));
  EXPECT_NEAR(dtri.ratio, 9.0 / 7, 0.1 * 9.0 / 7);
  EXPECT_GT(dtri.ratio, dsq.ratio);
}

TEST(Correlation, BipartiteGap) {
  for (int s : {2, 3, 4}) {
    auto g = gen_grid_bipartite_gap(s, 3);
    auto f = uniform_star_fractional(g, 1.0 / (2 * s));
    auto d = correlation_report(g, f);
    // n/4 from A x B pairs plus (s-1)/4 from pairs inside one A_i or B_j, over sum_x = s
    EXPECT_NEAR(d.correlation, s * s / 4.0 + (s - 1) / 4.0, 1e-9);
    EXPECT_NEAR(d.sum_x, s, 1e-9);
    EXPECT_GE(d.ratio, s / 4.0);
  }
}

TEST(Rounding, GreedyCounterexample) {
  auto g = gen_greedy_counterexample(32, 4);
  auto f = greedy_counterexample_fractional(g);
  EXPECT_NEAR(f.lp_value, 32 + 4 - 4.0 / 3, 1e-9);
  for (double l : vertex_loads(g, f.primal)) EXPECT_LE(l, 1 + 1e-12);
  EXPECT_EQ(districting_weight(g, round_greedy_by_x(g, f)), 4);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto r = round_with_tau_scan(g, f, 0.5, 1, seed);
    hits += r.weight == 32 ? 1 : 0;
    EXPECT_TRUE(validate_districting(g, r.districting, true).ok());
  }
  EXPECT_GT(hits, 500);
}

TEST(Rounding, SquareGridMeetsThresholdBound) {
  auto g = gen_square_grid(20, 3);
  auto f = uniform_star_fractional(g, 0.2);
  const double eps = 0.2;
  auto r = round_with_tau_scan(g, f, eps, 10, 11, 4);
  EXPECT_TRUE(validate_districting(g, r.districting, true).ok());
  EXPECT_GE(static_cast<double>(r.weight), f.lp_value / (2 * r.diagnostics.tau_star * (1 + eps)));
}

TEST(Rounding, ExpectedWeightLowerBound) {
  auto g = gen_square_grid(7, 3);
  auto f = uniform_star_fractional(g, 0.2);
  const double tau = 1.5;
  double lin = 0, quad = 0;
  for (std::size_t i = 0; i < f.primal.size(); ++i) {
    const auto& a = f.primal[i];
    lin += static_cast<double>(a.district.weight()) * a.x / tau;
    for (std::size_t j = i + 1; j < f.primal.size(); ++j) {
      const auto& b = f.primal[j];
      bool meet = false;
      for (Index v : a.district.members)
        meet = meet || std::binary_search(b.district.members.begin(), b.district.members.end(), v);
      if (meet) {
        quad += static_cast<double>(std::min(a.district.weight(), b.district.weight())) * a.x * b.x / (tau * tau);
      }
    }
  }
  const int runs = 10000;
  double sum = 0, sq = 0;
  for (int s = 0; s < runs; ++s) {
    const double w = static_cast<double>(districting_weight(g, round_once(g, f, tau, derive_seed(5, s))));
    sum += w;
    sq += w * w;
  }
  const double mean = sum / runs;
  const double se = std::sqrt((sq / runs - mean * mean) / runs);
  EXPECT_GE(mean, lin - quad - 3 * se);
}

}  // namespace
}  // namespace bd
