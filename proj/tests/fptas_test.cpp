#include <gtest/gtest.h>

#include <cmath>

#include "bd/exact.hpp"
#include "bd/fptas.hpp"
#include "bd/instances.hpp"
#include "bd/rng.hpp"
#include "bd/validate.hpp"

namespace bd {
namespace {

// Definition-level check: ratio of every coordinate within [e^-eps, e^eps], 0/0 = 1.
template <std::size_t D>
bool approx_by_ratio(const std::array<long double, D>& a, const std::array<long double, D>& b, double eps,
                     double slack) {
  for (std::size_t k = 0; k < D; ++k) {
    if (a[k] == 0 && b[k] == 0) continue;
    if (a[k] == 0 || b[k] == 0) return false;
    const long double r = a[k] / b[k];
    if (r > std::exp(eps) * slack || r < std::exp(-eps) / slack) return false;
  }
  return true;
}

__int128 ell(const ValuePoint2& p, Objective o, const Rational& c) { return objective_value(o, p.q1, p.q2, c); }
__int128 ell(const Stamp& p, Objective o, const Rational& c) { return objective_value(o, p.s1, p.s2, c); }

template <class P>
void expect_trimmed(const std::vector<P>& input, const std::vector<P>& kept, Objective o, double eps,
                    const Rational& c) {
  for (const P& p : input) {
    bool covered = false;
    for (const P& k : kept) {
      if (ell(k, o, c) >= ell(p, o, c) && approx_by_ratio(coordinates(k), coordinates(p), eps, 1 + 1e-12)) {
        covered = true;
        break;
      }
    }
    EXPECT_TRUE(covered);
  }
}

template <class P>
void expect_irredundant(const std::vector<P>& kept, Objective o, double eps, const Rational& c) {
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (i == j) continue;
      const bool dominated = ell(kept[i], o, c) >= ell(kept[j], o, c) &&
                             approx_by_ratio(coordinates(kept[i]), coordinates(kept[j]), eps, 1 - 1e-9);
      EXPECT_FALSE(dominated && i < j) << i << " " << j;
    }
  }
}

std::vector<ValuePoint2> random_points(Rng& rng, std::size_t m, Weight max) {
  std::vector<ValuePoint2> pts;
  for (std::size_t i = 0; i < m; ++i) {
    pts.push_back({rng.uniform(0, max), rng.uniform(0, max), WitnessArena::kNone});
    if (rng.bernoulli(0.1)) pts.back().q1 = 0;
  }
  return pts;
}

TEST(Trim, EmptyAndSingleton) {
  EXPECT_TRUE(trim(std::vector<ValuePoint2>{}, Objective::l1, 0.1, 3).points.empty());
  auto one = trim(std::vector<ValuePoint2>{{3, 4, WitnessArena::kNone}}, Objective::l2, 0.1, 3);
  ASSERT_EQ(one.points.size(), 1u);
  EXPECT_EQ(one.points[0].q1, 3);
  EXPECT_EQ(one.points[0].q2, 4);
}

TEST(Trim, RandomListsAreTrimmed2D) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto pts = random_points(rng, 200, trial % 2 ? 60 : 5000);
    const Rational c = trial % 3 ? Rational(3) : Rational(7, 2);
    const double eps = 0.02 + 0.01 * (trial % 7);
    for (Objective o : {Objective::l1, Objective::l2}) {
      auto out = trim(pts, o, eps, c);
      EXPECT_LE(out.points.size(), pts.size());
      expect_trimmed(pts, out.points, o, eps, c);
      expect_irredundant(out.points, o, eps, c);
    }
  }
}

TEST(Trim, RandomListsAreTrimmed3D) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Stamp> pts;
    for (int i = 0; i < 200; ++i) {
      pts.push_back({rng.uniform(0, 300), rng.uniform(0, 300), rng.uniform(0, 300)});
      if (rng.bernoulli(0.2)) pts.back().s1 = pts.back().s2 = 0;
    }
    const double eps = 0.05;
    for (Objective o : {Objective::l1, Objective::l2}) {
      auto out = trim(pts, o, eps, 3);
      expect_trimmed(pts, out.points, o, eps, 3);
      expect_irredundant(out.points, o, eps, 3);
    }
  }
}

TEST(Trim, ZeroEpsilonOnlyRemovesDuplicates) {
  std::vector<ValuePoint2> pts{{1, 2, 0}, {1, 2, 1}, {2, 1, 2}, {2, 2, 3}};
  auto out = trim(pts, Objective::l1, 0.0, 3);
  EXPECT_EQ(out.points.size(), 3u);
}

TEST(Trim, EqualObjectiveKeepsLexicographicallySmaller) {
  // c=3: (4,6) and (5,8) tie at l1 = 2 and approximate each other at eps = 0.3
  std::vector<ValuePoint2> pts{{5, 8, 1}, {4, 6, 0}};
  auto out = trim(pts, Objective::l1, 0.3, 3);
  ASSERT_EQ(out.points.size(), 1u);
  EXPECT_EQ(out.points[0].q1, 4);
}

TEST(Trim, CompositionDecaysSmoothly) {
  Rng rng(31);
  const Rational c(3);
  for (int trial = 0; trial < 15; ++trial) {
    auto l = random_points(rng, 30, 200);
    auto m = random_points(rng, 30, 200);
    const double e1 = 0.03, e2 = 0.05, e = 0.02;
    for (Objective o : {Objective::l1, Objective::l2}) {
      auto tl = trim(l, o, e1, c).points;
      auto tm = trim(m, o, e2, c).points;
      std::vector<ValuePoint2> sum, full;
      for (const auto& a : tl)
        for (const auto& b : tm) sum.push_back({a.q1 + b.q1, a.q2 + b.q2, 0});
      for (const auto& a : l)
        for (const auto& b : m) full.push_back({a.q1 + b.q1, a.q2 + b.q2, 0});
      auto out = trim(sum, o, e, c).points;
      expect_trimmed(full, out, o, e + std::max(e1, e2), c);
    }
  }
}

TEST(Trim, ListSizeRespectsGridBound) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = random_points(rng, 3000, 10000);
    const double eps = 0.05;
    auto out = trim(pts, Objective::l1, eps, 3).points;
    const double cells = std::ceil(std::log(10000.0) / eps) + 2;
    EXPECT_LE(static_cast<double>(out.size()), cells * cells);
  }
}

TEST(SolveComplete, Examples) {
  Instance zero(3, {{0, 0, 0}, {1, 0, 0}}, {{0, 1}});
  EXPECT_EQ(solve_complete(zero, 0.1).weight, 0);
  Instance two(3, {{0, 1, 0}, {1, 0, 1}}, {{0, 1}});
  auto r = solve_complete(two, 0.1);
  EXPECT_EQ(r.weight, 2);
  EXPECT_EQ(r.district.vertices, (std::vector<VertexId>{0, 1}));
}

TEST(SolveComplete, ParameterChecks) {
  Instance g(2, {{0, 1, 1}}, {});
  EXPECT_THROW(solve_complete(g, 0.1), ParameterError);
  Instance h(3, {{0, 1, 1}}, {});
  EXPECT_THROW(solve_complete(h, 0.0), ParameterError);
  EXPECT_THROW(solve_complete(h, 0.35), ParameterError);  // ln(2)/2 = 0.3466
  EXPECT_NO_THROW(solve_complete(h, 0.34));
}

TEST(SolveComplete, RatioAgainstOracle) {
  for (int seed = 0; seed < 40; ++seed) {
    auto g = gen_random(RandomKind::complete, 12, 50, 7000 + seed);
    auto approx = solve_complete(g, 0.2);
    auto exact = brute_force_single_district_complete(g);
    EXPECT_GE(static_cast<double>(approx.weight), std::exp(-0.2) * static_cast<double>(exact.weight)) << seed;
    EXPECT_LE(approx.weight, exact.weight);
    EXPECT_TRUE(is_c_balanced(g, approx.district) || approx.weight == 0);
    EXPECT_EQ(district_mass(g, approx.district).total(), approx.weight);
  }
}

TEST(SolveComplete, ExactFallbackMatchesOracleAtCTwo) {
  for (int seed = 0; seed < 20; ++seed) {
    auto g = gen_random(RandomKind::complete, 10, 20, 300 + seed, {Rational(2)});
    EXPECT_EQ(solve_complete_exact(g).weight, brute_force_single_district_complete(g).weight);
  }
  auto heavy = gen_random(RandomKind::complete, 3, 100000, 1);
  EXPECT_THROW(solve_complete_exact(heavy), ParameterError);
}

TEST(SolveTree, Examples) {
  Instance single(3, {{0, 1, 1}}, {});
  EXPECT_EQ(solve_tree(single, 0.2).weight, 2);
  EXPECT_EQ(solve_tree(single, 0.2, true).weight, 2);
  Instance path(Rational(5, 2), {{0, 1, 0}, {1, 0, 1}, {2, 1, 0}, {3, 0, 1}}, {{0, 1}, {1, 2}, {2, 3}});
  auto r = solve_tree(path, 0.2);
  EXPECT_EQ(r.weight, 4);
  EXPECT_TRUE(validate_districting(path, r.districting).ok());
  EXPECT_EQ(solve_tree(path, 0.2, true).weight, 4);
}

TEST(SolveTree, RejectsNonTrees) {
  Instance cycle(3, {{0, 1, 1}, {1, 1, 1}, {2, 1, 1}}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_THROW(solve_tree(cycle, 0.2), ValidationError);
  Instance split(3, {{0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {3, 1, 1}}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_THROW(solve_tree(split, 0.2), ValidationError);
}

TEST(SolveTree, RatioAgainstOracleGeneralAndStar) {
  for (int seed = 0; seed < 40; ++seed) {
    auto g = gen_random(RandomKind::tree, 11, 30, 4100 + seed);
    for (bool star : {false, true}) {
      auto approx = solve_tree(g, 0.2, star);
      auto exact = brute_force_districting(g, {star, std::nullopt, std::nullopt});
      EXPECT_GE(static_cast<double>(approx.weight), std::exp(-0.2) * static_cast<double>(exact.weight))
          << seed << " star=" << star;
      EXPECT_LE(approx.weight, exact.weight);
      EXPECT_TRUE(validate_districting(g, approx.districting, star).ok())
          << validate_districting(g, approx.districting, star).summary();
      EXPECT_EQ(districting_weight(g, approx.districting), approx.weight);
    }
  }
}

TEST(SolveTree, ExactFallbackMatchesOracle) {
  for (int seed = 0; seed < 30; ++seed) {
    auto g = gen_random(RandomKind::tree, 9, 6, 800 + seed, {Rational(2)});
    for (bool star : {false, true}) {
      auto dp = solve_tree_exact(g, star);
      auto exact = brute_force_districting(g, {star, std::nullopt, std::nullopt});
      EXPECT_EQ(dp.weight, exact.weight) << seed << " star=" << star;
      EXPECT_TRUE(validate_districting(g, dp.districting, star).ok());
    }
  }
}

}  // namespace
}  // namespace bd
