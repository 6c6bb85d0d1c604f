#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bd/core.hpp"
#include "bd/enumerate.hpp"
#include "bd/simplex.hpp"

namespace bd {

using ExactRational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kDefaultOracleCap = 14;
inline constexpr std::size_t kHardOracleCap = 24;
inline constexpr std::size_t kSingleDistrictCap = 25;
inline constexpr std::size_t kDefaultLpDistrictCap = 2000;

// Vertex cap for brute_force_districting; BD_ORACLE_CAP overrides the default.
inline std::size_t oracle_cap() {
  if (const char* env = std::getenv("BD_ORACLE_CAP"); env && *env) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return std::min<std::size_t>(v, kHardOracleCap);
  }
  return kDefaultOracleCap;
}

struct ExactDistricting {
  Districting districting;
  Weight weight = 0;
};

struct ExactDistrictOptions {
  bool require_star = false;
  std::optional<std::size_t> max_rank;
  std::optional<std::size_t> cap;  // vertex cap; defaults to oracle_cap()
};

// Maximum-weight districting by exhaustive packing over all valid districts.
// Ties: lexicographically smallest sorted district list.
inline ExactDistricting brute_force_districting(const Instance& g, const ExactDistrictOptions& opt = {}) {
  const std::size_t cap = std::min(opt.cap.value_or(oracle_cap()), kHardOracleCap);
  const std::size_t n = g.size();
  if (n > cap) {
    throw CapExceeded("brute-force oracle refuses n=" + std::to_string(n) + " (cap " + std::to_string(cap) + ")");
  }
  const std::size_t rank = opt.max_rank.value_or(n);
  auto cands = balanced_connected_districts(g, rank, opt.require_star);
  struct Entry {
    std::uint32_t mask;
    Weight weight;
    std::size_t cand;
  };
  std::vector<std::vector<Entry>> by_min(n);
  for (std::size_t k = 0; k < cands.size(); ++k) {
    std::uint32_t mask = 0;
    for (Index i : cands[k].members) mask |= std::uint32_t{1} << i;
    by_min[cands[k].members.front()].push_back({mask, cands[k].weight(), k});  // cands are lex sorted
  }
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  std::vector<Weight> memo(std::size_t{1} << n, -1);
  memo[0] = 0;
  // Iterating masks in increasing order visits every submask before its supersets.
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(mask));
    Weight best = memo[mask & (mask - 1)];
    for (const Entry& e : by_min[v]) {
      if ((e.mask & mask) == e.mask) best = std::max(best, e.weight + memo[mask & ~e.mask]);
    }
    memo[mask] = best;
    if (mask == full) break;
  }
  ExactDistricting out;
  out.weight = memo[full];
  std::uint32_t mask = full;
  while (mask != 0) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(mask));
    bool covered = false;
    for (const Entry& e : by_min[v]) {
      if ((e.mask & mask) == e.mask && e.weight + memo[mask & ~e.mask] == memo[mask]) {
        out.districting.districts.push_back(to_district(g, cands[e.cand]));
        mask &= ~e.mask;
        covered = true;
        break;
      }
    }
    if (!covered) mask &= mask - 1;
  }
  return out;
}

struct ExactDistrict {
  District district;
  Weight weight = 0;
};

// Best single balanced subset ignoring edges (complete-graph semantics), by Gray-code scan.
inline ExactDistrict brute_force_single_district_complete(const Instance& g) {
  const std::size_t n = g.size();
  if (n > kSingleDistrictCap) {
    throw CapExceeded("single-district oracle refuses n=" + std::to_string(n) + " (cap " +
                      std::to_string(kSingleDistrictCap) + ")");
  }
  auto lex_less_mask = [](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    if (diff == 0) return false;
    const unsigned d = static_cast<unsigned>(std::countr_zero(diff));
    const std::uint32_t above = d >= 31 ? 0 : ~((std::uint32_t{2} << d) - 1);
    if (a >> d & 1) return (b & above) != 0;
    return (a & above) == 0;
  };
  Mass m;
  std::uint32_t mask = 0;
  std::uint32_t best_mask = 0;
  Weight best = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(k));
    mask ^= std::uint32_t{1} << bit;
    const Vertex& v = g.vertex(bit);
    const Weight sign = (mask >> bit & 1) ? 1 : -1;
    m.p1 += sign * v.p1;
    m.p2 += sign * v.p2;
    if (!balanced(m, g.c())) continue;
    const Weight w = m.p1 + m.p2;
    if (w > best || (w == best && lex_less_mask(mask, best_mask))) {
      best = w;
      best_mask = mask;
    }
  }
  std::vector<Index> members;
  for (Index i = 0; i < n; ++i) {
    if (best_mask >> i & 1) members.push_back(i);
  }
  return {make_district(g, members), best};
}

struct ExactLp {
  ExactRational value{0};
  std::vector<Candidate> districts;
  std::vector<ExactRational> x;
  std::vector<std::pair<VertexId, ExactRational>> dual;

  double value_double() const { return value.convert_to<double>(); }
};

// Exact optimum of the star-districting LP relaxation over enumerated balanced stars.
inline ExactLp brute_force_lp(const Instance& g, std::size_t district_cap = kDefaultLpDistrictCap) {
  ExactLp out;
  out.districts = balanced_star_districts(g, district_cap);
  std::vector<Index> rows;
  std::vector<int> row_of(g.size(), -1);
  for (const Candidate& c : out.districts) {
    for (Index v : c.members) {
      if (row_of[v] < 0) {
        row_of[v] = 0;
        rows.push_back(v);
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
  std::vector<std::vector<ExactRational>> a(rows.size(), std::vector<ExactRational>(out.districts.size(), 0));
  std::vector<ExactRational> cost(out.districts.size());
  for (std::size_t k = 0; k < out.districts.size(); ++k) {
    cost[k] = out.districts[k].weight();
    for (Index v : out.districts[k].members) a[static_cast<std::size_t>(row_of[v])][k] = 1;
  }
  std::vector<ExactRational> b(rows.size(), 1);
  auto lp = solve_packing_lp(a, b, cost);
  out.value = lp.value;
  out.x = std::move(lp.x);
  for (std::size_t r = 0; r < rows.size(); ++r) out.dual.emplace_back(g.id(rows[r]), lp.y[r]);
  return out;
}

}  // namespace bd
