#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bd/core.hpp"
#include "bd/enumerate.hpp"
#include "bd/error.hpp"
#include "bd/io.hpp"
#include "bd/parallel.hpp"
#include "bd/trim.hpp"
#include "bd/witness.hpp"

namespace bd {

struct OracleResult {
  bool violated = false;
  Candidate district;       // meaningful when violated
  double y_sum = 0;         // dual mass of the returned district
  bool strongly = false;    // y_sum < (1 - eps) w'(S)
  std::size_t max_list_size = 0;
};

inline void check_oracle_parameters(const Rational& c, double epsilon) {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  const double bound = static_cast<double>(c.num() - 2 * c.den()) / static_cast<double>(c.num());
  if (epsilon >= bound) {
    throw ParameterError("epsilon must be below (c-2)/c = " + std::to_string(bound));
  }
}

namespace detail {

struct OraclePoint {
  Weight q1;
  Weight q2;
  double y;
  WitnessArena::Id witness;
};

struct CenterScan {
  std::optional<Candidate> best;  // heaviest weakly violating entry
  double best_y = 0;
  bool strong = false;
  std::size_t max_list_size = 0;
};

inline bool oracle_better(const Candidate& a, const Candidate& b) { return heavier_first(a, b); }

inline CenterScan scan_center(const Instance& g, const std::vector<double>& y, double mu, double epsilon, Index v) {
  CenterScan out;
  const auto nbrs = g.neighbors(v);
  const double step = epsilon / (10.0 * static_cast<double>(std::max<std::size_t>(nbrs.size(), 1)));
  WitnessArena arena;
  const Vertex& pv = g.vertex(v);
  const OraclePoint start{pv.p1, pv.p2, y[v], arena.leaf(v)};
  std::vector<OraclePoint> lists[2] = {{start}, {start}};
  const Objective objs[2] = {Objective::l1, Objective::l2};
  for (Index u : nbrs) {
    const Vertex& pu = g.vertex(u);
    for (int j = 0; j < 2; ++j) {
      auto& list = lists[j];
      const std::size_t base = list.size();
      std::vector<OraclePoint> cand = list;
      for (const auto& p : list) cand.push_back({p.q1 + pu.p1, p.q2 + pu.p2, p.y + y[u], WitnessArena::kNone});
      std::vector<std::array<long double, 3>> coords(cand.size());
      std::vector<__int128> obj(cand.size());
      for (std::size_t i = 0; i < cand.size(); ++i) {
        coords[i] = {static_cast<long double>(cand[i].q1), static_cast<long double>(cand[i].q2),
                     static_cast<long double>(cand[i].y)};
        obj[i] = objective_value(objs[j], cand[i].q1, cand[i].q2, g.c());
      }
      auto tie = [&](std::size_t a, std::size_t b) {
        if (cand[a].q1 != cand[b].q1) return cand[a].q1 < cand[b].q1;
        if (cand[a].q2 != cand[b].q2) return cand[a].q2 < cand[b].q2;
        return cand[a].y < cand[b].y;
      };
      std::vector<OraclePoint> next;
      for (std::size_t i : trim_indices<3>(coords, obj, step, tie)) {
        OraclePoint p = cand[i];
        if (i >= base) p.witness = arena.join(list[i - base].witness, arena.leaf(u));
        next.push_back(p);
      }
      list = std::move(next);
      out.max_list_size = std::max(out.max_list_size, list.size());
    }
  }
  for (const auto& list : lists) {
    for (const auto& p : list) {
      const Weight w = p.q1 + p.q2;
      if (w <= 0 || !balanced({p.q1, p.q2}, g.c())) continue;
      const double wp = static_cast<double>(w) / mu;
      if (!(p.y < (1 - epsilon / 2) * wp * (1 + 1e-12))) continue;
      Candidate cand{arena.vertices(p.witness), v, {p.q1, p.q2}};
      double ys = 0;
      for (Index m : cand.members) ys += y[m];
      if (!(ys < (1 - epsilon / 2) * wp)) continue;
      if (ys < (1 - epsilon) * wp) out.strong = true;
      if (!out.best || oracle_better(cand, *out.best)) {
        out.best = std::move(cand);
        out.best_y = ys;
      }
    }
  }
  return out;
}

}  // namespace detail

// Searches for a star district whose dual constraint is violated. y is indexed by vertex index and
// weights are divided by mu. Reports no violation only when no surviving entry is strongly violating.
inline OracleResult separation_oracle(const Instance& g, const std::vector<double>& y, double mu, double epsilon,
                                      unsigned threads = 1) {
  check_oracle_parameters(g.c(), epsilon);
  if (y.size() != g.size()) throw ParameterError("dual vector has the wrong length");
  std::vector<detail::CenterScan> scans(g.size());
  parallel_for(g.size(), threads, [&](std::size_t v) {
    scans[v] = detail::scan_center(g, y, mu, epsilon, static_cast<Index>(v));
  });
  OracleResult out;
  bool strong = false;
  const detail::CenterScan* best = nullptr;
  for (const auto& s : scans) {
    out.max_list_size = std::max(out.max_list_size, s.max_list_size);
    strong = strong || s.strong;
    if (s.best && (!best || detail::oracle_better(*s.best, *best->best))) best = &s;
  }
  if (!strong || !best) return out;
  out.violated = true;
  out.district = *best->best;
  out.y_sum = best->best_y;
  out.strongly = out.y_sum < (1 - epsilon) * static_cast<double>(out.district.weight()) / mu;
  return out;
}

// Whack-a-mole state for one guess mu; y is indexed by vertex index.
struct DualState {
  std::vector<double> y;
  std::size_t phase_count = 0;
  std::size_t whack_count = 0;
  double mu = 1;
  double epsilon = 0.1;

  std::size_t rounds = 0;
  std::size_t budget = 0;  // T
  double floor = 0;
  std::size_t clamp_events = 0;
  std::size_t whacks_this_phase = 0;
  std::size_t max_whacks_per_phase = 0;
  std::map<std::vector<Index>, std::pair<Candidate, std::size_t>> counts;  // rounds applied per district

  double total() const {
    double s = 0;
    for (double v : y) s += v;
    return s;
  }
};

inline DualState make_dual_state(const Instance& g, double mu, double epsilon) {
  DualState st;
  const double n = static_cast<double>(std::max<std::size_t>(g.size(), 2));
  st.y.assign(g.size(), 1.0 / static_cast<double>(std::max<std::size_t>(g.size(), 1)));
  st.mu = mu;
  st.epsilon = epsilon;
  st.budget = static_cast<std::size_t>(std::ceil(mu / (epsilon * epsilon) * std::log(n)));
  st.budget = std::max<std::size_t>(st.budget, 1);
  st.floor = std::pow(n, -(1.0 + 1.0 / epsilon));
  return st;
}

enum class WhackExit { satisfied, budget, phase_end };

// Enforce: repeated MWU rounds on one violated constraint, batched into a single multiplication.
inline WhackExit whack_phase_step(DualState& st, const Candidate& s) {
  const double w = static_cast<double>(s.weight());
  const double wp = w / st.mu;
  const double eps = st.epsilon;
  const double log_r = std::log1p(eps / w);
  double ys = 0;
  for (Index v : s.members) ys += st.y[v];
  const double total = st.total();
  auto grow = [&](std::size_t k) { return std::exp(static_cast<double>(k) * log_r); };

  std::size_t k_need = 1;
  if (ys < wp) {
    k_need = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log(wp / ys) / log_r)));
    while (k_need > 1 && ys * grow(k_need - 1) >= wp) --k_need;
    while (ys * grow(k_need) < wp) ++k_need;
  }
  const double room = 1 + eps - total;
  std::size_t k_phase = 1;
  if (room > 0) {
    k_phase = static_cast<std::size_t>(std::floor(std::log1p(room / ys) / log_r)) + 1;
    while (k_phase > 1 && ys * (grow(k_phase - 1) - 1) > room) --k_phase;
    while (!(ys * (grow(k_phase) - 1) > room)) ++k_phase;
  }
  const std::size_t k_budget = st.budget > st.rounds ? st.budget - st.rounds : 1;
  const std::size_t k = std::min({k_need, k_phase, k_budget});

  const double factor = grow(k);
  for (Index v : s.members) st.y[v] *= factor;
  st.rounds += k;
  ++st.whack_count;
  ++st.whacks_this_phase;
  st.max_whacks_per_phase = std::max(st.max_whacks_per_phase, st.whacks_this_phase);
  auto [it, fresh] = st.counts.try_emplace(s.members, s, 0);
  it->second.second += k;

  const double after = st.total();
  if (after > 1 + eps) {
    for (double& v : st.y) {
      v /= after;
      if (v < st.floor) {
        v = st.floor;
        ++st.clamp_events;
      }
    }
    ++st.phase_count;
    st.whacks_this_phase = 0;
    return WhackExit::phase_end;
  }
  if (st.rounds >= st.budget) return WhackExit::budget;
  return WhackExit::satisfied;
}

struct LpStats {
  std::size_t mu_runs = 0;
  std::size_t oracle_calls = 0;
  std::size_t whacks = 0;
  std::size_t max_phases = 0;           // over mu runs
  std::size_t max_whacks_per_phase = 0;
  std::size_t clamp_events = 0;
  std::size_t max_oracle_list = 0;
  double mu_primal = 0;
  double mu_dual = 0;
  double internal_epsilon = 0;
  double primal_scale = 1;  // factor applied to the case-1 primal
  bool trivial_primal = false;
  bool trivial_dual = false;
};

struct PrimalEntry {
  Candidate district;
  double x = 0;
};

struct FractionalStarSolution {
  std::vector<PrimalEntry> primal;
  std::vector<double> dual;  // by vertex index, original weight units
  double lp_value = 0;
  double dual_value = 0;
  bool primal_feasible = true;
  bool dual_feasible = true;
  LpStats stats;
};

inline std::vector<double> vertex_loads(const Instance& g, const std::vector<PrimalEntry>& primal) {
  std::vector<double> load(g.size(), 0.0);
  for (const auto& e : primal)
    for (Index v : e.district.members) load[v] += e.x;
  return load;
}

namespace detail {

struct MuRun {
  bool primal_case = false;
  DualState state;
  std::size_t oracle_calls = 0;
  std::size_t max_list = 0;
};

inline MuRun run_whack_a_mole(const Instance& g, double mu, double epsilon, unsigned threads) {
  MuRun run;
  run.state = make_dual_state(g, mu, epsilon);
  while (true) {
    auto res = separation_oracle(g, run.state.y, mu, epsilon, threads);
    ++run.oracle_calls;
    run.max_list = std::max(run.max_list, res.max_list_size);
    if (!res.violated) break;
    whack_phase_step(run.state, res.district);
    if (run.state.rounds >= run.state.budget) {
      run.primal_case = true;
      break;
    }
  }
  return run;
}

}  // namespace detail

inline void check_lp_parameters(const Rational& c, double epsilon) {
  if (!(epsilon > 0) || epsilon >= 0.5) throw ParameterError("epsilon must lie in (0, 1/2)");
  check_oracle_parameters(c, epsilon);
}

// Fractional star districting within a (1 - 3 eps) factor of the LP optimum, with a dual certificate.
inline FractionalStarSolution solve_star_lp(const Instance& g, double epsilon, unsigned threads = 1) {
  check_lp_parameters(g.c(), epsilon);
  FractionalStarSolution out;
  const double ei = epsilon / 2;
  out.stats.internal_epsilon = ei;
  out.dual.assign(g.size(), 0.0);
  const double wg = static_cast<double>(g.total_weight());
  if (g.size() == 0) return out;

  // any balanced star at all? with negligible duals every balanced star is violated
  const std::vector<double> tiny(g.size(), 1e-300);
  auto probe = separation_oracle(g, tiny, 1.0, ei, threads);
  ++out.stats.oracle_calls;
  if (!probe.violated) return out;

  const auto top = static_cast<std::size_t>(std::ceil(std::log(wg / (1 - 2 * ei)) / std::log1p(ei))) + 1;
  auto mu_at = [&](std::size_t k) { return std::pow(1 + ei, static_cast<double>(k)); };

  std::optional<detail::MuRun> primal_run, dual_run;
  long lo = -1, hi = static_cast<long>(top) + 1;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    auto run = detail::run_whack_a_mole(g, mu_at(static_cast<std::size_t>(mid)), ei, threads);
    ++out.stats.mu_runs;
    out.stats.oracle_calls += run.oracle_calls;
    out.stats.whacks += run.state.whack_count;
    out.stats.max_phases = std::max(out.stats.max_phases, run.state.phase_count);
    out.stats.max_whacks_per_phase = std::max(out.stats.max_whacks_per_phase, run.state.max_whacks_per_phase);
    out.stats.clamp_events += run.state.clamp_events;
    out.stats.max_oracle_list = std::max(out.stats.max_oracle_list, run.max_list);
    if (run.primal_case) {
      lo = mid;
      primal_run = std::move(run);
    } else {
      hi = mid;
      dual_run = std::move(run);
    }
  }

  if (primal_run) {
    const auto& st = primal_run->state;
    out.stats.mu_primal = st.mu;
    for (const auto& [members, entry] : st.counts) {
      const double x = st.mu * (1 - 2 * ei) * static_cast<double>(entry.second) /
                       (static_cast<double>(st.budget) * static_cast<double>(entry.first.weight()));
      out.primal.push_back({entry.first, x});
    }
    // stretch (or shrink) so the busiest vertex carries load exactly 1
    double max_load = 0;
    for (double l : vertex_loads(g, out.primal)) max_load = std::max(max_load, l);
    if (max_load > 0) {
      out.stats.primal_scale = 1 / max_load;
      for (auto& e : out.primal) e.x = std::min(1.0, e.x / max_load);
    }
  } else {
    out.stats.trivial_primal = true;
    out.primal.push_back({probe.district, 1.0});
  }
  for (const auto& e : out.primal) out.lp_value += e.x * static_cast<double>(e.district.weight());

  if (dual_run) {
    const auto& st = dual_run->state;
    out.stats.mu_dual = st.mu;
    const double scale = st.mu * std::exp(ei / 5) / (1 - ei);
    for (Index v = 0; v < g.size(); ++v) out.dual[v] = st.y[v] * scale;
  } else {
    out.stats.trivial_dual = true;
    std::fill(out.dual.begin(), out.dual.end(), wg);
  }
  for (double d : out.dual) out.dual_value += d;
  return out;
}

inline Json fractional_to_json(const Instance& g, const FractionalStarSolution& s) {
  Json primal = Json::array();
  for (const auto& e : s.primal) {
    Json d = {{"district", make_district(g, e.district.members).vertices}, {"x", e.x}};
    if (e.district.center) d["center"] = g.id(*e.district.center);
    primal.push_back(std::move(d));
  }
  Json dual = Json::object();
  for (Index v = 0; v < g.size() && v < s.dual.size(); ++v) dual[std::to_string(g.id(v))] = s.dual[v];
  return {{"lp_value", s.lp_value}, {"primal", primal}, {"dual", dual}};
}

// Reads the primal part of a fractional solution; districts are re-checked against the instance.
inline FractionalStarSolution fractional_from_json(const Instance& g, std::string_view text,
                                                   const std::string& source = "fractional") {
  Json doc = detail::parse_document(text, source);
  detail::Schema schema(text, source);
  FractionalStarSolution s;
  s.dual.assign(g.size(), 0.0);
  const Json& pj = schema.member(doc, "", "primal");
  if (!pj.is_array()) schema.fail("/primal", "expected an array");
  for (std::size_t k = 0; k < pj.size(); ++k) {
    const std::string p = "/primal/" + std::to_string(k);
    const Json& dj = schema.member(pj[k], p, "district");
    const Json& xj = schema.member(pj[k], p, "x");
    if (!dj.is_array()) schema.fail(p + "/district", "expected an array of vertex ids");
    if (!xj.is_number() || xj.get<double>() < 0) schema.fail(p + "/x", "expected a non-negative number");
    std::vector<Index> members;
    for (std::size_t j = 0; j < dj.size(); ++j) {
      const auto id = schema.integer(dj[j], p + "/district/" + std::to_string(j));
      auto idx = g.find(id);
      if (!idx) schema.fail(p + "/district/" + std::to_string(j), "unknown vertex " + std::to_string(id));
      members.push_back(*idx);
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) schema.fail(p + "/district", "duplicate vertex");
    auto center = star_center(g, members);
    if (!center) schema.fail(p + "/district", "not a star");
    s.primal.push_back({Candidate{members, center, g.mass_of(members)}, xj.get<double>()});
    s.lp_value += s.primal.back().x * static_cast<double>(s.primal.back().district.weight());
  }
  if (auto it = doc.find("dual"); it != doc.end() && it->is_object()) {
    for (auto& [key, val] : it->items()) {
      if (auto idx = g.find(std::stoll(key)); idx && val.is_number()) s.dual[*idx] = val.get<double>();
    }
  }
  for (double d : s.dual) s.dual_value += d;
  return s;
}

}  // namespace bd
