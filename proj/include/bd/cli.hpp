#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bd/core.hpp"
#include "bd/error.hpp"
#include "bd/exact.hpp"
#include "bd/fptas.hpp"
#include "bd/greedy.hpp"
#include "bd/instances.hpp"
#include "bd/io.hpp"
#include "bd/lp.hpp"
#include "bd/rng.hpp"
#include "bd/rounding.hpp"
#include "bd/separators.hpp"
#include "bd/validate.hpp"

namespace bd::cli {

enum ExitCode : int { kOk = 0, kInfeasible = 1, kInvalid = 2, kInternal = 3 };

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool json = false;
  bool csv = false;
  bool quiet = false;
};

// Emitted artifact failed its own re-verification.
class VerificationFailed : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

// Rows of flat objects as CSV (header from the first row) or as a JSON array/object.
inline void emit_rows(std::ostream& os, const std::vector<Json>& rows, bool csv, std::vector<std::string> cols = {}) {
  if (!csv) {
    os << (rows.size() == 1 ? rows[0].dump(2) : Json(rows).dump(2)) << "\n";
    return;
  }
  if (rows.empty()) return;
  if (cols.empty()) {
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
      if (!it->is_object() && !it->is_array()) cols.push_back(it.key());
    }
  }
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << (i ? "," : "") << (r.contains(cols[i]) ? csv_cell(r[cols[i]]) : "");
    }
    os << "\n";
  }
}

inline void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    bd::detail::write_file(path, text);
  }
}

inline bool is_complete_graph(const Instance& g) {
  for (Index v = 0; v < g.size(); ++v) {
    if (g.degree(v) + 1 != g.size()) return false;
  }
  return true;
}

inline void require_valid(const Instance& g, const Districting& t, bool star, std::optional<std::size_t> rank) {
  auto report = validate_districting(g, t, star, rank);
  if (!report.ok()) throw VerificationFailed("solver output failed verification:\n" + report.summary());
}

struct SolveOptions {
  std::string input, output, algo, fractional_out, fractional_in;
  double epsilon = 0.2;
  std::size_t k = 3;
  std::size_t trials = 10;
};

struct SolveResult {
  Districting districting;
  bool star = false;
  std::optional<std::size_t> rank;
  Json params = Json::object();
  Json extra = Json::object();
  std::optional<FractionalStarSolution> fractional;  // lp-star only output
};

inline const std::vector<std::string>& algorithms() {
  static const std::vector<std::string> names = {
      "fptas-complete", "fptas-tree", "fptas-tree-star", "lp-star",       "lp-star-round",
      "greedy-rank",    "exact-rank2", "greedy-degree",  "local-search", "binary-matching"};
  return names;
}

inline Json lp_stats_json(const FractionalStarSolution& f) {
  const auto& s = f.stats;
  return {{"lp_value", f.lp_value},         {"dual_value", f.dual_value},
          {"support", f.primal.size()},     {"mu_runs", s.mu_runs},
          {"oracle_calls", s.oracle_calls}, {"whacks", s.whacks},
          {"max_phases", s.max_phases},     {"clamp_events", s.clamp_events},
          {"trivial_primal", s.trivial_primal}, {"trivial_dual", s.trivial_dual}};
}

inline Json diagnostics_json(const RoundingDiagnostics& d) {
  return {{"sum_x", d.sum_x},       {"correlation", d.correlation}, {"ratio", d.ratio},
          {"tau_star", d.tau_star}, {"tau_used", d.tau_used},       {"overlapping_pairs", d.overlapping_pairs}};
}

inline SolveResult run_algorithm(const Instance& g, const SolveOptions& o, const Globals& gl) {
  SolveResult r;
  const std::string& a = o.algo;
  const bool exact_c = g.c() == Rational(2);
  if (a == "fptas-complete") {
    if (!is_complete_graph(g)) throw ParameterError("fptas-complete needs a complete graph");
    auto d = exact_c ? solve_complete_exact(g) : solve_complete(g, o.epsilon);
    if (!d.district.vertices.empty()) r.districting.districts.push_back(d.district);
    r.params = {{"epsilon", o.epsilon}, {"exact", exact_c}};
    r.extra = {{"max_list_size", d.stats.max_list_size}};
  } else if (a == "fptas-tree" || a == "fptas-tree-star") {
    r.star = a == "fptas-tree-star";
    auto d = exact_c ? solve_tree_exact(g, r.star) : solve_tree(g, o.epsilon, r.star);
    r.districting = d.districting;
    r.params = {{"epsilon", o.epsilon}, {"exact", exact_c}};
    r.extra = {{"max_list_size", d.stats.max_list_size}};
  } else if (a == "lp-star") {
    r.star = true;
    r.fractional = solve_star_lp(g, o.epsilon, gl.threads);
    r.params = {{"epsilon", o.epsilon}};
    r.extra = lp_stats_json(*r.fractional);
    r.extra.update(diagnostics_json(correlation_report(g, *r.fractional)));
  } else if (a == "lp-star-round") {
    r.star = true;
    FractionalStarSolution frac;
    if (!o.fractional_in.empty()) {
      frac = fractional_from_json(g, bd::detail::read_file(o.fractional_in), o.fractional_in);
    } else {
      frac = solve_star_lp(g, o.epsilon, gl.threads);
      r.extra = lp_stats_json(frac);
    }
    auto scan = round_with_tau_scan(g, frac, o.epsilon, o.trials, gl.seed, gl.threads);
    r.districting = scan.districting;
    r.params = {{"epsilon", o.epsilon}, {"trials", o.trials}, {"seed", gl.seed}};
    r.extra.update(diagnostics_json(scan.diagnostics));
    r.extra["runs"] = scan.runs;
    r.fractional = std::move(frac);
  } else if (a == "greedy-rank") {
    r.districting = greedy_rank_k(g, o.k);
    r.rank = o.k;
    r.params = {{"k", o.k}};
  } else if (a == "exact-rank2") {
    r.districting = exact_rank_2(g);
    r.rank = 2;
  } else if (a == "greedy-degree") {
    r.star = true;
    r.districting = greedy_bounded_degree(g);
    r.extra = {{"max_degree", g.max_degree()}};
  } else if (a == "local-search") {
    r.star = true;
    r.districting = local_search_binary(g);
  } else if (a == "binary-matching") {
    r.star = true;
    r.rank = 2;
    r.districting = binary_matching_bound(g);
  } else {
    throw ParameterError("unknown algorithm '" + a + "'");
  }
  canonicalize(r.districting);
  return r;
}

inline int cmd_gen(const Globals& gl, const std::string& family, int side, int n, const std::string& c_text,
                   const std::string& kind, Weight max_weight, double p, const std::string& hyperedges,
                   const std::string& output) {
  const Rational c = Rational::parse(c_text);
  Instance g;
  if (family == "square-grid" || family == "square") {
    g = gen_square_grid(side, c);
  } else if (family == "triangular-grid" || family == "triangular") {
    g = gen_triangular_grid(side, c);
  } else if (family == "bipartite-gap" || family == "bipartite") {
    g = gen_grid_bipartite_gap(side, c);
  } else if (family == "greedy-counterexample") {
    if (!c.is_integer()) throw ParameterError("greedy-counterexample needs an integer c");
    g = gen_greedy_counterexample(n, static_cast<int>(c.num()));
  } else if (family == "hypergraph") {
    std::vector<std::vector<VertexId>> edges;
    std::stringstream all(hyperedges);
    std::string part;
    while (std::getline(all, part, ';')) {
      std::vector<VertexId> e;
      std::stringstream ps(part);
      std::string item;
      while (std::getline(ps, item, ',')) {
        if (!item.empty()) e.push_back(std::stoll(item));
      }
      if (!e.empty()) edges.push_back(std::move(e));
    }
    if (edges.empty()) throw ParameterError("hypergraph family needs --hyperedges like '1,2,3;3,4,5'");
    g = gen_hypergraph_reduction(edges, static_cast<int>(edges[0].size()), c);
  } else if (family == "random") {
    RandomOptions opt;
    opt.c = c;
    opt.edge_probability = p;
    g = gen_random(parse_random_kind(kind), n, max_weight, gl.seed, opt);
  } else {
    throw ParameterError("unknown family '" + family + "'");
  }
  write_or_print(output, instance_to_string(g));
  return kOk;
}

inline int cmd_solve(const Globals& gl, const SolveOptions& o) {
  const Instance g = read_instance(o.input);
  const auto t0 = Clock::now();
  SolveResult r = run_algorithm(g, o, gl);
  const double ms = millis_since(t0);
  Json stats = {{"algo", o.algo}, {"n", g.size()}, {"runtime_ms", ms}, {"seed", gl.seed}, {"threads", gl.threads}};
  std::string artifact;
  if (o.algo == "lp-star") {
    artifact = fractional_to_json(g, *r.fractional).dump(2) + "\n";
    stats["lp_value"] = r.fractional->lp_value;
  } else {
    require_valid(g, r.districting, r.star, r.rank);
    DistrictingFile f;
    f.districting = r.districting;
    f.weight = districting_weight(g, r.districting);
    f.solver = o.algo;
    f.params = r.params;
    artifact = districting_to_string(f);
    stats["weight"] = f.weight;
    stats["districts"] = f.districting.districts.size();
  }
  stats["params"] = r.params;
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) stats[it.key()] = it.value();
  if (!o.fractional_out.empty() && r.fractional) {
    bd::detail::write_file(o.fractional_out, fractional_to_json(g, *r.fractional).dump(2) + "\n");
  }
  write_or_print(o.output, artifact);
  if (!gl.quiet) {
    std::ostream& os = o.output.empty() || o.output == "-" ? std::cerr : std::cout;
    emit_rows(os, {stats}, gl.csv);
  }
  return kOk;
}

inline int cmd_verify(const Globals& gl, const std::string& input, const std::string& districting,
                      const std::string& fractional, bool star, std::optional<std::size_t> rank) {
  const Instance g = read_instance(input);
  Json out = {{"instance", input}, {"n", g.size()}, {"edges", g.edge_count()}, {"c", g.c().to_string()}};
  bool ok = true;
  if (!districting.empty()) {
    const auto f = read_districting(districting);
    const auto report = validate_districting(g, f.districting, star, rank);
    Json problems = Json::array();
    for (const auto& e : report.entries) problems.push_back({{"kind", to_string(e.kind)}, {"message", e.message}});
    out["districting"] = districting;
    out["violations"] = problems;
    if (report.ok()) {
      const Weight w = districting_weight(g, f.districting);
      out["weight"] = w;
      if (f.weight != w) {
        ok = false;
        problems.push_back({{"kind", "weight"},
                            {"message", "recorded weight " + std::to_string(f.weight) + " != " + std::to_string(w)}});
        out["violations"] = problems;
      }
    }
    ok = ok && report.ok();
  }
  if (!fractional.empty()) {
    const auto frac = fractional_from_json(g, bd::detail::read_file(fractional), fractional);
    double max_load = 0;
    for (double l : vertex_loads(g, frac.primal)) max_load = std::max(max_load, l);
    out["max_load"] = max_load;
    out["lp_value"] = frac.lp_value;
    if (max_load > 1 + 1e-9) ok = false;
  }
  out["ok"] = ok;
  if (!gl.quiet) emit_rows(std::cout, {out}, gl.csv);
  return ok ? kOk : kInvalid;
}

inline int cmd_oracle(const Globals& gl, const std::string& input, const std::string& output, bool star,
                      std::optional<std::size_t> rank, std::optional<std::size_t> cap, bool lp) {
  const Instance g = read_instance(input);
  const auto t0 = Clock::now();
  if (lp) {
    const auto ex = brute_force_lp(g, cap.value_or(kDefaultLpDistrictCap));
    Json out = {{"lp_value", ex.value_double()}, {"lp_value_exact", ex.value.str()}, {"districts", ex.districts.size()}};
    write_or_print(output, out.dump(2) + "\n");
    if (!gl.quiet && !output.empty()) emit_rows(std::cout, {{{"lp_value", ex.value_double()}, {"runtime_ms", millis_since(t0)}}}, gl.csv);
    return kOk;
  }
  ExactDistrictOptions opt;
  opt.require_star = star;
  opt.max_rank = rank;
  opt.cap = cap;
  const auto ex = brute_force_districting(g, opt);
  require_valid(g, ex.districting, star, rank);
  DistrictingFile f;
  f.districting = ex.districting;
  f.weight = ex.weight;
  f.solver = "oracle";
  f.params = {{"star", star}};
  if (rank) f.params["max_rank"] = *rank;
  write_or_print(output, districting_to_string(f));
  if (!gl.quiet) {
    std::ostream& os = output.empty() || output == "-" ? std::cerr : std::cout;
    emit_rows(os, {{{"algo", "oracle"}, {"n", g.size()}, {"weight", ex.weight}, {"runtime_ms", millis_since(t0)}}},
              gl.csv);
  }
  return kOk;
}

inline int cmd_separator(const Globals& gl, const std::string& input, const std::string& output, int h,
                         bool verify) {
  const Instance g = read_instance(input);
  const auto out = covey_separator(g, h);
  Json j = separator_to_json(out);
  bool ok = true;
  if (verify) {
    ValidationReport report;
    if (out.separator) report = verify_scattering(g, *out.separator, gl.threads);
    if (out.certificate) report = check_minor_certificate(g, *out.certificate, h);
    Json problems = Json::array();
    for (const auto& e : report.entries) problems.push_back({{"kind", to_string(e.kind)}, {"message", e.message}});
    j["verified"] = report.ok();
    j["violations"] = problems;
    ok = report.ok();
  }
  write_or_print(output, j.dump(2) + "\n");
  return ok ? kOk : kInvalid;
}

inline Json gap_row(const std::string& family, int side, const Rational& c) {
  Instance g;
  double x = 0;
  if (family == "square") {
    g = gen_square_grid(side, c);
    x = 1.0 / 5;
  } else if (family == "triangular") {
    g = gen_triangular_grid(side, c);
    x = 1.0 / 7;
  } else if (family == "bipartite") {
    g = gen_grid_bipartite_gap(side, c);
    x = 1.0 / (2.0 * side);
  } else {
    throw ParameterError("gap family must be square, triangular or bipartite");
  }
  const auto d = correlation_report(g, uniform_star_fractional(g, x));
  return {{"side", side}, {"n", g.size()}, {"sum_x", d.sum_x}, {"correlation", d.correlation}, {"ratio", d.ratio}};
}

inline int cmd_gap(const Globals& gl, const std::string& family, const std::vector<int>& sides,
                   const std::string& c_text) {
  const Rational c = Rational::parse(c_text);
  std::vector<Json> rows;
  for (int s : sides) rows.push_back(gap_row(family, s, c));
  emit_rows(std::cout, rows, !gl.json, {"side", "n", "sum_x", "correlation", "ratio"});
  return kOk;
}

// Same graph, every vertex replaced by (1,0) or (0,1) with a fair coin.
inline Instance binary_weights(const Instance& g, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0xb1));
  std::vector<Vertex> vs;
  for (const auto& v : g.vertices()) {
    const bool one = rng.bernoulli(0.5);
    vs.push_back({v.id, one ? 1 : 0, one ? 0 : 1});
  }
  return Instance(g.c(), std::move(vs), g.edges(), g.metadata());
}

inline int cmd_bench(const Globals& gl, const std::string& kind, const std::vector<int>& sizes, int reps,
                     std::vector<std::string> algos, Weight max_weight, double epsilon, const std::string& c_text,
                     bool binary) {
  const Rational c = Rational::parse(c_text);
  if (algos.empty()) algos = algorithms();
  std::vector<Json> rows;
  for (int n : sizes) {
    for (int rep = 0; rep < reps; ++rep) {
      const std::uint64_t seed = derive_seed(gl.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep));
      RandomOptions ro;
      ro.c = c;
      Instance g = gen_random(parse_random_kind(kind), n, max_weight, seed, ro);
      if (binary) g = binary_weights(g, seed);
      for (const auto& a : algos) {
        if (a == "lp-star") continue;
        Json row = {{"algo", a}, {"kind", kind}, {"n", n}, {"rep", rep}, {"seed", seed}};
        SolveOptions o;
        o.algo = a;
        o.epsilon = epsilon;
        Globals inner = gl;
        inner.seed = seed;
        try {
          const auto t0 = Clock::now();
          auto r = run_algorithm(g, o, inner);
          row["runtime_ms"] = millis_since(t0);
          require_valid(g, r.districting, r.star, r.rank);
          const Weight w = districting_weight(g, r.districting);
          row["weight"] = w;
          if (g.size() <= oracle_cap()) {
            ExactDistrictOptions eo;
            eo.require_star = r.star;
            eo.max_rank = r.rank;
            const Weight opt = brute_force_districting(g, eo).weight;
            row["oracle"] = opt;
            row["ratio"] = w > 0 ? static_cast<double>(opt) / static_cast<double>(w) : (opt == 0 ? 1.0 : 0.0);
          }
          row["status"] = "ok";
        } catch (const VerificationFailed& e) {
          row["status"] = std::string("invalid: ") + e.what();
        } catch (const Error& e) {
          row["status"] = std::string("skipped: ") + e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  emit_rows(std::cout, rows, !gl.json,
            {"algo", "kind", "n", "rep", "seed", "weight", "oracle", "ratio", "runtime_ms", "status"});
  return kOk;
}

}  // namespace detail

// Entry point shared by the bd binary and the tests.
inline int run(int argc, const char* const* argv) {
  CLI::App app{"Balanced districting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--seed", gl.seed, "Seed for every randomized step")->capture_default_str();
  app.add_option("--threads", gl.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* json_flag = app.add_flag("--json", gl.json, "JSON reports");
  app.add_flag("--csv", gl.csv, "CSV reports")->excludes(json_flag);
  app.add_flag("-q,--quiet", gl.quiet, "Suppress reports");
  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string family = "square-grid", c_text = "3", kind = "tree", hyper, gen_out;
  int side = 5, n = 10;
  Weight max_w = 10;
  double prob = 0.3;
  gen->add_option("--family", family,
                  "square-grid|triangular-grid|bipartite-gap|greedy-counterexample|hypergraph|random")
      ->capture_default_str();
  gen->add_option("--side", side, "Grid side (sqrt n for bipartite-gap)")->capture_default_str();
  gen->add_option("--n", n, "Vertex count (random, greedy-counterexample)")->capture_default_str();
  gen->add_option("--c", c_text, "Balance parameter, e.g. 3 or 5/2")->capture_default_str();
  gen->add_option("--kind", kind, "tree|complete|grid_subgraph|gnp")->capture_default_str();
  gen->add_option("--max-weight", max_w)->capture_default_str();
  gen->add_option("--p", prob, "Edge probability for gnp")->capture_default_str();
  gen->add_option("--hyperedges", hyper, "Hyperedges as '1,2,3;3,4,5'");
  gen->add_option("-o,--output", gen_out, "Output file (stdout if omitted)");
  gen->callback([&] { action = [&] { return detail::cmd_gen(gl, family, side, n, c_text, kind, max_w, prob, hyper, gen_out); }; });

  // solve
  auto* solve = app.add_subcommand("solve", "Run a solver and write a verified districting");
  detail::SolveOptions so;
  solve->add_option("-i,--input", so.input, "Instance file")->required();
  solve->add_option("-o,--output", so.output, "Districting file (stdout if omitted)");
  solve->add_option("--algo", so.algo, "Algorithm")->required()->check(CLI::IsMember(detail::algorithms()));
  solve->add_option("--epsilon", so.epsilon)->capture_default_str();
  solve->add_option("--k", so.k, "Rank bound for greedy-rank")->capture_default_str();
  solve->add_option("--trials", so.trials, "Seeds per tau for lp-star-round")->capture_default_str();
  solve->add_option("--emit-fractional", so.fractional_out, "Also write the fractional LP solution");
  solve->add_option("--fractional", so.fractional_in, "Round this fractional solution instead of solving the LP");
  solve->callback([&] { action = [&] { return detail::cmd_solve(gl, so); }; });

  // verify
  auto* verify = app.add_subcommand("verify", "Check an instance and optionally a districting");
  std::string v_in, v_d, v_frac;
  bool v_star = false;
  std::optional<std::size_t> v_rank;
  verify->add_option("instance", v_in, "Instance file");
  verify->add_option("-i,--input", v_in, "Instance file");
  verify->add_option("-d,--districting", v_d, "Districting file");
  verify->add_option("--fractional", v_frac, "Fractional solution file");
  verify->add_flag("--star", v_star, "Require star districts");
  verify->add_option("--max-rank", v_rank, "Maximum district size");
  verify->callback([&] {
    if (v_in.empty()) throw CLI::RequiredError("instance");
    action = [&] { return detail::cmd_verify(gl, v_in, v_d, v_frac, v_star, v_rank); };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  std::string o_in, o_out;
  bool o_star = false, o_lp = false;
  std::optional<std::size_t> o_rank, o_cap;
  oracle->add_option("-i,--input", o_in)->required();
  oracle->add_option("-o,--output", o_out);
  oracle->add_flag("--star", o_star);
  oracle->add_option("--max-rank", o_rank);
  oracle->add_option("--cap", o_cap, "Vertex cap (district cap with --lp)");
  oracle->add_flag("--lp", o_lp, "Exact value of the star LP relaxation");
  oracle->callback([&] { action = [&] { return detail::cmd_oracle(gl, o_in, o_out, o_star, o_rank, o_cap, o_lp); }; });

  // separator
  auto* sep = app.add_subcommand("separator", "Scattering separator or clique-minor certificate");
  std::string s_in, s_out;
  int s_h = 6;
  bool s_verify = false;
  sep->add_option("-i,--input", s_in)->required();
  sep->add_option("-o,--output", s_out);
  sep->set_help_flag("--help", "Print this help message and exit");
  sep->add_option("--h", s_h, "Clique-minor size to look for")->capture_default_str();
  sep->add_flag("--verify", s_verify);
  sep->callback([&] { action = [&] { return detail::cmd_separator(gl, s_in, s_out, s_h, s_verify); }; });

  // gap
  auto* gap = app.add_subcommand("gap", "Overlap correlation of the uniform fractional solution on gap families");
  std::string g_family = "square", g_c = "3";
  std::vector<int> g_sides{10};
  gap->add_option("--family", g_family, "square|triangular|bipartite")->capture_default_str();
  gap->add_option("--side", g_sides, "One or more sides")->capture_default_str();
  gap->add_option("--c", g_c)->capture_default_str();
  gap->callback([&] { action = [&] { return detail::cmd_gap(gl, g_family, g_sides, g_c); }; });

  // bench
  auto* bench = app.add_subcommand("bench", "Run solvers on seeded random instances");
  std::string b_kind = "tree", b_c = "3";
  std::vector<int> b_sizes{8, 10, 12};
  std::vector<std::string> b_algos;
  int b_reps = 3;
  Weight b_maxw = 20;
  double b_eps = 0.2;
  bench->add_option("--kind", b_kind)->capture_default_str();
  bench->add_option("--n", b_sizes)->capture_default_str();
  bench->add_option("--reps", b_reps)->capture_default_str();
  bench->add_option("--algos", b_algos)->check(CLI::IsMember(detail::algorithms()));
  bench->add_option("--max-weight", b_maxw)->capture_default_str();
  bench->add_option("--epsilon", b_eps)->capture_default_str();
  bench->add_option("--c", b_c)->capture_default_str();
  bool b_binary = false;
  bench->add_flag("--binary", b_binary, "Binary weights: each vertex (1,0) or (0,1)");
  bench->callback([&] {
    action = [&] { return detail::cmd_bench(gl, b_kind, b_sizes, b_reps, b_algos, b_maxw, b_eps, b_c, b_binary); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInfeasible;
  }
  try {
    return action();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace bd::cli
