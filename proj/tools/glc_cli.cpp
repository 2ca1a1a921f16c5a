// Command-line front end: plan | enumerate | verify-heuristic | bench | astar-demo.

#include "glc/glc_search.hpp"
#include "glc/graph_astar.hpp"
#include "glc/heuristics.hpp"
#include "glc/io.hpp"
#include "glc/problems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace {

using namespace glc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitHeuristicFails = 3;

// String-valued options keyed by their config-file names; only flags actually given override.
struct FlagSet {
  std::map<std::string, std::string> raw;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::string config_path;
  bool force = false;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    const std::string names = key == "R" ? "-R,--R" : "--" + flag;
    options.emplace_back(key, app->add_option(names, raw[key], help));
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_path.empty()) apply_config(c, read_config_file(config_path));
    std::map<std::string, std::string> given;
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) given[key] = raw.at(key);
    apply_config(c, given);
    if (force) c.force = true;
    apply_seed_env(c);
    return c;
  }
};

void add_problem_flags(CLI::App* app, FlagSet& f) {
  app->add_option("--config", f.config_path, "key=value settings file; flags override it");
  f.add(app, "problem", "problem name (" + [] {
    std::string s;
    for (const auto& n : builtin_problem_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }() + ")");
  f.add(app, "max_step", "Euler step bound");
  f.add(app, "horizon", "h(R) formula, e.g. 100*R*log(R) or const:6");
  f.add(app, "eta", "eta(R) formula, e.g. R^(5/2)/16");
  f.add(app, "gamma", "segment duration numerator (duration = gamma / R)");
  f.add(app, "x_ic", "initial state, comma separated");
  f.add(app, "seed", "seed for randomised pieces (GLC_SEED overrides)");
}

void add_search_flags(CLI::App* app, FlagSet& f) {
  f.add(app, "heuristic", "heuristic name (zero, euclidean, dubins_position, dubins_heading, dubins_max, auv)");
  f.add(app, "inflate", "multiply the heuristic by this factor");
  f.add(app, "max_iterations", "queue pop cap (0 = none)");
  f.add(app, "max_nodes", "tree size cap");
  f.add(app, "out_dir", "directory for outputs");
  app->add_flag("--force", f.force, "allow R outside the problem's declared range");
}

std::string out_path(const RunConfig& c, const std::optional<std::string>& given, const std::string& fallback) {
  std::filesystem::path p = given ? std::filesystem::path(*given) : std::filesystem::path(c.out_dir) / fallback;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p.string();
}

void check_resolution(const ProblemDef& p, int R, bool force) {
  const auto& rs = p.tuning.resolutions;
  if (force || std::find(rs.begin(), rs.end(), R) != rs.end()) return;
  std::ostringstream os;
  os << "R=" << R << " is outside the declared range of " << p.name << " {";
  for (std::size_t i = 0; i < rs.size(); ++i) os << (i ? "," : "") << rs[i];
  os << "}; pass --force to run anyway";
  throw ConfigError(os.str());
}

Heuristic search_heuristic(const RunConfig& c, const ProblemDef& p) {
  Heuristic h = make_heuristic(c.heuristic, p);
  if (c.inflate != 1) h = scaled(h, c.inflate);
  return h;
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions o;
  o.max_iterations = c.max_iterations;
  o.max_nodes = c.max_nodes;
  return o;
}

int cmd_plan(const FlagSet& f) {
  const RunConfig c = f.resolve();
  if (!c.R) throw ConfigError("plan: --R is required");
  const ProblemDef p = configured_problem(c);
  check_resolution(p, *c.R, c.force);
  GlcSearch search(p, *c.R, search_heuristic(c, p), search_options(c));
  const SearchResult res = search.run();

  std::ostringstream csv;
  if (res.status == SearchStatus::SolutionFound) {
    const Trajectory x = reconstruct_trajectory(p, res.primitives, res.signal, res.max_step);
    write_trajectory_csv(csv, x, res.primitives, res.signal, p.model.dim_input);
  } else {
    write_trajectory_csv(csv, Trajectory{}, res.primitives, res.signal, p.model.dim_input);
  }
  write_text_file(out_path(c, c.trajectory_csv, "trajectory.csv"), csv.str());
  write_text_file(out_path(c, c.summary_json, "summary.json"), to_json_text(make_record(c, res)));
  if (c.explored_csv) {
    std::ostringstream ex;
    write_explored_csv(ex, search.tree(), search.labels(), p.model.dim_state);
    write_text_file(out_path(c, c.explored_csv, "explored.csv"), ex.str());
  }
  std::cout << p.name << " R=" << *c.R << " status=" << to_string(res.status) << " cost=" << format_real(res.cost)
            << " iterations=" << res.iterations << " expansions=" << res.expansions << "\n";
  return res.status == SearchStatus::SolutionFound ? kExitOk : kExitNoSolution;
}

int cmd_enumerate(const FlagSet& f, long depth, std::size_t budget) {
  const RunConfig c = f.resolve();
  if (!c.R) throw ConfigError("enumerate: --R is required");
  const ProblemDef p = configured_problem(c);
  EnumerationOptions o;
  if (depth >= 0) o.max_depth = depth;
  o.node_budget = budget;
  const EnumerationResult r = enumerate_all(p, *c.R, o);
  json j;
  j["problem"] = p.name;
  j["R"] = *c.R;
  j["best_cost"] = std::isfinite(r.best_cost) ? json(r.best_cost) : json(nullptr);
  j["best_signal"] = r.best_signal;
  j["count_feasible"] = r.count_feasible;
  j["count_minimal"] = r.count_minimal;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const FlagSet& f, std::size_t samples) {
  const RunConfig c = f.resolve();
  const ProblemDef p = configured_problem(c);
  const Heuristic h = search_heuristic(c, p);
  AdmissibilityOptions o;
  o.free_samples = samples;
  o.seed = c.seed;
  const AdmissibilityReport r = check_admissibility(h, p, o);
  json j;
  j["problem"] = p.name;
  j["heuristic"] = h.name;
  j["admissible"] = r.admissible();
  j["consistent"] = r.consistent();
  j["nonpositive_on_goal"] = r.nonpositive_on_goal;
  j["zero_on_goal"] = r.zero_on_goal;
  j["decrease_condition"] = r.decrease_condition;
  j["goal_max"] = r.goal_max;
  j["worst_margin"] = r.worst_margin;
  j["worst_state"] = std::vector<double>(r.worst_state.data(), r.worst_state.data() + r.worst_state.size());
  j["worst_control"] =
      std::vector<double>(r.worst_control.data(), r.worst_control.data() + r.worst_control.size());
  j["free_checked"] = r.free_checked;
  j["goal_checked"] = r.goal_checked;
  j["seed"] = c.seed;
  const std::string text = j.dump(2) + "\n";
  if (c.summary_json) write_text_file(out_path(c, c.summary_json, "admissibility.json"), text);
  std::cout << text;
  return r.admissible() ? kExitOk : kExitHeuristicFails;
}

int cmd_bench(const FlagSet& f) {
  RunConfig c = f.resolve();
  const ProblemDef p = configured_problem(c);
  const bool range_given = std::any_of(f.options.begin(), f.options.end(), [](const auto& o) {
    return o.first == "r_range" && o.second->count() > 0;
  });
  if (c.r_range.empty()) {
    if (range_given) throw ConfigError("bench: empty R range");
    c.r_range = p.tuning.resolutions;
  }
  if (c.r_range.empty()) throw ConfigError("bench: empty R range");
  for (int R : c.r_range) check_resolution(p, R, c.force);
  const Heuristic h = search_heuristic(c, p);

  RunRecord rec;
  rec.seed = c.seed;
  rec.config = c.echo();
  rec.status = "sweep";
  for (int R : c.r_range) {
    SweepRow row;
    row.R = R;
    try {
      const SearchResult res = glc_plan(p, R, h, search_options(c));
      row.status = to_string(res.status);
      row.cost = res.cost;
      row.wall_time = res.wall_time;
      row.iterations = res.iterations;
      row.expansions = res.expansions;
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
    }
    std::cout << p.name << " R=" << R << " status=" << row.status << " cost=" << format_real(row.cost)
              << " time=" << format_real(row.wall_time) << "\n";
    rec.sweep.push_back(row);
  }
  std::ostringstream csv;
  write_sweep_csv(csv, rec.sweep);
  write_text_file(out_path(c, c.sweep_csv, "sweep.csv"), csv.str());
  write_text_file(out_path(c, c.summary_json, "bench.json"), to_json_text(rec));
  return kExitOk;
}

int cmd_astar_demo(int size, double density, int connectivity, std::uint64_t seed, const std::string& out,
                   const std::string& summary) {
  if (size < 2) throw ConfigError("astar-demo: size must be >= 2");
  if (!(density >= 0 && density < 1)) throw ConfigError("astar-demo: density must be in [0, 1)");
  RunConfig env;
  env.seed = seed;
  apply_seed_env(env);
  std::mt19937_64 rng(env.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GridWorld grid;
  grid.width = grid.height = size;
  grid.connectivity = connectivity;
  grid.blocked.resize(static_cast<std::size_t>(size * size));
  for (std::size_t i = 0; i < grid.blocked.size(); ++i) grid.blocked[i] = unit(rng) < density;
  const int source = grid.index(0, 0), goal = grid.index(size - 1, size - 1);
  grid.blocked[static_cast<std::size_t>(source)] = false;
  grid.blocked[static_cast<std::size_t>(goal)] = false;
  WeightedGraph g = grid_graph(grid);
  g.set_destination(goal);

  const auto euclid = [&](int v) { return std::hypot(double(v % size - (size - 1)), double(v / size - (size - 1))); };
  const AStarResult uniform = astar(g, source);
  const AStarResult informed = astar(g, source, euclid);

  std::ostringstream csv;
  csv << "mode,order,vertex,x,y\n";
  auto dump = [&](const char* mode, const AStarResult& r) {
    for (std::size_t k = 0; k < r.expansion_order.size(); ++k) {
      const int v = r.expansion_order[k];
      csv << mode << "," << k << "," << v << "," << v % size << "," << v / size << "\n";
    }
  };
  dump("uniform", uniform);
  dump("informed", informed);
  std::filesystem::path op(out);
  if (op.has_parent_path()) std::filesystem::create_directories(op.parent_path());
  write_text_file(out, csv.str());

  auto side = [](const AStarResult& r) {
    return json{{"found", r.found},
                {"cost", r.found ? json(r.cost) : json(nullptr)},
                {"expansions", r.expansions},
                {"path_length", r.path.size()}};
  };
  json j{{"size", size},       {"density", density},      {"connectivity", connectivity},
         {"seed", env.seed},   {"uniform", side(uniform)}, {"informed", side(informed)}};
  const std::string text = j.dump(2) + "\n";
  if (!summary.empty()) write_text_file(summary, text);
  std::cout << text;
  return uniform.found ? kExitOk : kExitNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinodynamic motion planning by generalized label correcting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(glc::kVersion));

  FlagSet plan_f, enum_f, verify_f, bench_f;

  CLI::App* plan = app.add_subcommand("plan", "search one resolution; writes trajectory CSV and summary JSON");
  add_problem_flags(plan, plan_f);
  plan_f.add(plan, "R", "resolution");
  add_search_flags(plan, plan_f);
  plan_f.add(plan, "trajectory", "trajectory CSV path (default <out-dir>/trajectory.csv)");
  plan_f.add(plan, "summary", "summary JSON path (default <out-dir>/summary.json)");
  plan_f.add(plan, "explored", "optional CSV of the labels held at exit");

  CLI::App* enumerate = app.add_subcommand("enumerate", "exhaustive search of the primitive tree (small instances)");
  add_problem_flags(enumerate, enum_f);
  enum_f.add(enumerate, "R", "resolution");
  long depth = -1;
  std::size_t budget = 5'000'000;
  enumerate->add_option("--depth", depth, "tree depth (default h(R))");
  enumerate->add_option("--budget", budget, "node budget")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify-heuristic", "sampled admissibility check; exit 3 on failure");
  add_problem_flags(verify, verify_f);
  verify_f.add(verify, "heuristic", "heuristic name");
  verify_f.add(verify, "inflate", "multiply the heuristic by this factor");
  verify_f.add(verify, "summary", "also write the report here");
  std::size_t samples = 10000;
  verify->add_option("--samples", samples, "state-control samples")->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "sweep R; writes sweep CSV and bench JSON");
  add_problem_flags(bench, bench_f);
  bench_f.add(bench, "r_range", "R values: lo:hi[:step] or a,b,c (default: the problem's range)");
  add_search_flags(bench, bench_f);
  bench_f.add(bench, "sweep", "sweep CSV path (default <out-dir>/sweep.csv)");
  bench_f.add(bench, "summary", "bench JSON path (default <out-dir>/bench.json)");

  CLI::App* demo = app.add_subcommand("astar-demo", "uniform vs Euclidean A* on a random occupancy grid");
  int size = 50, connectivity = 4;
  double density = 0.2;
  std::uint64_t seed = 2;
  std::string out = "expansions.csv", summary;
  demo->add_option("--size", size, "grid side")->capture_default_str();
  demo->add_option("--density", density, "obstacle probability per cell")->capture_default_str();
  demo->add_option("--connectivity", connectivity, "4 or 8")->capture_default_str();
  demo->add_option("--seed", seed, "obstacle seed (GLC_SEED overrides)")->capture_default_str();
  demo->add_option("--out", out, "expansion CSV path")->capture_default_str();
  demo->add_option("--summary", summary, "also write the JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*plan) return cmd_plan(plan_f);
    if (*enumerate) return cmd_enumerate(enum_f, depth, budget);
    if (*verify) return cmd_verify(verify_f, samples);
    if (*bench) return cmd_bench(bench_f);
    if (*demo) return cmd_astar_demo(size, density, connectivity, seed, out, summary);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
