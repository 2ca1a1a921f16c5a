#pragma once

#include "glc/glc_search.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace glc {

inline constexpr const char* kVersion = "0.1.0";

// Flat key=value settings shared by the CLI commands. Flags override the config file, and the
// GLC_SEED environment variable overrides both for the seed.
struct RunConfig {
  std::string problem;
  std::optional<int> R;
  std::vector<int> r_range;
  std::string heuristic = "zero";
  double inflate = 1;

  std::optional<double> max_step;
  std::optional<std::string> horizon;  // formula text
  std::optional<std::string> eta;      // formula text
  std::optional<double> gamma;
  std::optional<std::vector<double>> x_ic;
  std::size_t max_iterations = 0;
  std::size_t max_nodes = 10'000'000;
  std::uint64_t seed = 7;
  bool force = false;

  std::string out_dir = ".";
  std::optional<std::string> trajectory_csv;
  std::optional<std::string> summary_json;
  std::optional<std::string> explored_csv;
  std::optional<std::string> sweep_csv;

  // Echo of the effective settings for run records.
  std::map<std::string, std::string> echo() const;
};

// Reads "key = value" lines; '#' starts a comment. Unknown keys raise ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(RunConfig& config, const std::map<std::string, std::string>& values);
void apply_seed_env(RunConfig& config);

// "4:8", "20:60:5" or "4,5,6".
std::vector<int> parse_r_range(const std::string& text);

// Applies config overrides (tuning, x_ic, seed) to a builtin problem.
ProblemDef configured_problem(const RunConfig& config);

struct SweepRow {
  int R = 0;
  std::string status;
  double cost = kInf;
  double wall_time = 0;
  std::size_t iterations = 0;
  std::size_t expansions = 0;

  bool operator==(const SweepRow&) const = default;
};

struct RunRecord {
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;

  std::string status;
  double cost = kInf;
  std::size_t iterations = 0;
  std::size_t expansions = 0;
  std::size_t pruned_count = 0;
  std::size_t relabel_count = 0;
  std::size_t enqueued = 0;
  std::size_t generated = 0;
  std::size_t labels = 0;
  double wall_time = 0;
  int resolution = 0;
  long horizon = 0;
  double eta = 0;
  double max_step = 0;
  double segment_duration = 0;
  std::size_t primitive_count = 0;
  Signal signal;

  std::vector<SweepRow> sweep;

  bool operator==(const RunRecord&) const = default;
};

RunRecord make_record(const RunConfig& config, const SearchResult& result);
std::string to_json_text(const RunRecord& record);
RunRecord record_from_json_text(const std::string& text);

// Fixed 17-significant-digit scientific formatting used by every CSV.
std::string format_real(double v);

// t, x1..xn, u1..um; u is the control active on [t, t + dt), repeated on the last row.
void write_trajectory_csv(std::ostream& os, const Trajectory& x, const PrimitiveSet& primitives, const Signal& signal,
                          int dim_input);
// x1..xn, cost, depth for every label at exit, in node order.
void write_explored_csv(std::ostream& os, const SignalTree& tree, const LabelMap& labels, int dim_state);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace glc
