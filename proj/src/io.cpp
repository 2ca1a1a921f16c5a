#include "glc/io.hpp"

#include "glc/problems.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace glc {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalise_key(std::string k) {
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

template <typename T>
T parse_as(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  is >> out;
  if (is.fail()) throw ConfigError("config: bad value for " + key + ": " + v);
  is >> std::ws;
  if (!is.eof()) throw ConfigError("config: bad value for " + key + ": " + v);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config: bad boolean for " + key + ": " + v);
}

std::vector<double> parse_vector(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_as<double>(key, trim(item)));
  if (out.empty()) throw ConfigError("config: empty vector for " + key);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    out[normalise_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& values) {
  for (const auto& [raw, v] : values) {
    const std::string k = normalise_key(raw);
    if (k == "problem")
      c.problem = v;
    else if (k == "R")
      c.R = parse_as<int>(k, v);
    else if (k == "r_range" || k == "R_range")
      c.r_range = parse_r_range(v);
    else if (k == "heuristic")
      c.heuristic = v;
    else if (k == "inflate")
      c.inflate = parse_as<double>(k, v);
    else if (k == "max_step")
      c.max_step = parse_as<double>(k, v);
    else if (k == "horizon")
      c.horizon = v;
    else if (k == "eta")
      c.eta = v;
    else if (k == "gamma")
      c.gamma = parse_as<double>(k, v);
    else if (k == "x_ic")
      c.x_ic = parse_vector(k, v);
    else if (k == "max_iterations")
      c.max_iterations = parse_as<std::size_t>(k, v);
    else if (k == "max_nodes")
      c.max_nodes = parse_as<std::size_t>(k, v);
    else if (k == "seed")
      c.seed = parse_as<std::uint64_t>(k, v);
    else if (k == "force")
      c.force = parse_bool(k, v);
    else if (k == "out_dir")
      c.out_dir = v;
    else if (k == "trajectory")
      c.trajectory_csv = v;
    else if (k == "summary")
      c.summary_json = v;
    else if (k == "explored")
      c.explored_csv = v;
    else if (k == "sweep")
      c.sweep_csv = v;
    else
      throw ConfigError("config: unknown key '" + raw + "'");
  }
}

void apply_seed_env(RunConfig& c) {
  if (const char* s = std::getenv("GLC_SEED"); s && *s) c.seed = parse_as<std::uint64_t>("GLC_SEED", s);
}

std::vector<int> parse_r_range(const std::string& text) {
  const std::string t = trim(text);
  std::vector<int> out;
  if (t.empty()) return out;
  if (t.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_as<int>("R range", trim(item)));
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("R range: expected lo:hi or lo:hi:step");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0) throw ConfigError("R range: step must be positive");
    for (int r = parts[0]; r <= parts[1]; r += step) out.push_back(r);
    return out;
  }
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_as<int>("R range", trim(item)));
  return out;
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> m;
  m["problem"] = problem;
  if (R) m["R"] = std::to_string(*R);
  if (!r_range.empty()) {
    std::string s;
    for (std::size_t i = 0; i < r_range.size(); ++i) s += (i ? "," : "") + std::to_string(r_range[i]);
    m["r_range"] = s;
  }
  m["heuristic"] = heuristic;
  if (inflate != 1) m["inflate"] = format_real(inflate);
  if (max_step) m["max_step"] = format_real(*max_step);
  if (horizon) m["horizon"] = *horizon;
  if (eta) m["eta"] = *eta;
  if (gamma) m["gamma"] = format_real(*gamma);
  if (x_ic) m["x_ic"] = join(*x_ic);
  m["max_iterations"] = std::to_string(max_iterations);
  m["max_nodes"] = std::to_string(max_nodes);
  m["seed"] = std::to_string(seed);
  return m;
}

ProblemDef configured_problem(const RunConfig& c) {
  ProblemDef p = c.problem == "point_robot_3d" ? point_robot_3d(c.seed) : make_problem(c.problem);
  if (c.max_step) p.tuning.max_step = *c.max_step;
  if (c.horizon) p.tuning.horizon = ScalingFormula::parse(*c.horizon);
  if (c.eta) p.tuning.eta = ScalingFormula::parse(*c.eta);
  if (c.gamma) p.tuning.gamma_scale = *c.gamma;
  if (c.x_ic) {
    if (static_cast<int>(c.x_ic->size()) != p.model.dim_state) throw ConfigError("config: x_ic has the wrong size");
    p.x_ic = Eigen::Map<const Eigen::VectorXd>(c.x_ic->data(), static_cast<Eigen::Index>(c.x_ic->size()));
  }
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------------------------

RunRecord make_record(const RunConfig& config, const SearchResult& r) {
  RunRecord rec;
  rec.seed = config.seed;
  rec.config = config.echo();
  rec.status = to_string(r.status);
  rec.cost = r.cost;
  rec.iterations = r.iterations;
  rec.expansions = r.expansions;
  rec.pruned_count = r.pruned_count;
  rec.relabel_count = r.relabel_count;
  rec.enqueued = r.enqueued;
  rec.generated = r.generated;
  rec.labels = r.labels;
  rec.wall_time = r.wall_time;
  rec.resolution = r.resolution;
  rec.horizon = r.horizon;
  rec.eta = r.eta;
  rec.max_step = r.max_step;
  rec.segment_duration = r.primitives.segment_duration;
  rec.primitive_count = r.primitives.size();
  rec.signal = r.signal;
  return rec;
}

namespace {

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double real_from(const json& j) { return j.is_null() ? kInf : j.get<double>(); }

}  // namespace

std::string to_json_text(const RunRecord& r) {
  json j;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["config"] = r.config;
  j["status"] = r.status;
  j["cost"] = real_or_null(r.cost);
  j["iterations"] = r.iterations;
  j["expansions"] = r.expansions;
  j["pruned_count"] = r.pruned_count;
  j["relabel_count"] = r.relabel_count;
  j["enqueued"] = r.enqueued;
  j["generated"] = r.generated;
  j["labels"] = r.labels;
  j["wall_time"] = r.wall_time;
  j["R"] = r.resolution;
  j["horizon"] = r.horizon;
  j["eta"] = r.eta;
  j["max_step"] = r.max_step;
  j["segment_duration"] = r.segment_duration;
  j["primitive_count"] = r.primitive_count;
  j["signal"] = r.signal;
  json rows = json::array();
  for (const auto& s : r.sweep) {
    rows.push_back({{"R", s.R},
                    {"status", s.status},
                    {"cost", real_or_null(s.cost)},
                    {"wall_time", s.wall_time},
                    {"iterations", s.iterations},
                    {"expansions", s.expansions}});
  }
  j["sweep"] = rows;
  return j.dump(2) + "\n";
}

RunRecord record_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("run record: ") + e.what());
  }
  RunRecord r;
  try {
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.status = j.at("status").get<std::string>();
    r.cost = real_from(j.at("cost"));
    r.iterations = j.at("iterations").get<std::size_t>();
    r.expansions = j.at("expansions").get<std::size_t>();
    r.pruned_count = j.at("pruned_count").get<std::size_t>();
    r.relabel_count = j.at("relabel_count").get<std::size_t>();
    r.enqueued = j.at("enqueued").get<std::size_t>();
    r.generated = j.at("generated").get<std::size_t>();
    r.labels = j.at("labels").get<std::size_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.resolution = j.at("R").get<int>();
    r.horizon = j.at("horizon").get<long>();
    r.eta = j.at("eta").get<double>();
    r.max_step = j.at("max_step").get<double>();
    r.segment_duration = j.at("segment_duration").get<double>();
    r.primitive_count = j.at("primitive_count").get<std::size_t>();
    r.signal = j.at("signal").get<Signal>();
    for (const auto& s : j.at("sweep")) {
      SweepRow row;
      row.R = s.at("R").get<int>();
      row.status = s.at("status").get<std::string>();
      row.cost = real_from(s.at("cost"));
      row.wall_time = s.at("wall_time").get<double>();
      row.iterations = s.at("iterations").get<std::size_t>();
      row.expansions = s.at("expansions").get<std::size_t>();
      r.sweep.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run record: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------------------------

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& x, const PrimitiveSet& primitives, const Signal& signal,
                          int dim_input) {
  const int n = x.empty() ? 0 : static_cast<int>(x.states.front().size());
  os << "t";
  for (int i = 0; i < n; ++i) os << ",x" << (i + 1);
  for (int i = 0; i < dim_input; ++i) os << ",u" << (i + 1);
  os << "\n";
  const double dur = primitives.segment_duration;
  for (std::size_t k = 0; k < x.size(); ++k) {
    os << format_real(x.times[k]);
    for (int i = 0; i < n; ++i) os << "," << format_real(x.states[k][i]);
    Control u = Control::Zero(dim_input);
    if (!signal.empty()) {
      // Segment active on [t_k, t_k+1); the final sample repeats the last one.
      std::size_t seg = signal.size() - 1;
      if (k + 1 < x.size()) {
        const double mid = 0.5 * (x.times[k] + x.times[k + 1]);
        seg = std::min(signal.size() - 1, static_cast<std::size_t>(mid / dur));
      }
      u = primitives.primitives[static_cast<std::size_t>(signal[seg])];
    }
    for (int i = 0; i < dim_input; ++i) os << "," << format_real(u[i]);
    os << "\n";
  }
}

void write_explored_csv(std::ostream& os, const SignalTree& tree, const LabelMap& labels, int dim_state) {
  std::vector<NodeId> ids;
  ids.reserve(labels.size());
  for (const auto& [key, id] : labels) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (int i = 0; i < dim_state; ++i) os << (i ? "," : "") << "x" << (i + 1);
  os << ",cost,depth\n";
  for (NodeId id : ids) {
    const SignalNode& n = tree[id];
    for (int i = 0; i < dim_state; ++i) os << (i ? "," : "") << format_real(n.terminal_state[i]);
    os << "," << format_real(n.cost) << "," << n.depth << "\n";
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "R,status,cost,wall_time,iterations,expansions\n";
  for (const auto& r : rows) {
    os << r.R << "," << r.status << "," << format_real(r.cost) << "," << format_real(r.wall_time) << ","
       << r.iterations << "," << r.expansions << "\n";
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
  if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace glc
