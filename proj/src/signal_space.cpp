#include "glc/signal_space.hpp"

#include "glc/problem.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

namespace glc {

// ---------------------------------------------------------------------------------------------
// OmegaSpec

OmegaSpec OmegaSpec::interval(double a, double b) {
  Eigen::VectorXd lo(1), hi(1);
  lo << a;
  hi << b;
  return box(lo, hi);
}

OmegaSpec OmegaSpec::box(Eigen::VectorXd lower, Eigen::VectorXd upper) {
  if (lower.size() != upper.size() || lower.size() == 0) throw ConfigError("box: bound dimensions disagree");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw ConfigError("box: need finite lower <= upper on every axis");
    }
  }
  OmegaSpec s;
  s.shape = Shape::Box;
  s.dim = static_cast<int>(lower.size());
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

OmegaSpec OmegaSpec::ball(int dim, double radius) {
  if (dim < 1 || !(radius > 0)) throw ConfigError("ball: need dim >= 1 and radius > 0");
  OmegaSpec s;
  s.shape = Shape::Ball;
  s.dim = dim;
  s.radius = radius;
  return s;
}

OmegaSpec OmegaSpec::sphere(int dim, double radius, bool random_rotation, std::uint64_t seed) {
  if (dim < 1 || !(radius > 0)) throw ConfigError("sphere: need dim >= 1 and radius > 0");
  if (dim > 3) throw ConfigError("sphere: primitive lattices are implemented for dim <= 3");
  OmegaSpec s;
  s.shape = Shape::Sphere;
  s.dim = dim;
  s.radius = radius;
  s.random_rotation = random_rotation;
  s.seed = seed;
  return s;
}

bool OmegaSpec::contains(const Control& w, double tol) const {
  if (w.size() != dim) return false;
  switch (shape) {
    case Shape::Box:
      return ((w - lower).array() >= -tol).all() && ((upper - w).array() >= -tol).all();
    case Shape::Ball:
      return w.norm() <= radius + tol;
    case Shape::Sphere:
      return std::abs(w.norm() - radius) <= tol;
  }
  return false;
}

double OmegaSpec::u_max() const {
  if (shape == Shape::Box) return lower.cwiseAbs().cwiseMax(upper.cwiseAbs()).norm();
  return radius;
}

std::string OmegaSpec::describe() const {
  std::ostringstream os;
  switch (shape) {
    case Shape::Box:
      os << "box" << dim << "[";
      for (int i = 0; i < dim; ++i) os << (i ? "," : "") << lower[i] << ":" << upper[i];
      os << "]";
      break;
    case Shape::Ball:
      os << "ball" << dim << "(r=" << radius << ")";
      break;
    case Shape::Sphere:
      os << "sphere" << dim << "(r=" << radius << (random_rotation ? ",rotated" : "") << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------------------------
// Primitive sets

namespace {

// R evenly spaced values on [a, b], endpoints included; the midpoint when R = 1.
std::vector<double> axis_grid(double a, double b, int R) {
  std::vector<double> v;
  if (R == 1) {
    v.push_back(0.5 * (a + b));
    return v;
  }
  v.reserve(R);
  for (int k = 0; k < R; ++k) v.push_back(k == R - 1 ? b : a + (b - a) * double(k) / double(R - 1));
  return v;
}

std::vector<Control> tensor_grid(const std::vector<std::vector<double>>& axes) {
  std::vector<Control> out{Control::Zero(static_cast<Eigen::Index>(axes.size()))};
  for (std::size_t d = 0; d < axes.size(); ++d) {
    std::vector<Control> next;
    next.reserve(out.size() * axes[d].size());
    for (const auto& p : out) {
      for (double v : axes[d]) {
        Control q = p;
        q[d] = v;
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Control> sphere_lattice(int dim, double radius, int count) {
  std::vector<Control> out;
  if (dim == 1) {
    Control a(1), b(1);
    a << -radius;
    b << radius;
    return {a, b};
  }
  out.reserve(count);
  if (dim == 2) {
    for (int k = 0; k < count; ++k) {
      const double th = 2 * std::numbers::pi * double(k) / double(count);
      Control w(2);
      w << radius * std::cos(th), radius * std::sin(th);
      out.push_back(w);
    }
    return out;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / double(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * double(k);
    Control w(3);
    w << radius * r * std::cos(phi), radius * r * std::sin(phi), radius * z;
    out.push_back(w);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd random_orthogonal(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  // Sign fix so the draw does not depend on the Householder convention.
  const Eigen::MatrixXd Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (Rm(j, j) < 0) Q.col(j) *= -1.0;
  return Q;
}

PrimitiveSet make_uniform_primitives(const OmegaSpec& omega, int R, double gamma_scale) {
  if (R < 1) throw ConfigError("make_uniform_primitives: resolution must be >= 1");
  if (!(gamma_scale > 0)) throw ConfigError("make_uniform_primitives: gamma must be positive");
  PrimitiveSet set;
  set.resolution = R;
  set.segment_duration = gamma_scale / double(R);
  switch (omega.shape) {
    case OmegaSpec::Shape::Box: {
      std::vector<std::vector<double>> axes;
      for (int d = 0; d < omega.dim; ++d) axes.push_back(axis_grid(omega.lower[d], omega.upper[d], R));
      set.primitives = tensor_grid(axes);
      break;
    }
    case OmegaSpec::Shape::Ball: {
      std::vector<std::vector<double>> axes(omega.dim, axis_grid(-omega.radius, omega.radius, R));
      for (auto& w : tensor_grid(axes))
        if (w.norm() <= omega.radius * (1 + 1e-12)) set.primitives.push_back(std::move(w));
      if (set.primitives.empty()) throw ConfigError("make_uniform_primitives: ball grid is empty at this resolution");
      break;
    }
    case OmegaSpec::Shape::Sphere: {
      int count = 1;
      for (int d = 1; d < omega.dim; ++d) count *= R;
      set.primitives = sphere_lattice(omega.dim, omega.radius, count);
      if (omega.random_rotation && omega.dim > 1) {
        const Eigen::MatrixXd Q = random_orthogonal(omega.dim, omega.seed);
        for (auto& w : set.primitives) w = Q * w;
      }
      break;
    }
  }
  return set;
}

double dispersion(const std::vector<Control>& primitives, const OmegaSpec& omega, int samples_per_axis) {
  if (primitives.empty()) throw DomainError("dispersion: empty primitive set");
  if (samples_per_axis < 2) throw DomainError("dispersion: need at least 2 samples per axis");
  // Keep the dense sample near a million points regardless of dimension.
  int s = samples_per_axis;
  while (omega.dim > 1 && std::pow(double(s), omega.dim) > 1e6) s = s * 3 / 4;

  std::vector<Control> samples;
  switch (omega.shape) {
    case OmegaSpec::Shape::Box: {
      std::vector<std::vector<double>> axes;
      for (int d = 0; d < omega.dim; ++d) axes.push_back(axis_grid(omega.lower[d], omega.upper[d], s));
      samples = tensor_grid(axes);
      break;
    }
    case OmegaSpec::Shape::Ball: {
      std::vector<std::vector<double>> axes(omega.dim, axis_grid(-omega.radius, omega.radius, s));
      for (auto& w : tensor_grid(axes))
        if (w.norm() <= omega.radius) samples.push_back(std::move(w));
      for (auto& w : sphere_lattice(omega.dim, omega.radius, omega.dim == 3 ? s * s : s * 8)) samples.push_back(w);
      break;
    }
    case OmegaSpec::Shape::Sphere:
      samples = sphere_lattice(omega.dim, omega.radius, omega.dim == 3 ? s * s : s * 8);
      break;
  }

  double worst = 0;
  for (const auto& w : samples) {
    double best = kInf;
    for (const auto& p : primitives) best = std::min(best, (w - p).squaredNorm());
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

// ---------------------------------------------------------------------------------------------
// Scaling formulas

ScalingFormula ScalingFormula::r_log_r(double coeff) {
  ScalingFormula f;
  f.kind = Kind::RLogR;
  f.coeff = coeff;
  std::ostringstream os;
  os << coeff << "*R*log(R)";
  f.text = os.str();
  return f;
}

ScalingFormula ScalingFormula::power(double exponent, double divisor, std::string exponent_text) {
  if (!(divisor > 0)) throw ConfigError("scaling formula: divisor must be positive");
  ScalingFormula f;
  f.kind = Kind::Power;
  f.exponent = exponent;
  f.divisor = divisor;
  std::ostringstream os;
  if (exponent_text.empty()) {
    os << exponent;
    exponent_text = os.str();
    os.str("");
  }
  os << "R^(" << exponent_text << ")/" << divisor;
  f.text = os.str();
  return f;
}

ScalingFormula ScalingFormula::constant(double value) {
  ScalingFormula f;
  f.kind = Kind::Constant;
  f.coeff = value;
  std::ostringstream os;
  os << "const:" << value;
  f.text = os.str();
  return f;
}

namespace {

double parse_number(const std::string& s) {
  if (s == "pi") return std::numbers::pi;
  if (s == "e") return std::numbers::e;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("scaling formula: bad number '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("scaling formula: bad number '" + s + "'");
  return v;
}

}  // namespace

ScalingFormula ScalingFormula::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ConfigError("scaling formula: empty text");

  static const std::regex rlogr(R"(^([0-9.eE+\-]+)\*?R\*?(?:log|ln)\(?R\)?$)");
  static const std::regex pow(R"(^R\^\(?([0-9.eE+\-]+|pi)(?:/([0-9.eE+\-]+|pi))?\)?/([0-9.eE+\-]+)$)");
  static const std::regex cst(R"(^(?:const:)?([0-9.eE+\-]+)$)");
  std::smatch m;
  if (std::regex_match(t, m, rlogr)) return r_log_r(parse_number(m[1]));
  if (std::regex_match(t, m, pow)) {
    double e = parse_number(m[1]);
    std::string etext = m[1];
    if (m[2].matched) {
      e /= parse_number(m[2]);
      etext += "/" + std::string(m[2]);
    }
    return power(e, parse_number(m[3]), etext);
  }
  if (std::regex_match(t, m, cst)) return constant(parse_number(m[1]));
  throw ConfigError("scaling formula: cannot parse '" + std::string(text) + "'");
}

double ScalingFormula::evaluate(int R) const {
  switch (kind) {
    case Kind::RLogR:
      if (R < 2) throw DomainError("scaling formula " + text + ": R must be >= 2");
      return coeff * double(R) * std::log(double(R));
    case Kind::Power:
      if (R < 1) throw DomainError("scaling formula " + text + ": R must be >= 1");
      return std::pow(double(R), exponent) / divisor;
    case Kind::Constant:
      return coeff;
  }
  return 0;
}

long horizon_limit(int R, const ScalingFormula& formula) {
  const double v = formula.evaluate(R);
  if (!(v >= 1)) throw DomainError("horizon_limit: h(R) must be at least 1");
  return static_cast<long>(std::ceil(v - 1e-9));
}

double partition_scaling(int R, const ScalingFormula& formula) {
  const double v = formula.evaluate(R);
  if (!(v > 0)) throw DomainError("partition_scaling: eta(R) must be positive");
  return v;
}

// ---------------------------------------------------------------------------------------------
// Signal tree

SignalTree::SignalTree(State x_ic) {
  SignalNode root;
  root.terminal_state = std::move(x_ic);
  nodes_.push_back(std::move(root));
}

NodeId SignalTree::add(SignalNode node) {
  if (node.parent >= nodes_.size()) throw CorruptionError("SignalTree::add: parent handle out of range");
  if (node.depth != nodes_[node.parent].depth + 1) throw CorruptionError("SignalTree::add: depth mismatch");
  if (nodes_.size() >= kNoParent) throw BudgetExceeded("SignalTree::add: node handle space exhausted");
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

const SignalNode& SignalTree::operator[](NodeId id) const {
  if (id >= nodes_.size()) throw CorruptionError("SignalTree: dangling node handle " + std::to_string(id));
  return nodes_[id];
}

Signal reconstruct_signal(const SignalTree& tree, NodeId id) {
  Signal s;
  const SignalNode* n = &tree[id];
  s.reserve(static_cast<std::size_t>(n->depth));
  while (n->parent != kNoParent) {
    if (n->primitive_index < 0) throw CorruptionError("reconstruct_signal: non-root node without a primitive");
    s.push_back(n->primitive_index);
    n = &tree[n->parent];
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::vector<Segment> to_segments(const PrimitiveSet& primitives, const Signal& signal) {
  std::vector<Segment> out;
  out.reserve(signal.size());
  for (int j : signal) {
    if (j < 0 || static_cast<std::size_t>(j) >= primitives.size()) {
      throw CorruptionError("to_segments: primitive index out of range");
    }
    out.push_back(Segment{primitives.primitives[j], primitives.segment_duration});
  }
  return out;
}

Trajectory reconstruct_trajectory(const ProblemDef& problem, const PrimitiveSet& primitives, const Signal& signal,
                                  double max_step) {
  const auto segments = to_segments(primitives, signal);
  return rollout(problem.model, problem.x_ic, std::span<const Segment>(segments), max_step);
}

Trajectory reconstruct_trajectory(const ProblemDef& problem, const PrimitiveSet& primitives, const SignalTree& tree,
                                  NodeId id, double max_step) {
  return reconstruct_trajectory(problem, primitives, reconstruct_signal(tree, id), max_step);
}

double segment_cost(const ProblemDef& problem, const Trajectory& segment, const Control& control, double) {
  double c = 0;
  for (std::size_t k = 0; k + 1 < segment.size(); ++k) {
    c += problem.running_cost(segment.states[k], control) * (segment.times[k + 1] - segment.times[k]);
  }
  return c;
}

double trajectory_cost(const ProblemDef& problem, const PrimitiveSet& primitives, const Signal& signal,
                       double max_step) {
  const Trajectory x = reconstruct_trajectory(problem, primitives, signal, max_step);
  // Walk the full trajectory; sample k belongs to the segment whose window contains [t_k, t_k+1).
  const double dur = primitives.segment_duration;
  double c = 0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double mid = 0.5 * (x.times[k] + x.times[k + 1]);
    std::size_t seg = static_cast<std::size_t>(mid / dur);
    if (seg >= signal.size()) seg = signal.size() - 1;
    c += problem.running_cost(x.states[k], primitives.primitives[signal[seg]]) * (x.times[k + 1] - x.times[k]);
  }
  return c;
}

Expansion expand(const SignalTree& tree, NodeId id, const PrimitiveSet& primitives, const ProblemDef& problem,
                 double max_step, long horizon) {
  const SignalNode& parent = tree[id];
  Expansion e;
  if (parent.depth >= horizon) {
    e.depth_limited = true;
    return e;
  }
  e.children.reserve(primitives.size());
  const double dur = primitives.segment_duration;
  for (std::size_t j = 0; j < primitives.size(); ++j) {
    Candidate c;
    c.node.parent = id;
    c.node.primitive_index = static_cast<int>(j);
    c.node.depth = parent.depth + 1;
    c.node.terminal_time = double(c.node.depth) * dur;
    try {
      const Control& u = primitives.primitives[j];
      Trajectory seg = rollout_incremental(problem.model, parent.terminal_state, parent.terminal_time, u, dur, max_step);
      bool ok = true;
      for (std::size_t k = 1; k < seg.size() && ok; ++k) ok = problem.x_free(seg.states[k]);
      c.feasible = ok;
      c.node.cost = parent.cost + segment_cost(problem, seg, u, dur);
      c.node.terminal_state = std::move(seg.states.back());
    } catch (const IntegrationDiverged&) {
      c.feasible = false;
      c.node.cost = kInf;
      c.node.terminal_state = parent.terminal_state;
    }
    e.children.push_back(std::move(c));
  }
  return e;
}

}  // namespace glc
