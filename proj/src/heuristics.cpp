#include "glc/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace glc {

State Heuristic::grad(const State& x, double step) const {
  if (gradient) return gradient(x);
  State g(x.size());
  State y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    y[i] = x[i] + h;
    const double fp = value(y);
    y[i] = x[i] - h;
    const double fm = value(y);
    y[i] = x[i];
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

Heuristic zero_heuristic() {
  Heuristic h;
  h.name = "zero";
  h.value = [](const State&) { return 0.0; };
  h.gradient = [](const State& x) -> State { return State::Zero(x.size()); };
  return h;
}

Heuristic euclidean_over_speed(Eigen::VectorXd center, double speed, double radius, std::vector<int> axes) {
  if (!(speed > 0)) throw ConfigError("euclidean_over_speed: speed must be positive");
  if (axes.empty())
    for (Eigen::Index i = 0; i < center.size(); ++i) axes.push_back(static_cast<int>(i));
  if (static_cast<Eigen::Index>(axes.size()) != center.size()) throw ConfigError("euclidean_over_speed: axes mismatch");
  Heuristic h;
  h.name = "euclidean";
  h.value = [=](const State& x) {
    double d2 = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) d2 += (x[axes[i]] - center[i]) * (x[axes[i]] - center[i]);
    return std::max(std::sqrt(d2) - radius, 0.0) / speed;
  };
  h.gradient = [=](const State& x) -> State {
    State g = State::Zero(x.size());
    double d2 = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) d2 += (x[axes[i]] - center[i]) * (x[axes[i]] - center[i]);
    const double d = std::sqrt(d2);
    if (d <= radius || d == 0) return g;
    for (std::size_t i = 0; i < axes.size(); ++i) g[axes[i]] = (x[axes[i]] - center[i]) / (d * speed);
    return g;
  };
  return h;
}

Heuristic dubins_position(Eigen::Vector2d center, double radius) {
  Heuristic h = euclidean_over_speed(center, 1.0, radius, {0, 1});
  h.name = "dubins_position";
  return h;
}

Heuristic dubins_heading(double heading, double radius, int axis) {
  Heuristic h;
  h.name = "dubins_heading";
  h.value = [=](const State& x) { return std::max(std::abs(x[axis] - heading) - radius, 0.0); };
  h.gradient = [=](const State& x) -> State {
    State g = State::Zero(x.size());
    const double e = x[axis] - heading;
    if (std::abs(e) > radius) g[axis] = e > 0 ? 1.0 : -1.0;
    return g;
  };
  return h;
}

Heuristic auv_heuristic(double v_max, double w_max, Eigen::Vector2d center, double radius) {
  if (!(v_max >= 0 && w_max > 0)) throw ConfigError("auv heuristic: need v_max >= 0 and w_max > 0");
  Heuristic h = euclidean_over_speed(center, v_max + w_max, radius, {0, 1});
  h.name = "auv";
  return h;
}

Heuristic pointwise_max(const Heuristic& a, const Heuristic& b) {
  Heuristic h;
  h.name = "max(" + a.name + "," + b.name + ")";
  h.value = [a, b](const State& x) { return std::max(a(x), b(x)); };
  h.gradient = [a, b](const State& x) -> State { return a(x) >= b(x) ? a.grad(x) : b.grad(x); };
  return h;
}

Heuristic convex_combination(const Heuristic& a, const Heuristic& b, double lambda) {
  if (!(lambda >= 0 && lambda <= 1)) throw DomainError("convex_combination: lambda must be in [0, 1]");
  Heuristic h;
  h.name = "mix(" + a.name + "," + b.name + ")";
  h.value = [a, b, lambda](const State& x) { return lambda * a(x) + (1 - lambda) * b(x); };
  h.gradient = [a, b, lambda](const State& x) -> State { return lambda * a.grad(x) + (1 - lambda) * b.grad(x); };
  return h;
}

Heuristic scaled(const Heuristic& base, double factor) {
  Heuristic h;
  h.name = base.name + "*" + std::to_string(factor);
  h.value = [base, factor](const State& x) { return factor * base(x); };
  h.gradient = [base, factor](const State& x) -> State { return factor * base.grad(x); };
  return h;
}

// ---------------------------------------------------------------------------------------------

namespace {

Control sample_control(const OmegaSpec& omega, std::mt19937_64& rng, bool on_boundary) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Control w(omega.dim);
  switch (omega.shape) {
    case OmegaSpec::Shape::Box: {
      for (int i = 0; i < omega.dim; ++i) w[i] = omega.lower[i] + (omega.upper[i] - omega.lower[i]) * unit(rng);
      if (on_boundary) {
        // Push every coordinate to a face: the vertices carry the extreme directions.
        for (int i = 0; i < omega.dim; ++i) w[i] = unit(rng) < 0.5 ? omega.lower[i] : omega.upper[i];
      }
      return w;
    }
    case OmegaSpec::Shape::Ball:
    case OmegaSpec::Shape::Sphere: {
      double n = 0;
      while (n == 0) {
        for (int i = 0; i < omega.dim; ++i) w[i] = normal(rng);
        n = w.norm();
      }
      double r = omega.radius;
      if (omega.shape == OmegaSpec::Shape::Ball && !on_boundary) r *= std::pow(unit(rng), 1.0 / omega.dim);
      return w * (r / n);
    }
  }
  return w;
}

}  // namespace

AdmissibilityReport check_admissibility(const Heuristic& h, const ProblemDef& problem,
                                        const AdmissibilityOptions& options) {
  problem.validate();
  AdmissibilityReport rep;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::VectorXd& lo = problem.sample_lower;
  const Eigen::VectorXd& hi = problem.sample_upper;
  const int n = problem.model.dim_state;

  auto in_domain = [&](const State& z) {
    if (!problem.x_free(z)) return false;
    if (problem.goal.clearance(z) >= 0) return false;  // inside cl(X_goal)
    return !options.restrict_domain || options.restrict_domain(z);
  };

  std::size_t pair_index = 0;
  auto check_pair = [&](const State& z) {
    const Control w = sample_control(problem.omega, rng, (pair_index++ % 2) == 0);
    const double margin = h.grad(z).dot(problem.model(z, w)) + problem.running_cost(z, w);
    ++rep.free_checked;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_state = z;
      rep.worst_control = w;
    }
  };

  // Deterministic grid over the sampling box, cell centred.
  const std::size_t grid_budget = options.free_samples / 2;
  int k = std::max(1, static_cast<int>(std::floor(std::pow(double(grid_budget), 1.0 / n))));
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(k);
  for (std::size_t idx = 0; idx < total && rep.free_checked < grid_budget; ++idx) {
    State z(n);
    std::size_t r = idx;
    for (int i = 0; i < n; ++i) {
      const std::size_t c = r % static_cast<std::size_t>(k);
      r /= static_cast<std::size_t>(k);
      z[i] = lo[i] + (hi[i] - lo[i]) * (double(c) + 0.5) / double(k);
    }
    if (in_domain(z)) check_pair(z);
  }
  // Uniform draws for the rest of the budget.
  std::size_t attempts = 0;
  while (rep.free_checked < options.free_samples && attempts < 1000 * options.free_samples) {
    ++attempts;
    State z(n);
    for (int i = 0; i < n; ++i) z[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    if (in_domain(z)) check_pair(z);
  }
  rep.decrease_condition = rep.free_checked > 0 && rep.worst_margin >= -options.tolerance;

  for (std::size_t i = 0; i < options.goal_samples; ++i) {
    const State z = problem.goal.sample(rng, lo, hi);
    const double v = h(z);
    rep.goal_max = std::max(rep.goal_max, v);
    if (v > options.tolerance) rep.nonpositive_on_goal = false;
    if (std::abs(v) > options.tolerance) rep.zero_on_goal = false;
    ++rep.goal_checked;
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

namespace {

const BallConstraint& position_constraint(const ProblemDef& p) {
  if (p.goal.alternatives.size() != 1 || p.goal.alternatives[0].empty()) {
    throw ConfigError("heuristic: problem '" + p.name + "' has no single positional goal ball");
  }
  return p.goal.alternatives[0][0];
}

const BallConstraint* heading_constraint(const ProblemDef& p) {
  if (p.goal.alternatives.size() != 1) return nullptr;
  for (const auto& c : p.goal.alternatives[0])
    if (c.axes.size() == 1 && c.axes[0] == 2) return &c;
  return nullptr;
}

bool is_car(const ProblemDef& p) { return p.name == "wheeled_robot" || p.name == "dubins"; }

}  // namespace

Heuristic make_heuristic(const std::string& name, const ProblemDef& p) {
  if (name == "zero") return zero_heuristic();
  if (name == "euclidean") {
    if (!(p.goal_axis_speed > 0)) throw ConfigError("heuristic euclidean: no speed bound for '" + p.name + "'");
    const BallConstraint& c = position_constraint(p);
    Heuristic h = scaled(euclidean_over_speed(c.center, p.goal_axis_speed, c.radius, c.axes), p.cost_lower_bound);
    h.name = "euclidean";
    return h;
  }
  if (name == "dubins_position" || name == "dubins_heading" || name == "dubins_max") {
    if (!is_car(p)) throw ConfigError("heuristic " + name + ": needs a kinematic car problem");
    const BallConstraint& c = position_constraint(p);
    Heuristic pos = scaled(dubins_position(Eigen::Vector2d(c.center[0], c.center[1]), c.radius), p.cost_lower_bound);
    pos.name = "dubins_position";
    if (name == "dubins_position") return pos;
    const BallConstraint* hc = heading_constraint(p);
    if (!hc) throw ConfigError("heuristic " + name + ": problem '" + p.name + "' has no heading goal");
    Heuristic head = scaled(dubins_heading(hc->center[0], hc->radius), p.cost_lower_bound);
    head.name = "dubins_heading";
    if (name == "dubins_heading") return head;
    Heuristic m = pointwise_max(pos, head);
    m.name = "dubins_max";
    return m;
  }
  if (name == "auv") {
    if (p.name != "auv") throw ConfigError("heuristic auv: needs the auv problem");
    const BallConstraint& c = position_constraint(p);
    const double w_max = p.omega.radius;
    return auv_heuristic(p.goal_axis_speed - w_max, w_max, Eigen::Vector2d(c.center[0], c.center[1]), c.radius);
  }
  throw ConfigError("unknown heuristic '" + name + "'");
}

std::vector<std::string> builtin_heuristic_names(const ProblemDef& p) {
  std::vector<std::string> out{"zero"};
  for (const char* name : {"euclidean", "dubins_position", "dubins_heading", "dubins_max", "auv"}) {
    try {
      make_heuristic(name, p);
      out.emplace_back(name);
    } catch (const ConfigError&) {
    }
  }
  return out;
}

}  // namespace glc
