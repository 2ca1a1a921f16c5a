#pragma once

#include "glc/problem.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace glc {

struct Heuristic {
  using Value = std::function<double(const State&)>;
  using Gradient = std::function<State(const State&)>;

  std::string name = "zero";
  Value value;
  Gradient gradient;  // optional; central differences are used when empty

  double operator()(const State& x) const { return value(x); }
  State grad(const State& x, double step = 1e-6) const;
};

Heuristic zero_heuristic();

// max(||x_axes - center|| - radius, 0) / speed. Admissible for problems whose speed along the
// axes is at most `speed` and whose cost rate is at least 1.
Heuristic euclidean_over_speed(Eigen::VectorXd center, double speed, double radius = 0, std::vector<int> axes = {});

// Kinematic car relaxations: position distance at unit speed and heading error at unit turn rate.
Heuristic dubins_position(Eigen::Vector2d center = {0, 0}, double radius = 0);
Heuristic dubins_heading(double heading = 0, double radius = 0, int axis = 2);

// Current field bounded by v_max plus relative speed w_max; cost 1 + ||u||.
Heuristic auv_heuristic(double v_max, double w_max, Eigen::Vector2d center = {0, 0}, double radius = 0);

Heuristic pointwise_max(const Heuristic& a, const Heuristic& b);
Heuristic convex_combination(const Heuristic& a, const Heuristic& b, double lambda);
Heuristic scaled(const Heuristic& h, double factor);

struct AdmissibilityOptions {
  std::size_t free_samples = 10000;  // (z, w) pairs for the decrease condition
  std::size_t goal_samples = 1000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  // Optional further restriction of the sampled domain, applied on top of X_free.
  std::function<bool(const State&)> restrict_domain;
};

struct AdmissibilityReport {
  bool nonpositive_on_goal = true;  // H <= 0 on X_goal
  bool zero_on_goal = true;         // H = 0 on X_goal
  bool decrease_condition = true;   // <grad H, f> + g >= 0 off the goal
  double goal_max = -kInf;          // max H over goal samples
  double worst_margin = kInf;       // min <grad H, f> + g over free samples
  State worst_state;
  Control worst_control;
  std::size_t free_checked = 0;
  std::size_t goal_checked = 0;

  bool admissible() const { return nonpositive_on_goal && decrease_condition; }
  bool consistent() const { return admissible() && zero_on_goal; }
};

// Randomised check of the admissibility conditions over the problem's sampling box. States come
// from a deterministic grid (half the budget) and seeded uniform draws, restricted to
// X_free \ cl(X_goal); controls are drawn from Omega with half of them on its boundary.
AdmissibilityReport check_admissibility(const Heuristic& h, const ProblemDef& problem,
                                        const AdmissibilityOptions& options = {});

// The builtin heuristic suited to a problem, by name: "zero", "euclidean", "dubins_position",
// "dubins_heading", "dubins_max", "auv". Throws ConfigError when the name does not fit the problem.
Heuristic make_heuristic(const std::string& name, const ProblemDef& problem);
std::vector<std::string> builtin_heuristic_names(const ProblemDef& problem);

}  // namespace glc
