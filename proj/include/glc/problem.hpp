#pragma once

#include "glc/signal_space.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace glc {

// ---------------------------------------------------------------------------------------------
// Free space.

// Open convex polytope {y : A y < b} acting on a subset of state coordinates.
struct ConvexPolytope {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<int> axes;

  bool contains_interior(const State& x) const;
  // Lower bound on the distance from x to the polytope; non-positive inside.
  double outside_distance(const State& x) const;

  // Vertices in counter-clockwise order. Throws ConfigError when degenerate or not convex.
  static ConvexPolytope polygon(const std::vector<Eigen::Vector2d>& ccw_vertices, std::vector<int> axes = {0, 1});
  static ConvexPolytope box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, std::vector<int> axes);
};

struct NormLimit {
  std::vector<int> axes;
  double max_norm = kInf;
};

// Axis-aligned bounds minus obstacle interiors, intersected with optional norm limits.
struct FreeSpace {
  Eigen::VectorXd lower;  // +-inf where unbounded
  Eigen::VectorXd upper;
  std::vector<ConvexPolytope> obstacles;
  std::vector<NormLimit> norm_limits;

  static FreeSpace unbounded(int n);

  bool contains(const State& x) const;
  // Lower bound on the distance from x to the complement (negative outside).
  double clearance(const State& x) const;
};

// Bounded 2D workspace with convex polygonal obstacles over state axes 0 and 1; other axes free.
FreeSpace polygon_env(int state_dim, const Eigen::Vector2d& lower, const Eigen::Vector2d& upper,
                      const std::vector<std::vector<Eigen::Vector2d>>& polygons);

// Two rooms joined by a window in the dividing wall, over position axes 0..2.
FreeSpace two_rooms_window(int state_dim);

// ---------------------------------------------------------------------------------------------
// Goal sets: a union of alternatives, each an intersection of coordinate balls.

struct BallConstraint {
  std::vector<int> axes;
  Eigen::VectorXd center;
  double radius = 0;

  double distance(const State& x) const;
};

struct GoalRegion {
  std::vector<std::vector<BallConstraint>> alternatives;

  static GoalRegion ball(std::vector<int> axes, Eigen::VectorXd center, double radius);

  bool contains(const State& x) const;
  // Positive inside, negative outside; a lower bound on the signed distance to the boundary.
  double clearance(const State& x) const;
  // Uniform-ish draw from the goal intersected with the sampling box.
  State sample(std::mt19937_64& rng, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) const;
};

// ---------------------------------------------------------------------------------------------

struct Tuning {
  std::vector<int> resolutions;
  ScalingFormula horizon = ScalingFormula::r_log_r(100);
  ScalingFormula eta = ScalingFormula::power(2, 1);
  double gamma_scale = 1;  // segment duration is gamma_scale / R
  double max_step = 0.1;
};

using RunningCost = std::function<double(const State&, const Control&)>;

struct ProblemDef {
  std::string name;
  DynamicalModel model;
  RunningCost running_cost;
  double lipschitz_g = 0;  // jointly in (x, u) over X_free x Omega
  double cost_lower_bound = 1;  // inf g over X_free x Omega
  double goal_axis_speed = 0;   // sup of the speed along the first goal constraint's axes; 0 if unknown

  OmegaSpec omega;
  std::optional<OmegaSpec> primitive_source;  // discretised instead of omega when set

  State x_ic;
  FreeSpace free_space;
  GoalRegion goal;
  std::vector<int> wrap_axes;  // coordinates keyed modulo 2 pi

  // Operating region used by samplers and checkers.
  Eigen::VectorXd sample_lower;
  Eigen::VectorXd sample_upper;

  Tuning tuning;

  bool x_free(const State& x) const { return free_space.contains(x); }
  bool x_goal(const State& x) const { return goal.contains(x); }
  const OmegaSpec& primitive_omega() const { return primitive_source ? *primitive_source : omega; }
  PrimitiveSet primitives(int R) const { return make_uniform_primitives(primitive_omega(), R, tuning.gamma_scale); }

  // Throws ConfigError on inconsistent dimensions or a missing field.
  void validate() const;
};

}  // namespace glc
