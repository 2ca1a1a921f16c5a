#pragma once

#include "glc/problem.hpp"

#include <string>
#include <vector>

namespace glc {

// Benchmarks. L_f and M are conservative hand estimates over each operating region
// (sample_lower/sample_upper); they scale the pruning bounds and are never used for feasibility.

// x' = u on the unit circle, g = 1. Defaults: x_ic = (0, 0), goal ball of radius 0.1 at (2, 0).
ProblemDef shortest_path_2d(FreeSpace env, Eigen::Vector2d x_ic = {0, 0}, Eigen::Vector2d goal = {2, 0},
                            double goal_radius = 0.1);
// Obstacle-free instance inside the box [-2, 6] x [-4, 4].
ProblemDef shortest_path_free();
// Repo-defined polygonal environment on [0, 10]^2.
ProblemDef shortest_path_obstacles();

ProblemDef pendulum_swingup();

// Spong acrobot, theta1 = 0 hanging down, m = l = 1, lc = 0.5, I = 1, g = 9.8.
struct AcrobotParams {
  double m1 = 1, m2 = 1, l1 = 1, lc1 = 0.5, lc2 = 0.5, I1 = 1, I2 = 1, gravity = 9.8;
  double max_joint_speed = 6;
};
ProblemDef acrobot_swingup(const AcrobotParams& params = {});
State acrobot_field(const AcrobotParams& p, const State& x, const Control& u);

// Double integrator with quadratic drag in the two-room building; primitives on the unit sphere.
ProblemDef point_robot_3d(std::uint64_t primitive_seed = 7);

// Kinematic car with control-effort cost g = 1 + 2u^2 in a repo-defined polygonal environment.
ProblemDef wheeled_robot();

// Kinematic car with g = 1 and goal {||p|| <= 0.5, |theta| <= 0.25}; the relaxation examples.
ProblemDef dubins_min_time();

// Holonomic vehicle in a shear current c(p), ||c|| <= v_max, relative speed <= w_max, g = 1 + ||u||.
struct AuvParams {
  double w_max = 0.5;
  double v_max = 1.3;  // 2.6 w_max
};
ProblemDef auv_current(const AuvParams& params = {});
Eigen::Vector2d auv_current_field(const AuvParams& p, const Eigen::Vector2d& pos);

// Synthetic instances for oracle tests.

// x' = u in dim 1 or 2 on a box Omega, g = 1 + cost_slope * sin(x_0), constant h and eta.
struct SingleIntegratorSpec {
  int dim = 1;
  double u_bound = 1;
  State x_ic;
  FreeSpace free_space;
  GoalRegion goal;
  double cost_slope = 0;  // L_g of the running cost
  double gamma_scale = 1;
  double max_step = 0.5;
  long horizon = 4;
  double eta = 2;
  std::vector<int> resolutions{2};
};
ProblemDef single_integrator(const SingleIntegratorSpec& spec);

ProblemDef tiny_1d();
ProblemDef trivial_goal();  // x_ic already in the goal

std::vector<std::string> builtin_problem_names();
// Throws ConfigError for an unknown name.
ProblemDef make_problem(const std::string& name);

}  // namespace glc
