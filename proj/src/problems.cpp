#include "glc/problems.hpp"

#include <cmath>
#include <numbers>

namespace glc {

namespace {

constexpr double kPi = std::numbers::pi;

State vec(std::initializer_list<double> v) {
  State x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

Tuning tuning(int r_lo, int r_hi, int r_step, ScalingFormula h, ScalingFormula eta, double gamma, double max_step) {
  Tuning t;
  for (int r = r_lo; r <= r_hi; r += r_step) t.resolutions.push_back(r);
  t.horizon = std::move(h);
  t.eta = std::move(eta);
  t.gamma_scale = gamma;
  t.max_step = max_step;
  return t;
}

RunningCost unit_cost() {
  return [](const State&, const Control&) { return 1.0; };
}

// Obstacles shared by the 2D shortest-path and car environments.
std::vector<std::vector<Eigen::Vector2d>> arena_polygons() {
  return {
      {{3, 2}, {5, 2}, {5, 6}, {3, 6}},
      {{6, 5}, {8, 4}, {7.5, 8}},
  };
}

}  // namespace

ProblemDef shortest_path_2d(FreeSpace env, Eigen::Vector2d x_ic, Eigen::Vector2d goal, double goal_radius) {
  ProblemDef p;
  p.name = "shortest_path";
  p.model.dim_state = 2;
  p.model.dim_input = 2;
  p.model.vector_field = [](const State&, const Control& u) -> State { return u; };
  p.model.lipschitz_f = 1e-3;  // f does not depend on x; any positive constant is valid
  p.model.bound_M = 1;
  p.goal_axis_speed = 1;
  p.running_cost = unit_cost();
  p.lipschitz_g = 0;
  p.cost_lower_bound = 1;
  p.omega = OmegaSpec::sphere(2, 1.0);
  p.x_ic = x_ic;
  p.free_space = std::move(env);
  p.goal = GoalRegion::ball({0, 1}, goal, goal_radius);
  p.sample_lower = p.free_space.lower.cwiseMax(-20.0);
  p.sample_upper = p.free_space.upper.cwiseMin(20.0);
  p.tuning = tuning(20, 200, 5, ScalingFormula::r_log_r(100), ScalingFormula::power(2, 300), 10, 0.005);
  return p;
}

ProblemDef shortest_path_free() {
  FreeSpace env = FreeSpace::unbounded(2);
  env.lower << -2, -4;
  env.upper << 6, 4;
  ProblemDef p = shortest_path_2d(env);
  p.name = "shortest_path";
  return p;
}

ProblemDef shortest_path_obstacles() {
  ProblemDef p = shortest_path_2d(polygon_env(2, {0, 0}, {10, 10}, arena_polygons()), {1, 1}, {9, 9}, 0.25);
  p.name = "shortest_path_obstacles";
  return p;
}

ProblemDef pendulum_swingup() {
  ProblemDef p;
  p.name = "pendulum";
  p.model.dim_state = 2;
  p.model.dim_input = 1;
  p.model.vector_field = [](const State& x, const Control& u) -> State {
    State dx(2);
    dx << x[1], -std::sin(x[0]) + u[0];
    return dx;
  };
  p.model.lipschitz_f = 1;  // Jacobian [[0, 1], [-cos th, 0]] has spectral norm <= 1
  p.model.bound_M = std::sqrt(9.0 + 1.2 * 1.2);  // |omega| <= 3 in the operating region
  p.running_cost = unit_cost();
  p.lipschitz_g = 0;
  p.omega = OmegaSpec::interval(-0.2, 0.2);
  p.x_ic = vec({0, 0});
  p.free_space = FreeSpace::unbounded(2);
  p.goal.alternatives = {
      {BallConstraint{{0, 1}, vec({kPi, 0}), 0.1}},
      {BallConstraint{{0, 1}, vec({-kPi, 0}), 0.1}},
  };
  p.sample_lower = vec({-2 * kPi, -3});
  p.sample_upper = vec({2 * kPi, 3});
  p.tuning = tuning(4, 8, 1, ScalingFormula::r_log_r(100), ScalingFormula::power(2.5, 16, "5/2"), 6, 0.1);
  return p;
}

State acrobot_field(const AcrobotParams& p, const State& x, const Control& u) {
  const double th1 = x[0], th2 = x[1], dth1 = x[2], dth2 = x[3];
  const double c2 = std::cos(th2), s2 = std::sin(th2);
  const double d1 = p.m1 * p.lc1 * p.lc1 + p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2 * p.l1 * p.lc2 * c2) + p.I1 + p.I2;
  const double d2 = p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * c2) + p.I2;
  const double phi2 = p.m2 * p.lc2 * p.gravity * std::cos(th1 + th2 - kPi / 2);
  const double phi1 = -p.m2 * p.l1 * p.lc2 * dth2 * dth2 * s2 - 2 * p.m2 * p.l1 * p.lc2 * dth2 * dth1 * s2 +
                      (p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * std::cos(th1 - kPi / 2) + phi2;
  const double ddth2 = (u[0] + d2 / d1 * phi1 - p.m2 * p.l1 * p.lc2 * dth1 * dth1 * s2 - phi2) /
                       (p.m2 * p.lc2 * p.lc2 + p.I2 - d2 * d2 / d1);
  const double ddth1 = -(d2 * ddth2 + phi1) / d1;
  State dx(4);
  dx << dth1, dth2, ddth1, ddth2;
  return dx;
}

ProblemDef acrobot_swingup(const AcrobotParams& params) {
  ProblemDef p;
  p.name = "acrobot";
  p.model.dim_state = 4;
  p.model.dim_input = 1;
  p.model.vector_field = [params](const State& x, const Control& u) -> State { return acrobot_field(params, x, u); };
  // Sampled over the operating region: Jacobian spectral norm peaks near 78, ||f|| near 69.
  p.model.lipschitz_f = 80;
  p.model.bound_M = 75;
  p.running_cost = unit_cost();
  p.lipschitz_g = 0;
  p.omega = OmegaSpec::interval(-4, 4);
  p.x_ic = vec({0, 0, 0, 0});
  const double v = params.max_joint_speed;
  p.free_space = FreeSpace::unbounded(4);
  p.free_space.lower.tail<2>() << -v, -v;
  p.free_space.upper.tail<2>() << v, v;
  p.goal.alternatives = {
      {BallConstraint{{0, 1, 2, 3}, vec({kPi, 0, 0, 0}), 0.5}},
      {BallConstraint{{0, 1, 2, 3}, vec({-kPi, 0, 0, 0}), 0.5}},
  };
  p.sample_lower = vec({-2 * kPi, -2 * kPi, -v, -v});
  p.sample_upper = vec({2 * kPi, 2 * kPi, v, v});
  p.tuning = tuning(4, 10, 1, ScalingFormula::r_log_r(100), ScalingFormula::power(2, 16), 6, 0.1);
  return p;
}

ProblemDef point_robot_3d(std::uint64_t primitive_seed) {
  ProblemDef p;
  p.name = "point_robot_3d";
  p.model.dim_state = 6;
  p.model.dim_input = 3;
  p.model.vector_field = [](const State& x, const Control& u) -> State {
    State dx(6);
    const Eigen::Vector3d v = x.tail<3>();
    dx.head<3>() = v;
    dx.tail<3>() = 5.0 * u - 0.1 * v * v.norm();
    return dx;
  };
  // ||d/dv (v ||v||)|| <= 2 ||v|| <= 2 sqrt(50), so L_f <= 1 + 0.2 sqrt(50).
  p.model.lipschitz_f = 2.5;
  p.model.bound_M = std::sqrt(50.0 + 100.0);
  p.goal_axis_speed = std::sqrt(50.0);
  p.running_cost = unit_cost();
  p.lipschitz_g = 0;
  p.omega = OmegaSpec::ball(3, 1.0);
  p.primitive_source = OmegaSpec::sphere(3, 1.0, true, primitive_seed);
  p.x_ic = vec({8, 2.5, 1.5, 0, 0, 0});
  p.free_space = two_rooms_window(6);
  p.free_space.norm_limits.push_back(NormLimit{{3, 4, 5}, std::sqrt(50.0)});
  p.goal = GoalRegion::ball({0, 1, 2}, Eigen::Vector3d(2, 2.5, 1.5), 0.5);
  const double v = std::sqrt(50.0);
  p.sample_lower = vec({0, 0, 0, -v, -v, -v});
  p.sample_upper = vec({10, 5, 3, v, v, v});
  p.tuning = tuning(8, 12, 1, ScalingFormula::r_log_r(100), ScalingFormula::power(2, 64), 10, 0.1);
  return p;
}

namespace {

ProblemDef car_base() {
  ProblemDef p;
  p.model.dim_state = 3;
  p.model.dim_input = 1;
  p.model.vector_field = [](const State& x, const Control& u) -> State {
    State dx(3);
    dx << std::cos(x[2]), std::sin(x[2]), u[0];
    return dx;
  };
  p.model.lipschitz_f = 1;  // Jacobian has a single entry bounded by 1 in each heading row
  p.model.bound_M = std::sqrt(2.0);
  p.goal_axis_speed = 1;
  p.omega = OmegaSpec::interval(-1, 1);
  return p;
}

}  // namespace

ProblemDef wheeled_robot() {
  ProblemDef p = car_base();
  p.name = "wheeled_robot";
  p.running_cost = [](const State&, const Control& u) { return 1.0 + 2.0 * u[0] * u[0]; };
  p.lipschitz_g = 4;  // |dg/du| <= 4 on [-1, 1]
  p.cost_lower_bound = 1;
  p.x_ic = vec({1, 1, 0});
  p.free_space = polygon_env(3, {0, 0}, {10, 10}, arena_polygons());
  p.goal = GoalRegion::ball({0, 1}, Eigen::Vector2d(9, 9), 0.5);
  p.sample_lower = vec({0, 0, -2 * kPi});
  p.sample_upper = vec({10, 10, 2 * kPi});
  p.tuning = tuning(4, 9, 1, ScalingFormula::r_log_r(5), ScalingFormula::power(5 / kPi, 15, "5/pi"), 10, 0.02);
  return p;
}

ProblemDef dubins_min_time() {
  ProblemDef p = car_base();
  p.name = "dubins";
  p.running_cost = unit_cost();
  p.lipschitz_g = 0;
  p.x_ic = vec({4, 3, kPi / 2});
  FreeSpace env = FreeSpace::unbounded(3);
  env.lower.head<2>() << -10, -10;
  env.upper.head<2>() << 10, 10;
  p.free_space = env;
  p.goal.alternatives = {{
      BallConstraint{{0, 1}, Eigen::Vector2d(0, 0), 0.5},
      BallConstraint{{2}, vec({0}), 0.25},
  }};
  p.sample_lower = vec({-10, -10, -2 * kPi});
  p.sample_upper = vec({10, 10, 2 * kPi});
  p.tuning = tuning(4, 9, 1, ScalingFormula::r_log_r(5), ScalingFormula::power(5 / kPi, 15, "5/pi"), 10, 0.02);
  return p;
}

Eigen::Vector2d auv_current_field(const AuvParams& p, const Eigen::Vector2d& pos) {
  return Eigen::Vector2d(p.v_max * std::sin(kPi * pos.y() / 10.0), 0.0);
}

ProblemDef auv_current(const AuvParams& params) {
  ProblemDef p;
  p.name = "auv";
  p.model.dim_state = 2;
  p.model.dim_input = 2;
  p.model.vector_field = [params](const State& x, const Control& u) -> State {
    return auv_current_field(params, Eigen::Vector2d(x[0], x[1])) + u;
  };
  p.model.lipschitz_f = params.v_max * kPi / 10.0;
  p.model.bound_M = params.v_max + params.w_max;
  p.goal_axis_speed = params.v_max + params.w_max;
  p.running_cost = [](const State&, const Control& u) { return 1.0 + u.norm(); };
  p.lipschitz_g = 1;
  p.omega = OmegaSpec::ball(2, params.w_max);
  p.x_ic = vec({6, 6});
  FreeSpace env = FreeSpace::unbounded(2);
  env.lower << -10, -10;
  env.upper << 10, 10;
  p.free_space = env;
  p.goal = GoalRegion::ball({0, 1}, Eigen::Vector2d(0, 0), 0.25);
  p.sample_lower = vec({-10, -10});
  p.sample_upper = vec({10, 10});
  // Tuning borrowed from the shortest-path row.
  p.tuning = tuning(5, 13, 2, ScalingFormula::r_log_r(100), ScalingFormula::power(2, 16), 10, 0.05);  // odd R keeps u = 0 in the grid
  return p;
}

ProblemDef single_integrator(const SingleIntegratorSpec& s) {
  if (s.dim < 1 || s.dim > 2) throw ConfigError("single_integrator: dim must be 1 or 2");
  if (!(s.cost_slope >= 0 && s.cost_slope < 1)) throw ConfigError("single_integrator: cost slope must be in [0, 1)");
  ProblemDef p;
  p.name = "single_integrator";
  p.model.dim_state = s.dim;
  p.model.dim_input = s.dim;
  p.model.vector_field = [](const State&, const Control& u) -> State { return u; };
  p.model.lipschitz_f = 1;
  p.model.bound_M = s.u_bound * std::sqrt(double(s.dim));
  p.goal_axis_speed = p.model.bound_M;
  const double slope = s.cost_slope;
  p.running_cost = [slope](const State& x, const Control&) { return 1.0 + slope * std::sin(x[0]); };
  p.lipschitz_g = slope;
  p.cost_lower_bound = 1 - slope;
  p.omega = OmegaSpec::box(Eigen::VectorXd::Constant(s.dim, -s.u_bound), Eigen::VectorXd::Constant(s.dim, s.u_bound));
  p.x_ic = s.x_ic.size() ? s.x_ic : State::Zero(s.dim);
  p.free_space = s.free_space.lower.size() ? s.free_space : FreeSpace::unbounded(s.dim);
  p.goal = s.goal;
  p.sample_lower = p.free_space.lower.cwiseMax(-10.0);
  p.sample_upper = p.free_space.upper.cwiseMin(10.0);
  p.tuning.resolutions = s.resolutions;
  p.tuning.horizon = ScalingFormula::constant(double(s.horizon));
  p.tuning.eta = ScalingFormula::constant(s.eta);
  p.tuning.gamma_scale = s.gamma_scale;
  p.tuning.max_step = s.max_step;
  return p;
}

ProblemDef tiny_1d() {
  SingleIntegratorSpec s;
  s.dim = 1;
  s.x_ic = vec({0});
  s.free_space = FreeSpace::unbounded(1);
  s.free_space.lower << -3;
  s.free_space.upper << 3;
  s.goal = GoalRegion::ball({0}, vec({1.5}), 0.25);
  s.gamma_scale = 1.5;  // R = 3: primitives {-1, 0, 1} with duration 0.5
  s.resolutions = {3};
  s.horizon = 6;
  s.eta = 2;
  ProblemDef p = single_integrator(s);
  p.name = "tiny_1d";
  return p;
}

ProblemDef trivial_goal() {
  ProblemDef p = tiny_1d();
  p.name = "trivial";
  p.goal = GoalRegion::ball({0}, vec({0}), 0.25);
  return p;
}

std::vector<std::string> builtin_problem_names() {
  return {"shortest_path", "shortest_path_obstacles", "pendulum", "acrobot", "point_robot_3d",
          "wheeled_robot", "dubins", "auv", "tiny_1d", "trivial"};
}

ProblemDef make_problem(const std::string& name) {
  if (name == "shortest_path") return shortest_path_free();
  if (name == "shortest_path_obstacles") return shortest_path_obstacles();
  if (name == "pendulum") return pendulum_swingup();
  if (name == "acrobot") return acrobot_swingup();
  if (name == "point_robot_3d") return point_robot_3d();
  if (name == "wheeled_robot") return wheeled_robot();
  if (name == "dubins") return dubins_min_time();
  if (name == "auv") return auv_current();
  if (name == "tiny_1d") return tiny_1d();
  if (name == "trivial") return trivial_goal();
  throw ConfigError("unknown problem '" + name + "'");
}

}  // namespace glc
