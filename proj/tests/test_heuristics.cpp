#include <doctest.h>

#include "glc/heuristics.hpp"
#include "glc/problems.hpp"

#include <random>

using namespace glc;

namespace {

State vec(std::initializer_list<double> v) {
  State x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

// Unit-speed integrator with the goal ball at the origin.
ProblemDef origin_integrator() {
  FreeSpace env = FreeSpace::unbounded(2);
  env.lower << -5, -5;
  env.upper << 5, 5;
  return shortest_path_2d(env, {3, 1}, {0, 0}, 0.1);
}

double margin(const Heuristic& h, const ProblemDef& p, const State& z, const Control& w) {
  return h.grad(z).dot(p.model(z, w)) + p.running_cost(z, w);
}

}  // namespace

TEST_CASE("zero heuristic margin is the running cost") {
  const ProblemDef p = wheeled_robot();
  const auto rep = check_admissibility(zero_heuristic(), p, {.free_samples = 2000, .goal_samples = 200});
  CHECK(rep.consistent());
  CHECK(rep.worst_margin == doctest::Approx(1.0));
}

TEST_CASE("euclidean heuristic on the integrator") {
  const ProblemDef p = origin_integrator();
  const Heuristic h = euclidean_over_speed(Eigen::Vector2d(0, 0), 1.0, 0.1);
  CHECK(margin(h, p, vec({1, 0}), vec({-1, 0})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(margin(h, p, vec({1, 0}), vec({1, 0})) == doctest::Approx(2.0));
  const auto rep = check_admissibility(h, p);
  CHECK(rep.admissible());
  CHECK(rep.worst_margin >= -1e-9);

  const Heuristic h2 = scaled(h, 2.0);
  CHECK(margin(h2, p, vec({1, 0}), vec({-1, 0})) == doctest::Approx(-1.0));
  const auto bad = check_admissibility(h2, p);
  CHECK_FALSE(bad.admissible());
  CHECK(bad.worst_margin < -0.9);
  CHECK(bad.worst_margin >= -1.0 - 1e-9);
}

TEST_CASE("builtin heuristic values") {
  CHECK(auv_heuristic(1.3, 0.5)(vec({0, 0})) == 0.0);
  CHECK(auv_heuristic(1.3, 0.5)(vec({1.8, 0})) == doctest::Approx(1.0));
  const Heuristic m = pointwise_max(dubins_position(), dubins_heading());
  CHECK(m(vec({3, 4, 0.5})) == doctest::Approx(5.0));
  CHECK(m(vec({0.1, 0, 7})) == doctest::Approx(7.0));
  const ProblemDef pr = point_robot_3d();
  const Heuristic e = make_heuristic("euclidean", pr);
  CHECK(e(vec({12, 2.5, 1.5, 0, 0, 0})) == doctest::Approx((10 - 0.5) / std::sqrt(50.0)));
  CHECK(euclidean_over_speed(Eigen::Vector3d(0, 0, 0), std::sqrt(50.0))(vec({10, 0, 0})) ==
        doctest::Approx(10 / std::sqrt(50.0)));
}

TEST_CASE("analytic gradients agree with finite differences") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-4, 4);
  const Heuristic hs[] = {euclidean_over_speed(Eigen::Vector2d(1, -1), 2.0, 0.3), auv_heuristic(1.3, 0.5),
                          dubins_position(Eigen::Vector2d(0, 0), 0.5)};
  for (const Heuristic& h : hs) {
    Heuristic fd = h;
    fd.gradient = nullptr;
    for (int i = 0; i < 200; ++i) {
      const State z = vec({u(rng), u(rng), u(rng)});
      const State a = h.grad(z), b = fd.grad(z);
      CHECK((a - b).norm() <= 1e-4 * std::max(1.0, a.norm()));
    }
  }
}

TEST_CASE("convex combinations") {
  const Heuristic a = euclidean_over_speed(Eigen::Vector2d(0, 0), 1.0, 0.1);
  const Heuristic b = zero_heuristic();
  const State z = vec({3, 4});
  CHECK(convex_combination(a, b, 0)(z) == b(z));
  CHECK(convex_combination(a, b, 1)(z) == a(z));
  CHECK(convex_combination(a, b, 0.25)(z) == doctest::Approx(0.25 * 4.9));
  CHECK_THROWS_AS(convex_combination(a, b, 1.5), DomainError);
  const ProblemDef p = origin_integrator();
  CHECK(check_admissibility(a, p).admissible());
  CHECK(check_admissibility(convex_combination(a, b, 0.6), p).admissible());
}

TEST_CASE("every builtin passes on its problem") {
  for (const char* name : {"shortest_path", "point_robot_3d", "wheeled_robot", "dubins", "auv", "pendulum", "acrobot"}) {
    const ProblemDef p = make_problem(name);
    for (const auto& hn : builtin_heuristic_names(p)) {
      CAPTURE(name);
      CAPTURE(hn);
      const auto rep = check_admissibility(make_heuristic(hn, p), p);
      CHECK(rep.admissible());
      CHECK(rep.worst_margin >= -1e-9);
      CHECK(rep.free_checked == 10000);
    }
  }
}

TEST_CASE("relaxation stays admissible when free space shrinks") {
  const ProblemDef p = dubins_min_time();
  const Heuristic h = make_heuristic("dubins_max", p);
  AdmissibilityOptions o;
  o.restrict_domain = [](const State& z) { return std::abs(z[0] - 3) > 1 || std::abs(z[1] + 2) > 1; };
  const auto full = check_admissibility(h, p);
  const auto cut = check_admissibility(h, p, o);
  CHECK(full.admissible());
  CHECK(cut.admissible());
  CHECK(cut.free_checked == full.free_checked);
}

TEST_CASE("heuristic names are checked against the problem") {
  CHECK_THROWS_AS(make_heuristic("dubins_max", pendulum_swingup()), ConfigError);
  CHECK_THROWS_AS(make_heuristic("auv", wheeled_robot()), ConfigError);
  CHECK_THROWS_AS(make_heuristic("bogus", wheeled_robot()), ConfigError);
  CHECK(builtin_heuristic_names(dubins_min_time()) ==
        std::vector<std::string>{"zero", "euclidean", "dubins_position", "dubins_heading", "dubins_max"});
}
