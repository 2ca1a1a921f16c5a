#include <doctest.h>

#include "glc/problems.hpp"
#include "oracles.hpp"

#include <random>

using namespace glc;

namespace {

DynamicalModel single_integrator_2d() {
  DynamicalModel m;
  m.dim_state = 2;
  m.dim_input = 2;
  m.vector_field = [](const State&, const Control& u) -> State { return u; };
  m.lipschitz_f = 0;
  m.bound_M = 1;
  return m;
}

State v2(double a, double b) {
  State x(2);
  x << a, b;
  return x;
}

Control c1(double a) { return Control::Constant(1, a); }

}  // namespace

TEST_CASE("substep count follows ceil(tau / delta)") {
  CHECK(substep_count(1.0, 0.1) == 10);
  CHECK(substep_count(1.0, 0.3) == 4);
  CHECK(substep_count(0.05, 0.1) == 1);
  CHECK(substep_count(6.0 / 7.0, 0.1) == 9);
  CHECK_THROWS_AS(substep_count(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(substep_count(0.0, 0.1), DomainError);
}

TEST_CASE("single integrator reaches (1, 0) under u = (1, 0) for 1 s") {
  const auto m = single_integrator_2d();
  const std::vector<Segment> sig{{v2(1, 0), 1.0}};
  const Trajectory x = rollout(m, v2(0, 0), std::span<const Segment>(sig), 0.1);
  CHECK(x.size() == 11);
  CHECK(x.times.front() == 0.0);
  CHECK(x.terminal_time() == doctest::Approx(1.0));
  CHECK(x.terminal_state()[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x.terminal_state()[1] == 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) CHECK(x.times[i] > x.times[i - 1]);
}

TEST_CASE("pendulum rests at the bottom equilibrium") {
  const ProblemDef p = pendulum_swingup();
  const std::vector<Segment> sig{{c1(0), 5.0}};
  const Trajectory x = rollout(p.model, v2(0, 0), std::span<const Segment>(sig), 0.1);
  CHECK(x.terminal_state().norm() == 0.0);
}

TEST_CASE("pendulum Euler rollout matches a fine RK4 reference") {
  const ProblemDef p = pendulum_swingup();
  const std::vector<Segment> sig{{c1(0.2), 1.0}};
  const Trajectory x = rollout(p.model, v2(0, 0), std::span<const Segment>(sig), 0.005);
  const State ref = oracle::rk4(p.model, v2(0, 0), c1(0.2), 1.0, 1e-5);
  CHECK((x.terminal_state() - ref).norm() < 1e-3);
}

TEST_CASE("incremental segment continues a rollout") {
  const auto m = single_integrator_2d();
  const Trajectory seg = rollout_incremental(m, v2(1, 0), 1.0, v2(1, 0), 1.0, 0.1);
  CHECK(seg.terminal_state()[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(seg.terminal_time() == 2.0);
  CHECK(seg.times.front() == 1.0);

  const std::vector<Segment> two{{v2(1, 0), 1.0}, {v2(0, 1), 0.7}};
  const Trajectory full = rollout(m, v2(0, 0), std::span<const Segment>(two), 0.1);
  const std::vector<Segment> one{two[0]};
  const Trajectory head = rollout(m, v2(0, 0), std::span<const Segment>(one), 0.1);
  const Trajectory tail = rollout_incremental(m, head.terminal_state(), head.terminal_time(), two[1].control, 0.7, 0.1);
  CHECK((full.terminal_state() - tail.terminal_state()).norm() == 0.0);
}

TEST_CASE("acrobot child segment matches the full rollout") {
  const ProblemDef p = acrobot_swingup();
  const State x0 = State::Zero(4);
  const std::vector<Segment> sig{{c1(4), 0.6}, {c1(-4), 0.6}};
  const Trajectory full = rollout(p.model, x0, std::span<const Segment>(sig), 0.1);
  const std::vector<Segment> head_sig{sig[0]};
  const Trajectory head = rollout(p.model, x0, std::span<const Segment>(head_sig), 0.1);
  const Trajectory child = rollout_incremental(p.model, head.terminal_state(), head.terminal_time(), sig[1].control,
                                               0.6, 0.1);
  CHECK((full.terminal_state() - child.terminal_state()).norm() <= 1e-12);
  CHECK(full.size() == head.size() + child.size() - 1);
}

TEST_CASE("non-finite states raise integration-diverged") {
  DynamicalModel m;
  m.dim_state = 1;
  m.dim_input = 1;
  m.vector_field = [](const State& x, const Control&) -> State { return x.array().square().matrix() * 1e200; };
  m.bound_M = 1;
  const std::vector<Segment> sig{{c1(0), 1.0}};
  CHECK_THROWS_AS(rollout(m, State(State::Constant(1, 1.0)), std::span<const Segment>(sig), 0.1), IntegrationDiverged);
  CHECK_THROWS_AS(rollout(m, State(State::Constant(1, kInf)), std::span<const Segment>(sig), 0.1), DomainError);
}

TEST_CASE("rollout is deterministic") {
  const ProblemDef p = acrobot_swingup();
  std::mt19937_64 rng(3);
  const auto sig = oracle::random_signal(rng, 1, 4, 6, 1.0);
  const Trajectory a = rollout(p.model, State(State::Zero(4)), std::span<const Segment>(sig), 0.1);
  const Trajectory b = rollout(p.model, State(State::Zero(4)), std::span<const Segment>(sig), 0.1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.times[i] == b.times[i]);
    CHECK((a.states[i].array() == b.states[i].array()).all());
  }
}

TEST_CASE("sample displacements respect the speed bound") {
  for (const char* name : {"pendulum", "shortest_path", "wheeled_robot", "auv", "point_robot_3d"}) {
    CAPTURE(name);
    const ProblemDef p = make_problem(name);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const PrimitiveSet prims = p.primitives(p.tuning.resolutions.front());
      std::uniform_int_distribution<std::size_t> pick(0, prims.size() - 1);
      std::vector<Segment> sig;
      for (int k = 0; k < 4; ++k) sig.push_back({prims.primitives[pick(rng)], prims.segment_duration});
      const Trajectory x = rollout(p.model, p.x_ic, std::span<const Segment>(sig), p.tuning.max_step);
      for (std::size_t i = 1; i < x.size(); ++i) {
        const double dt = x.times[i] - x.times[i - 1];
        CHECK((x.states[i] - x.states[i - 1]).norm() <= p.model.bound_M * dt * (1 + 1e-6));
      }
    }
  }
}
