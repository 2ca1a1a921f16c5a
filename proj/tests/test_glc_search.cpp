#include <doctest.h>

#include "oracles.hpp"

using namespace glc;

namespace {

State vec(std::initializer_list<double> v) {
  State x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

// Every sample free, terminal state in the goal, cached cost reproduced by re-integration.
void check_solution(const ProblemDef& p, const SearchResult& r) {
  REQUIRE(r.status == SearchStatus::SolutionFound);
  const Trajectory x = reconstruct_trajectory(p, r.primitives, r.signal, r.max_step);
  for (const State& s : x.states) CHECK(p.x_free(s));
  CHECK(p.x_goal(x.terminal_state()));
  CHECK(std::abs(trajectory_cost(p, r.primitives, r.signal, r.max_step) - r.cost) <= 1e-9);
  CHECK(static_cast<long>(r.signal.size()) < r.horizon);
}

}  // namespace

TEST_CASE("start inside the goal returns the empty signal") {
  const SearchResult r = glc_plan(trivial_goal(), 3);
  CHECK(r.status == SearchStatus::SolutionFound);
  CHECK(r.iterations == 1);
  CHECK(r.cost == 0.0);
  CHECK(r.signal.empty());
}

TEST_CASE("unreachable goal exhausts") {
  ProblemDef p = tiny_1d();
  p.goal = GoalRegion::ball({0}, vec({2.9}), 0.05);  // beyond M * h / R
  const SearchResult r = glc_plan(p, 3);
  CHECK(r.status == SearchStatus::Exhausted);
  CHECK(r.cost == kInf);
  CHECK(r.signal.empty());
}

TEST_CASE("tiny instance matches exhaustive enumeration") {
  const ProblemDef p = tiny_1d();
  SearchOptions o;
  o.horizon = 4;
  const SearchResult r = glc_plan(p, 3, zero_heuristic(), o);
  check_solution(p, r);
  EnumerationOptions e;
  e.max_depth = 3;  // children at depth >= h are discarded
  const EnumerationResult en = enumerate_all(p, 3, e);
  CHECK(r.cost == doctest::Approx(en.best_cost).epsilon(1e-12));
  CHECK(r.cost == doctest::Approx(1.5));
}

TEST_CASE("enumeration counts the full tree") {
  const ProblemDef p = tiny_1d();
  EnumerationOptions e;
  e.max_depth = 2;
  const EnumerationResult en = enumerate_all(p, 3, e);
  CHECK(en.best_cost == kInf);
  CHECK(en.count_feasible == 13);
  CHECK(en.count_minimal <= en.count_feasible);

  e.node_budget = 10;
  CHECK_THROWS_AS(enumerate_all(p, 3, e), BudgetExceeded);
}

TEST_CASE("minimal signals are strictly fewer when cells collide") {
  SingleIntegratorSpec s;
  s.dim = 2;
  s.x_ic = vec({0, 0});
  s.goal = GoalRegion::ball({0, 1}, vec({5, 5}), 0.1);
  s.eta = 1;
  s.horizon = 3;
  const ProblemDef p = single_integrator(s);
  EnumerationOptions e;
  e.max_depth = 2;
  const EnumerationResult en = enumerate_all(p, 2, e);
  CHECK(en.count_feasible == 1 + 4 + 16);
  CHECK(en.count_minimal < en.count_feasible);
}

TEST_CASE("random tiny instances: oracle bounds and search invariants") {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    const auto t = oracle::tiny_instance(seed);
    const SearchResult r = glc_plan(t.problem, t.R);
    EnumerationOptions e;
    e.max_depth = t.horizon - 1;
    const EnumerationResult en = enumerate_all(t.problem, t.R, e);
    CHECK(r.enqueued <= r.generated + 1);
    CHECK(r.labels <= r.enqueued);
    if (r.status == SearchStatus::SolutionFound) {
      ++solved;
      check_solution(t.problem, r);
      CHECK(en.best_cost <= r.cost + 1e-12);
    } else {
      CHECK(r.status == SearchStatus::Exhausted);
    }
  }
  CHECK(solved >= 10);
}

TEST_CASE("pendulum at R = 6 swings up") {
  const ProblemDef p = pendulum_swingup();
  const SearchResult r = glc_plan(p, 6);
  check_solution(p, r);
  CHECK(r.relabel_count == 0);  // minimum time: the first arrival in a cell is never improved
}

TEST_CASE("heuristic guidance keeps the shortest-path cost") {
  const ProblemDef p = shortest_path_free();
  const SearchResult a = glc_plan(p, 40);
  const SearchResult b = glc_plan(p, 40, make_heuristic("euclidean", p));
  check_solution(p, a);
  check_solution(p, b);
  CHECK(b.expansions <= a.expansions);
  CHECK(a.cost == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("infinite heuristic values are never enqueued") {
  const ProblemDef p = tiny_1d();
  Heuristic wall;
  wall.name = "wall";
  wall.value = [](const State& x) { return x[0] > 0.25 ? kInf : 0.0; };
  const SearchResult r = glc_plan(p, 3, wall);
  CHECK(r.status == SearchStatus::Exhausted);
}

TEST_CASE("caps stop the search") {
  const ProblemDef p = pendulum_swingup();
  SearchOptions o;
  o.max_iterations = 5;
  CHECK(glc_plan(p, 4, zero_heuristic(), o).status == SearchStatus::Capped);
  SearchOptions n;
  n.max_nodes = 20;
  const SearchResult r = glc_plan(p, 4, zero_heuristic(), n);
  CHECK(r.status == SearchStatus::Capped);
  CHECK(r.cost == kInf);
}

TEST_CASE("infeasible start is rejected") {
  ProblemDef p = tiny_1d();
  p.x_ic = vec({5});
  CHECK_THROWS_AS(glc_plan(p, 3), DomainError);
  CHECK(to_string(SearchStatus::Exhausted) == "exhausted");
}
