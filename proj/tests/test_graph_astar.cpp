#include <doctest.h>

#include "glc/problems.hpp"
#include "oracles.hpp"

#include <random>

using namespace glc;

namespace {

double path_cost(const WeightedGraph& g, const std::vector<int>& path) {
  double c = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    double best = kInf;
    for (const Edge& e : g.neighbors(path[i]))
      if (e.to == path[i + 1]) best = std::min(best, e.weight);
    REQUIRE(std::isfinite(best));
    c += best;
  }
  return c;
}

WeightedGraph random_graph(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> v(0, n - 1);
  std::uniform_real_distribution<double> w(0, 10);
  WeightedGraph g(n);
  for (int i = 0; i < m; ++i) g.add_edge(v(rng), v(rng), w(rng));
  for (int i = 0; i < 3; ++i) g.set_destination(v(rng));
  return g;
}

}  // namespace

TEST_CASE("source inside the destination set") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1);
  g.set_destination(0);
  const AStarResult r = astar(g, 0);
  CHECK(r.found);
  CHECK(r.cost == 0.0);
  CHECK(r.path == std::vector<int>{0});
}

TEST_CASE("line graph") {
  WeightedGraph g(3);
  g.add_undirected_edge(0, 1, 1);
  g.add_undirected_edge(1, 2, 1);
  g.set_destination(2);
  const AStarResult r = astar(g, 0);
  CHECK(r.cost == 2.0);
  CHECK(r.path == std::vector<int>{0, 1, 2});
  WeightedGraph lone(2);
  lone.set_destination(1);
  CHECK_FALSE(astar(lone, 0).found);
  CHECK(astar(lone, 0).cost == kInf);
}

TEST_CASE("errors") {
  WeightedGraph g(2);
  CHECK_THROWS_AS(g.add_edge(0, 1, -1), NegativeWeightError);
  CHECK_THROWS_AS(astar(WeightedGraph{}, 0), EmptyGraphError);
  GridWorld grid{2, 2, {true, true, true, true}, 4};
  CHECK_THROWS_AS(grid_graph(grid), EmptyGraphError);
}

TEST_CASE("2x2 grid, 4-connected") {
  GridWorld grid{2, 2, {false, false, false, false}, 4};
  const WeightedGraph g = grid_graph(grid);
  CHECK(g.edge_count() == 8);  // four undirected pairs
  grid.connectivity = 8;
  CHECK(grid_graph(grid).edge_count() == 12);
}

TEST_CASE("astar agrees with Bellman-Ford on random graphs") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const WeightedGraph g = random_graph(rng, 30, 120);
    const AStarResult r = astar(g, 0);
    const double ref = oracle::bellman_ford(g, 0);
    CHECK(r.found == std::isfinite(ref));
    if (r.found) {
      CHECK(r.cost == doctest::Approx(ref).epsilon(1e-12));
      CHECK(path_cost(g, r.path) == doctest::Approx(r.cost).epsilon(1e-12));
      CHECK(r.path.front() == 0);
      CHECK(g.is_destination(r.path.back()));
    }
  }
}

TEST_CASE("Euclidean guidance on random occupancy grids") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    GridWorld grid{50, 50, std::vector<bool>(2500), 4};
    for (std::size_t i = 0; i < 2500; ++i) grid.blocked[i] = u(rng) < 0.25;
    grid.blocked[0] = grid.blocked[2499] = false;
    WeightedGraph g = grid_graph(grid);
    g.set_destination(2499);
    const auto h = [](int v) { return std::hypot(double(v % 50 - 49), double(v / 50 - 49)); };
    const AStarResult a = astar(g, 0), b = astar(g, 0, h);
    CHECK(a.found == b.found);
    if (!a.found) continue;
    CHECK(a.cost == doctest::Approx(b.cost).epsilon(1e-12));
    CHECK(b.expansions <= a.expansions);
  }
}

TEST_CASE("lattice from a problem") {
  const ProblemDef p = shortest_path_free();
  LatticeSpec spec;
  spec.lower = Eigen::Vector2d(-2, -4);
  spec.upper = Eigen::Vector2d(6, 4);
  spec.cells = {33, 33};
  const Lattice lat = lattice_from_problem(p, spec);
  CHECK(lat.graph.size() == 33 * 33);
  const AStarResult r = astar(lat.graph, lat.source);
  REQUIRE(r.found);
  const double straight = (lat.embedding[static_cast<std::size_t>(r.destination)] - p.x_ic).norm();
  CHECK(r.cost >= straight - 1e-12);
  CHECK(r.cost == doctest::Approx(2.0));

  LatticeSpec two = spec;
  two.cells = {2, 2};
  two.connectivity = 4;
  CHECK(lattice_from_problem(p, two).graph.edge_count() == 8);

  ProblemDef blocked = p;
  blocked.free_space.lower = Eigen::Vector2d(100, 100);
  blocked.free_space.upper = Eigen::Vector2d(101, 101);
  CHECK_THROWS_AS(lattice_from_problem(blocked, spec), EmptyGraphError);
  spec.cells = {1, 5};
  CHECK_THROWS_AS(lattice_from_problem(p, spec), DomainError);
}

TEST_CASE("obstacle lattice respects polygons") {
  const ProblemDef p = shortest_path_obstacles();
  LatticeSpec spec;
  spec.lower = Eigen::Vector2d(0, 0);
  spec.upper = Eigen::Vector2d(10, 10);
  spec.cells = {41, 41};
  const Lattice lat = lattice_from_problem(p, spec);
  for (const State& x : lat.embedding) CHECK(p.x_free(x));
  const AStarResult a = astar(lat.graph, lat.source);
  const auto h = [&](int v) {
    return std::max(0.0, (lat.embedding[static_cast<std::size_t>(v)] - Eigen::Vector2d(9, 9)).norm() - 0.25);
  };
  const AStarResult b = astar(lat.graph, lat.source, h);
  REQUIRE(a.found);
  CHECK(a.cost == doctest::Approx(b.cost).epsilon(1e-12));
  CHECK(b.expansions <= a.expansions);
  CHECK(a.cost >= (Eigen::Vector2d(9, 9) - Eigen::Vector2d(1, 1)).norm() - 0.25 - 1e-9);
}
