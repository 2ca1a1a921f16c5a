#pragma once

#include "glc/problem.hpp"

#include <functional>
#include <vector>

namespace glc {

struct Edge {
  int to = 0;
  double weight = 0;
};

// Directed graph with non-negative weights and a destination set.
class WeightedGraph {
 public:
  explicit WeightedGraph(int vertex_count = 0);

  int add_vertex();
  void add_edge(int from, int to, double weight);  // NegativeWeightError if weight < 0
  void add_undirected_edge(int a, int b, double weight);
  void set_destination(int v, bool is_destination = true);

  int size() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<Edge>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  bool is_destination(int v) const { return destination_.at(static_cast<std::size_t>(v)); }
  std::size_t edge_count() const;

 private:
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<bool> destination_;
};

struct AStarResult {
  bool found = false;
  int destination = -1;
  std::vector<int> path;  // source first
  double cost = kInf;
  std::size_t expansions = 0;
  std::vector<int> expansion_order;
  std::vector<double> labels;  // final tentative costs; +inf where never reached
};

using VertexHeuristic = std::function<double(int)>;

// Best-first search on label + h with FIFO tie-breaking. Relabelled vertices are reinserted and
// stale heap entries skipped. With h = 0 this is Dijkstra's method.
AStarResult astar(const WeightedGraph& graph, int source, const VertexHeuristic& h = {});

// Row-major occupancy grid, 4- or 8-connected, unit spacing; blocked cells get no edges.
struct GridWorld {
  int width = 0;
  int height = 0;
  std::vector<bool> blocked;
  int connectivity = 4;

  int index(int x, int y) const { return y * width + x; }
};
WeightedGraph grid_graph(const GridWorld& grid);

// Grid over every state axis: `cells[i]` points spanning [lower[i], upper[i]].
struct LatticeSpec {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<int> cells;  // >= 2 per axis
  int connectivity = 0;    // 0: 8-connected in 2D, axis-aligned otherwise; 4 forces axis-aligned in 2D
  double speed = 1;        // edge weight = length / speed * g at the edge midpoint
};

struct Lattice {
  WeightedGraph graph;
  std::vector<State> embedding;
  std::vector<int> vertex_of_cell;  // -1 for cells outside X_free
  int source = -1;
};

// Vertices at free grid points; edges between neighbours (see LatticeSpec::connectivity) whose
// endpoints and midpoint are free. Destinations are the vertices in X_goal.
// Throws EmptyGraphError when no grid point is free.
Lattice lattice_from_problem(const ProblemDef& problem, const LatticeSpec& spec);

}  // namespace glc
