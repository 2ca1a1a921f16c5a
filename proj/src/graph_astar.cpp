#include "glc/graph_astar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>

namespace glc {

WeightedGraph::WeightedGraph(int vertex_count)
    : adjacency_(static_cast<std::size_t>(std::max(vertex_count, 0))),
      destination_(static_cast<std::size_t>(std::max(vertex_count, 0)), false) {}

int WeightedGraph::add_vertex() {
  adjacency_.emplace_back();
  destination_.push_back(false);
  return size() - 1;
}

void WeightedGraph::add_edge(int from, int to, double weight) {
  if (from < 0 || from >= size() || to < 0 || to >= size()) throw DomainError("add_edge: vertex out of range");
  if (!(weight >= 0)) throw NegativeWeightError("add_edge: negative or NaN weight " + std::to_string(weight));
  adjacency_[static_cast<std::size_t>(from)].push_back(Edge{to, weight});
}

void WeightedGraph::add_undirected_edge(int a, int b, double weight) {
  add_edge(a, b, weight);
  add_edge(b, a, weight);
}

void WeightedGraph::set_destination(int v, bool is_destination) {
  destination_.at(static_cast<std::size_t>(v)) = is_destination;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& a : adjacency_) n += a.size();
  return n;
}

AStarResult astar(const WeightedGraph& graph, int source, const VertexHeuristic& h) {
  if (graph.size() == 0) throw EmptyGraphError("astar: empty graph");
  if (source < 0 || source >= graph.size()) throw DomainError("astar: source out of range");
  auto heur = [&](int v) { return h ? h(v) : 0.0; };

  struct Entry {
    double merit;
    std::uint64_t seq;
    int v;
    double label;  // label at push time, to spot stale entries
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.merit != b.merit) return a.merit > b.merit;
    return a.seq > b.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  AStarResult res;
  const auto n = static_cast<std::size_t>(graph.size());
  res.labels.assign(n, kInf);
  std::vector<int> parent(n, -1);
  std::uint64_t seq = 0;
  res.labels[static_cast<std::size_t>(source)] = 0;
  queue.push({heur(source), seq++, source, 0.0});

  while (!queue.empty()) {
    const Entry top = queue.top();
    queue.pop();
    const auto vi = static_cast<std::size_t>(top.v);
    if (top.label > res.labels[vi]) continue;  // superseded by a cheaper reinsertion
    if (graph.is_destination(top.v)) {
      res.found = true;
      res.destination = top.v;
      res.cost = res.labels[vi];
      for (int v = top.v; v != -1; v = parent[static_cast<std::size_t>(v)]) res.path.push_back(v);
      std::reverse(res.path.begin(), res.path.end());
      return res;
    }
    ++res.expansions;
    res.expansion_order.push_back(top.v);
    for (const Edge& e : graph.neighbors(top.v)) {
      const double cand = res.labels[vi] + e.weight;
      const auto wi = static_cast<std::size_t>(e.to);
      if (cand < res.labels[wi]) {
        res.labels[wi] = cand;
        parent[wi] = top.v;
        const double hw = heur(e.to);
        if (std::isfinite(hw)) queue.push({cand + hw, seq++, e.to, cand});
      }
    }
  }
  return res;
}

WeightedGraph grid_graph(const GridWorld& grid) {
  if (grid.width <= 0 || grid.height <= 0) throw EmptyGraphError("grid_graph: empty grid");
  if (grid.blocked.size() != static_cast<std::size_t>(grid.width * grid.height)) {
    throw DomainError("grid_graph: occupancy size mismatch");
  }
  if (grid.connectivity != 4 && grid.connectivity != 8) throw DomainError("grid_graph: connectivity must be 4 or 8");
  if (std::all_of(grid.blocked.begin(), grid.blocked.end(), [](bool b) { return b; })) {
    throw EmptyGraphError("grid_graph: every cell is blocked");
  }
  WeightedGraph g(grid.width * grid.height);
  auto free = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < grid.width && y < grid.height && !grid.blocked[grid.index(x, y)];
  };
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      if (!free(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (grid.connectivity == 4 && dx != 0 && dy != 0) continue;
          if (!free(x + dx, y + dy)) continue;
          g.add_edge(grid.index(x, y), grid.index(x + dx, y + dy), std::hypot(double(dx), double(dy)));
        }
      }
    }
  }
  return g;
}

Lattice lattice_from_problem(const ProblemDef& problem, const LatticeSpec& spec) {
  const int n = problem.model.dim_state;
  if (spec.lower.size() != n || spec.upper.size() != n || static_cast<int>(spec.cells.size()) != n) {
    throw DomainError("lattice_from_problem: spec must cover every state axis");
  }
  if (!(spec.speed > 0)) throw DomainError("lattice_from_problem: speed must be positive");
  std::vector<double> step(static_cast<std::size_t>(n));
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (spec.cells[i] < 2) throw DomainError("lattice_from_problem: need at least two points per axis");
    step[i] = (spec.upper[i] - spec.lower[i]) / double(spec.cells[i] - 1);
    total *= static_cast<std::size_t>(spec.cells[i]);
  }

  auto point = [&](std::size_t cell) {
    State x(n);
    for (int i = 0; i < n; ++i) {
      const auto c = cell % static_cast<std::size_t>(spec.cells[i]);
      cell /= static_cast<std::size_t>(spec.cells[i]);
      x[i] = spec.lower[i] + step[i] * double(c);
    }
    return x;
  };

  Lattice lat;
  lat.vertex_of_cell.assign(total, -1);
  for (std::size_t c = 0; c < total; ++c) {
    State x = point(c);
    if (!problem.x_free(x)) continue;
    lat.vertex_of_cell[c] = lat.graph.add_vertex();
    if (problem.x_goal(x)) lat.graph.set_destination(lat.vertex_of_cell[c]);
    lat.embedding.push_back(std::move(x));
  }
  if (lat.graph.size() == 0) throw EmptyGraphError("lattice_from_problem: no free grid point");

  // Neighbour offsets in grid coordinates.
  std::vector<std::vector<int>> offsets;
  if (spec.connectivity != 0 && spec.connectivity != 4 && spec.connectivity != 8) {
    throw DomainError("lattice_from_problem: connectivity must be 0, 4 or 8");
  }
  if (spec.connectivity == 8 && n != 2) throw DomainError("lattice_from_problem: 8-connectivity needs two axes");
  if (n == 2 && spec.connectivity != 4) {
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        if (a || b) offsets.push_back({a, b});
  } else {
    for (int i = 0; i < n; ++i)
      for (int s : {-1, 1}) {
        std::vector<int> o(static_cast<std::size_t>(n), 0);
        o[static_cast<std::size_t>(i)] = s;
        offsets.push_back(o);
      }
  }

  const Control u0 = Control::Zero(problem.model.dim_input);
  for (std::size_t c = 0; c < total; ++c) {
    const int v = lat.vertex_of_cell[c];
    if (v < 0) continue;
    std::vector<int> coord(static_cast<std::size_t>(n));
    std::size_t r = c;
    for (int i = 0; i < n; ++i) {
      coord[i] = static_cast<int>(r % static_cast<std::size_t>(spec.cells[i]));
      r /= static_cast<std::size_t>(spec.cells[i]);
    }
    for (const auto& o : offsets) {
      std::size_t nc = 0, stride = 1;
      bool inside = true;
      for (int i = 0; i < n && inside; ++i) {
        const int k = coord[i] + o[i];
        inside = k >= 0 && k < spec.cells[i];
        nc += static_cast<std::size_t>(k) * stride;
        stride *= static_cast<std::size_t>(spec.cells[i]);
      }
      if (!inside) continue;
      const int w = lat.vertex_of_cell[nc];
      if (w < 0) continue;
      const State& a = lat.embedding[static_cast<std::size_t>(v)];
      const State& b = lat.embedding[static_cast<std::size_t>(w)];
      const State mid = 0.5 * (a + b);
      if (!problem.x_free(mid)) continue;
      const double len = (b - a).norm();
      // Travel control along the edge when the input space matches the state space.
      Control u = u0;
      if (problem.model.dim_input == n && len > 0) u = (b - a) / len * spec.speed;
      lat.graph.add_edge(v, w, len / spec.speed * problem.running_cost(mid, u));
    }
  }

  // Source: nearest free grid point to x_ic.
  double best = kInf;
  for (int v = 0; v < lat.graph.size(); ++v) {
    const double d = (lat.embedding[static_cast<std::size_t>(v)] - problem.x_ic).norm();
    if (d < best) {
      best = d;
      lat.source = v;
    }
  }
  return lat;
}

}  // namespace glc
