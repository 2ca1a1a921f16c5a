#include "glc/glc_search.hpp"

#include <chrono>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace glc {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::SolutionFound:
      return "solution_found";
    case SearchStatus::Exhausted:
      return "exhausted";
    case SearchStatus::Capped:
      return "capped";
  }
  return "unknown";
}

namespace {

struct QueueEntry {
  double merit;
  std::uint64_t seq;
  NodeId id;
};

// Min-heap on merit, then insertion order.
struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.merit != b.merit) return a.merit > b.merit;
    return a.seq > b.seq;
  }
};

#ifndef NDEBUG
// Callbacks must be pure; a second evaluation on the same input has to agree bit for bit.
void purity_spot_check(const ProblemDef& problem, const State& x, const Control& u) {
  const State a = problem.model(x, u), b = problem.model(x, u);
  if (!(a.array() == b.array()).all()) throw ConfigError(problem.name + ": vector field is not pure");
  if (problem.running_cost(x, u) != problem.running_cost(x, u)) {
    throw ConfigError(problem.name + ": running cost is not pure");
  }
}
#endif

}  // namespace

GlcSearch::GlcSearch(const ProblemDef& problem, int R, Heuristic heuristic, SearchOptions options)
    : problem_(problem), R_(R), heuristic_(std::move(heuristic)), options_(std::move(options)), tree_(problem.x_ic) {
  problem_.validate();
  if (!problem_.x_free(problem_.x_ic)) throw DomainError(problem_.name + ": x_ic is not in X_free");
  if (!heuristic_.value) throw ConfigError("glc_plan: heuristic has no value function");
}

SearchResult GlcSearch::run() {
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult res;
  res.resolution = R_;
  res.horizon = options_.horizon ? *options_.horizon : horizon_limit(R_, problem_.tuning.horizon);
  res.eta = options_.eta ? *options_.eta : partition_scaling(R_, problem_.tuning.eta);
  res.max_step = options_.max_step > 0 ? options_.max_step : problem_.tuning.max_step;
  res.primitives = options_.primitives ? *options_.primitives : problem_.primitives(R_);
  if (res.primitives.size() == 0) throw ConfigError("glc_plan: empty primitive set");

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
  std::uint64_t seq = 0;
  {
    const double h0 = heuristic_(problem_.x_ic);
    if (std::isfinite(h0)) {
      queue.push({h0, seq++, tree_.root()});
      ++res.enqueued;
    }
  }

#ifndef NDEBUG
  purity_spot_check(problem_, problem_.x_ic, res.primitives.primitives.front());
#endif

  auto finish = [&](SearchStatus status) {
    res.status = status;
    res.labels = labels_.size();
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };

  while (!queue.empty()) {
    if (options_.max_iterations && res.iterations >= options_.max_iterations) return finish(SearchStatus::Capped);
    const QueueEntry top = queue.top();
    queue.pop();
    ++res.iterations;
    const SignalNode& u = tree_[top.id];
    if (problem_.x_goal(u.terminal_state)) {
      res.signal = reconstruct_signal(tree_, top.id);
      res.cost = u.cost;
      res.goal_node = top.id;
      return finish(SearchStatus::SolutionFound);
    }

    Expansion ex = expand(tree_, top.id, res.primitives, problem_, res.max_step, res.horizon);
    ++res.expansions;
    res.generated += ex.children.size();
    for (Candidate& c : ex.children) {
      SignalNode& w = c.node;
      if (!c.feasible || w.depth >= res.horizon) {
        ++res.pruned_count;
        continue;
      }
      const double hw = heuristic_(w.terminal_state);
      if (!std::isfinite(hw)) {
        ++res.pruned_count;
        continue;
      }
      const PartitionKey key = key_of(wrap_for_key(w.terminal_state, problem_.wrap_axes), res.eta);
      const NodeId* z = labels_.find(key);
      bool relabel = (z == nullptr);
      if (z) {
        const SignalNode& zn = tree_[*z];
        if (glc_less(LabelView{key, zn.terminal_time, zn.cost}, LabelView{key, w.terminal_time, w.cost})) {
          ++res.pruned_count;
          continue;
        }
        relabel = w.cost < zn.cost;
      }
      if (tree_.size() >= options_.max_nodes) return finish(SearchStatus::Capped);
      const double merit = w.cost + hw;
      const NodeId id = tree_.add(std::move(w));
      if (relabel) {
        if (z) ++res.relabel_count;
        labels_.assign(key, id);
      }
      queue.push({merit, seq++, id});
      ++res.enqueued;
    }
  }
  return finish(SearchStatus::Exhausted);
}

SearchResult glc_plan(const ProblemDef& problem, int R, const Heuristic& heuristic, const SearchOptions& options) {
  GlcSearch search(problem, R, heuristic, options);
  return search.run();
}

// ---------------------------------------------------------------------------------------------

namespace {

struct EnumNode {
  State x;
  double t;
  double cost;
  double clearance;  // min free-space clearance along the path so far
};

struct Enumerator {
  const ProblemDef& problem;
  const PrimitiveSet& prims;
  double max_step;
  long max_depth;
  double eta;
  double clearance;
  EnumerationResult res;
  std::vector<int> path;
  // Per-cell (tau, J) pairs of feasible signals, for the minimal count.
  std::unordered_map<PartitionKey, std::vector<std::pair<double, double>>, PartitionKeyHash> cells;

  void visit(const EnumNode& n, int depth) {
    ++res.count_feasible;
    cells[key_of(wrap_for_key(n.x, problem.wrap_axes), eta)].emplace_back(n.t, n.cost);
    if (problem.x_goal(n.x)) {
      if (n.cost < res.best_cost) {
        res.best_cost = n.cost;
        res.best_signal = path;
      }
      if (n.clearance >= clearance && problem.goal.clearance(n.x) >= clearance) {
        res.best_cost_with_clearance = std::min(res.best_cost_with_clearance, n.cost);
      }
    }
    if (depth >= max_depth) return;
    const double dur = prims.segment_duration;
    for (std::size_t j = 0; j < prims.size(); ++j) {
      const Control& u = prims.primitives[j];
      Trajectory seg;
      try {
        seg = rollout_incremental(problem.model, n.x, n.t, u, dur, max_step);
      } catch (const IntegrationDiverged&) {
        continue;
      }
      bool ok = true;
      double clr = n.clearance;
      for (std::size_t k = 1; k < seg.size() && ok; ++k) {
        ok = problem.x_free(seg.states[k]);
        clr = std::min(clr, problem.free_space.clearance(seg.states[k]));
      }
      if (!ok) continue;
      EnumNode child{seg.states.back(), double(depth + 1) * dur, n.cost + segment_cost(problem, seg, u, dur), clr};
      path.push_back(static_cast<int>(j));
      visit(child, depth + 1);
      path.pop_back();
    }
  }
};

}  // namespace

EnumerationResult enumerate_all(const ProblemDef& problem, int R, const EnumerationOptions& options) {
  problem.validate();
  const PrimitiveSet prims = options.primitives ? *options.primitives : problem.primitives(R);
  const long depth = options.max_depth ? *options.max_depth : horizon_limit(R, problem.tuning.horizon);
  if (depth < 0) throw DomainError("enumerate_all: negative depth");
  const double eta = options.eta ? *options.eta : partition_scaling(R, problem.tuning.eta);

  // Tree size sum_{d <= depth} k^d, checked before any work.
  double total = 0, level = 1;
  for (long d = 0; d <= depth; ++d) {
    total += level;
    level *= double(prims.size());
    if (total > double(options.node_budget)) {
      throw BudgetExceeded("enumerate_all: tree with " + std::to_string(prims.size()) + " primitives to depth " +
                           std::to_string(depth) + " exceeds the node budget of " +
                           std::to_string(options.node_budget));
    }
  }

  Enumerator e{problem,
               prims,
               options.max_step > 0 ? options.max_step : problem.tuning.max_step,
               depth,
               eta,
               options.clearance,
               {},
               {},
               {}};
  if (!problem.x_free(problem.x_ic)) return e.res;
  e.visit(EnumNode{problem.x_ic, 0.0, 0.0, problem.free_space.clearance(problem.x_ic)}, 0);

  for (const auto& [key, labels] : e.cells) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < labels.size() && !dominated; ++j) {
        if (i == j) continue;
        const auto& z = labels[j];
        const auto& w = labels[i];
        dominated = z.first <= w.first && z.second <= w.second && (z.first < w.first || z.second < w.second);
      }
      if (!dominated) ++e.res.count_minimal;
    }
  }
  return e.res;
}

}  // namespace glc
