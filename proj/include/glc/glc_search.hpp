#pragma once

#include "glc/heuristics.hpp"
#include "glc/partition.hpp"
#include "glc/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glc {

enum class SearchStatus { SolutionFound, Exhausted, Capped };

std::string to_string(SearchStatus s);

struct SearchOptions {
  std::size_t max_iterations = 0;  // 0 = unlimited
  std::size_t max_nodes = 10'000'000;
  std::optional<long> horizon;  // overrides h(R)
  std::optional<double> eta;    // overrides eta(R)
  std::optional<PrimitiveSet> primitives;
  double max_step = 0;  // 0 = the problem's tuning
};

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  Signal signal;
  double cost = kInf;
  std::size_t iterations = 0;  // queue pops
  std::size_t expansions = 0;  // nodes whose children were generated
  std::size_t pruned_count = 0;
  std::size_t relabel_count = 0;
  std::size_t enqueued = 0;
  std::size_t generated = 0;  // children produced by expand
  std::size_t labels = 0;     // occupied cells at exit
  double wall_time = 0;

  int resolution = 0;
  long horizon = 0;
  double eta = 0;
  double max_step = 0;
  PrimitiveSet primitives;
  NodeId goal_node = kNoParent;
};

// Best-first search over the primitive tree with merit J + H and FIFO tie-breaking.
class GlcSearch {
 public:
  GlcSearch(const ProblemDef& problem, int R, Heuristic heuristic = zero_heuristic(), SearchOptions options = {});

  SearchResult run();

  const SignalTree& tree() const { return tree_; }
  const LabelMap& labels() const { return labels_; }

 private:
  const ProblemDef& problem_;
  int R_;
  Heuristic heuristic_;
  SearchOptions options_;
  SignalTree tree_;
  LabelMap labels_;
};

SearchResult glc_plan(const ProblemDef& problem, int R, const Heuristic& heuristic = zero_heuristic(),
                      const SearchOptions& options = {});

// ---------------------------------------------------------------------------------------------
// Exhaustive oracle.

struct EnumerationOptions {
  std::optional<long> max_depth;  // defaults to h(R)
  std::optional<double> eta;      // partition for the minimal-signal count; defaults to eta(R)
  std::optional<PrimitiveSet> primitives;
  double clearance = 0;           // for best_cost_with_clearance
  std::size_t node_budget = 5'000'000;
  double max_step = 0;
};

struct EnumerationResult {
  double best_cost = kInf;
  Signal best_signal;
  std::size_t count_feasible = 0;  // feasible signals including the empty one
  std::size_t count_minimal = 0;   // feasible signals not strictly dominated in their cell
  // Minimum over goal signals whose samples keep free-space clearance >= c and whose terminal
  // state is at least c inside the goal.
  double best_cost_with_clearance = kInf;
};

// Throws BudgetExceeded when the full tree to max_depth exceeds the node budget.
EnumerationResult enumerate_all(const ProblemDef& problem, int R, const EnumerationOptions& options = {});

}  // namespace glc
