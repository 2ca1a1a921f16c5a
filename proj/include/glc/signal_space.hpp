#pragma once

#include "glc/dynamics.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace glc {

struct ProblemDef;

// ---------------------------------------------------------------------------------------------
// Input constraint sets and their finite approximations.

struct OmegaSpec {
  enum class Shape { Box, Ball, Sphere };

  Shape shape = Shape::Box;
  int dim = 0;
  Eigen::VectorXd lower;  // Box only
  Eigen::VectorXd upper;  // Box only
  double radius = 0;      // Ball and Sphere
  bool random_rotation = false;  // Sphere only: compose the lattice with a seeded orthogonal map
  std::uint64_t seed = 0;

  static OmegaSpec interval(double a, double b);
  static OmegaSpec box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  static OmegaSpec ball(int dim, double radius);
  static OmegaSpec sphere(int dim, double radius, bool random_rotation = false, std::uint64_t seed = 0);

  bool contains(const Control& w, double tol = 1e-9) const;
  double u_max() const;  // sup ||w|| over the set
  std::string describe() const;
};

struct PrimitiveSet {
  int resolution = 0;
  std::vector<Control> primitives;
  double segment_duration = 0;  // gamma_scale / R

  std::size_t size() const { return primitives.size(); }
};

// Deterministic primitive sets. Boxes: R points per axis, endpoints inclusive. Balls: the box grid
// over [-r, r]^m filtered to the ball. Spheres: R^(m-1) points (evenly spaced on the circle, a
// Fibonacci lattice on the 2-sphere), optionally rotated by a seeded random orthogonal matrix.
PrimitiveSet make_uniform_primitives(const OmegaSpec& omega, int R, double gamma_scale);

// sup over a dense sample of Omega of the distance to the nearest primitive.
double dispersion(const std::vector<Control>& primitives, const OmegaSpec& omega, int samples_per_axis = 401);

// Random orthogonal matrix drawn from a seeded Gaussian QR factorisation.
Eigen::MatrixXd random_orthogonal(int dim, std::uint64_t seed);

// ---------------------------------------------------------------------------------------------
// Horizon and partition scaling formulas, h(R) and eta(R).

struct ScalingFormula {
  enum class Kind { RLogR, Power, Constant };

  Kind kind = Kind::Constant;
  double coeff = 1;     // RLogR: coeff * R * ln R; Constant: the value
  double exponent = 1;  // Power: R^exponent / divisor
  double divisor = 1;
  std::string text;     // canonical spelling, echoed into run records

  static ScalingFormula r_log_r(double coeff);
  static ScalingFormula power(double exponent, double divisor, std::string exponent_text = {});
  static ScalingFormula constant(double value);
  // Accepts "100*R*log(R)", "100RlogR", "R^2/300", "R^(5/2)/16", "R^(5/pi)/15", "const:4", "4".
  static ScalingFormula parse(std::string_view text);

  double evaluate(int R) const;
};

long horizon_limit(int R, const ScalingFormula& formula);
double partition_scaling(int R, const ScalingFormula& formula);

// ---------------------------------------------------------------------------------------------
// The signal tree.

using NodeId = std::uint32_t;
inline constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();

struct SignalNode {
  NodeId parent = kNoParent;
  int primitive_index = -1;  // -1 for the root
  int depth = 0;
  State terminal_state;
  double terminal_time = 0;
  double cost = 0;
};

// Primitive indices in root-to-leaf order.
using Signal = std::vector<int>;

class SignalTree {
 public:
  explicit SignalTree(State x_ic);

  NodeId root() const { return 0; }
  NodeId add(SignalNode node);
  const SignalNode& operator[](NodeId id) const;
  std::size_t size() const { return nodes_.size(); }
  void reserve(std::size_t n) { nodes_.reserve(n); }

 private:
  std::vector<SignalNode> nodes_;
};

Signal reconstruct_signal(const SignalTree& tree, NodeId id);
std::vector<Segment> to_segments(const PrimitiveSet& primitives, const Signal& signal);
Trajectory reconstruct_trajectory(const ProblemDef& problem, const PrimitiveSet& primitives, const Signal& signal,
                                  double max_step);
Trajectory reconstruct_trajectory(const ProblemDef& problem, const PrimitiveSet& primitives, const SignalTree& tree,
                                  NodeId id, double max_step);

// A child produced by expand; not yet part of the tree.
struct Candidate {
  SignalNode node;
  bool feasible = false;  // every sample of the new segment lies in X_free
};

struct Expansion {
  std::vector<Candidate> children;
  bool depth_limited = false;
};

// One child per primitive. Cost accumulates the running cost with the same left Riemann sum the
// Euler step uses, so it is consistent with a full re-integration of the signal.
Expansion expand(const SignalTree& tree, NodeId id, const PrimitiveSet& primitives, const ProblemDef& problem,
                 double max_step, long horizon);

// Running cost of one integrated segment under a constant control.
double segment_cost(const ProblemDef& problem, const Trajectory& segment, const Control& control, double duration);

// Total running cost of a trajectory produced by rollout of the given signal.
double trajectory_cost(const ProblemDef& problem, const PrimitiveSet& primitives, const Signal& signal,
                       double max_step);

}  // namespace glc
