#include "glc/problem.hpp"

#include "glc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace glc {

namespace {

Eigen::VectorXd gather(const State& x, const std::vector<int>& axes) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(axes.size()));
  for (std::size_t i = 0; i < axes.size(); ++i) y[i] = x[axes[i]];
  return y;
}

}  // namespace

State wrap_for_key(const State& x, const std::vector<int>& wrap_axes) {
  if (wrap_axes.empty()) return x;
  State y = x;
  constexpr double two_pi = 2 * std::numbers::pi;
  for (int a : wrap_axes) {
    double v = std::fmod(y[a] + std::numbers::pi, two_pi);
    if (v < 0) v += two_pi;
    y[a] = v - std::numbers::pi;
  }
  return y;
}

// ---------------------------------------------------------------------------------------------
// ConvexPolytope

bool ConvexPolytope::contains_interior(const State& x) const {
  const Eigen::VectorXd y = gather(x, axes);
  return ((A * y - b).array() < 0).all();
}

double ConvexPolytope::outside_distance(const State& x) const {
  const Eigen::VectorXd y = gather(x, axes);
  double d = -kInf;
  for (Eigen::Index i = 0; i < A.rows(); ++i) d = std::max(d, (A.row(i).dot(y) - b[i]) / A.row(i).norm());
  return d;
}

ConvexPolytope ConvexPolytope::polygon(const std::vector<Eigen::Vector2d>& v, std::vector<int> axes) {
  const std::size_t n = v.size();
  if (n < 3) throw ConfigError("polygon: need at least 3 vertices");
  if (axes.size() != 2) throw ConfigError("polygon: needs exactly two axes");
  double area2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& p = v[i];
    const Eigen::Vector2d& q = v[(i + 1) % n];
    const Eigen::Vector2d& r = v[(i + 2) % n];
    area2 += p.x() * q.y() - q.x() * p.y();
    const Eigen::Vector2d e1 = q - p, e2 = r - q;
    if (e1.norm() == 0) throw ConfigError("polygon: repeated vertex");
    if (e1.x() * e2.y() - e1.y() * e2.x() <= 0) throw ConfigError("polygon: vertices are not strictly convex and CCW");
  }
  if (!(area2 > 0)) throw ConfigError("polygon: degenerate or clockwise");
  ConvexPolytope P;
  P.axes = std::move(axes);
  P.A.resize(static_cast<Eigen::Index>(n), 2);
  P.b.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d e = v[(i + 1) % n] - v[i];
    const Eigen::Vector2d normal(e.y(), -e.x());
    P.A.row(static_cast<Eigen::Index>(i)) = normal.transpose();
    P.b[static_cast<Eigen::Index>(i)] = normal.dot(v[i]);
  }
  return P;
}

ConvexPolytope ConvexPolytope::box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, std::vector<int> axes) {
  const Eigen::Index d = lower.size();
  if (upper.size() != d || static_cast<Eigen::Index>(axes.size()) != d || d == 0) {
    throw ConfigError("box obstacle: dimensions disagree");
  }
  if (!((upper - lower).array() > 0).all()) throw ConfigError("box obstacle: empty interior");
  ConvexPolytope P;
  P.axes = std::move(axes);
  P.A = Eigen::MatrixXd::Zero(2 * d, d);
  P.b.resize(2 * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    P.A(2 * i, i) = 1;
    P.b[2 * i] = upper[i];
    P.A(2 * i + 1, i) = -1;
    P.b[2 * i + 1] = -lower[i];
  }
  return P;
}

// ---------------------------------------------------------------------------------------------
// FreeSpace

FreeSpace FreeSpace::unbounded(int n) {
  FreeSpace f;
  f.lower = Eigen::VectorXd::Constant(n, -kInf);
  f.upper = Eigen::VectorXd::Constant(n, kInf);
  return f;
}

bool FreeSpace::contains(const State& x) const {
  if (!x.allFinite()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  for (const auto& lim : norm_limits)
    if (gather(x, lim.axes).norm() > lim.max_norm) return false;
  for (const auto& ob : obstacles)
    if (ob.contains_interior(x)) return false;
  return true;
}

double FreeSpace::clearance(const State& x) const {
  double c = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::isfinite(lower[i])) c = std::min(c, x[i] - lower[i]);
    if (std::isfinite(upper[i])) c = std::min(c, upper[i] - x[i]);
  }
  for (const auto& lim : norm_limits) c = std::min(c, lim.max_norm - gather(x, lim.axes).norm());
  for (const auto& ob : obstacles) c = std::min(c, ob.outside_distance(x));
  return c;
}

FreeSpace polygon_env(int state_dim, const Eigen::Vector2d& lower, const Eigen::Vector2d& upper,
                      const std::vector<std::vector<Eigen::Vector2d>>& polygons) {
  if (state_dim < 2) throw ConfigError("polygon_env: state dimension must be >= 2");
  if (!((upper - lower).array() > 0).all()) throw ConfigError("polygon_env: empty workspace");
  FreeSpace f = FreeSpace::unbounded(state_dim);
  f.lower.head<2>() = lower;
  f.upper.head<2>() = upper;
  for (const auto& poly : polygons) f.obstacles.push_back(ConvexPolytope::polygon(poly));
  return f;
}

FreeSpace two_rooms_window(int state_dim) {
  if (state_dim < 3) throw ConfigError("two_rooms_window: state dimension must be >= 3");
  FreeSpace f = FreeSpace::unbounded(state_dim);
  f.lower.head<3>() << 0, 0, 0;
  f.upper.head<3>() << 10, 5, 3;
  // Wall at x in [4.8, 5.2] with a window y in [2, 3], z in [1, 2], split into four boxes.
  auto wall = [&](double y0, double y1, double z0, double z1) {
    Eigen::VectorXd lo(3), hi(3);
    lo << 4.8, y0, z0;
    hi << 5.2, y1, z1;
    f.obstacles.push_back(ConvexPolytope::box(lo, hi, {0, 1, 2}));
  };
  wall(-1, 2, -1, 4);
  wall(3, 6, -1, 4);
  wall(2, 3, -1, 1);
  wall(2, 3, 2, 4);
  return f;
}

// ---------------------------------------------------------------------------------------------
// GoalRegion

double BallConstraint::distance(const State& x) const { return (gather(x, axes) - center).norm(); }

GoalRegion GoalRegion::ball(std::vector<int> axes, Eigen::VectorXd center, double radius) {
  if (static_cast<Eigen::Index>(axes.size()) != center.size()) throw ConfigError("goal ball: axes/center mismatch");
  if (!(radius >= 0)) throw ConfigError("goal ball: negative radius");
  GoalRegion g;
  g.alternatives.push_back({BallConstraint{std::move(axes), std::move(center), radius}});
  return g;
}

bool GoalRegion::contains(const State& x) const {
  for (const auto& alt : alternatives) {
    bool inside = true;
    for (const auto& c : alt) {
      if (c.distance(x) > c.radius) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

double GoalRegion::clearance(const State& x) const {
  double best = -kInf;
  for (const auto& alt : alternatives) {
    double m = kInf;
    for (const auto& c : alt) m = std::min(m, c.radius - c.distance(x));
    best = std::max(best, m);
  }
  return best;
}

State GoalRegion::sample(std::mt19937_64& rng, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) const {
  if (alternatives.empty()) throw DomainError("GoalRegion::sample: empty goal");
  std::uniform_int_distribution<std::size_t> pick(0, alternatives.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const auto& alt = alternatives[pick(rng)];
    State x(lower.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = lower[i] + (upper[i] - lower[i]) * unit(rng);
    for (const auto& c : alt) {
      const Eigen::Index d = c.center.size();
      Eigen::VectorXd dir(d);
      for (Eigen::Index i = 0; i < d; ++i) dir[i] = normal(rng);
      const double nd = dir.norm();
      if (nd == 0) continue;
      const double r = c.radius * std::pow(unit(rng), 1.0 / double(d));
      const Eigen::VectorXd p = c.center + r * dir / nd;
      for (Eigen::Index i = 0; i < d; ++i) x[c.axes[i]] = p[i];
    }
    if (contains(x)) return x;
  }
  throw DomainError("GoalRegion::sample: rejection sampling failed");
}

// ---------------------------------------------------------------------------------------------

void ProblemDef::validate() const {
  const int n = model.dim_state, m = model.dim_input;
  if (n < 1 || m < 1) throw ConfigError(name + ": model dimensions must be positive");
  if (!model.vector_field) throw ConfigError(name + ": missing vector field");
  if (!running_cost) throw ConfigError(name + ": missing running cost");
  if (x_ic.size() != n) throw ConfigError(name + ": x_ic has the wrong dimension");
  if (omega.dim != m || primitive_omega().dim != m) throw ConfigError(name + ": Omega dimension disagrees with input");
  if (free_space.lower.size() != n || free_space.upper.size() != n) throw ConfigError(name + ": free-space bounds");
  if (sample_lower.size() != n || sample_upper.size() != n) throw ConfigError(name + ": sampling box dimension");
  if (goal.alternatives.empty()) throw ConfigError(name + ": empty goal");
  for (int a : wrap_axes)
    if (a < 0 || a >= n) throw ConfigError(name + ": wrap axis out of range");
  if (!(tuning.max_step > 0) || !(tuning.gamma_scale > 0)) throw ConfigError(name + ": bad tuning");
}

}  // namespace glc
