#pragma once

// Independent reference computations for the tests and the acceptance suite.

#include "glc/glc_search.hpp"
#include "glc/graph_astar.hpp"
#include "glc/metrics.hpp"
#include "glc/problems.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using glc::Control;
using glc::State;

// Classical fourth-order Runge-Kutta with a fixed step, constant control.
inline State rk4(const glc::DynamicalModel& model, State x, const Control& u, double duration, double step) {
  const int n = static_cast<int>(std::ceil(duration / step - 1e-12));
  const double h = duration / n;
  for (int i = 0; i < n; ++i) {
    const State k1 = model(x, u);
    const State k2 = model(x + 0.5 * h * k1, u);
    const State k3 = model(x + 0.5 * h * k2, u);
    const State k4 = model(x + h * k3, u);
    x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return x;
}

// Bellman-Ford relaxation to a fixed point; the shortest cost to any destination.
inline double bellman_ford(const glc::WeightedGraph& g, int source) {
  std::vector<double> d(static_cast<std::size_t>(g.size()), glc::kInf);
  d[static_cast<std::size_t>(source)] = 0;
  for (int pass = 0; pass < g.size(); ++pass) {
    bool changed = false;
    for (int v = 0; v < g.size(); ++v) {
      if (!std::isfinite(d[static_cast<std::size_t>(v)])) continue;
      for (const glc::Edge& e : g.neighbors(v)) {
        const double c = d[static_cast<std::size_t>(v)] + e.weight;
        if (c < d[static_cast<std::size_t>(e.to)]) {
          d[static_cast<std::size_t>(e.to)] = c;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  double best = glc::kInf;
  for (int v = 0; v < g.size(); ++v)
    if (g.is_destination(v)) best = std::min(best, d[static_cast<std::size_t>(v)]);
  return best;
}

// Array-based Dijkstra with a linear scan for the minimum; the cost to the nearest destination.
inline double dijkstra(const glc::WeightedGraph& g, int source) {
  const std::size_t n = static_cast<std::size_t>(g.size());
  std::vector<double> d(n, glc::kInf);
  std::vector<bool> done(n, false);
  d[static_cast<std::size_t>(source)] = 0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t v = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && std::isfinite(d[i]) && (v == n || d[i] < d[v])) v = i;
    if (v == n) break;
    if (g.is_destination(static_cast<int>(v))) return d[v];
    done[v] = true;
    for (const glc::Edge& e : g.neighbors(static_cast<int>(v)))
      d[static_cast<std::size_t>(e.to)] = std::min(d[static_cast<std::size_t>(e.to)], d[v] + e.weight);
  }
  return glc::kInf;
}

// Term-by-term sums in long double, written from the series definitions.
inline long double delta_sum(const glc::BoundParams& p, long k) {
  long double s = 0;
  for (long i = 0; i <= k; ++i) {
    s += std::sqrt((long double)p.n) / ((long double)p.lipschitz_f * p.eta) *
         std::exp((long double)p.lipschitz_f * (long double)(p.hR - i) / p.R);
  }
  return s;
}

inline long double gamma_sum(const glc::BoundParams& p, long k) {
  long double s = 0;
  for (long i = 0; i <= k; ++i) {
    s += std::sqrt((long double)p.n) / (long double)p.eta * ((long double)p.lipschitz_g / p.lipschitz_f) *
         (std::exp((long double)p.lipschitz_f * (long double)(p.hR - i) / p.R) - 1);
  }
  return s;
}

// log of the delta series via log-sum-exp, for horizons that overflow double.
inline double log_delta_sum(const glc::BoundParams& p, long k) {
  const double a = 0.5 * std::log(double(p.n)) - std::log(p.lipschitz_f * p.eta);
  const double top = p.lipschitz_f * double(p.hR) / p.R;
  double acc = 0;
  for (long i = 0; i <= k; ++i) acc += std::exp(-p.lipschitz_f * double(i) / p.R);
  return a + top + std::log(acc);
}

// Random piecewise-constant signal with controls drawn from a box of half-width u_bound.
inline std::vector<glc::Segment> random_signal(std::mt19937_64& rng, int m, double u_bound, int max_segments,
                                               double max_duration) {
  std::uniform_int_distribution<int> count(1, max_segments);
  std::uniform_real_distribution<double> dur(0.05, max_duration), val(-u_bound, u_bound);
  std::vector<glc::Segment> s(static_cast<std::size_t>(count(rng)));
  for (auto& seg : s) {
    seg.control = Control::NullaryExpr(m, [&] { return val(rng); });
    seg.duration = dur(rng);
  }
  return s;
}

struct TinyInstance {
  glc::ProblemDef problem;
  int R = 2;
  long horizon = 4;
  double eta = 2;
};

// Randomised desk-scale single-integrator instances: 1D or 2D, at most 4 primitives, h <= 6.
inline TinyInstance tiny_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  TinyInstance t;
  glc::SingleIntegratorSpec s;
  s.dim = unit(rng) < 0.5 ? 1 : 2;
  t.R = s.dim == 1 ? (unit(rng) < 0.5 ? 2 : 3) : 2;
  s.resolutions = {t.R};
  s.u_bound = 1;
  s.gamma_scale = 1;  // segment duration 1/R, the time unit the bound series assume
  s.max_step = 0.1;
  s.horizon = 3 + static_cast<long>(unit(rng) * 4);  // 3..6
  const double etas[] = {1, 2, 10, 100, 1000};
  s.eta = etas[static_cast<int>(unit(rng) * 5)];
  s.cost_slope = 0.5 * unit(rng);
  s.x_ic = State::Zero(s.dim);
  s.free_space = glc::FreeSpace::unbounded(s.dim);
  s.free_space.lower = Eigen::VectorXd::Constant(s.dim, -4);
  s.free_space.upper = Eigen::VectorXd::Constant(s.dim, 4);
  const double dur = s.gamma_scale / t.R;
  // Goal near the end of a random walk over the grid controls, radius below one step.
  const double radius = (0.2 + 0.3 * unit(rng)) * dur;
  State c = State::Zero(s.dim);
  while (c.norm() < 1.5 * dur) {
    c.setZero();
    const long steps = 1 + static_cast<long>(unit(rng) * double(s.horizon - 1));
    for (long k = 0; k < steps; ++k)
      for (int i = 0; i < s.dim; ++i) {
        const int level = static_cast<int>(unit(rng) * t.R);
        c[i] += dur * (t.R == 1 ? 0.0 : -1.0 + 2.0 * level / (t.R - 1));
      }
  }
  for (int i = 0; i < s.dim; ++i) c[i] += (unit(rng) * 2 - 1) * 0.3 * radius / std::sqrt(double(s.dim));
  std::vector<int> axes(static_cast<std::size_t>(s.dim));
  for (int i = 0; i < s.dim; ++i) axes[static_cast<std::size_t>(i)] = i;
  s.goal = glc::GoalRegion::ball(axes, c, radius);
  // An occasional block obstacle between start and goal.
  if (s.dim == 2 && unit(rng) < 0.4) {
    const Eigen::Vector2d mid = 0.5 * c.head<2>();
    s.free_space.obstacles.push_back(
        glc::ConvexPolytope::box(mid.array() - 0.15, mid.array() + 0.15, std::vector<int>{0, 1}));
  }
  t.problem = glc::single_integrator(s);
  t.problem.name = "tiny_" + std::to_string(seed);
  t.horizon = s.horizon;
  t.eta = s.eta;
  return t;
}

// Bound constants for a tiny instance; hR counts the deepest enqueued level, h - 1.
// Bound parameters of a problem at resolution R with its own tuning.
inline glc::BoundParams problem_bounds(const glc::ProblemDef& p, int R, long hR, double eta) {
  glc::BoundParams b;
  b.lipschitz_f = p.model.lipschitz_f;
  b.lipschitz_g = p.lipschitz_g;
  b.bound_M = p.model.bound_M;
  b.u_max = p.omega.u_max();
  b.n = p.model.dim_state;
  b.R = R;
  b.hR = hR;
  b.eta = eta;
  return b;
}

inline glc::BoundParams tiny_bounds(const TinyInstance& t) {
  glc::BoundParams p;
  p.lipschitz_f = t.problem.model.lipschitz_f;
  p.lipschitz_g = t.problem.lipschitz_g;
  p.bound_M = t.problem.model.bound_M;
  p.u_max = t.problem.omega.u_max();
  p.n = t.problem.model.dim_state;
  p.R = t.R;
  p.hR = t.horizon - 1;
  p.eta = t.eta;
  return p;
}

}  // namespace oracle
