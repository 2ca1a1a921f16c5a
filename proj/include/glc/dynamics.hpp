#pragma once

#include "glc/core.hpp"

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace glc {

// Autonomous control system x' = f(x, u) with the constants the pruning bounds need.
template <typename Scalar>
struct DynamicalModelT {
  using Vector = VectorX<Scalar>;
  using Field = std::function<Vector(const Vector&, const Vector&)>;

  int dim_state = 0;
  int dim_input = 0;
  Field vector_field;
  Scalar lipschitz_f{0};  // Lipschitz constant of f in the state argument
  Scalar bound_M{0};      // sup ||f|| over the operating region (Euclidean norm)

  Vector operator()(const Vector& x, const Vector& u) const { return vector_field(x, u); }
};

using DynamicalModel = DynamicalModelT<double>;

template <typename Scalar>
struct TrajectoryT {
  using Vector = VectorX<Scalar>;

  std::vector<Scalar> times;
  std::vector<Vector> states;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  Scalar terminal_time() const { return times.empty() ? Scalar(0) : times.back(); }
  const Vector& terminal_state() const { return states.back(); }

  void push_back(Scalar t, Vector x) {
    times.push_back(t);
    states.push_back(std::move(x));
  }

  // Appends a segment whose first sample coincides with this trajectory's last one.
  void append_segment(const TrajectoryT& segment) {
    const std::size_t first = empty() ? 0 : 1;
    for (std::size_t i = first; i < segment.size(); ++i) push_back(segment.times[i], segment.states[i]);
  }
};

using Trajectory = TrajectoryT<double>;

// One piece of a piecewise-constant input signal.
template <typename Scalar>
struct SegmentT {
  VectorX<Scalar> control;
  Scalar duration{0};
};

using Segment = SegmentT<double>;

// Number of uniform Euler substeps N = ceil(duration / max_step). A quotient that lands within
// round-off of an integer is not bumped to the next one.
template <typename Scalar>
int substep_count(Scalar duration, Scalar max_step) {
  if (!(max_step > Scalar(0))) throw DomainError("rollout: max_step must be positive");
  if (!(duration > Scalar(0))) throw DomainError("rollout: segment duration must be positive");
  using std::ceil;
  const Scalar q = duration / max_step;
  int n = static_cast<int>(ceil(q));
  if (n > 1 && q - Scalar(n - 1) <= Scalar(1e-9) * q) --n;
  return n < 1 ? 1 : n;
}

// Integrates one constant-control segment from x_start with forward Euler. The returned samples
// include the start state at t_start and the terminal state at t_start + duration.
template <typename Scalar>
TrajectoryT<Scalar> rollout_incremental(const DynamicalModelT<Scalar>& model, const VectorX<Scalar>& x_start,
                                        Scalar t_start, const VectorX<Scalar>& control, Scalar duration,
                                        Scalar max_step) {
  const int n = substep_count(duration, max_step);
  const Scalar dt = duration / Scalar(n);
  TrajectoryT<Scalar> out;
  out.times.reserve(n + 1);
  out.states.reserve(n + 1);
  out.push_back(t_start, x_start);
  VectorX<Scalar> x = x_start;
  for (int k = 1; k <= n; ++k) {
    x = x + dt * model.vector_field(x, control);
    if (!x.allFinite()) {
      throw IntegrationDiverged("rollout: non-finite state at t=" + std::to_string(double(t_start + dt * Scalar(k))));
    }
    out.push_back(k == n ? t_start + duration : t_start + dt * Scalar(k), x);
  }
  return out;
}

template <typename Scalar>
TrajectoryT<Scalar> rollout(const DynamicalModelT<Scalar>& model, const VectorX<Scalar>& x0,
                            std::span<const SegmentT<Scalar>> signal, Scalar max_step) {
  if (!(max_step > Scalar(0))) throw DomainError("rollout: max_step must be positive");
  if (!x0.allFinite()) throw DomainError("rollout: initial state is not finite");
  TrajectoryT<Scalar> out;
  out.push_back(Scalar(0), x0);
  Scalar t = 0;
  for (const auto& seg : signal) {
    auto piece = rollout_incremental(model, out.terminal_state(), t, seg.control, seg.duration, max_step);
    t = piece.terminal_time();
    out.append_segment(piece);
  }
  return out;
}

}  // namespace glc
