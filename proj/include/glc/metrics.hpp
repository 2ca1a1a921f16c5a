#pragma once

#include "glc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace glc {

// ---------------------------------------------------------------------------------------------
// Distances on the signal and trajectory spaces.

// d_U for piecewise-constant signals, evaluated in closed form: the integral of ||u1 - u2|| over
// the common domain plus u_max * |tau1 - tau2|.
template <typename Scalar>
Scalar signal_distance(std::span<const SegmentT<Scalar>> u1, std::span<const SegmentT<Scalar>> u2, Scalar u_max) {
  Scalar tau1 = 0, tau2 = 0;
  for (const auto& s : u1) tau1 += s.duration;
  for (const auto& s : u2) tau2 += s.duration;

  Scalar integral = 0;
  std::size_t i = 0, j = 0;
  Scalar left_i = 0, left_j = 0;  // time remaining in the current segment of each signal
  if (!u1.empty()) left_i = u1[0].duration;
  if (!u2.empty()) left_j = u2[0].duration;
  while (i < u1.size() && j < u2.size()) {
    const Scalar piece = std::min(left_i, left_j);
    integral += (u1[i].control - u2[j].control).norm() * piece;
    left_i -= piece;
    left_j -= piece;
    if (left_i <= Scalar(0)) {
      if (++i < u1.size()) left_i = u1[i].duration;
    }
    if (left_j <= Scalar(0)) {
      if (++j < u2.size()) left_j = u2[j].duration;
    }
  }
  using std::abs;
  return integral + u_max * abs(tau1 - tau2);
}

// Linear interpolation of a sampled trajectory; t is clamped to [0, terminal_time].
template <typename Scalar>
VectorX<Scalar> sample_at(const TrajectoryT<Scalar>& x, Scalar t) {
  if (x.empty()) throw DomainError("sample_at: empty trajectory");
  if (t <= x.times.front()) return x.states.front();
  if (t >= x.times.back()) return x.states.back();
  const auto it = std::upper_bound(x.times.begin(), x.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - x.times.begin());
  const std::size_t lo = hi - 1;
  const Scalar span_t = x.times[hi] - x.times[lo];
  const Scalar w = span_t > Scalar(0) ? (t - x.times[lo]) / span_t : Scalar(0);
  return (Scalar(1) - w) * x.states[lo] + w * x.states[hi];
}

// d_X: max pointwise Euclidean gap over the common domain plus M * |tau1 - tau2|. Trajectories
// are read as their piecewise-linear interpolants, so the max is attained on the merged grid.
template <typename Scalar>
Scalar trajectory_distance(const TrajectoryT<Scalar>& x1, const TrajectoryT<Scalar>& x2, Scalar bound_M) {
  if (x1.empty() || x2.empty()) throw DomainError("trajectory_distance: empty trajectory");
  const Scalar t_end = std::min(x1.terminal_time(), x2.terminal_time());
  std::vector<Scalar> grid;
  grid.reserve(x1.size() + x2.size() + 1);
  for (Scalar t : x1.times)
    if (t <= t_end) grid.push_back(t);
  for (Scalar t : x2.times)
    if (t <= t_end) grid.push_back(t);
  grid.push_back(t_end);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Scalar gap = 0;
  for (Scalar t : grid) gap = std::max(gap, (sample_at(x1, t) - sample_at(x2, t)).norm());
  using std::abs;
  return gap + bound_M * abs(x1.terminal_time() - x2.terminal_time());
}

// ---------------------------------------------------------------------------------------------
// Sensitivity envelopes.

// ||x(t) - z(t)|| <= ||x0 - z0|| e^{L_f t} along a shared signal.
template <typename Scalar>
Scalar initial_condition_envelope(Scalar lipschitz_f, Scalar t, Scalar x0_gap) {
  using std::exp;
  return x0_gap * exp(lipschitz_f * t);
}

// |J_x0(u) - J_z0(u)| <= ||x0 - z0|| (L_g / L_f) (e^{L_f tau} - 1). L_f = 0 takes the limit L_g tau.
template <typename Scalar>
Scalar cost_sensitivity_bound(Scalar lipschitz_f, Scalar lipschitz_g, Scalar tau, Scalar x0_gap) {
  if (tau < Scalar(0) || x0_gap < Scalar(0)) throw DomainError("cost_sensitivity_bound: negative argument");
  using std::expm1;
  if (lipschitz_f == Scalar(0)) return x0_gap * lipschitz_g * tau;
  return x0_gap * (lipschitz_g / lipschitz_f) * expm1(lipschitz_f * tau);
}

// ---------------------------------------------------------------------------------------------
// Pruning error terms.

struct BoundParams {
  double lipschitz_f = 0;
  double lipschitz_g = 0;  // zero for minimum-time costs
  double bound_M = 0;
  double u_max = 0;
  int n = 0;
  int R = 0;
  long hR = 0;
  double eta = 0;

  void validate() const;
  double horizon_time() const { return double(hR) / double(R); }
};

// Cost and distance slack left by pruning a dominated signal of duration tau_uj.
double pruning_gamma(const BoundParams& p, double tau_uj);
double pruning_delta(const BoundParams& p, double tau_uj);

// delta_k = sum_{i=0}^{k} sqrt(n)/(L_f eta) e^{L_f (h - i)/R}, summed term by term.
double delta_k(const BoundParams& p, long k);
// gamma_k = sum_{i=0}^{k} sqrt(n)/eta (L_g/L_f) (e^{L_f (h - i)/R} - 1), i.e. pruning_gamma at tau = i/R.
double gamma_k(const BoundParams& p, long k);

// Closed-form upper bounds stated for k = h(R).
double delta_closed_bound(const BoundParams& p);
double gamma_closed_bound(const BoundParams& p);

// Natural-log versions of delta_k and its closed bound; the benchmark horizons push the linear
// values past the range of double.
double log_delta_k(const BoundParams& p, long k);
double log_delta_closed_bound(const BoundParams& p);

}  // namespace glc
