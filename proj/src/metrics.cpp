#include "glc/metrics.hpp"

#include <cmath>
#include <string>

namespace glc {

void BoundParams::validate() const {
  if (!(lipschitz_f > 0)) throw DomainError("BoundParams: L_f must be positive");
  if (!(lipschitz_g >= 0)) throw DomainError("BoundParams: L_g must be non-negative");
  if (!(eta > 0)) throw DomainError("BoundParams: eta must be positive");
  if (n < 1) throw DomainError("BoundParams: state dimension must be >= 1");
  if (R < 1) throw DomainError("BoundParams: resolution must be >= 1");
  if (hR < 0) throw DomainError("BoundParams: horizon must be >= 0");
}

namespace {

void check_tau(const BoundParams& p, double tau_uj) {
  if (tau_uj < 0 || tau_uj > p.horizon_time()) {
    throw DomainError("pruning bound: tau(u_j)=" + std::to_string(tau_uj) + " outside [0, h(R)/R]");
  }
}

void check_k(const BoundParams& p, long k) {
  if (k < 0 || k > p.hR) throw DomainError("bound sum: k=" + std::to_string(k) + " outside [0, h(R)]");
}

}  // namespace

double pruning_gamma(const BoundParams& p, double tau_uj) {
  p.validate();
  check_tau(p, tau_uj);
  return std::sqrt(double(p.n)) / p.eta * (p.lipschitz_g / p.lipschitz_f) *
         std::expm1(p.lipschitz_f * (p.horizon_time() - tau_uj));
}

double pruning_delta(const BoundParams& p, double tau_uj) {
  p.validate();
  check_tau(p, tau_uj);
  return std::sqrt(double(p.n)) / p.eta * std::exp(p.lipschitz_f * (p.horizon_time() - tau_uj));
}

double delta_k(const BoundParams& p, long k) {
  p.validate();
  check_k(p, k);
  const long double scale = std::sqrt((long double)p.n) / ((long double)p.lipschitz_f * p.eta);
  long double sum = 0;
  for (long i = 0; i <= k; ++i) {
    sum += scale * std::exp((long double)p.lipschitz_f * (long double)(p.hR - i) / (long double)p.R);
  }
  return static_cast<double>(sum);
}

double gamma_k(const BoundParams& p, long k) {
  p.validate();
  check_k(p, k);
  if (p.lipschitz_g == 0) return 0.0;
  const long double scale =
      std::sqrt((long double)p.n) / (long double)p.eta * ((long double)p.lipschitz_g / (long double)p.lipschitz_f);
  // The i-th pruned ancestor has duration i / R.
  long double sum = 0;
  for (long i = 0; i <= k; ++i)
    sum += scale * std::expm1((long double)p.lipschitz_f * (long double)(p.hR - i) / (long double)p.R);
  return static_cast<double>(sum);
}

double delta_closed_bound(const BoundParams& p) {
  p.validate();
  const long double v = (long double)p.R * std::sqrt((long double)p.n) / ((long double)p.lipschitz_f * p.eta) *
                        std::expm1((long double)p.lipschitz_f * (long double)p.hR / (long double)p.R);
  return static_cast<double>(v);
}

double gamma_closed_bound(const BoundParams& p) {
  p.validate();
  if (p.lipschitz_g == 0) return 0.0;
  const long double h_over_r = (long double)p.hR / (long double)p.R;
  const long double v = (long double)p.R * std::sqrt((long double)p.n) / (long double)p.eta *
                        ((long double)p.lipschitz_g / (long double)p.lipschitz_f) *
                        (std::exp((long double)p.lipschitz_f * h_over_r) - h_over_r);
  return static_cast<double>(v);
}

double log_delta_k(const BoundParams& p, long k) {
  p.validate();
  check_k(p, k);
  // Running log-sum-exp over the exponents L_f (h - i) / R; the largest term comes first.
  const double log_scale = 0.5 * std::log(double(p.n)) - std::log(p.lipschitz_f * p.eta);
  const double top = p.lipschitz_f * double(p.hR) / double(p.R);
  double shifted = 0;
  for (long i = 0; i <= k; ++i) shifted += std::exp(p.lipschitz_f * double(p.hR - i) / double(p.R) - top);
  return log_scale + top + std::log(shifted);
}

double log_delta_closed_bound(const BoundParams& p) {
  p.validate();
  const double x = p.lipschitz_f * double(p.hR) / double(p.R);
  // log(expm1(x)) without overflow.
  const double log_expm1 = x > 30 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
  return std::log(double(p.R)) + 0.5 * std::log(double(p.n)) - std::log(p.lipschitz_f * p.eta) + log_expm1;
}

}  // namespace glc
