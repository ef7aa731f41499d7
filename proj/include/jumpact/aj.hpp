#pragma once

#include <cstddef>
#include <optional>

#include "jumpact/estimator.hpp"

namespace jumpact {

// Single-scale comparator: hard-threshold counts of raw increments at two
// thresholds, beta read off the count ratio.
struct AjEstimate {
  double beta_tilde = 0.0;  // clipped to [0,2]
  double tau_n = 0.0;
  long long count_tau = 0;      // increments with tau*|dX| >= 1
  long long count_rho_tau = 0;  // increments with rho*tau*|dX| >= 1
  bool clipped = false;
  std::size_t n = 0;
  double rho = 2.0;
  double c = 0.05;
  double alpha = 0.2;
};

// Number of raw increments with tau*|increment| >= 1.
long long aj_count(const LogPricePath& path, double tau);

AjEstimate aj_estimate(const LogPricePath& path, double c = 0.05,
                       double rho = 2.0, double alpha = 0.2);

// Estimator tail from counts; aj_estimate() delegates here.
AjEstimate aj_estimate_from_counts(long long count_tau, long long count_rho_tau,
                                   double tau_n, std::size_t n, double rho);

// Standardized error at a hypothesized beta; nullopt when the variance proxy
// 1/count_tau - 1/count_rho_tau is unavailable or not positive.
std::optional<double> aj_standardized_error(const AjEstimate& est, double beta);

Interval aj_confidence_interval(const AjEstimate& est, double gamma);

}  // namespace jumpact
