#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jumpact {

// Log prices on the uniform grid {0, 1/n, ..., (n-1)/n}: values[j] = X(j/n).
struct LogPricePath {
  std::vector<double> values;
  std::size_t n() const { return values.size(); }
};

struct EstimatorConfig {
  int m = 3;                    // number of time scales
  double rho = 2.0;             // threshold ratio, > 1
  double c = 0.05;              // tau_n = c * n^alpha
  double alpha = 0.0;           // 0 selects the default m/(2(m+1))
  double beta_zero_tol = 1e-3;  // estimates below this report as 0
  std::vector<double> gamma_levels{0.95};

  double effective_alpha() const {
    return alpha > 0.0 ? alpha : m / (2.0 * (m + 1));
  }
  double tau(std::size_t n) const;
};

// Closed interval inside (0,2); empty when no confidence statement is
// available. contains() applies the open-endpoint convention at 0 and 2.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
  bool contains(double b) const {
    return !empty && lo <= b && b <= hi && b > 0.0 && b < 2.0;
  }
  double diameter() const { return empty ? 0.0 : hi - lo; }
};

struct ActivityEstimate {
  double beta_hat = 0.0;  // clipped to [0,2]; zeroed below beta_zero_tol
  double tau_n = 0.0;
  double a_tau = 0.0;       // weighted count at tau_n, clipped at 0
  double a_rho_tau = 0.0;   // weighted count at rho*tau_n, clipped at 0
  double a_tau_raw = 0.0;   // signed count before clipping
  double a_rho_tau_raw = 0.0;
  std::optional<double> sigma_hat;  // defined iff beta_hat >= tol and a_tau > 0
  bool clipped_low = false;
  bool clipped_high = false;
  bool counts_clipped = false;  // a count at or below zero forced a boundary
  std::size_t n = 0;
  EstimatorConfig config;
};

// Symmetrized increments: second differences of the path, length n-2.
std::vector<double> sym_increments(const LogPricePath& path);

// Sum of sym[j], sym[j+2], ..., sym[j+2(k-1)]; spans 2k grid steps.
double multiscale_increment(std::span<const double> sym, std::size_t j, int k);

// Scale weights w_k = (-1)^(k+1) binom(m,k)/(2k), k = 1..m.
std::vector<double> weights(int m);

struct JumpCount {
  double raw = 0.0;
  double clipped = 0.0;  // max(0, raw)
};

// Weighted smoothed count of increments exceeding 1/tau across scales 1..m.
JumpCount jump_count(const LogPricePath& path, double tau, int m);

ActivityEstimate estimate(const LogPricePath& path, const EstimatorConfig& config = {});

// Estimator tail from raw counts; estimate() delegates here. Exposed so
// synthetic counts can be injected.
ActivityEstimate estimate_from_counts(double a_tau_raw, double a_rho_tau_raw,
                                      double tau_n, std::size_t n,
                                      const EstimatorConfig& config);

// Standardized error at a hypothesized beta in (0,2]; -inf when the estimate
// degenerated to 0 or sigma_hat is undefined.
double standardized_error(const ActivityEstimate& est, double beta);

// Level-gamma confidence interval; empty when no sigma_hat is available.
Interval confidence_interval(const ActivityEstimate& est, double gamma);

}  // namespace jumpact
