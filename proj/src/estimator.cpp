#include "jumpact/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jumpact/kernel.hpp"
#include "jumpact/stats.hpp"

namespace jumpact {

namespace {

void validate(const EstimatorConfig& config) {
  if (config.m < 1) throw std::domain_error("estimator: m must be >= 1");
  if (!(config.rho > 1.0)) throw std::domain_error("estimator: rho must be > 1");
  if (!(config.c > 0.0)) throw std::domain_error("estimator: c must be > 0");
  const double a = config.effective_alpha();
  if (!(a > 0.0 && a < 0.5))
    throw std::domain_error("estimator: alpha must lie in (0, 1/2)");
}

}  // namespace

double EstimatorConfig::tau(std::size_t n) const {
  return c * std::pow(static_cast<double>(n), effective_alpha());
}

std::vector<double> sym_increments(const LogPricePath& path) {
  const std::size_t n = path.n();
  if (n < 3) throw std::invalid_argument("sym_increments: need at least 3 observations");
  std::vector<double> out(n - 2);
  for (std::size_t j = 0; j + 2 < n; ++j)
    out[j] = path.values[j + 2] - 2.0 * path.values[j + 1] + path.values[j];
  return out;
}

double multiscale_increment(std::span<const double> sym, std::size_t j, int k) {
  if (k < 1) throw std::domain_error("multiscale_increment: k must be >= 1");
  if (j + 2 * static_cast<std::size_t>(k - 1) >= sym.size())
    throw std::invalid_argument("multiscale_increment: window exceeds input");
  double s = 0.0;
  for (int l = 0; l < k; ++l) s += sym[j + 2 * static_cast<std::size_t>(l)];
  return s;
}

std::vector<double> weights(int m) {
  if (m < 1) throw std::domain_error("weights: m must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(m));
  double binom = 1.0;  // binom(m,k), exact for small m
  for (int k = 1; k <= m; ++k) {
    binom = binom * (m - k + 1) / k;
    const double signed_binom = (k % 2 == 1) ? binom : -binom;
    w[static_cast<std::size_t>(k - 1)] = signed_binom / (2.0 * k);
  }
  return w;
}

JumpCount jump_count(const LogPricePath& path, double tau, int m) {
  if (m < 1) throw std::domain_error("jump_count: m must be >= 1");
  if (!(tau > 0.0)) throw std::domain_error("jump_count: tau must be > 0");
  const std::size_t n = path.n();
  if (n < 2 * static_cast<std::size_t>(m) + 2)
    throw std::invalid_argument("jump_count: need at least 2m+2 observations");
  const std::vector<double> w = weights(m);
  const std::vector<double> sym = sym_increments(path);
  const std::size_t j_count = n - 2 * static_cast<std::size_t>(m);  // j = 0..n-2m-1
  double total = 0.0;
  for (std::size_t j = 0; j < j_count; ++j) {
    double s = 0.0;  // running multiscale increment over k = 1..m
    for (int k = 1; k <= m; ++k) {
      s += sym[j + 2 * static_cast<std::size_t>(k - 1)];
      const double scaled = std::fabs(tau * s);
      if (scaled > 1.0)  // kernel_K == 1 on [0,1]: summand vanishes there
        total += w[static_cast<std::size_t>(k - 1)] * (1.0 - kernel_K(scaled));
    }
  }
  return {total, std::max(0.0, total)};
}

ActivityEstimate estimate(const LogPricePath& path, const EstimatorConfig& config) {
  validate(config);
  const double tau_n = config.tau(path.n());
  const JumpCount at_tau = jump_count(path, tau_n, config.m);
  const JumpCount at_rho_tau = jump_count(path, config.rho * tau_n, config.m);
  return estimate_from_counts(at_tau.raw, at_rho_tau.raw, tau_n, path.n(), config);
}

ActivityEstimate estimate_from_counts(double a_tau_raw, double a_rho_tau_raw,
                                      double tau_n, std::size_t n,
                                      const EstimatorConfig& config) {
  validate(config);
  if (!(tau_n > 0.0)) throw std::domain_error("estimate_from_counts: tau_n must be > 0");

  ActivityEstimate est;
  est.tau_n = tau_n;
  est.a_tau_raw = a_tau_raw;
  est.a_rho_tau_raw = a_rho_tau_raw;
  est.a_tau = std::max(0.0, a_tau_raw);
  est.a_rho_tau = std::max(0.0, a_rho_tau_raw);
  est.n = n;
  est.config = config;

  // log-ratio of counts; 0/0 reads as ratio 1 (raw estimate 0)
  double raw_beta;
  if (est.a_rho_tau == 0.0 && est.a_tau == 0.0)
    raw_beta = 0.0;
  else
    raw_beta = std::log(est.a_rho_tau / est.a_tau) / std::log(config.rho);
  est.clipped_low = raw_beta < 0.0;
  est.clipped_high = raw_beta > 2.0;
  est.counts_clipped = (a_tau_raw < 0.0) || (a_rho_tau_raw < 0.0) ||
                       ((est.a_tau == 0.0) != (est.a_rho_tau == 0.0));
  double beta_hat = std::clamp(raw_beta, 0.0, 2.0);
  if (beta_hat < config.beta_zero_tol) beta_hat = 0.0;
  est.beta_hat = beta_hat;

  if (beta_hat > 0.0 && est.a_tau > 0.0) {
    const KernelConstants kc = make_constants(beta_hat, config.rho);
    est.sigma_hat = std::sqrt(kc.c_beta_rho * kc.k_beta *
                              std::pow(tau_n, beta_hat) / est.a_tau);
  }
  return est;
}

double standardized_error(const ActivityEstimate& est, double beta) {
  if (!(beta > 0.0 && beta <= 2.0))
    throw std::domain_error("standardized_error: beta must lie in (0, 2]");
  if (est.beta_hat == 0.0 || !est.sigma_hat)
    return -std::numeric_limits<double>::infinity();
  return std::pow(est.tau_n, est.beta_hat / 2.0) * (est.beta_hat - beta) /
         *est.sigma_hat;
}

Interval confidence_interval(const ActivityEstimate& est, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("confidence_interval: gamma must lie in (0, 1)");
  Interval ci;
  if (est.beta_hat == 0.0 || !est.sigma_hat) return ci;
  const double z = normal_quantile((1.0 + gamma) / 2.0);
  const double half = z * *est.sigma_hat * std::pow(est.tau_n, -est.beta_hat / 2.0);
  const double lo = std::max(0.0, est.beta_hat - half);
  const double hi = std::min(2.0, est.beta_hat + half);
  if (lo < hi) {
    ci.lo = lo;
    ci.hi = hi;
    ci.empty = false;
  }
  return ci;
}

}  // namespace jumpact
