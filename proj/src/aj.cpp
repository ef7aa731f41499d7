#include "jumpact/aj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jumpact/stats.hpp"

namespace jumpact {

namespace {

// Variance proxy 1/count_tau - 1/count_rho_tau, evaluated with IEEE
// division so a zero count at the smaller threshold yields +inf: the
// standardized error then degenerates to 0 and the interval to the whole
// range, which is what the plug-in formula says in the limit. Both counts
// zero (NaN) and equal or inverted counts (<= 0) carry no variance
// information and yield nullopt.
std::optional<double> variance_proxy(const AjEstimate& est) {
  if (est.count_tau < 0 || est.count_rho_tau < 0) return std::nullopt;
  const double proxy = 1.0 / static_cast<double>(est.count_tau) -
                       1.0 / static_cast<double>(est.count_rho_tau);
  if (!(proxy > 0.0)) return std::nullopt;
  return proxy;
}

}  // namespace

long long aj_count(const LogPricePath& path, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("aj_count: tau must be > 0");
  if (path.n() < 2) throw std::invalid_argument("aj_count: need at least 2 observations");
  long long count = 0;
  for (std::size_t j = 0; j + 1 < path.n(); ++j) {
    const double dx = path.values[j + 1] - path.values[j];
    if (tau * std::fabs(dx) >= 1.0) ++count;
  }
  return count;
}

AjEstimate aj_estimate(const LogPricePath& path, double c, double rho, double alpha) {
  if (!(c > 0.0)) throw std::domain_error("aj_estimate: c must be > 0");
  if (!(rho > 1.0)) throw std::domain_error("aj_estimate: rho must be > 1");
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::domain_error("aj_estimate: alpha must lie in (0, 1/2)");
  const double tau_n = c * std::pow(static_cast<double>(path.n()), alpha);
  AjEstimate est = aj_estimate_from_counts(aj_count(path, tau_n),
                                           aj_count(path, rho * tau_n),
                                           tau_n, path.n(), rho);
  est.c = c;
  est.alpha = alpha;
  return est;
}

AjEstimate aj_estimate_from_counts(long long count_tau, long long count_rho_tau,
                                   double tau_n, std::size_t n, double rho) {
  if (!(rho > 1.0)) throw std::domain_error("aj_estimate_from_counts: rho must be > 1");
  if (!(tau_n > 0.0))
    throw std::domain_error("aj_estimate_from_counts: tau_n must be > 0");
  if (count_tau < 0 || count_rho_tau < 0)
    throw std::domain_error("aj_estimate_from_counts: counts must be >= 0");

  AjEstimate est;
  est.tau_n = tau_n;
  est.count_tau = count_tau;
  est.count_rho_tau = count_rho_tau;
  est.n = n;
  est.rho = rho;

  double raw;
  if (count_tau == 0 && count_rho_tau == 0)
    raw = 0.0;  // 0/0 reads as ratio 1
  else if (count_tau == 0)
    raw = std::numeric_limits<double>::infinity();
  else
    raw = std::log(static_cast<double>(count_rho_tau) /
                   static_cast<double>(count_tau)) /
          std::log(rho);
  est.beta_tilde = std::clamp(raw, 0.0, 2.0);
  est.clipped = raw != est.beta_tilde;
  return est;
}

std::optional<double> aj_standardized_error(const AjEstimate& est, double beta) {
  if (!(beta > 0.0 && beta <= 2.0))
    throw std::domain_error("aj_standardized_error: beta must lie in (0, 2]");
  const std::optional<double> proxy = variance_proxy(est);
  if (!proxy) return std::nullopt;
  return std::log(est.rho) / std::sqrt(*proxy) * (est.beta_tilde - beta);
}

Interval aj_confidence_interval(const AjEstimate& est, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("aj_confidence_interval: gamma must lie in (0, 1)");
  Interval ci;
  const std::optional<double> proxy = variance_proxy(est);
  if (!proxy) return ci;
  const double z = normal_quantile((1.0 + gamma) / 2.0);
  const double half = z * std::sqrt(*proxy) / std::log(est.rho);
  const double lo = std::max(0.0, est.beta_tilde - half);
  const double hi = std::min(2.0, est.beta_tilde + half);
  if (lo < hi) {
    ci.lo = lo;
    ci.hi = hi;
    ci.empty = false;
  }
  return ci;
}

}  // namespace jumpact
