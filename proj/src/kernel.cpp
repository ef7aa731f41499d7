#include "jumpact/kernel.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jumpact/quadrature.hpp"

namespace jumpact {

namespace {

constexpr double kPi = std::numbers::pi;

void check_beta(double beta, const char* who) {
  if (!(beta > 0.0 && beta <= 2.0))
    throw std::domain_error(std::string(who) + ": beta must lie in (0,2]");
}

}  // namespace

double kernel_K(double x) {
  x = std::fabs(x);
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  // The exponent runs from -inf to +inf across (1,2); exp saturates cleanly
  // to 0 or inf at the ends, so no special casing is needed.
  return 1.0 / (1.0 + std::exp(1.0 / (2.0 - x) - 1.0 / (x - 1.0)));
}

double c_beta(double beta) {
  if (!(beta > 0.0 && beta < 2.0))
    throw std::domain_error("c_beta: beta must lie in (0,2)");
  // Reflection form of -2*Gamma(-beta)*cos(beta*pi/2): the Gamma pole at
  // beta = 1 cancels against the cosine zero, leaving pi there.
  return kPi / (std::tgamma(1.0 + beta) * std::sin(kPi * beta / 2.0));
}

double compute_k_beta(double beta, double rel_tol) {
  check_beta(beta, "compute_k_beta");
  // The integrand vanishes on [0,1] where K = 1; the tail over [2,inf) is
  // exactly 2^-beta/beta per side since K = 0 there.
  const double body = integrate(
      [beta](double x) { return (1.0 - kernel_K(x)) * std::pow(x, -(1.0 + beta)); },
      1.0, 2.0, rel_tol);
  return 2.0 * (body + std::pow(2.0, -beta) / beta);
}

double compute_k_beta_rho(double beta, double rho, double rel_tol) {
  check_beta(beta, "compute_k_beta_rho");
  if (!(rho > 1.0))
    throw std::domain_error("compute_k_beta_rho: rho must be > 1");
  // Support is [1/rho, 2] per side: both kernels are 1 below 1/rho and 0
  // above 2. Break at the points where either kernel changes piece.
  const double lo = 1.0 / rho;
  std::vector<double> brk;
  for (double t : {2.0 / rho, 1.0})
    if (t > lo && t < 2.0) brk.push_back(t);
  const double body = integrate(
      [beta, rho](double x) {
        const double d = kernel_K(x) - kernel_K(rho * x);
        return d * d * std::pow(x, -(1.0 + beta));
      },
      lo, 2.0, rel_tol, 1e-14, brk);
  return 2.0 * body;
}

double compute_kbar_beta_rho(double beta, double rho, double rel_tol) {
  check_beta(beta, "compute_kbar_beta_rho");
  if (!(rho >= 1.0))
    throw std::domain_error("compute_kbar_beta_rho: rho must be >= 1");
  // (1-K(x)) kills [0,1]; beyond 2 both factors are 1, giving the exact
  // 2^-beta/beta tail per side.
  std::vector<double> brk;
  const double t = 2.0 / rho;
  if (t > 1.0 && t < 2.0) brk.push_back(t);
  const double body = integrate(
      [beta, rho](double x) {
        return (1.0 - kernel_K(x)) * (1.0 - kernel_K(rho * x)) *
               std::pow(x, -(1.0 + beta));
      },
      1.0, 2.0, rel_tol, 1e-14, brk);
  return std::pow(rho, -beta / 2.0) * 2.0 * (body + std::pow(2.0, -beta) / beta);
}

double fourier_K(double u) {
  if (!std::isfinite(u)) throw std::domain_error("fourier_K: u must be finite");
  u = std::fabs(u);
  // K = 1 on [0,1] contributes sin(u)/u exactly; only the bump needs
  // quadrature. The absolute floor matters at large u where the transform
  // decays below the relative tolerance times the head term.
  const double head = u < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  const double bump = integrate(
      [u](double x) { return kernel_K(x) * std::cos(u * x); }, 1.0, 2.0,
      kQuadRelTol, 1e-13);
  return 2.0 * (head + bump);
}

KernelConstants make_constants(double beta, double rho) {
  check_beta(beta, "make_constants");
  if (!(rho > 1.0)) throw std::domain_error("make_constants: rho must be > 1");

  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, KernelConstants> cache;
  const std::pair<std::uint64_t, std::uint64_t> key{
      std::bit_cast<std::uint64_t>(beta), std::bit_cast<std::uint64_t>(rho)};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  KernelConstants kc;
  kc.beta = beta;
  kc.rho = rho;
  kc.k_beta = compute_k_beta(beta);
  kc.k_beta_rho = compute_k_beta_rho(beta, rho);
  kc.kbar_beta_rho = compute_kbar_beta_rho(beta, rho);
  kc.kbar_beta_1 = compute_kbar_beta_rho(beta, 1.0);
  const double lr = std::log(rho);
  kc.c_beta_rho = kc.k_beta_rho / (std::pow(rho, beta) * lr * lr * kc.k_beta * kc.k_beta);
  kc.c_beta = beta < 2.0 ? c_beta(beta) : std::numeric_limits<double>::infinity();

  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace(key, kc).first->second;
}

}  // namespace jumpact
