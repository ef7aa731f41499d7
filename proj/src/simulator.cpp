#include "jumpact/simulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jumpact/kernel.hpp"
#include "jumpact/rng.hpp"

namespace jumpact {

namespace {

// Engine streams within one replication seed.
constexpr std::uint64_t kBrownian = 0;
constexpr std::uint64_t kStableMain = 1;
constexpr std::uint64_t kStableNuisance = 2;
constexpr std::uint64_t kNoise = 3;

}  // namespace

double calibrate_theta(double beta_component, double p, std::size_t n,
                       double threshold) {
  if (!(beta_component > 0.0 && beta_component < 2.0))
    throw std::domain_error("calibrate_theta: component index must lie in (0, 2)");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("calibrate_theta: p must lie in (0, 1)");
  if (n == 0) throw std::domain_error("calibrate_theta: n must be >= 1");
  if (!(threshold > 0.0))
    throw std::domain_error("calibrate_theta: threshold must be > 0");
  // Jumps of theta*S larger than the threshold arrive at rate
  // 2 (threshold/theta)^(-b) / (b C_b); solve 1 - exp(-rate/n) = p for theta.
  const double rate = -std::log1p(-p) * static_cast<double>(n);
  const double b = beta_component;
  return threshold * std::pow(b * c_beta(b) * rate / 2.0, 1.0 / b);
}

SimulationModel make_model(double beta, double p, std::size_t n,
                           std::uint64_t seed) {
  if (!(beta > 0.2 && beta < 2.0))
    throw std::domain_error("make_model: beta must lie in (0.2, 2)");
  SimulationModel model;
  model.beta = beta;
  model.p = p;
  model.n = n;
  model.seed = seed;
  model.theta1 = calibrate_theta(beta, p, n, model.jump_threshold);
  model.theta2 = calibrate_theta(beta - 0.2, p / 20.0, n, model.jump_threshold);
  return model;
}

double sample_standard_stable(double alpha, std::mt19937_64& engine) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("sample_standard_stable: alpha must lie in (0, 2)");
  std::uniform_real_distribution<double> uniform(-std::numbers::pi / 2.0,
                                                 std::numbers::pi / 2.0);
  std::exponential_distribution<double> exponential(1.0);
  for (;;) {
    const double v = uniform(engine);
    const double w = exponential(engine);
    if (!(w > 0.0)) continue;
    double x;
    if (alpha == 1.0) {
      x = std::tan(v);
    } else {
      x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
          std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    }
    if (std::isfinite(x)) return x;
  }
}

SimulatedPath simulate_path(const SimulationModel& model) {
  if (!(model.beta > 0.2 && model.beta < 2.0))
    throw std::domain_error("simulate_path: beta must lie in (0.2, 2)");
  if (model.n < 2) throw std::invalid_argument("simulate_path: n must be >= 2");
  if (!(model.noise_sd >= 0.0))
    throw std::domain_error("simulate_path: noise_sd must be >= 0");

  const std::size_t n = model.n;
  const double h = 1.0 / static_cast<double>(n);
  std::mt19937_64 brownian_engine(derive_seed(model.seed, kBrownian));
  std::mt19937_64 stable_main_engine(derive_seed(model.seed, kStableMain));
  std::mt19937_64 stable_nuisance_engine(derive_seed(model.seed, kStableNuisance));
  std::mt19937_64 noise_engine(derive_seed(model.seed, kNoise));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::normal_distribution<double> noise_normal(0.0, 1.0);

  const double beta2 = model.beta - 0.2;
  const double brownian_scale = std::sqrt(h);
  const double stable_main_scale = std::pow(h, 1.0 / model.beta);
  const double stable_nuisance_scale = std::pow(h, 1.0 / beta2);

  SimulatedPath path;
  path.clean.values.resize(n);
  path.observed.values.resize(n);
  // Jump contributions are scaled by gamma at their arrival interval, so the
  // jump part is the integral of gamma against the stable drivers. A plain
  // product gamma_t * R_t would add a drift 2*R_t dt whose raw increments
  // dwarf the jumps themselves once the stable levels are large.
  double brownian = 0.0, jumps = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      brownian += brownian_scale * normal(brownian_engine);
      const double dr =
          model.theta1 * stable_main_scale *
              sample_standard_stable(model.beta, stable_main_engine) +
          model.theta2 * stable_nuisance_scale *
              sample_standard_stable(beta2, stable_nuisance_engine);
      const double t_left = static_cast<double>(j - 1) * h;
      jumps += std::max(2.0 * t_left - 1.0, 0.0) * dr;
    }
    const double x = brownian + jumps;
    path.clean.values[j] = x;
    path.observed.values[j] =
        model.noise_sd > 0.0 ? x + model.noise_sd * noise_normal(noise_engine) : x;
  }
  return path;
}

}  // namespace jumpact
