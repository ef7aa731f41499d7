#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "jumpact/estimator.hpp"

namespace jumpact {

// Test model on [0,1]: X_t = B_t + integral of gamma dR, where gamma_t =
// max(2t-1, 0) modulates the jump intensity and R = theta1 * S1 + theta2 * S2
// combines a stable driver with index beta and a nuisance driver with index
// beta - 0.2, plus i.i.d. Gaussian observation noise on the observations.
struct SimulationModel {
  double beta = 0.0;   // activity index of the dominant stable component
  double p = 0.0;      // target per-increment large-jump probability
  std::size_t n = 23400;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double noise_sd = 0.01;
  double jump_threshold = 0.2;  // jump size defining "large" in calibration
  std::uint64_t seed = 0;
};

// Scale theta so that a jump of the given component exceeds the threshold in
// one of n increments with probability p.
double calibrate_theta(double beta_component, double p, std::size_t n,
                       double threshold = 0.2);

// Model with theta1 calibrated at (beta, p) and theta2 at (beta-0.2, p/20).
SimulationModel make_model(double beta, double p, std::size_t n = 23400,
                           std::uint64_t seed = 0);

// Strictly stable draw with characteristic function exp(-|u|^alpha).
double sample_standard_stable(double alpha, std::mt19937_64& engine);

struct SimulatedPath {
  LogPricePath clean;
  LogPricePath observed;  // clean plus observation noise
};

SimulatedPath simulate_path(const SimulationModel& model);

}  // namespace jumpact
