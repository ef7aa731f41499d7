#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "jumpact/estimator.hpp"
#include "jumpact/kernel.hpp"
#include "jumpact/simulator.hpp"
#include "jumpact/stats.hpp"

using jumpact::ActivityEstimate;
using jumpact::confidence_interval;
using jumpact::estimate;
using jumpact::estimate_from_counts;
using jumpact::EstimatorConfig;
using jumpact::jump_count;
using jumpact::kernel_K;
using jumpact::LogPricePath;
using jumpact::multiscale_increment;
using jumpact::standardized_error;
using jumpact::sym_increments;
using jumpact::weights;

namespace {

LogPricePath random_path(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, scale);
  LogPricePath path;
  path.values.resize(n);
  double x = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    x += normal(engine);
    path.values[j] = x;
  }
  return path;
}

// Flat path with isolated jumps of graded sizes, spaced so that no counting
// window sees two of them. Both smoothed counts are then deterministic sums
// over the jump sizes, positive, and distinct.
LogPricePath planted_jump_path() {
  const std::size_t n = 400;
  const double tau = EstimatorConfig{}.tau(n);
  LogPricePath path;
  path.values.assign(n, 0.0);
  double level = 0.0;
  std::size_t pos = 10;
  for (int i = 0; i < 30; ++i) {
    level += (0.55 + 0.05 * i) / tau;
    for (std::size_t t = pos; t < n; ++t) path.values[t] = level;
    pos += 8;
  }
  return path;
}

}  // namespace

TEST_CASE("symmetrized increments are second differences") {
  const LogPricePath path{{0.0, 0.0, 1.0, 1.0}};
  const std::vector<double> sym = sym_increments(path);
  REQUIRE(sym.size() == 2);
  CHECK(sym[0] == 1.0);
  CHECK(sym[1] == -1.0);
  CHECK_THROWS_AS(sym_increments(LogPricePath{{1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("multiscale increments stride by two") {
  const std::vector<double> sym = {1.0, 10.0, 2.0, 20.0, 4.0, 40.0};
  CHECK(multiscale_increment(sym, 0, 1) == 1.0);
  CHECK(multiscale_increment(sym, 0, 2) == 3.0);
  CHECK(multiscale_increment(sym, 0, 3) == 7.0);
  CHECK(multiscale_increment(sym, 1, 3) == 70.0);
  CHECK_THROWS_AS(multiscale_increment(sym, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(multiscale_increment(sym, 0, 0), std::domain_error);
}

TEST_CASE("scale weights have the closed form and cancellation identities") {
  const std::vector<double> w3 = weights(3);
  REQUIRE(w3.size() == 3);
  CHECK(w3[0] == 1.5);
  CHECK(w3[1] == -0.75);
  CHECK(w3[2] == 1.0 / 6.0);

  const std::vector<double> w1 = weights(1);
  CHECK(w1[0] == 0.5);
  const std::vector<double> w2 = weights(2);
  CHECK(w2[0] == 1.0);
  CHECK(w2[1] == -0.25);

  // sum_k w_k k = 1/2 and sum_k w_k k^j = 0 for j = 2..m: the first moment
  // normalizes a single jump to unit count, the rest cancel the bias terms.
  // The bound is machine epsilon relative to the largest summand.
  for (int m = 1; m <= 8; ++m) {
    const std::vector<double> w = weights(m);
    for (int j = 1; j <= m; ++j) {
      double s = 0.0, largest = 0.0;
      for (int k = 1; k <= m; ++k) {
        const double term = w[static_cast<std::size_t>(k - 1)] * std::pow(k, j);
        s += term;
        largest = std::max(largest, std::fabs(term));
      }
      CHECK(std::fabs(s - (j == 1 ? 0.5 : 0.0)) < 64.0 * 1e-16 * largest);
    }
  }
  CHECK_THROWS_AS(weights(0), std::domain_error);
}

TEST_CASE("smoothed count matches a direct double sum") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const LogPricePath path = random_path(30, seed, 0.4);
    for (int m : {1, 2, 3}) {
      for (double tau : {0.8, 2.0, 5.0}) {
        const std::vector<double> w = weights(m);
        const std::vector<double> sym = sym_increments(path);
        double expected = 0.0;
        for (std::size_t j = 0; j < path.n() - 2 * static_cast<std::size_t>(m); ++j)
          for (int k = 1; k <= m; ++k) {
            double s = 0.0;
            for (int l = 0; l < k; ++l) s += sym[j + 2 * static_cast<std::size_t>(l)];
            expected += w[static_cast<std::size_t>(k - 1)] * (1.0 - kernel_K(tau * s));
          }
        CHECK(jump_count(path, tau, m).raw ==
              doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
  CHECK_THROWS_AS(jump_count(LogPricePath{{1, 2, 3, 4, 5, 6, 7}}, 1.0, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(jump_count(random_path(20, 1), 0.0, 3), std::domain_error);
}

TEST_CASE("one isolated jump is counted once across all scales") {
  // With n = 2^15 the thresholds are 1/tau = 0.405 and 1/(2 tau) = 0.203,
  // so a 0.6 jump sits between the bump edges at tau and past both at 2 tau.
  const std::size_t n = 32768;
  EstimatorConfig config;
  const double tau = config.tau(n);
  REQUIRE(tau * 0.6 > 1.0);
  REQUIRE(tau * 0.6 < 2.0);
  REQUIRE(2.0 * tau * 0.6 >= 2.0);
  LogPricePath path;
  path.values.assign(n, 0.0);
  for (std::size_t j = n / 2; j < n; ++j) path.values[j] = 0.6;

  // Each scale k sees the jump in exactly 2k windows, and sum_k w_k 2k = 1.
  const double at_tau = jump_count(path, tau, config.m).raw;
  const double at_2tau = jump_count(path, 2.0 * tau, config.m).raw;
  CHECK(at_tau == doctest::Approx(1.0 - kernel_K(tau * 0.6)).epsilon(1e-12));
  CHECK(at_2tau == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("config validation and threshold schedule") {
  EstimatorConfig config;
  CHECK(config.effective_alpha() == doctest::Approx(0.375).epsilon(1e-15));
  config.m = 1;
  CHECK(config.effective_alpha() == doctest::Approx(0.25).epsilon(1e-15));
  config.alpha = 0.3;
  CHECK(config.effective_alpha() == 0.3);
  config = EstimatorConfig{};
  CHECK(config.tau(23400) ==
        doctest::Approx(0.05 * std::pow(23400.0, 0.375)).epsilon(1e-15));

  const LogPricePath path = random_path(64, 5);
  EstimatorConfig bad = config;
  bad.m = 0;
  CHECK_THROWS_AS(estimate(path, bad), std::domain_error);
  bad = config;
  bad.rho = 1.0;
  CHECK_THROWS_AS(estimate(path, bad), std::domain_error);
  bad = config;
  bad.c = 0.0;
  CHECK_THROWS_AS(estimate(path, bad), std::domain_error);
  bad = config;
  bad.alpha = 0.5;
  CHECK_THROWS_AS(estimate(path, bad), std::domain_error);
}

TEST_CASE("estimate is the two-count rule applied at tau and rho tau") {
  const LogPricePath path = random_path(400, 99, 0.3);
  const EstimatorConfig config;
  const double tau = config.tau(path.n());
  const ActivityEstimate est = estimate(path, config);
  CHECK(est.tau_n == tau);
  CHECK(est.a_tau_raw == jump_count(path, tau, config.m).raw);
  CHECK(est.a_rho_tau_raw == jump_count(path, config.rho * tau, config.m).raw);
  CHECK(est.n == 400);
}

TEST_CASE("injected counts recover the exact log ratio") {
  const EstimatorConfig config;
  const double a = 10.0;
  const ActivityEstimate est =
      estimate_from_counts(a, a * std::pow(2.0, 0.8), 1.0, 100, config);
  CHECK(est.beta_hat == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(!est.clipped_low);
  CHECK(!est.clipped_high);
  CHECK(!est.counts_clipped);
  REQUIRE(est.sigma_hat.has_value());
  const auto kc = jumpact::make_constants(est.beta_hat, config.rho);
  CHECK(*est.sigma_hat ==
        doctest::Approx(std::sqrt(kc.c_beta_rho * kc.k_beta / a)).epsilon(1e-12));
}

TEST_CASE("count corner cases clip and report degeneracy") {
  const EstimatorConfig config;

  SUBCASE("zero base count clips high with undefined spread") {
    const ActivityEstimate est = estimate_from_counts(0.0, 5.0, 2.0, 100, config);
    CHECK(est.beta_hat == 2.0);
    CHECK(est.clipped_high);
    CHECK(est.counts_clipped);
    CHECK(!est.sigma_hat.has_value());
    CHECK(confidence_interval(est, 0.95).empty);
    CHECK(standardized_error(est, 1.0) == -std::numeric_limits<double>::infinity());
  }

  SUBCASE("zero numerator count clips low") {
    const ActivityEstimate est = estimate_from_counts(5.0, 0.0, 2.0, 100, config);
    CHECK(est.beta_hat == 0.0);
    CHECK(est.clipped_low);
    CHECK(est.counts_clipped);
    CHECK(!est.sigma_hat.has_value());
    CHECK(confidence_interval(est, 0.95).empty);
  }

  SUBCASE("both zero reads as ratio one, reported as zero estimate") {
    const ActivityEstimate est = estimate_from_counts(0.0, 0.0, 2.0, 100, config);
    CHECK(est.beta_hat == 0.0);
    CHECK(!est.counts_clipped);
    CHECK(confidence_interval(est, 0.95).empty);
  }

  SUBCASE("negative smoothed counts are clipped at zero first") {
    const ActivityEstimate est = estimate_from_counts(-0.3, 2.0, 2.0, 100, config);
    CHECK(est.a_tau == 0.0);
    CHECK(est.a_tau_raw == -0.3);
    CHECK(est.beta_hat == 2.0);
    CHECK(est.counts_clipped);
  }

  SUBCASE("estimates inside the zero tolerance collapse to zero") {
    const ActivityEstimate est = estimate_from_counts(
        10.0, 10.0 * std::pow(2.0, 5e-4), 2.0, 100, config);
    CHECK(est.beta_hat == 0.0);
    CHECK(!est.sigma_hat.has_value());
  }
}

TEST_CASE("estimator is total on arbitrary paths") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const LogPricePath path = random_path(50, seed, seed % 7 == 0 ? 1e-6 : 0.5);
    const ActivityEstimate est = estimate(path);
    CHECK(est.beta_hat >= 0.0);
    CHECK(est.beta_hat <= 2.0);
    if (est.sigma_hat) {
      CHECK(std::isfinite(*est.sigma_hat));
      CHECK(*est.sigma_hat > 0.0);
    }
    const jumpact::Interval ci = confidence_interval(est, 0.95);
    if (!ci.empty) {
      CHECK(ci.lo >= 0.0);
      CHECK(ci.hi <= 2.0);
      CHECK(ci.lo < ci.hi);
    }
  }
}

TEST_CASE("counts are covariant under exact rescaling of the path") {
  // Scaling the path by s and the threshold by 1/s leaves every product
  // tau * increment unchanged; for power-of-two s this is exact in floating
  // point, so the counts agree bitwise.
  const LogPricePath path = random_path(300, 21, 0.2);
  const double tau = 1.7;
  for (double s : {2.0, 0.5, 1024.0}) {
    LogPricePath scaled;
    scaled.values.reserve(path.n());
    for (double v : path.values) scaled.values.push_back(s * v);
    for (int m : {1, 3}) {
      CHECK(jump_count(scaled, tau / s, m).raw == jump_count(path, tau, m).raw);
      CHECK(jump_count(scaled, tau / s, m).clipped ==
            jump_count(path, tau, m).clipped);
    }
  }
}

TEST_CASE("counts ignore a shared dyadic level shift") {
  // Second differences cancel a constant shift exactly when the values and
  // the shift live on one binary lattice.
  LogPricePath path;
  std::mt19937_64 engine(33);
  std::uniform_int_distribution<int> lattice(-512, 512);
  path.values.resize(200);
  for (double& v : path.values) v = lattice(engine) / 1024.0;
  LogPricePath shifted = path;
  for (double& v : shifted.values) v += 5.25;
  CHECK(jump_count(shifted, 2.0, 3).raw == jump_count(path, 2.0, 3).raw);
  const ActivityEstimate a = estimate(path);
  const ActivityEstimate b = estimate(shifted);
  CHECK(a.beta_hat == b.beta_hat);
  CHECK(a.a_tau == b.a_tau);
}

TEST_CASE("constant and affine paths give zero activity and no interval") {
  LogPricePath constant;
  constant.values.assign(64, 3.7);
  const ActivityEstimate est_const = estimate(constant);
  CHECK(est_const.beta_hat == 0.0);
  CHECK(confidence_interval(est_const, 0.95).empty);

  LogPricePath affine;
  affine.values.resize(64);
  for (std::size_t j = 0; j < affine.values.size(); ++j)
    affine.values[j] = 2.0 + 3.0 * (static_cast<double>(j) / 64.0);
  const ActivityEstimate est_affine = estimate(affine);
  CHECK(est_affine.beta_hat == 0.0);
  CHECK(confidence_interval(est_affine, 0.95).empty);
}

TEST_CASE("standardized error is affine in the hypothesized beta") {
  const LogPricePath path = planted_jump_path();
  const ActivityEstimate est = estimate(path);
  REQUIRE(est.sigma_hat.has_value());
  const double slope = -std::pow(est.tau_n, est.beta_hat / 2.0) / *est.sigma_hat;
  const double u1 = standardized_error(est, 0.5);
  const double u2 = standardized_error(est, 1.5);
  CHECK(u2 - u1 == doctest::Approx(slope).epsilon(1e-12));
  CHECK(standardized_error(est, est.beta_hat == 0.0 ? 1.0 : est.beta_hat) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(standardized_error(est, 0.0), std::domain_error);
  CHECK_THROWS_AS(standardized_error(est, 2.5), std::domain_error);
}

TEST_CASE("interval membership agrees with the standardized error test") {
  const double z = jumpact::normal_quantile(0.975);
  const LogPricePath path = planted_jump_path();
  const ActivityEstimate est = estimate(path);
  REQUIRE(est.sigma_hat.has_value());
  const jumpact::Interval ci = confidence_interval(est, 0.95);
  REQUIRE(!ci.empty);
  for (int i = 1; i < 40; ++i) {
    const double beta = i * 0.05;
    const bool inside = ci.contains(beta);
    const bool accepted = std::fabs(standardized_error(est, beta)) <= z;
    CHECK(inside == accepted);
  }
  CHECK(!ci.contains(0.0));
  CHECK(!ci.contains(2.0));
  CHECK_THROWS_AS(confidence_interval(est, 0.0), std::domain_error);
  CHECK_THROWS_AS(confidence_interval(est, 1.0), std::domain_error);
}

TEST_CASE("recovers the index of a clean stable path within its own error bar") {
  jumpact::SimulationModel model = jumpact::make_model(1.2, 0.01, 23400, 404);
  model.theta2 = 0.0;  // single stable component, no nuisance part
  model.noise_sd = 0.0;
  const jumpact::SimulatedPath sim = jumpact::simulate_path(model);
  const ActivityEstimate est = estimate(sim.clean);
  REQUIRE(est.sigma_hat.has_value());
  const double half_width = *est.sigma_hat * std::pow(est.tau_n, -est.beta_hat / 2.0);
  CHECK(std::fabs(est.beta_hat - 1.2) < 3.0 * half_width);
}
