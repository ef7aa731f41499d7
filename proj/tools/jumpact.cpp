#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jumpact/aj.hpp"
#include "jumpact/csv.hpp"
#include "jumpact/estimator.hpp"
#include "jumpact/harness.hpp"
#include "jumpact/kernel.hpp"
#include "jumpact/simulator.hpp"

namespace {

#ifndef JUMPACT_VERSION
#define JUMPACT_VERSION "0.0.0"
#endif

// JSON scalar with round-trip precision; non-finite values print as null.
std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string human_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string json_interval(const jumpact::Interval& ci, double gamma) {
  std::string out = "{\"gamma\":" + json_number(gamma);
  out += ",\"empty\":" + json_bool(ci.empty);
  if (ci.empty)
    out += ",\"lo\":null,\"hi\":null}";
  else
    out += ",\"lo\":" + json_number(ci.lo) + ",\"hi\":" + json_number(ci.hi) + "}";
  return out;
}

struct ConstantsArgs {
  double beta = 0.0;
  double rho = 2.0;
  bool json = false;
};

int run_constants(const ConstantsArgs& args) {
  const jumpact::KernelConstants kc = jumpact::make_constants(args.beta, args.rho);
  if (args.json) {
    std::printf("{\"beta\":%s,\"rho\":%s,\"c_beta\":%s,\"k_beta\":%s,"
                "\"k_beta_rho\":%s,\"kbar_beta_rho\":%s,\"kbar_beta_1\":%s,"
                "\"c_beta_rho\":%s}\n",
                json_number(kc.beta).c_str(), json_number(kc.rho).c_str(),
                json_number(kc.c_beta).c_str(), json_number(kc.k_beta).c_str(),
                json_number(kc.k_beta_rho).c_str(),
                json_number(kc.kbar_beta_rho).c_str(),
                json_number(kc.kbar_beta_1).c_str(),
                json_number(kc.c_beta_rho).c_str());
  } else {
    std::printf("beta          = %s\n", human_number(kc.beta).c_str());
    std::printf("rho           = %s\n", human_number(kc.rho).c_str());
    std::printf("c_beta        = %s\n", human_number(kc.c_beta).c_str());
    std::printf("k_beta        = %s\n", human_number(kc.k_beta).c_str());
    std::printf("k_beta_rho    = %s\n", human_number(kc.k_beta_rho).c_str());
    std::printf("kbar_beta_rho = %s\n", human_number(kc.kbar_beta_rho).c_str());
    std::printf("kbar_beta_1   = %s\n", human_number(kc.kbar_beta_1).c_str());
    std::printf("c_beta_rho    = %s\n", human_number(kc.c_beta_rho).c_str());
  }
  return 0;
}

struct EstimateArgs {
  std::string input;
  std::string column = "logprice";
  std::string method = "multiscale";
  int m = 3;
  double c = 0.05;
  double rho = 2.0;
  double alpha = 0.0;  // 0: method default
  double gamma = 0.95;
  double scale = 1.0;
  bool json = false;
};

int run_estimate(const EstimateArgs& args) {
  std::vector<double> values = jumpact::read_csv_column(args.input, args.column);
  if (args.scale != 1.0)
    for (double& v : values) v *= args.scale;
  const jumpact::LogPricePath path{std::move(values)};

  if (args.method == "aj") {
    const double alpha = args.alpha > 0.0 ? args.alpha : 0.2;
    const jumpact::AjEstimate est =
        jumpact::aj_estimate(path, args.c, args.rho, alpha);
    const jumpact::Interval ci = jumpact::aj_confidence_interval(est, args.gamma);
    if (args.json) {
      std::printf("{\"method\":\"aj\",\"n\":%zu,\"beta_tilde\":%s,\"tau_n\":%s,"
                  "\"count_tau\":%lld,\"count_rho_tau\":%lld,\"clipped\":%s,"
                  "\"ci\":%s}\n",
                  est.n, json_number(est.beta_tilde).c_str(),
                  json_number(est.tau_n).c_str(), est.count_tau,
                  est.count_rho_tau, json_bool(est.clipped).c_str(),
                  json_interval(ci, args.gamma).c_str());
    } else {
      std::printf("method        = aj\n");
      std::printf("n             = %zu\n", est.n);
      std::printf("beta_tilde    = %s\n", human_number(est.beta_tilde).c_str());
      std::printf("tau_n         = %s\n", human_number(est.tau_n).c_str());
      std::printf("count_tau     = %lld\n", est.count_tau);
      std::printf("count_rho_tau = %lld\n", est.count_rho_tau);
      std::printf("clipped       = %s\n", est.clipped ? "yes" : "no");
      if (ci.empty)
        std::printf("ci            = (unavailable)\n");
      else
        std::printf("ci            = [%s, %s] at %s\n",
                    human_number(ci.lo).c_str(), human_number(ci.hi).c_str(),
                    human_number(args.gamma).c_str());
    }
    return 0;
  }

  jumpact::EstimatorConfig config;
  config.m = args.m;
  config.c = args.c;
  config.rho = args.rho;
  config.alpha = args.alpha;
  config.gamma_levels = {args.gamma};
  const jumpact::ActivityEstimate est = jumpact::estimate(path, config);
  const jumpact::Interval ci = jumpact::confidence_interval(est, args.gamma);
  const double sigma = est.sigma_hat
                           ? *est.sigma_hat
                           : std::numeric_limits<double>::quiet_NaN();
  if (args.json) {
    std::printf("{\"method\":\"multiscale\",\"n\":%zu,\"beta_hat\":%s,"
                "\"tau_n\":%s,\"a_tau\":%s,\"a_rho_tau\":%s,\"a_tau_raw\":%s,"
                "\"a_rho_tau_raw\":%s,\"sigma_hat\":%s,\"clipped_low\":%s,"
                "\"clipped_high\":%s,\"counts_clipped\":%s,\"ci\":%s}\n",
                est.n, json_number(est.beta_hat).c_str(),
                json_number(est.tau_n).c_str(), json_number(est.a_tau).c_str(),
                json_number(est.a_rho_tau).c_str(),
                json_number(est.a_tau_raw).c_str(),
                json_number(est.a_rho_tau_raw).c_str(),
                json_number(sigma).c_str(), json_bool(est.clipped_low).c_str(),
                json_bool(est.clipped_high).c_str(),
                json_bool(est.counts_clipped).c_str(),
                json_interval(ci, args.gamma).c_str());
  } else {
    std::printf("method        = multiscale (m = %d)\n", args.m);
    std::printf("n             = %zu\n", est.n);
    std::printf("beta_hat      = %s\n", human_number(est.beta_hat).c_str());
    std::printf("tau_n         = %s\n", human_number(est.tau_n).c_str());
    std::printf("a_tau         = %s\n", human_number(est.a_tau).c_str());
    std::printf("a_rho_tau     = %s\n", human_number(est.a_rho_tau).c_str());
    std::printf("sigma_hat     = %s\n",
                est.sigma_hat ? human_number(sigma).c_str() : "(undefined)");
    if (ci.empty)
      std::printf("ci            = (unavailable)\n");
    else
      std::printf("ci            = [%s, %s] at %s\n",
                  human_number(ci.lo).c_str(), human_number(ci.hi).c_str(),
                  human_number(args.gamma).c_str());
    if (est.counts_clipped) std::printf("note: a smoothed count was clipped at zero\n");
  }
  return 0;
}

struct SimulateArgs {
  double beta = 0.0;
  double p = 0.0;
  std::size_t n = 23400;
  double noise_sd = 0.01;
  std::uint64_t seed = 0;
  std::string out;
  std::string clean_out;
};

int run_simulate(const SimulateArgs& args) {
  jumpact::SimulationModel model =
      jumpact::make_model(args.beta, args.p, args.n, args.seed);
  model.noise_sd = args.noise_sd;
  const jumpact::SimulatedPath path = jumpact::simulate_path(model);
  jumpact::write_path_csv(args.out, path.observed);
  if (!args.clean_out.empty()) jumpact::write_path_csv(args.clean_out, path.clean);
  std::printf("simulated n=%zu beta=%s p=%s seed=%llu theta1=%s theta2=%s\n",
              model.n, human_number(model.beta).c_str(),
              human_number(model.p).c_str(),
              static_cast<unsigned long long>(model.seed),
              human_number(model.theta1).c_str(),
              human_number(model.theta2).c_str());
  std::printf("wrote %s\n", args.out.c_str());
  if (!args.clean_out.empty()) std::printf("wrote %s\n", args.clean_out.c_str());
  return 0;
}

struct ExperimentArgs {
  jumpact::ExperimentGrid grid;
  std::string out;
  bool quick = false;
  bool reps_given = false;
};

int run_experiment(ExperimentArgs& args) {
  if (args.quick && !args.reps_given) args.grid.reps = 2000;
  args.grid.verbose = true;
  const std::vector<jumpact::CellSummary> table = jumpact::run_grid(args.grid);
  jumpact::emit(table, args.grid, args.out);
  std::printf("wrote %s\n", args.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jump activity index estimation for high-frequency log prices"};
  app.set_version_flag("--version", std::string("jumpact ") + JUMPACT_VERSION);
  app.set_config("--config");
  app.require_subcommand(1);

  ConstantsArgs constants_args;
  CLI::App* constants_cmd =
      app.add_subcommand("constants", "Kernel constants for a given beta and rho");
  constants_cmd->add_option("--beta", constants_args.beta, "Activity index in (0, 2]")
      ->required();
  constants_cmd->add_option("--rho", constants_args.rho, "Threshold ratio > 1")
      ->capture_default_str();
  constants_cmd->add_flag("--json", constants_args.json, "Machine-readable output");

  EstimateArgs estimate_args;
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "Estimate the activity index from a CSV path");
  estimate_cmd->add_option("--input", estimate_args.input, "CSV file with a header row")
      ->required();
  estimate_cmd->add_option("--column", estimate_args.column, "Log-price column name")
      ->capture_default_str();
  estimate_cmd
      ->add_option("--method", estimate_args.method, "multiscale or aj")
      ->check(CLI::IsMember({"multiscale", "aj"}))
      ->capture_default_str();
  estimate_cmd->add_option("--m", estimate_args.m, "Number of scales")
      ->capture_default_str();
  estimate_cmd->add_option("--c", estimate_args.c, "Threshold constant")
      ->capture_default_str();
  estimate_cmd->add_option("--rho", estimate_args.rho, "Threshold ratio > 1")
      ->capture_default_str();
  estimate_cmd->add_option("--alpha", estimate_args.alpha,
                           "Threshold exponent; method default when omitted");
  estimate_cmd->add_option("--gamma", estimate_args.gamma, "Confidence level")
      ->capture_default_str();
  estimate_cmd->add_option("--scale", estimate_args.scale,
                           "Multiply log prices by this factor first")
      ->capture_default_str();
  estimate_cmd->add_flag("--json", estimate_args.json, "Machine-readable output");

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Simulate one path of the test model");
  simulate_cmd->add_option("--beta", simulate_args.beta, "Activity index in (0.2, 2)")
      ->required();
  simulate_cmd->add_option("--p", simulate_args.p, "Large-jump probability per path")
      ->required();
  simulate_cmd->add_option("--n", simulate_args.n, "Observations per path")
      ->capture_default_str();
  simulate_cmd->add_option("--noise-sd", simulate_args.noise_sd,
                           "Observation noise standard deviation")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_args.seed, "Random seed")->required();
  simulate_cmd->add_option("--out", simulate_args.out, "Output CSV for noisy path")
      ->required();
  simulate_cmd->add_option("--clean-out", simulate_args.clean_out,
                           "Optional output CSV for the noise-free path");

  ExperimentArgs experiment_args;
  CLI::App* experiment_cmd =
      app.add_subcommand("experiment", "Monte Carlo study over a (beta, p) grid");
  experiment_cmd->add_option("--betas", experiment_args.grid.betas, "Grid of betas")
      ->capture_default_str();
  experiment_cmd->add_option("--ps", experiment_args.grid.ps,
                             "Grid of large-jump probabilities")
      ->capture_default_str();
  CLI::Option* reps_opt =
      experiment_cmd->add_option("--reps", experiment_args.grid.reps,
                                 "Replications per cell")
          ->capture_default_str();
  experiment_cmd->add_option("--seed", experiment_args.grid.base_seed, "Base seed")
      ->capture_default_str();
  experiment_cmd->add_option("--threads", experiment_args.grid.threads,
                             "Worker threads; 0 uses all cores");
  experiment_cmd->add_option("--n", experiment_args.grid.n, "Observations per path")
      ->capture_default_str();
  experiment_cmd->add_option("--out", experiment_args.out, "Output directory")
      ->required();
  experiment_cmd->add_flag("--quick", experiment_args.quick,
                           "Preset: 2000 replications per cell");
  experiment_cmd->add_flag("--strict", experiment_args.grid.strict,
                           "Abort on any replication failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*constants_cmd) return run_constants(constants_args);
    if (*estimate_cmd) return run_estimate(estimate_args);
    if (*simulate_cmd) return run_simulate(simulate_args);
    if (*experiment_cmd) {
      experiment_args.reps_given = reps_opt->count() > 0;
      if (experiment_cmd->get_option("--threads")->count() == 0) {
        if (const char* env = std::getenv("JUMPACT_THREADS")) {
          const int t = std::atoi(env);
          if (t > 0) experiment_args.grid.threads = t;
        }
      }
      return run_experiment(experiment_args);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
