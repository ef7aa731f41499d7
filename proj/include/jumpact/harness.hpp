#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jumpact/aj.hpp"
#include "jumpact/estimator.hpp"

namespace jumpact {

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  int bins = 1;
  std::vector<long long> counts;
  long long dropped = 0;  // non-finite or outside [lo, hi]

  Histogram(double lo_, double hi_, int bins_)
      : lo(lo_), hi(hi_), bins(bins_), counts(static_cast<std::size_t>(bins_), 0) {}

  void add(double x);
};

struct CellSummary {
  double beta_true = 0.0;
  double p = 0.0;
  std::string method;  // "multiscale" or "aj"
  double mean = 0.0;
  double std_dev = 0.0;
  double rmse = 0.0;
  double coverage = 0.0;  // empty intervals count as misses
  Histogram hist_beta{0.0, 2.0, 60};
  Histogram hist_u{-4.0, 4.0, 60};
  long long reps = 0;            // requested replications
  long long reps_effective = 0;  // replications that produced an estimate
  long long errors = 0;
  std::vector<double> estimates;  // one per effective replication, in rep order
  std::vector<double> u_values;   // finite standardized errors, in rep order
};

struct ExperimentGrid {
  std::vector<double> betas{0.4, 0.8, 1.2, 1.6};
  std::vector<double> ps{0.005, 0.01, 0.02};
  long long reps = 10000;
  double gamma = 0.95;
  std::uint64_t base_seed = 42;
  std::size_t n = 23400;
  std::size_t calib_n = 0;  // 0: calibrate thetas at n; else at this size
  int threads = 0;          // 0: hardware concurrency
  bool strict = false;      // rethrow per-replication failures
  bool verbose = false;     // one progress line per cell on stderr
  double noise_sd = 0.01;
  EstimatorConfig multiscale;
  double aj_c = 0.05;
  double aj_rho = 2.0;
  double aj_alpha = 0.2;
};

// Monte Carlo summaries for one (beta, p) cell: both estimators run on the
// same simulated paths. Results are identical for any thread count.
std::pair<CellSummary, CellSummary> run_cell(double beta_true, double p,
                                             const ExperimentGrid& grid,
                                             std::uint64_t cell_seed);

// All cells, beta-major then p; per cell the multiscale summary precedes aj.
std::vector<CellSummary> run_grid(const ExperimentGrid& grid);

// Write table.csv, rmse.csv, per-cell histogram files, and meta.json.
void emit(const std::vector<CellSummary>& table, const ExperimentGrid& grid,
          const std::string& out_dir);

}  // namespace jumpact
