#include "jumpact/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "jumpact/rng.hpp"
#include "jumpact/simulator.hpp"

namespace jumpact {

namespace {

constexpr std::uint64_t kCellStream = 0xce11ULL;

struct RepOutcome {
  double ms_beta = 0.0;
  double ms_u = 0.0;
  bool ms_cover = false;
  double aj_beta = 0.0;
  double aj_u = 0.0;
  bool aj_cover = false;
  bool ok = false;
  std::string error;
};

int effective_threads(const ExperimentGrid& grid) {
  if (grid.threads > 0) return grid.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void finish_cell(CellSummary& cell) {
  const std::size_t ne = cell.estimates.size();
  cell.reps_effective = static_cast<long long>(ne);
  if (ne == 0) return;
  double sum = 0.0;
  for (double x : cell.estimates) sum += x;
  cell.mean = sum / static_cast<double>(ne);
  double var_sum = 0.0, err_sum = 0.0;
  for (double x : cell.estimates) {
    const double d = x - cell.mean;
    var_sum += d * d;
    const double e = x - cell.beta_true;
    err_sum += e * e;
  }
  cell.std_dev = ne > 1 ? std::sqrt(var_sum / static_cast<double>(ne - 1)) : 0.0;
  cell.rmse = std::sqrt(err_sum / static_cast<double>(ne));
}

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& file)
      : path_(file.string()), out_(std::fopen(path_.c_str(), "w")) {
    if (!out_) throw std::runtime_error("cannot open " + path_ + " for writing");
  }
  ~CsvFile() {
    if (out_) std::fclose(out_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void line(const std::string& text) {
    std::fputs(text.c_str(), out_);
    std::fputc('\n', out_);
  }
  void close() {
    if (out_ && std::fclose(out_) != 0)
      throw std::runtime_error("error writing " + path_);
    out_ = nullptr;
  }

 private:
  std::string path_;
  std::FILE* out_;
};

void emit_histogram(const std::filesystem::path& file, const Histogram& hist) {
  CsvFile out(file);
  out.line("bin_lo,bin_hi,count");
  const double width = hist.hi - hist.lo;
  for (int i = 0; i < hist.bins; ++i) {
    const double lo = hist.lo + width * i / hist.bins;
    const double hi = hist.lo + width * (i + 1) / hist.bins;
    out.line(fmt17(lo) + "," + fmt17(hi) + "," +
             std::to_string(hist.counts[static_cast<std::size_t>(i)]));
  }
  out.close();
}

}  // namespace

void Histogram::add(double x) {
  if (!std::isfinite(x) || x < lo || x > hi) {
    ++dropped;
    return;
  }
  int b = x == hi ? bins - 1
                  : static_cast<int>((x - lo) / (hi - lo) * bins);
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;
  ++counts[static_cast<std::size_t>(b)];
}

std::pair<CellSummary, CellSummary> run_cell(double beta_true, double p,
                                             const ExperimentGrid& grid,
                                             std::uint64_t cell_seed) {
  if (grid.reps < 1) throw std::domain_error("run_cell: reps must be >= 1");
  const std::size_t calib_n = grid.calib_n > 0 ? grid.calib_n : grid.n;
  SimulationModel proto = make_model(beta_true, p, calib_n);
  proto.n = grid.n;
  proto.noise_sd = grid.noise_sd;

  const long long reps = grid.reps;
  std::vector<RepOutcome> outcomes(static_cast<std::size_t>(reps));
  std::atomic<long long> next{0};
  const auto worker = [&] {
    for (;;) {
      const long long r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= reps) break;
      RepOutcome& out = outcomes[static_cast<std::size_t>(r)];
      try {
        SimulationModel model = proto;
        model.seed = derive_seed(cell_seed, static_cast<std::uint64_t>(r));
        const SimulatedPath path = simulate_path(model);

        const ActivityEstimate est = estimate(path.observed, grid.multiscale);
        out.ms_beta = est.beta_hat;
        out.ms_u = standardized_error(est, beta_true);
        out.ms_cover = confidence_interval(est, grid.gamma).contains(beta_true);

        const AjEstimate aj =
            aj_estimate(path.observed, grid.aj_c, grid.aj_rho, grid.aj_alpha);
        out.aj_beta = aj.beta_tilde;
        const std::optional<double> aj_u = aj_standardized_error(aj, beta_true);
        out.aj_u = aj_u ? *aj_u : -std::numeric_limits<double>::infinity();
        out.aj_cover = aj_confidence_interval(aj, grid.gamma).contains(beta_true);
        out.ok = true;
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };

  const int threads = effective_threads(grid);
  if (threads <= 1 || reps == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  CellSummary ms, aj;
  ms.beta_true = aj.beta_true = beta_true;
  ms.p = aj.p = p;
  ms.method = "multiscale";
  aj.method = "aj";
  ms.reps = aj.reps = reps;
  ms.estimates.reserve(static_cast<std::size_t>(reps));
  aj.estimates.reserve(static_cast<std::size_t>(reps));

  // Folded strictly in replication order so results are thread-count invariant.
  for (const RepOutcome& out : outcomes) {
    if (!out.ok) {
      if (grid.strict)
        throw std::runtime_error("run_cell: replication failed: " + out.error);
      ++ms.errors;
      ++aj.errors;
      continue;
    }
    ms.estimates.push_back(out.ms_beta);
    ms.hist_beta.add(out.ms_beta);
    ms.hist_u.add(out.ms_u);
    if (std::isfinite(out.ms_u)) ms.u_values.push_back(out.ms_u);
    if (out.ms_cover) ms.coverage += 1.0;

    aj.estimates.push_back(out.aj_beta);
    aj.hist_beta.add(out.aj_beta);
    aj.hist_u.add(out.aj_u);
    if (std::isfinite(out.aj_u)) aj.u_values.push_back(out.aj_u);
    if (out.aj_cover) aj.coverage += 1.0;
  }
  finish_cell(ms);
  finish_cell(aj);
  if (ms.reps_effective > 0)
    ms.coverage /= static_cast<double>(ms.reps_effective);
  if (aj.reps_effective > 0)
    aj.coverage /= static_cast<double>(aj.reps_effective);
  return {std::move(ms), std::move(aj)};
}

std::vector<CellSummary> run_grid(const ExperimentGrid& grid) {
  std::vector<CellSummary> table;
  table.reserve(grid.betas.size() * grid.ps.size() * 2);
  std::uint64_t cell_index = 0;
  for (double beta : grid.betas)
    for (double p : grid.ps) {
      const std::uint64_t cell_seed =
          derive_seed(grid.base_seed, kCellStream, cell_index);
      auto [ms, aj] = run_cell(beta, p, grid, cell_seed);
      if (grid.verbose)
        std::fprintf(stderr,
                     "cell beta=%g p=%g done: multiscale mean=%.4f cov=%.3f | "
                     "aj mean=%.4f cov=%.3f\n",
                     beta, p, ms.mean, ms.coverage, aj.mean, aj.coverage);
      table.push_back(std::move(ms));
      table.push_back(std::move(aj));
      ++cell_index;
    }
  return table;
}

void emit(const std::vector<CellSummary>& table, const ExperimentGrid& grid,
          const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  CsvFile main_csv(dir / "table.csv");
  main_csv.line("beta,p,method,mean,std,coverage,rmse,reps");
  for (const CellSummary& cell : table)
    main_csv.line(fmt17(cell.beta_true) + "," + fmt17(cell.p) + "," +
                  cell.method + "," + fmt17(cell.mean) + "," +
                  fmt17(cell.std_dev) + "," + fmt17(cell.coverage) + "," +
                  fmt17(cell.rmse) + "," + std::to_string(cell.reps_effective));
  main_csv.close();

  CsvFile rmse_csv(dir / "rmse.csv");
  rmse_csv.line("beta,p,method,rmse");
  for (const CellSummary& cell : table)
    rmse_csv.line(fmt17(cell.beta_true) + "," + fmt17(cell.p) + "," +
                  cell.method + "," + fmt17(cell.rmse));
  rmse_csv.close();

  for (const CellSummary& cell : table) {
    const std::string tag = cell.method + "_beta" + fmt_short(cell.beta_true) +
                            "_p" + fmt_short(cell.p);
    emit_histogram(dir / ("hist_beta_" + tag + ".csv"), cell.hist_beta);
    emit_histogram(dir / ("hist_u_" + tag + ".csv"), cell.hist_u);
  }

  nlohmann::ordered_json meta;
  meta["betas"] = grid.betas;
  meta["ps"] = grid.ps;
  meta["reps"] = grid.reps;
  meta["gamma"] = grid.gamma;
  meta["seed"] = grid.base_seed;
  meta["n"] = grid.n;
  meta["calib_n"] = grid.calib_n > 0 ? grid.calib_n : grid.n;
  meta["noise_sd"] = grid.noise_sd;
  meta["multiscale"] = {{"m", grid.multiscale.m},
                        {"rho", grid.multiscale.rho},
                        {"c", grid.multiscale.c},
                        {"alpha", grid.multiscale.effective_alpha()}};
  meta["aj"] = {{"c", grid.aj_c}, {"rho", grid.aj_rho}, {"alpha", grid.aj_alpha}};
  meta["histograms"] = {
      {"beta", {{"lo", 0.0}, {"hi", 2.0}, {"bins", 60}}},
      {"u", {{"lo", -4.0}, {"hi", 4.0}, {"bins", 60}}},
      {"note", "standardized errors outside the u range are not binned"}};
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const CellSummary& cell : table)
    cells.push_back({{"beta", cell.beta_true},
                     {"p", cell.p},
                     {"method", cell.method},
                     {"reps_effective", cell.reps_effective},
                     {"errors", cell.errors},
                     {"u_dropped", cell.hist_u.dropped}});
  meta["cells"] = cells;

  std::ofstream meta_out(dir / "meta.json");
  if (!meta_out)
    throw std::runtime_error("cannot open " + (dir / "meta.json").string());
  meta_out << meta.dump(2) << '\n';
  meta_out.close();
  if (!meta_out)
    throw std::runtime_error("error writing " + (dir / "meta.json").string());
}

}  // namespace jumpact
