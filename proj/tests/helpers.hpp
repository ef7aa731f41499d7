#pragma once

// Oracles and utilities shared by the test binaries. Everything here is
// deliberately brute-force and independent of the library's own quadrature
// choices wherever a value is being cross-checked.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumpact/kernel.hpp"
#include "jumpact/quadrature.hpp"

namespace testutil {

// Midpoint rule with a long-double accumulator; error O(panels^-2).
template <class F>
double riemann(F f, double a, double b, std::size_t panels = 1000000) {
  const double h = (b - a) / static_cast<double>(panels);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < panels; ++i)
    sum += f(a + (static_cast<double>(i) + 0.5) * h);
  return static_cast<double>(sum * h);
}

template <class Cdf>
double ks_one_sample(std::vector<double> xs, Cdf cdf) {
  if (xs.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

inline double cauchy_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }

// int_0^inf (1 - cos(ux)) x^-(1+beta) dx: series head on [0, eps], adaptive
// body, exact power tail with a two-term integration-by-parts correction for
// the oscillatory remainder.
inline double ft_i_oracle(double beta, double u) {
  const double eps = 1e-3;
  const double big = 200.0;

  double head = 0.0;
  const double coef[] = {1.0 / 2.0, -1.0 / 24.0, 1.0 / 720.0, -1.0 / 40320.0};
  for (int k = 1; k <= 4; ++k)
    head += coef[k - 1] * std::pow(u, 2 * k) *
            std::pow(eps, 2 * k - beta) / (2 * k - beta);

  std::vector<double> brk;
  const double step = std::numbers::pi / u;
  for (double t = step; t < big; t += step)
    if (t > eps) brk.push_back(t);
  const double body = jumpact::integrate(
      [beta, u](double x) {
        return (1.0 - std::cos(u * x)) * std::pow(x, -(1.0 + beta));
      },
      eps, big, 1e-10, 1e-16, brk);

  const double tail_power = std::pow(big, -beta) / beta;
  const double tail_osc =
      std::sin(u * big) * std::pow(big, -(1.0 + beta)) / u -
      (1.0 + beta) * std::cos(u * big) * std::pow(big, -(2.0 + beta)) / (u * u);
  return head + body + tail_power + tail_osc;
}

// Smallest u beyond which the kernel transform's envelope stays below the
// floor; scanned on half-unit steps.
inline double fourier_cutoff(double floor_value = 1e-12) {
  for (double u = 4.0; u < 400.0; u += 0.5) {
    double peak = 0.0;
    for (int i = 0; i <= 16; ++i)
      peak = std::max(peak, std::fabs(jumpact::fourier_K(u + 0.5 * i / 16.0)));
    if (peak < floor_value) return u;
  }
  return 400.0;
}

// c_beta * int over R of fourier_K(u) |u|^beta du, truncated at the cutoff.
inline double ft_ii_value(double beta, double cutoff) {
  std::vector<double> brk;
  for (double t = std::numbers::pi; t < cutoff; t += std::numbers::pi)
    brk.push_back(t);
  const double half = jumpact::integrate(
      [beta](double u) { return jumpact::fourier_K(u) * std::pow(u, beta); },
      0.0, cutoff, 1e-7, 1e-12, brk);
  return jumpact::c_beta(beta) * 2.0 * half;
}

// Standard stable increment over unit time built from explicit jumps above a
// cut plus a variance-matched Gaussian proxy for the small jumps. Converges
// in law to the characteristic function exp(-|u|^beta) as the cut shrinks.
class JumpExplicitStable {
 public:
  JumpExplicitStable(double beta, double cut)
      : beta_(beta),
        cut_(cut),
        rate_(2.0 * std::pow(cut, -beta) / (beta * jumpact::c_beta(beta))),
        small_sd_(std::sqrt(2.0 * std::pow(cut, 2.0 - beta) /
                            ((2.0 - beta) * jumpact::c_beta(beta)))),
        poisson_(rate_) {}

  double operator()(std::mt19937_64& engine) {
    double x = small_sd_ * normal_(engine);
    const int jumps = poisson_(engine);
    for (int i = 0; i < jumps; ++i) {
      double u = uniform_(engine);
      while (!(u > 0.0)) u = uniform_(engine);
      const double magnitude = cut_ * std::pow(u, -1.0 / beta_);
      x += uniform_(engine) < 0.5 ? magnitude : -magnitude;
    }
    return x;
  }

  double rate() const { return rate_; }

 private:
  double beta_, cut_, rate_, small_sd_;
  std::poisson_distribution<int> poisson_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

inline CommandResult run_command(const std::string& command) {
  std::FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::string output;
  char buffer[4096];
  std::size_t got;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
    output.append(buffer, got);
  const int status = pclose(pipe);
  CommandResult result;
  result.output = std::move(output);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string jumpact_bin() {
  const char* env = std::getenv("JUMPACT_BIN");
  if (!env) throw std::runtime_error("JUMPACT_BIN is not set");
  return env;
}

inline std::string make_temp_dir() {
  char templ[] = "/tmp/jumpact_test_XXXXXX";
  const char* dir = mkdtemp(templ);
  if (!dir) throw std::runtime_error("mkdtemp failed");
  return dir;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace testutil
