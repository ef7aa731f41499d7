#pragma once

namespace jumpact {

// Relative tolerance for all constant-defining quadratures.
inline constexpr double kQuadRelTol = 1e-9;

// Smoothed jump-counting kernel: even, C^inf, identically 1 on [-1,1] and 0
// outside (-2,2), with a logistic bump joining the two plateaus.
double kernel_K(double x);

// Fourier transform of the kernel, 2*int_0^2 K(x)cos(ux) dx; real and even,
// fourier_K(0) = 3.
double fourier_K(double u);

// CLT tail constant C_beta = -2*Gamma(-beta)*cos(beta*pi/2), equal to pi at
// beta = 1; beta in (0,2).
double c_beta(double beta);

// K_beta = int (1-K(x))|x|^-(1+beta) dx over the real line.
double compute_k_beta(double beta, double rel_tol = kQuadRelTol);

// K_{beta,rho} = int (K(x)-K(rho x))^2 |x|^-(1+beta) dx; rho > 1.
double compute_k_beta_rho(double beta, double rho, double rel_tol = kQuadRelTol);

// Kbar_{beta,rho} = rho^(-beta/2) int (1-K(x))(1-K(rho x))|x|^-(1+beta) dx;
// rho >= 1.
double compute_kbar_beta_rho(double beta, double rho, double rel_tol = kQuadRelTol);

struct KernelConstants {
  double beta = 0.0;
  double rho = 0.0;
  double k_beta = 0.0;
  double k_beta_rho = 0.0;
  double kbar_beta_rho = 0.0;
  double kbar_beta_1 = 0.0;
  double c_beta_rho = 0.0;  // k_beta_rho / (rho^beta ln(rho)^2 k_beta^2)
  double c_beta = 0.0;      // +inf at beta = 2, where the integrals are still finite
};

// All constants for (beta, rho); beta in (0,2], rho > 1. Memoized per exact
// (beta, rho) bit pattern; thread-safe.
KernelConstants make_constants(double beta, double rho);

}  // namespace jumpact
