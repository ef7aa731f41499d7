#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace jumpact {

// Thrown when adaptive subdivision stalls before the requested tolerance;
// carries the relative error that was actually reached.
struct QuadratureError : std::runtime_error {
  double achieved_rel;
  explicit QuadratureError(double achieved)
      : std::runtime_error("quadrature did not converge, achieved relative error " +
                           std::to_string(achieved)),
        achieved_rel(achieved) {}
};

namespace detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1,1]; Gauss nodes sit at the
// odd Kronrod indices plus the midpoint.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  value = resk * h;
  err = std::fabs((resk - resg) * h);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over the finite interval [a,b].
// Interior breakpoints seed the initial partition (used to isolate the
// piecewise joins of the kernel). Terminates when the summed error estimate
// drops below max(abs_tol, rel_tol*|integral|).
template <class F>
double integrate(F f, double a, double b, double rel_tol = 1e-9,
                 double abs_tol = 1e-14, std::vector<double> breakpoints = {}) {
  if (!(b > a)) return 0.0;

  struct Seg {
    double a, b, value, err;
  };
  struct ByErr {
    bool operator()(const Seg& x, const Seg& y) const { return x.err < y.err; }
  };
  std::priority_queue<Seg, std::vector<Seg>, ByErr> heap;

  // A panel whose rule hits a non-finite value contributes nothing to the
  // total and carries infinite error, so it is refined first; if refinement
  // cannot localize the problem the segment budget runs out and we throw.
  const auto eval = [&f](Seg& s) {
    detail::gk15(f, s.a, s.b, s.value, s.err);
    if (!std::isfinite(s.value) || !std::isfinite(s.err)) {
      s.value = 0.0;
      s.err = std::numeric_limits<double>::infinity();
    }
  };

  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  double total = 0.0, live_err = 0.0, frozen_err = 0.0;
  int n_seg = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (!(lo >= a && hi <= b && hi > lo)) continue;
    Seg s{lo, hi, 0.0, 0.0};
    eval(s);
    total += s.value;
    live_err += s.err;
    heap.push(s);
    ++n_seg;
  }

  const int max_segments = 4000;
  while (live_err + frozen_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (heap.empty() || n_seg >= max_segments) {
      const double scale = std::max(std::fabs(total), 1e-300);
      throw QuadratureError((live_err + frozen_err) / scale);
    }
    Seg s = heap.top();
    heap.pop();
    live_err -= s.err;
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      frozen_err += s.err;  // interval at floating-point resolution
      continue;
    }
    total -= s.value;
    Seg l{s.a, mid, 0.0, 0.0}, r{mid, s.b, 0.0, 0.0};
    eval(l);
    eval(r);
    total += l.value + r.value;
    live_err += l.err + r.err;
    heap.push(l);
    heap.push(r);
    ++n_seg;
  }
  return total;
}

}  // namespace jumpact
