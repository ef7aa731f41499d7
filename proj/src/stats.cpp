#include "jumpact/stats.hpp"

#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace jumpact {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);
}

double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p must lie in (0,1)");
  return boost::math::quantile(kStdNormal, p);
}

}  // namespace jumpact
