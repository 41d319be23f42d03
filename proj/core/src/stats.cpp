#include "spreadnet/stats.hpp"

#include <cmath>
#include <limits>

#include "spreadnet/errors.hpp"

namespace spreadnet {

MeanVar mean_variance(std::span<const double> xs) {
  // Welford's online algorithm.
  MeanVar mv;
  double m2 = 0.0;
  for (double x : xs) {
    ++mv.count;
    double d = x - mv.mean;
    mv.mean += d / static_cast<double>(mv.count);
    m2 += d * (x - mv.mean);
  }
  mv.variance = mv.count > 1 ? m2 / static_cast<double>(mv.count - 1) : 0.0;
  return mv;
}

double standard_error(const MeanVar& mv) {
  if (mv.count == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(mv.variance / static_cast<double>(mv.count));
}

double se_from_sums(double sum, double sum_sq, int count) {
  if (count < 2) return 0.0;
  const double mean = sum / count;
  double var = (sum_sq - sum * mean) / (count - 1);
  if (var < 0.0) var = 0.0;  // cancellation guard
  return std::sqrt(var / count);
}

namespace {

// Lower incomplete gamma by series expansion; valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction; x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x)) {
    throw ValidationError("regularized_gamma_p: need a > 0 and finite x >= 0");
  }
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x)) {
    throw ValidationError("regularized_gamma_q: need a > 0 and finite x >= 0");
  }
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_sf(double x, int dof) {
  if (dof < 1) throw ValidationError("chi_square_sf: dof must be >= 1");
  if (!(x >= 0.0)) throw ValidationError("chi_square_sf: x must be >= 0");
  return regularized_gamma_q(0.5 * static_cast<double>(dof), 0.5 * x);
}

}  // namespace spreadnet
