#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace spreadnet {

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n - 1 denominator)
  std::size_t count = 0;
};

MeanVar mean_variance(std::span<const double> xs);

// Standard error of the mean: sqrt(variance / count).
double standard_error(const MeanVar& mv);

// Same quantity from running sums of x and x^2; zero when count < 2.
double se_from_sums(double sum, double sum_sq, int count);

// P[Z > z] for a standard normal Z.
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// P[X > x] for a chi-square variable with dof degrees of freedom.
double chi_square_sf(double x, int dof);

}  // namespace spreadnet
