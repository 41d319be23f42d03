#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "spreadnet/errors.hpp"

namespace spreadnet {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0)) throw ValidationError("QuadratureSpec: abs_tol must be > 0");
    if (!(rel_tol >= 1e-12)) throw ValidationError("QuadratureSpec: rel_tol must be >= 1e-12");
    if (max_subdivisions < 50) throw ValidationError("QuadratureSpec: max_subdivisions must be >= 50");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace quad_detail {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                                  0.3818300505051189, 0.4179591836734694};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double hlen = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = hlen * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
  }
  // Odd-index Kronrod nodes coincide with the Gauss nodes.
  resg += kWg[0] * (fv1[1] + fv2[1]);
  resg += kWg[1] * (fv1[3] + fv2[3]);
  resg += kWg[2] * (fv1[5] + fv2[5]);

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }

  const double value = resk * hlen;
  resabs *= std::fabs(hlen);
  resasc *= std::fabs(hlen);
  double err = std::fabs((resk - resg) * hlen);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50) {
    err = std::max(eps50 * resabs, err);
  }
  return {a, b, value, err};
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
// Throws QuadratureError if the tolerance is not reached within the
// subdivision budget; there is no silent fallback.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureSpec& spec = {}) {
  spec.validate();
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<quad_detail::Segment> segments;
  quad_detail::Segment whole = quad_detail::gauss_kronrod_15(f, a, b);
  double total_value = whole.value;
  double total_error = whole.error;
  segments.push(whole);

  int subdivisions = 0;
  while (total_error >
         std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_value))) {
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureError(
          "integrate: tolerance not reached after " +
          std::to_string(subdivisions) + " subdivisions (error estimate " +
          std::to_string(total_error) + ")");
    }
    quad_detail::Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
      throw QuadratureError(
          "integrate: interval no longer subdividable; tolerance unreachable");
    }
    quad_detail::Segment left = quad_detail::gauss_kronrod_15(f, worst.a, mid);
    quad_detail::Segment right = quad_detail::gauss_kronrod_15(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    segments.push(left);
    segments.push(right);
    ++subdivisions;
  }
  return {total_value, total_error, subdivisions};
}

// Integration of f over [a, inf) via the substitution x = a + s*t/(1-t),
// which maps t in [0,1) onto the half line. `scale` sets the substitution
// constant s and should be of the order of the integrand's decay length.
// The integrand must decay fast enough that f(x)*dx/dt -> 0 as t -> 1.
template <typename F>
QuadratureResult integrate_to_infinity(F&& f, double a, double scale,
                                       const QuadratureSpec& spec = {}) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ValidationError("integrate_to_infinity: scale must be positive and finite");
  }
  auto g = [&f, a, scale](double t) {
    const double den = 1.0 - t;
    const double x = a + scale * t / den;
    const double jac = scale / (den * den);
    if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;  // decayed tail
    return f(x) * jac;
  };
  return integrate(g, 0.0, 1.0, spec);
}

}  // namespace spreadnet
