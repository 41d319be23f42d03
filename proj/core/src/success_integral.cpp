#include "spreadnet/success_integral.hpp"

#include <cmath>

#include "spreadnet/errors.hpp"

namespace spreadnet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double pow_alpha(double y, double alpha) {
  if (alpha == 4.0) {
    const double y2 = y * y;
    return y2 * y2;
  }
  return std::pow(y, alpha);
}

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol * 1e-3;
  inner.rel_tol = std::max(1e-12, spec.rel_tol * 0.1);
  return inner;
}

void require_laplace_domain(const NetworkConfig& cfg, double mu, double z) {
  cfg.validate();
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ValidationError("laplace_interference: mu must be >= 0 and finite");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw ValidationError("laplace_interference: z must be >= 0 and finite");
  }
}

// exp(-2*pi*lambda * field(w, r)) for one interferer class, 1 when the
// class is empty or its transform argument vanishes.
double field_factor(double lambda, double w, double r, double alpha,
                    const QuadratureSpec& spec) {
  if (lambda == 0.0 || w == 0.0) return 1.0;
  const double integral =
      oracle_detail::interference_field_integral(w, r, alpha, spec);
  return std::exp(-2.0 * kPi * lambda * integral);
}

}  // namespace

namespace oracle_detail {

double interference_field_integral(double w, double r, double alpha,
                                   const QuadratureSpec& spec) {
  if (!(w >= 0.0)) throw ValidationError("interference_field_integral: w < 0");
  if (!(r >= 0.0)) throw ValidationError("interference_field_integral: r < 0");
  if (w == 0.0) return 0.0;
  auto integrand = [w, alpha](double y) {
    const double ya = pow_alpha(y, alpha);
    if (!std::isfinite(ya)) return 0.0;  // far tail, already decayed
    return w * y / (ya + w);
  };
  // The integrand turns over where y^alpha ~ w; use that as the map scale.
  const double scale = std::max(std::pow(w, 1.0 / alpha), r);
  return integrate_to_infinity(integrand, r, scale, spec).value;
}

}  // namespace oracle_detail

double laplace_interference_unicast(const NetworkConfig& cfg, double mu,
                                    double z, double nearest_src_dist,
                                    const QuadratureSpec& spec) {
  require_laplace_domain(cfg, mu, z);
  if (!(nearest_src_dist >= 0.0) || !std::isfinite(nearest_src_dist)) {
    throw ValidationError(
        "laplace_interference_unicast: nearest_src_dist must be >= 0 and finite");
  }
  spec.validate();
  return field_factor(cfg.lambda_bs(), z, 0.0, cfg.alpha, spec) *
         field_factor(cfg.lambda_src(), z * mu, nearest_src_dist, cfg.alpha,
                      spec);
}

double laplace_interference_broadcast(const NetworkConfig& cfg, double mu,
                                      double z, const QuadratureSpec& spec) {
  require_laplace_domain(cfg, mu, z);
  spec.validate();
  return field_factor(cfg.lambda_bs(), z, 0.0, cfg.alpha, spec) *
         field_factor(cfg.lambda_src(), z * mu, 0.0, cfg.alpha, spec);
}

double p_suc_numeric(const NetworkConfig& cfg, double mu, Mode mode,
                     const QuadratureSpec& spec) {
  cfg.validate();
  spec.validate();
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ValidationError("p_suc_numeric: mu must be positive and finite");
  }

  const double lambda_serving =
      mode == Mode::Unicast ? cfg.lambda_mu() : cfg.lambda_src();
  if (lambda_serving == 0.0) return 0.0;

  const double lambda_bs = cfg.lambda_bs();
  const double lambda_src = cfg.lambda_src();
  const double alpha = cfg.alpha;
  const double beta = cfg.beta;
  const QuadratureSpec inner = inner_spec(spec);

  // Success probability conditioned on serving distance x, averaged over
  // the nearest-node distance density 2*pi*lambda*x*exp(-pi*lambda*x^2).
  // The serving source of a broadcast receiver is its nearest source, so
  // closer sources cannot interfere; a unicast source's nearest-user
  // distance constrains no other source, so its source field is full.
  auto integrand = [&](double x) {
    const double density =
        2.0 * kPi * lambda_serving * x * std::exp(-kPi * lambda_serving * x * x);
    if (density == 0.0) return 0.0;
    const double z = beta * pow_alpha(x, alpha) / mu;
    if (!std::isfinite(z)) return 0.0;
    const double exclusion = mode == Mode::Broadcast ? x : 0.0;
    const double value =
        density * field_factor(lambda_bs, z, 0.0, alpha, inner) *
        field_factor(lambda_src, z * mu, exclusion, alpha, inner);
    return value;
  };

  const double scale = 1.0 / std::sqrt(kPi * lambda_serving);
  return integrate_to_infinity(integrand, 0.0, scale, spec).value;
}

}  // namespace spreadnet
