#include "cvlink/noise_budget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvlink {

namespace {

// E[(Z - z)^2; Z > z] for Z ~ Normal(0, 1): the clipped-tail second moment.
double tail_second_moment(double z) {
  const double q = 0.5 * std::erfc(z / std::numbers::sqrt2);
  const double phi =
      std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
  return (1.0 + z * z) * q - z * phi;
}

}  // namespace

double ber_bpsk(double alpha, const SystemParams& params) {
  params.validate();
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("alpha must be >= 0");
  }
  const double t_eta = overall_transmittance(params);
  const double noise_var = (t_eta * params.v_a + 1.0 + params.nu_el) * kShotNoiseN0;
  const double arg = std::sqrt(t_eta) * alpha / std::sqrt(2.0 * noise_var);
  return 0.5 * std::erfc(arg);
}

double required_displacement(const SystemParams& params, bool exact_constant) {
  params.validate();
  const double t_eta = overall_transmittance(params);
  const double noise_var = (t_eta * params.v_a + 1.0 + params.nu_el) * kShotNoiseN0;
  const double k = exact_constant ? kBerCoeffExact : kBerCoeff;
  return k * std::sqrt(2.0 * noise_var / t_eta);
}

double clipping_noise(double alpha_prime, double v_b, double x_m) {
  if (!std::isfinite(alpha_prime) || alpha_prime < 0.0) {
    throw std::invalid_argument("alpha_prime must be >= 0");
  }
  if (!std::isfinite(v_b) || v_b <= 0.0) {
    throw std::invalid_argument("v_b must be > 0");
  }
  if (!std::isfinite(x_m) || x_m < 0.0) {
    throw std::invalid_argument("x_m must be >= 0");
  }
  const double sigma = std::sqrt(v_b);
  const double z1 = (x_m - alpha_prime) / sigma;
  const double z2 = (x_m + alpha_prime) / sigma;
  return v_b * (tail_second_moment(z1) + tail_second_moment(z2)) / kShotNoiseN0;
}

double quantization_noise(double x_m, int adc_bits) {
  if (!std::isfinite(x_m) || x_m <= 0.0) {
    throw std::invalid_argument("x_m must be > 0");
  }
  if (adc_bits < 1) {
    throw std::invalid_argument("adc_bits must be >= 1");
  }
  const double half_step = x_m / std::exp2(adc_bits);
  return half_step * half_step / kShotNoiseN0;
}

double phase_excess_noise(double alpha, double sigma_phi) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("alpha must be >= 0");
  }
  if (!std::isfinite(sigma_phi) || sigma_phi < 0.0) {
    throw std::invalid_argument("sigma_phi must be >= 0");
  }
  return alpha * alpha * sigma_phi / kShotNoiseN0;
}

double total_excess_noise(const SystemParams& params, double alpha,
                          bool strict) {
  params.validate();
  double eps = params.eps0 + phase_excess_noise(alpha, params.sigma_phi);
  if (strict) {
    const double t_eta = overall_transmittance(params);
    const double v_b = (t_eta * params.v_a + 1.0) * kShotNoiseN0;
    eps += clipping_noise(std::sqrt(t_eta) * alpha, v_b, params.x_m);
    eps += quantization_noise(params.x_m, params.adc_bits);
  }
  return eps;
}

NoiseBudget compute_noise_budget_at(const SystemParams& params, double alpha,
                                    bool strict) {
  params.validate();
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("alpha must be >= 0");
  }
  const double t_eta = overall_transmittance(params);
  NoiseBudget b;
  b.alpha = alpha;
  b.alpha_prime = std::sqrt(t_eta) * b.alpha;
  b.v_b = (t_eta * params.v_a + 1.0) * kShotNoiseN0;
  b.ber = ber_bpsk(b.alpha, params);
  b.eps_c = clipping_noise(b.alpha_prime, b.v_b, params.x_m);
  b.eps_d = quantization_noise(params.x_m, params.adc_bits);
  b.eps_p = phase_excess_noise(b.alpha, params.sigma_phi);
  b.eps_total = params.eps0 + b.eps_p;
  if (strict) {
    b.eps_total += b.eps_c + b.eps_d;
  }
  return b;
}

NoiseBudget compute_noise_budget(const SystemParams& params, bool strict,
                                 bool exact_constant) {
  return compute_noise_budget_at(
      params, required_displacement(params, exact_constant), strict);
}

}  // namespace cvlink
