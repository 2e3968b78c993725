#include "cvlink/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvlink {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

}  // namespace

PhasePoint::PhasePoint(double x_in, double p_in) : x(x_in), p(p_in) {
  if (!std::isfinite(x) || !std::isfinite(p)) {
    throw std::invalid_argument("PhasePoint coordinates must be finite");
  }
}

void SystemParams::validate() const {
  require_finite(v_a, "v_a");
  require_finite(gamma, "gamma");
  require_finite(length_km, "length_km");
  require_finite(eta, "eta");
  require_finite(nu_el, "nu_el");
  require_finite(eps0, "eps0");
  require_finite(sigma_phi, "sigma_phi");
  require_finite(alpha, "alpha");
  require_finite(x_m, "x_m");
  require_finite(f, "f");
  if (v_a <= 0.0) throw std::invalid_argument("v_a must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (length_km < 0.0) throw std::invalid_argument("length_km must be >= 0");
  if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in (0, 1]");
  if (nu_el < 0.0) throw std::invalid_argument("nu_el must be >= 0");
  if (eps0 < 0.0) throw std::invalid_argument("eps0 must be >= 0");
  if (sigma_phi < 0.0) throw std::invalid_argument("sigma_phi must be >= 0");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (x_m <= 0.0) throw std::invalid_argument("x_m must be > 0");
  if (adc_bits < 1) throw std::invalid_argument("adc_bits must be >= 1");
  if (f <= 0.0 || f > 1.0) throw std::invalid_argument("f must be in (0, 1]");
}

std::vector<double> sample_gaussian(double mean, double variance, SeedSpec seed,
                                    std::size_t n) {
  require_finite(mean, "mean");
  require_finite(variance, "variance");
  if (variance < 0.0) {
    throw std::invalid_argument("variance must be >= 0");
  }
  const double sd = std::sqrt(variance);
  RandomStream rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = mean + sd * rng.gaussian();
  }
  return out;
}

double transmittance(double gamma_db_per_km, double length_km) {
  require_finite(gamma_db_per_km, "gamma");
  require_finite(length_km, "length_km");
  if (gamma_db_per_km < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (length_km < 0.0) throw std::invalid_argument("length_km must be >= 0");
  return std::pow(10.0, -gamma_db_per_km * length_km / 10.0);
}

double overall_transmittance(const SystemParams& params) {
  return transmittance(params.gamma, params.length_km) * params.eta;
}

}  // namespace cvlink
