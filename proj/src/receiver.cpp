#include "cvlink/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvlink {

DetectorModel DetectorModel::from(const SystemParams& params) {
  params.validate();
  DetectorModel m;
  m.nu_el = params.nu_el;
  m.x_m = params.x_m;
  m.adc_bits = params.adc_bits;
  return m;
}

double measure(const PhasePoint& amplitude, Basis basis,
               const DetectorModel& model, RandomStream& rng) {
  if (model.x_m <= 0.0 || !std::isfinite(model.x_m)) {
    throw std::invalid_argument("x_m must be > 0");
  }
  if (model.nu_el < 0.0 || !std::isfinite(model.nu_el)) {
    throw std::invalid_argument("nu_el must be >= 0");
  }
  if (model.adc_bits < 1) {
    throw std::invalid_argument("adc_bits must be >= 1");
  }
  double v = (basis == Basis::X) ? amplitude.x : amplitude.p;
  if (model.noise_enabled) {
    v += std::sqrt((1.0 + model.nu_el) * kShotNoiseN0) * rng.gaussian();
  }
  if (model.clipping_enabled) {
    v = std::clamp(v, -model.x_m, model.x_m);
  }
  if (model.quantizer_enabled) {
    v = quantize(std::clamp(v, -model.x_m, model.x_m), model.x_m,
                 model.adc_bits);
  }
  return v;
}

double quantize(double value, double x_m, int adc_bits) {
  if (!std::isfinite(x_m) || x_m <= 0.0) {
    throw std::invalid_argument("x_m must be > 0");
  }
  if (adc_bits < 1) {
    throw std::invalid_argument("adc_bits must be >= 1");
  }
  if (!std::isfinite(value) || std::abs(value) > x_m) {
    throw std::invalid_argument("value must lie in [-x_m, x_m]");
  }
  const double step = 2.0 * x_m / std::exp2(adc_bits);
  const double out = step * (std::floor(value / step) + 0.5);
  const double top = x_m - 0.5 * step;
  return std::clamp(out, -top, top);
}

DecodeResult decode(double raw, double alpha, double t_ch_eta) {
  if (!std::isfinite(raw)) {
    throw std::invalid_argument("raw must be finite");
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("alpha must be >= 0");
  }
  if (!std::isfinite(t_ch_eta) || t_ch_eta <= 0.0 || t_ch_eta > 1.0) {
    throw std::invalid_argument("t_ch_eta must be in (0, 1]");
  }
  DecodeResult r;
  r.bit = (raw > 0.0) ? 0 : 1;
  r.key_value = raw / std::sqrt(t_ch_eta) + (2.0 * r.bit - 1.0) * alpha;
  return r;
}

}  // namespace cvlink
