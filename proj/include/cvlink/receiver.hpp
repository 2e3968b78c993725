#pragma once

#include "cvlink/phase_space.hpp"

namespace cvlink {

enum class Basis { X, P };

// Homodyne detector front end. The three switches exist so tests (and the
// analytic noise budget) can exercise each imperfection in isolation;
// production use keeps all of them on.
struct DetectorModel {
  double nu_el = 0.1;
  double x_m = 10.0;
  int adc_bits = 10;
  bool noise_enabled = true;      // vacuum + electronic Gaussian noise
  bool clipping_enabled = true;   // saturate at +/- x_m
  bool quantizer_enabled = true;  // mid-rise ADC

  static DetectorModel from(const SystemParams& params);
};

// Result of detecting one pulse.
struct DetectionRecord {
  Basis basis = Basis::X;
  double raw = 0.0;        // detector reading, absolute units
  int bit = 0;             // decoded classical bit
  double key_value = 0.0;  // recovered key quadrature, sender scale
};

// Homodyne-measure one quadrature of the incoming amplitude. Gaussian
// detection noise has variance (1 + nu_el) * N0. The ADC saturates at its
// own range, so the reading is clamped to [-x_m, x_m] before quantization
// even when the explicit clipping stage is disabled.
double measure(const PhasePoint& amplitude, Basis basis,
               const DetectorModel& model, RandomStream& rng);

// Mid-rise uniform quantizer with step 2 * x_m / 2^adc_bits. Output levels
// are +/-(k + 1/2) * step, capped at x_m - step / 2. value must lie in
// [-x_m, x_m].
double quantize(double value, double x_m, int adc_bits);

struct DecodeResult {
  int bit = 0;
  double key_value = 0.0;
};

// Invert the sender mapping: bit from the reading's sign (0 if raw > 0,
// 1 otherwise), key_value = raw / sqrt(t_ch_eta) + (2 * bit - 1) * alpha,
// i.e. rescale to the sender plane and remove the decoded displacement.
DecodeResult decode(double raw, double alpha, double t_ch_eta);

}  // namespace cvlink
