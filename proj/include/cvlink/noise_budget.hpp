#pragma once

#include "cvlink/phase_space.hpp"

namespace cvlink {

// Displacement sizing targets a classical bit error rate of 1e-9. The
// conventional coefficient is the rounded 4.24 (erfc(4.24)/2 ~ 1.01e-9);
// the exact solution of erfc(k)/2 = 1e-9 is available behind a flag for
// tests that want the round trip to close tightly.
inline constexpr double kBerCoeff = 4.24;
inline constexpr double kBerCoeffExact = 4.2410900125601802;
inline constexpr double kBerTarget = 1e-9;

// Everything the analytic link budget produces for one operating point.
// All eps_* are in shot-noise units referred to the channel input.
struct NoiseBudget {
  double alpha = 0.0;        // transmitter displacement meeting the BER target
  double alpha_prime = 0.0;  // received displacement sqrt(T_ch*eta) * alpha
  double v_b = 0.0;          // absolute Gaussian reading variance (T*eta*V_A + 1) * N0
  double ber = 0.0;          // analytic BER at this alpha
  double eps_c = 0.0;        // clipping (saturation) excess noise
  double eps_d = 0.0;        // quantization excess noise
  double eps_p = 0.0;        // phase-noise excess noise
  double eps_total = 0.0;    // eps_p + eps0 (+ eps_c + eps_d when strict)
};

// Coherent-detection BER for displacement alpha:
//   erfc( sqrt(T*eta) * alpha / sqrt(2 * (T*eta*V_A + 1 + nu_el) * N0) ) / 2.
// The Gaussian key modulation acts as noise for the bit decision.
double ber_bpsk(double alpha, const SystemParams& params);

// Smallest displacement meeting the 1e-9 BER target for these params.
double required_displacement(const SystemParams& params,
                             bool exact_constant = false);

// Equivalent excess noise of detector saturation at +/- x_m for a reading
// centred on +/- alpha_prime with Gaussian variance v_b (absolute units):
//   eps_c = v_b * (H(z1) + H(z2)) / N0, z_{1,2} = (x_m -+ alpha_prime) / sqrt(v_b),
// where H(z) = (1 + z^2) Q(z) - z phi(z) is the truncated second moment of
// the unit normal beyond z. Exact closed form, no quadrature.
double clipping_noise(double alpha_prime, double v_b, double x_m);

// Equivalent excess noise of the mid-rise ADC: (x_m / 2^adc_bits)^2 / N0,
// i.e. (step/2)^2 treated as a worst-case deterministic offset.
double quantization_noise(double x_m, int adc_bits);

// Phase-noise-induced excess noise alpha^2 * sigma_phi / N0; the dominant
// displacement-dependent term, since the large classical displacement
// converts phase jitter into quadrature noise.
double phase_excess_noise(double alpha, double sigma_phi);

// eps0 + eps_p, plus eps_c + eps_d when strict. This is the channel excess
// noise handed to the security analysis.
double total_excess_noise(const SystemParams& params, double alpha,
                          bool strict = false);

// Budget at an explicit displacement.
NoiseBudget compute_noise_budget_at(const SystemParams& params, double alpha,
                                    bool strict = false);

// Budget at the displacement meeting the BER target.
NoiseBudget compute_noise_budget(const SystemParams& params,
                                 bool strict = false,
                                 bool exact_constant = false);

}  // namespace cvlink
