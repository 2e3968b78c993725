#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace cvlink {

// Quadrature convention: a coherent state centred on (x0, p0) yields homodyne
// X outcomes distributed Normal(x0, N0) with vacuum (shot) noise N0 = 1/4.
// Every variance quoted "in shot-noise units" (SNU) is an absolute variance
// divided by N0.
inline constexpr double kShotNoiseN0 = 0.25;

// A point in phase space, absolute units. Coordinates are always finite;
// construction rejects NaN and infinity so downstream math never has to
// re-check.
struct PhasePoint {
  PhasePoint() = default;
  PhasePoint(double x_in, double p_in);

  double x = 0.0;
  double p = 0.0;
};

// Full link configuration. Defaults are the reference operating point used
// throughout the docs and tests: 4 SNU modulation, 0.2 dB/km fiber, a balanced
// homodyne detector with 50% efficiency and 0.1 SNU electronic noise, a
// 10-bit ADC spanning +/-10.
struct SystemParams {
  double v_a = 4.0;        // Gaussian modulation variance, SNU
  double gamma = 0.2;      // fiber attenuation, dB/km
  double length_km = 0.0;  // fiber length
  double eta = 0.5;        // detector efficiency in (0, 1]
  double nu_el = 0.1;      // detector electronic noise variance, SNU
  double eps0 = 0.01;      // displacement-independent channel excess noise, SNU
  double sigma_phi = 1e-5; // residual phase noise variance, rad^2
  double alpha = 0.0;      // classical displacement amplitude, absolute units
  double x_m = 10.0;       // detector linear-range half width, absolute units
  int adc_bits = 10;       // ADC resolution
  double f = 0.95;         // reconciliation efficiency in (0, 1]

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Identifies one reproducible random stream. Equal (master, stream) pairs
// always reproduce the identical sample sequence, on any platform.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

// Counter-based generator: splitmix-style state walk with a per-stream odd
// increment derived from the stream index, so distinct stream indices give
// decorrelated sequences and parallel workers never share state. Gaussian
// variates use the trigonometric Box-Muller transform; a pair of normals
// consumes exactly two 64-bit words and the second one is cached. This
// sequence is part of the reproducibility contract: outputs for a given
// SeedSpec only change on a major version bump.
class RandomStream {
 public:
  explicit RandomStream(SeedSpec seed) noexcept {
    const std::uint64_t base = mix64(seed.master);
    state_ = mix64(base ^ mix64(seed.stream * kGolden64 + 1));
    gamma_ = mix64(base + seed.stream * kGolden64) | 1ull;
  }

  std::uint64_t next_u64() noexcept {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on (0, 1]; never 0, so log() below stays finite.
  double uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double gaussian() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  double gaussian(double mean, double stddev) noexcept {
    return mean + stddev * gaussian();
  }

  bool coin() noexcept { return (next_u64() >> 63) != 0; }

 private:
  static constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  std::uint64_t gamma_ = 1;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// n i.i.d. Normal(mean, variance) samples, deterministic given the seed.
// variance = 0 returns n copies of mean.
std::vector<double> sample_gaussian(double mean, double variance, SeedSpec seed,
                                    std::size_t n);

// Fiber power transmittance 10^(-gamma * L / 10).
double transmittance(double gamma_db_per_km, double length_km);

// T_ch * eta for the configured fiber and detector.
double overall_transmittance(const SystemParams& params);

}  // namespace cvlink
