#include "cvlink/transmitter.hpp"

#include <cmath>
#include <stdexcept>

namespace cvlink {

PulseRecord encode_pulse(int bit, double key_x, double key_p, double alpha) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("bit must be 0 or 1");
  }
  if (!std::isfinite(key_x) || !std::isfinite(key_p)) {
    throw std::invalid_argument("key values must be finite");
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("alpha must be finite and >= 0");
  }
  const double s = (bit == 0) ? 1.0 : -1.0;
  PulseRecord rec;
  rec.bit = bit;
  rec.key_x = key_x;
  rec.key_p = key_p;
  rec.amplitude = PhasePoint(key_x + s * alpha, key_p + s * alpha);
  return rec;
}

namespace {

std::vector<PulseRecord> make_frame(const SystemParams& params,
                                    std::size_t n_pulses, SeedSpec seed,
                                    const int* bits) {
  params.validate();
  const double key_sd = std::sqrt(params.v_a * kShotNoiseN0);
  RandomStream rng(seed);
  std::vector<PulseRecord> frame;
  frame.reserve(n_pulses);
  for (std::size_t i = 0; i < n_pulses; ++i) {
    const double kx = key_sd * rng.gaussian();
    const double kp = key_sd * rng.gaussian();
    const int bit = bits ? bits[i] : (rng.coin() ? 1 : 0);
    frame.push_back(encode_pulse(bit, kx, kp, params.alpha));
  }
  return frame;
}

}  // namespace

std::vector<PulseRecord> generate_frame(const SystemParams& params,
                                        std::size_t n_pulses, SeedSpec seed) {
  return make_frame(params, n_pulses, seed, nullptr);
}

std::vector<PulseRecord> generate_frame(const SystemParams& params,
                                        std::size_t n_pulses, SeedSpec seed,
                                        std::span<const int> bits) {
  if (bits.size() != n_pulses) {
    throw std::invalid_argument("bits.size() must equal n_pulses");
  }
  return make_frame(params, n_pulses, seed, bits.data());
}

}  // namespace cvlink
