#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cvlink/phase_space.hpp"

namespace cvlink {

// One prepared pulse: the classical bit it carries, the two Gaussian key
// values (absolute units), and the resulting coherent amplitude.
struct PulseRecord {
  int bit = 0;
  double key_x = 0.0;
  double key_p = 0.0;
  PhasePoint amplitude;
};

// Displace both quadratures by +alpha for bit 0 and -alpha for bit 1, on top
// of the Gaussian key values.
PulseRecord encode_pulse(int bit, double key_x, double key_p, double alpha);

// A frame of n pulses with keys ~ Normal(0, v_a * N0) and i.i.d. fair-coin
// bits, all drawn from the given seed. Per pulse the draw order is key_x,
// key_p, bit.
std::vector<PulseRecord> generate_frame(const SystemParams& params,
                                        std::size_t n_pulses, SeedSpec seed);

// Same, but with caller-chosen bits (bits.size() must equal n_pulses). The
// coin draw is skipped, keys are drawn exactly as above.
std::vector<PulseRecord> generate_frame(const SystemParams& params,
                                        std::size_t n_pulses, SeedSpec seed,
                                        std::span<const int> bits);

}  // namespace cvlink
