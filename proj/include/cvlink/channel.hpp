#pragma once

#include "cvlink/phase_space.hpp"

namespace cvlink {

// Stochastic part of one channel pass: a residual phase error and the
// additive excess-noise displacements (absolute units, already referred to
// the channel output).
struct ChannelDraw {
  double theta = 0.0;
  double excess_x = 0.0;
  double excess_p = 0.0;
};

// Precomputed per-pulse constants for one channel configuration. Build once,
// then draw/apply in the hot loop without re-validating parameters.
struct ChannelModel {
  double scale = 1.0;      // sqrt(T_ch * eta)
  double theta_sd = 0.0;   // sqrt(sigma_phi)
  double excess_sd = 0.0;  // sqrt(T_ch * eta * eps0 * N0)

  static ChannelModel from(const SystemParams& params);

  // theta, excess_x, excess_p -- in that order, three gaussian draws.
  ChannelDraw draw(RandomStream& rng) const;

  // Rotate by theta, attenuate by scale, add excess noise.
  PhasePoint apply(const PhasePoint& amplitude, const ChannelDraw& d) const;
};

// Convenience wrappers over ChannelModel that validate params on every call.
ChannelDraw draw_channel(const SystemParams& params, RandomStream& rng);
PhasePoint propagate(const PhasePoint& amplitude, const SystemParams& params,
                     const ChannelDraw& draw);

}  // namespace cvlink
