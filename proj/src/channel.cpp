#include "cvlink/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cvlink {

ChannelModel ChannelModel::from(const SystemParams& params) {
  params.validate();
  const double t_eta = overall_transmittance(params);
  ChannelModel m;
  m.scale = std::sqrt(t_eta);
  m.theta_sd = std::sqrt(params.sigma_phi);
  m.excess_sd = std::sqrt(t_eta * params.eps0 * kShotNoiseN0);
  return m;
}

ChannelDraw ChannelModel::draw(RandomStream& rng) const {
  ChannelDraw d;
  d.theta = theta_sd * rng.gaussian();
  d.excess_x = excess_sd * rng.gaussian();
  d.excess_p = excess_sd * rng.gaussian();
  return d;
}

PhasePoint ChannelModel::apply(const PhasePoint& amplitude,
                               const ChannelDraw& d) const {
  const double c = std::cos(d.theta);
  const double s = std::sin(d.theta);
  const double x = scale * (amplitude.x * c - amplitude.p * s) + d.excess_x;
  const double p = scale * (amplitude.x * s + amplitude.p * c) + d.excess_p;
  return PhasePoint(x, p);
}

ChannelDraw draw_channel(const SystemParams& params, RandomStream& rng) {
  return ChannelModel::from(params).draw(rng);
}

PhasePoint propagate(const PhasePoint& amplitude, const SystemParams& params,
                     const ChannelDraw& draw) {
  if (!std::isfinite(draw.theta) || !std::isfinite(draw.excess_x) ||
      !std::isfinite(draw.excess_p)) {
    throw std::invalid_argument("channel draw must be finite");
  }
  return ChannelModel::from(params).apply(amplitude, draw);
}

}  // namespace cvlink
