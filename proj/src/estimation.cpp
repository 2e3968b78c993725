#include "cvlink/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvlink {

namespace {

// 97.5th percentile of the unit normal; fixed so intervals are reproducible.
constexpr double kZ95 = 1.959963984540054;

BerEstimate wilson_interval(std::size_t errors, std::size_t n) {
  BerEstimate est;
  est.n_errors = errors;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(errors) / nn;
  est.ber_hat = p;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // At the boundaries the exact interval endpoint is the boundary itself;
  // computing centre - half there leaves rounding dust, so pin it.
  est.ci_low = (errors == 0) ? 0.0 : std::max(0.0, centre - half);
  est.ci_high = (errors == n) ? 1.0 : std::min(1.0, centre + half);
  return est;
}

double matched_amplitude(const PulseRecord& pulse, Basis basis) {
  return basis == Basis::X ? pulse.amplitude.x : pulse.amplitude.p;
}

double matched_key(const PulseRecord& pulse, Basis basis) {
  return basis == Basis::X ? pulse.key_x : pulse.key_p;
}

}  // namespace

BerEstimate estimate_ber(std::span<const PulseRecord> pulses,
                         std::span<const DetectionRecord> detections) {
  if (pulses.size() != detections.size()) {
    throw std::invalid_argument("pulse/detection counts differ");
  }
  if (pulses.empty()) {
    throw std::invalid_argument("cannot estimate BER from an empty frame");
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    errors += (pulses[i].bit != detections[i].bit) ? 1 : 0;
  }
  return wilson_interval(errors, pulses.size());
}

ChannelEstimate estimate_channel(std::span<const PulseRecord> pulses,
                                 std::span<const DetectionRecord> detections,
                                 const SystemParams& params) {
  if (pulses.size() != detections.size()) {
    throw std::invalid_argument("pulse/detection counts differ");
  }
  SampleAccumulator acc;
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    acc.add(pulses[i], detections[i]);
  }
  const FrameStats stats = acc.finalize(params);
  if (!stats.channel_valid) {
    throw std::invalid_argument("channel estimation needs >= 10000 pulses");
  }
  return {stats.t_eta_hat, stats.eps_hat};
}

void SampleAccumulator::add(const PulseRecord& pulse,
                            const DetectionRecord& det) {
  const double a = matched_amplitude(pulse, det.basis);
  const double ka = matched_key(pulse, det.basis);
  n_ += 1;
  errors_ += (pulse.bit != det.bit) ? 1 : 0;
  sum_aa_ += a * a;
  sum_ar_ += a * det.raw;
  sum_rr_ += det.raw * det.raw;
  sum_ka_ += ka;
  sum_kb_ += det.key_value;
  sum_kakb_ += ka * det.key_value;
}

void SampleAccumulator::merge(const SampleAccumulator& other) {
  n_ += other.n_;
  errors_ += other.errors_;
  sum_aa_ += other.sum_aa_;
  sum_ar_ += other.sum_ar_;
  sum_rr_ += other.sum_rr_;
  sum_ka_ += other.sum_ka_;
  sum_kb_ += other.sum_kb_;
  sum_kakb_ += other.sum_kakb_;
}

FrameStats SampleAccumulator::finalize(const SystemParams& params) const {
  params.validate();
  if (n_ == 0) {
    throw std::invalid_argument("cannot finalize an empty accumulator");
  }
  FrameStats stats;
  stats.n_pulses = n_;
  stats.n_bit_errors = errors_;
  const BerEstimate ber = wilson_interval(errors_, n_);
  stats.ber_hat = ber.ber_hat;
  stats.ber_ci_low = ber.ci_low;
  stats.ber_ci_high = ber.ci_high;

  const double nn = static_cast<double>(n_);
  if (n_ >= 2) {
    stats.corr_ab = (sum_kakb_ - sum_ka_ * sum_kb_ / nn) / (nn - 1.0);
  }

  if (n_ >= kMinChannelPulses && sum_aa_ > 0.0) {
    const double slope = sum_ar_ / sum_aa_;
    const double resid_var = (sum_rr_ - slope * sum_ar_) / (nn - 1.0);
    stats.t_eta_hat = slope * slope;
    stats.eps_hat =
        (resid_var / kShotNoiseN0 - 1.0 - params.nu_el) / stats.t_eta_hat;
    stats.channel_valid = true;
  }
  return stats;
}

KeyRateReport end_to_end_key_rate(const FrameStats& stats,
                                  const SystemParams& params) {
  params.validate();
  if (stats.n_pulses == 0) {
    throw std::invalid_argument("cannot analyse a zero-pulse frame");
  }
  if (!stats.channel_valid) {
    throw std::invalid_argument("channel estimate unavailable (needs >= 10000 pulses)");
  }
  SecurityInputs in;
  in.v = params.v_a + 1.0;
  in.t_ch = std::min(stats.t_eta_hat / params.eta, 1.0);
  in.eps = std::max(stats.eps_hat, 0.0);
  in.eta = params.eta;
  in.nu_el = params.nu_el;
  in.f = params.f;
  return key_rate(in);
}

}  // namespace cvlink
