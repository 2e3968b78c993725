#pragma once

#include <cstddef>
#include <span>

#include "cvlink/receiver.hpp"
#include "cvlink/security.hpp"
#include "cvlink/transmitter.hpp"

namespace cvlink {

// Channel estimation divides by the regression slope, so it refuses to run
// on frames too small for the estimate to be meaningful.
inline constexpr std::size_t kMinChannelPulses = 10000;

// Everything estimated from one simulated (or measured) frame.
struct FrameStats {
  std::size_t n_pulses = 0;
  std::size_t n_bit_errors = 0;
  double ber_hat = 0.0;
  double ber_ci_low = 0.0;   // 95% Wilson interval
  double ber_ci_high = 0.0;
  bool channel_valid = false;  // true once n_pulses >= kMinChannelPulses
  double t_eta_hat = 0.0;      // estimated overall transmittance T_ch * eta
  double eps_hat = 0.0;        // estimated excess noise, SNU, input-referred
  double corr_ab = 0.0;        // Alice/Bob matched-key covariance, absolute
};

struct BerEstimate {
  double ber_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_errors = 0;
};

// Compare sent and decoded bits; 95% Wilson score interval for the rate.
BerEstimate estimate_ber(std::span<const PulseRecord> pulses,
                         std::span<const DetectionRecord> detections);

struct ChannelEstimate {
  double t_eta_hat = 0.0;
  double eps_hat = 0.0;
};

// Through-origin regression of the detector reading on the matched-basis
// sent amplitude: slope^2 estimates T_ch * eta, and the residual variance
// minus vacuum and electronic noise, referred back through the channel,
// estimates the excess noise.
ChannelEstimate estimate_channel(std::span<const PulseRecord> pulses,
                                 std::span<const DetectionRecord> detections,
                                 const SystemParams& params);

// Streaming, order-insensitive partial sums over pulse/detection pairs.
// Chunks can be accumulated independently and merged, which is what makes
// the parallel simulation deterministic.
class SampleAccumulator {
 public:
  void add(const PulseRecord& pulse, const DetectionRecord& det);
  void merge(const SampleAccumulator& other);
  std::size_t count() const { return n_; }
  std::size_t errors() const { return errors_; }

  FrameStats finalize(const SystemParams& params) const;

 private:
  std::size_t n_ = 0;
  std::size_t errors_ = 0;
  double sum_aa_ = 0.0;    // matched sent amplitude, squared
  double sum_ar_ = 0.0;    // sent amplitude * reading
  double sum_rr_ = 0.0;    // reading squared
  double sum_ka_ = 0.0;    // matched sender key
  double sum_kb_ = 0.0;    // decoded key
  double sum_kakb_ = 0.0;
};

// Security analysis fed purely by estimated quantities: t_ch from
// t_eta_hat / eta (capped at 1), excess noise from eps_hat floored at 0.
KeyRateReport end_to_end_key_rate(const FrameStats& stats,
                                  const SystemParams& params);

}  // namespace cvlink
