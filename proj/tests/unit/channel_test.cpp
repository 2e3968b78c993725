#include "cvlink/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "cvlink/receiver.hpp"
#include "cvlink/transmitter.hpp"

using namespace cvlink;

namespace {

SystemParams lossless() {
  SystemParams p;
  p.eta = 1.0;
  p.length_km = 0.0;
  p.sigma_phi = 0.0;
  p.eps0 = 0.0;
  return p;
}

}  // namespace

TEST_CASE("propagate: identity channel is exact") {
  const SystemParams p = lossless();
  const PhasePoint in(2.0, -1.5);
  const PhasePoint out = propagate(in, p, ChannelDraw{});
  CHECK(out.x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(out.p == doctest::Approx(-1.5).epsilon(1e-15));
}

TEST_CASE("propagate: amplitude scales with sqrt of transmittance") {
  SystemParams p = lossless();
  p.eta = 0.25;  // T_ch * eta = 0.25, amplitude scale 0.5
  const PhasePoint out = propagate(PhasePoint(2.0, 2.0), p, ChannelDraw{});
  CHECK(out.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("propagate: quarter-turn phase error swaps quadratures") {
  const SystemParams p = lossless();
  ChannelDraw d;
  d.theta = std::numbers::pi / 2.0;
  const PhasePoint out = propagate(PhasePoint(2.0, 0.0), p, d);
  CHECK(out.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.p == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("propagate rejects a non-finite draw") {
  ChannelDraw d;
  d.theta = std::nan("");
  CHECK_THROWS_AS(propagate(PhasePoint(1.0, 0.0), lossless(), d),
                  std::invalid_argument);
}

TEST_CASE("draw_channel: disabled noise terms are exactly zero") {
  const SystemParams p = lossless();  // sigma_phi = 0, eps0 = 0
  RandomStream rng(SeedSpec{11, 0});
  for (int i = 0; i < 3; ++i) {
    const ChannelDraw d = draw_channel(p, rng);
    CHECK(d.theta == 0.0);
    CHECK(d.excess_x == 0.0);
    CHECK(d.excess_p == 0.0);
  }
}

TEST_CASE("draw_channel: sample variances match the configuration") {
  SystemParams p;
  p.sigma_phi = 1e-4;
  p.eps0 = 0.01;  // with defaults T_ch * eta = 0.5
  RandomStream rng(SeedSpec{12, 0});
  constexpr std::size_t n = 1000000;
  double sum_t2 = 0.0, sum_e2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const ChannelDraw d = draw_channel(p, rng);
    sum_t2 += d.theta * d.theta;
    sum_e2 += d.excess_x * d.excess_x;
  }
  const double nn = static_cast<double>(n);
  CHECK(sum_t2 / nn == doctest::Approx(1e-4).epsilon(5e-3));
  const double expected = 0.5 * p.eps0 * kShotNoiseN0;  // 1.25e-3
  CHECK(sum_e2 / nn == doctest::Approx(expected).epsilon(5e-3));
}

TEST_CASE("phase jitter leaks the displaced quadrature: var ~ a^2 sigma_phi") {
  SystemParams p = lossless();
  p.sigma_phi = 1e-4;
  const double a = 5.0;
  const ChannelModel model = ChannelModel::from(p);
  RandomStream rng(SeedSpec{13, 0});
  constexpr std::size_t n = 1000000;
  double sum_p2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PhasePoint out = model.apply(PhasePoint(a, 0.0), model.draw(rng));
    sum_p2 += out.p * out.p;
  }
  // Small-angle: p' = a sin(theta) ~ a theta.
  CHECK(sum_p2 / static_cast<double>(n) ==
        doctest::Approx(a * a * p.sigma_phi).epsilon(1e-2));
}

TEST_CASE("full chain reading variance matches the analytic budget") {
  // Reading = sqrt(T eta) (key + s alpha) + excess + detector noise, so
  // Var = T eta V_A N0 + T eta eps0 N0 + (1 + nu_el) N0 for fixed bits.
  SystemParams p;
  p.sigma_phi = 0.0;
  p.eps0 = 0.01;
  p.alpha = 7.465;
  const double t_eta = overall_transmittance(p);

  const ChannelModel channel = ChannelModel::from(p);
  DetectorModel det = DetectorModel::from(p);
  det.clipping_enabled = false;
  det.quantizer_enabled = false;

  RandomStream rng(SeedSpec{14, 0});
  constexpr std::size_t n = 1000000;
  const double key_sd = std::sqrt(p.v_a * kShotNoiseN0);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PulseRecord pulse =
        encode_pulse(0, key_sd * rng.gaussian(), key_sd * rng.gaussian(),
                     p.alpha);
    const PhasePoint received = channel.apply(pulse.amplitude, channel.draw(rng));
    const double raw = measure(received, Basis::X, det, rng);
    sum += raw;
    sum2 += raw * raw;
  }
  const double nn = static_cast<double>(n);
  const double var = sum2 / nn - (sum / nn) * (sum / nn);
  const double expected =
      (t_eta * p.v_a + t_eta * p.eps0 + 1.0 + p.nu_el) * kShotNoiseN0;
  CHECK(var == doctest::Approx(expected).epsilon(1e-2));
  CHECK(sum / nn ==
        doctest::Approx(std::sqrt(t_eta) * p.alpha).epsilon(2e-3));
}
