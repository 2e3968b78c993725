#include "cvlink/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cvlink/channel.hpp"

namespace cvlink {

namespace {

struct ChunkTally {
  SampleAccumulator acc;
  std::size_t n_basis_x = 0;
  std::size_t n_basis_p = 0;
};

}  // namespace

SimulationResult simulate_frames(const SystemParams& params,
                                 const SimulateOptions& options) {
  params.validate();
  if (options.n_pulses == 0) {
    throw std::invalid_argument("n_pulses must be >= 1");
  }
  if (options.workers == 0) {
    throw std::invalid_argument("workers must be >= 1");
  }

  const ChannelModel channel = ChannelModel::from(params);
  const DetectorModel detector = DetectorModel::from(params);
  const double t_eta = overall_transmittance(params);
  const double key_sd = std::sqrt(params.v_a * kShotNoiseN0);
  const double alpha = params.alpha;

  const std::size_t n = options.n_pulses;
  const std::size_t n_chunks = (n + kChunkPulses - 1) / kChunkPulses;

  SimulationResult result;
  if (options.collect_records) {
    result.pulses.resize(n);
    result.detections.resize(n);
  }
  std::vector<ChunkTally> tallies(n_chunks);

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunkPulses;
    const std::size_t end = std::min(begin + kChunkPulses, n);
    RandomStream rng(SeedSpec{options.master_seed, c});
    ChunkTally& tally = tallies[c];
    for (std::size_t i = begin; i < end; ++i) {
      const double kx = key_sd * rng.gaussian();
      const double kp = key_sd * rng.gaussian();
      const int bit = rng.coin() ? 1 : 0;
      const PulseRecord pulse = encode_pulse(bit, kx, kp, alpha);
      const ChannelDraw draw = channel.draw(rng);
      const PhasePoint received = channel.apply(pulse.amplitude, draw);
      const Basis basis = rng.coin() ? Basis::P : Basis::X;
      const double raw = measure(received, basis, detector, rng);
      const DecodeResult dec = decode(raw, alpha, t_eta);

      DetectionRecord det;
      det.basis = basis;
      det.raw = raw;
      det.bit = dec.bit;
      det.key_value = dec.key_value;

      tally.acc.add(pulse, det);
      if (basis == Basis::X) {
        ++tally.n_basis_x;
      } else {
        ++tally.n_basis_p;
      }
      if (options.collect_records) {
        result.pulses[i] = pulse;
        result.detections[i] = det;
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(options.workers, n_chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < n_chunks;
             c = next.fetch_add(1)) {
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Reduce in chunk order: the summation order (and thus every rounded sum)
  // is independent of the worker count.
  SampleAccumulator total;
  for (const ChunkTally& tally : tallies) {
    total.merge(tally.acc);
    result.n_basis_x += tally.n_basis_x;
    result.n_basis_p += tally.n_basis_p;
  }
  result.stats = total.finalize(params);
  return result;
}

}  // namespace cvlink
