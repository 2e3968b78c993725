#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cvlink/estimation.hpp"
#include "cvlink/receiver.hpp"
#include "cvlink/transmitter.hpp"

namespace cvlink {

// Pulses are processed in fixed-size chunks, one random stream per chunk
// (stream index = chunk index). Results are reduced in chunk order, so the
// outcome is bit-identical for any worker count. The chunk size is part of
// the reproducibility contract.
inline constexpr std::size_t kChunkPulses = 32768;

struct SimulateOptions {
  std::size_t n_pulses = 0;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  bool collect_records = false;  // keep per-pulse records (costly for big n)
};

struct SimulationResult {
  FrameStats stats;
  std::size_t n_basis_x = 0;
  std::size_t n_basis_p = 0;
  // Filled only when collect_records is set.
  std::vector<PulseRecord> pulses;
  std::vector<DetectionRecord> detections;
};

// Run the full pipeline (encode -> channel -> detect -> decode) for
// n_pulses and estimate everything the frame supports. Per pulse, the draw
// order from the chunk stream is: key_x, key_p, bit, theta, excess_x,
// excess_p, basis, detector noise.
SimulationResult simulate_frames(const SystemParams& params,
                                 const SimulateOptions& options);

}  // namespace cvlink
