#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvlink/phase_space.hpp"

namespace cvlink {

// Bad config file, bad key, bad value, bad combination. Maps to the usage
// exit code in the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { Budget, AlphaSweep, KeyrateSweep, Simulate };

// A sweep axis: which parameter varies and the grid of values it takes.
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

struct RunConfig {
  SystemParams params;
  // Displacement: explicit value, or (default) sized automatically to the
  // 1e-9 BER target for each operating point.
  std::optional<double> alpha_override;
  RunMode mode = RunMode::Budget;
  std::optional<SweepAxis> sweep;
  std::vector<double> sigma_phi_list;  // keyrate-sweep curves
  std::size_t n_pulses = 1000000;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  bool strict_noise = false;          // fold eps_c + eps_d into eps
  bool exact_alpha_constant = false;  // solve the BER target exactly
  std::string output_path;            // empty = stdout
  std::string dump_pulses_path;       // simulate only; per-pulse CSV
};

// Parse "name:start:stop:step" or "name:v1,v2,...". The axis must name a
// SystemParams field or L; step must be > 0 and the range non-empty.
SweepAxis parse_sweep(const std::string& text);

// Comma-separated doubles, all finite.
std::vector<double> parse_number_list(const std::string& text);

// Apply one key = value setting. Shared by the config-file reader and the
// command-line flags so both surfaces accept exactly the same keys. Unknown
// keys and unparsable values throw ConfigError naming the key.
void apply_key_value(RunConfig& config, const std::string& key,
                     const std::string& value);

struct ConfigKey {
  const char* name;
  const char* help;
};

// Every key apply_key_value accepts, with one-line help. The CLI exposes
// each as --<name>.
std::span<const ConfigKey> config_keys();

// Flat key = value file, '#' comments, blank lines ignored.
void apply_config_file(RunConfig& config, const std::string& path);

// The displacement actually used for this config at its current params:
// the override if given, else the BER-target sizing.
double resolve_alpha(const RunConfig& config);

}  // namespace cvlink
