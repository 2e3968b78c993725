#include "cvlink/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "cvlink/noise_budget.hpp"

namespace cvlink {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty value for '" + key + "'");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("cannot parse number '" + t + "' for '" + key + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t.empty() || t[0] == '-') {
    throw ConfigError("'" + key + "' needs a non-negative integer");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError("cannot parse integer '" + t + "' for '" + key + "'");
  }
  return static_cast<std::uint64_t>(v);
}

int parse_int(const std::string& text, const std::string& key) {
  const std::uint64_t v = parse_u64(text, key);
  if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw ConfigError("'" + key + "' is out of range");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("'" + key + "' needs true/false, got '" + t + "'");
}

bool known_axis(const std::string& name) {
  static const char* kAxes[] = {"v_a",   "gamma", "length_km", "L",
                                "eta",   "nu_el", "eps0",      "sigma_phi",
                                "alpha", "x_m",   "adc_bits",  "f"};
  for (const char* axis : kAxes) {
    if (name == axis) return true;
  }
  return false;
}

}  // namespace

SweepAxis parse_sweep(const std::string& text) {
  const std::vector<std::string> parts = split(trim(text), ':');
  if (parts.size() != 2 && parts.size() != 4) {
    throw ConfigError(
        "sweep must be 'name:start:stop:step' or 'name:v1,v2,...', got '" +
        text + "'");
  }
  SweepAxis axis;
  axis.name = trim(parts[0]);
  if (!known_axis(axis.name)) {
    throw ConfigError("unknown sweep axis '" + axis.name + "'");
  }
  if (parts.size() == 2) {
    axis.values = parse_number_list(parts[1]);
  } else {
    const double start = parse_double(parts[1], "sweep start");
    const double stop = parse_double(parts[2], "sweep stop");
    const double step = parse_double(parts[3], "sweep step");
    if (step <= 0.0) throw ConfigError("sweep step must be > 0");
    if (stop < start) throw ConfigError("sweep stop must be >= start");
    // Tiny slack so a stop that should land on the grid survives rounding
    // (e.g. stop 1.0 with step 0.1).
    const double span = (stop - start) / step;
    const auto count =
        static_cast<std::size_t>(std::floor(span * (1.0 + 1e-12) + 1e-9)) + 1;
    axis.values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      axis.values.push_back(start + static_cast<double>(i) * step);
    }
    if (axis.values.back() > stop) axis.values.back() = stop;
  }
  if (axis.values.empty()) throw ConfigError("sweep grid is empty");
  return axis;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) {
    values.push_back(parse_double(part, "list entry"));
  }
  return values;
}

void apply_key_value(RunConfig& config, const std::string& raw_key,
                     const std::string& value) {
  const std::string key = trim(raw_key);
  SystemParams& p = config.params;
  if (key == "v_a") {
    p.v_a = parse_double(value, key);
  } else if (key == "gamma") {
    p.gamma = parse_double(value, key);
  } else if (key == "length_km" || key == "L") {
    p.length_km = parse_double(value, key);
  } else if (key == "eta") {
    p.eta = parse_double(value, key);
  } else if (key == "nu_el") {
    p.nu_el = parse_double(value, key);
  } else if (key == "eps0") {
    p.eps0 = parse_double(value, key);
  } else if (key == "sigma_phi") {
    p.sigma_phi = parse_double(value, key);
  } else if (key == "alpha") {
    if (trim(value) == "auto") {
      config.alpha_override.reset();
    } else {
      config.alpha_override = parse_double(value, key);
    }
  } else if (key == "x_m") {
    p.x_m = parse_double(value, key);
  } else if (key == "adc_bits") {
    p.adc_bits = parse_int(value, key);
  } else if (key == "f") {
    p.f = parse_double(value, key);
  } else if (key == "n_pulses") {
    config.n_pulses = static_cast<std::size_t>(parse_u64(value, key));
  } else if (key == "master_seed") {
    config.master_seed = parse_u64(value, key);
  } else if (key == "workers") {
    const std::uint64_t w = parse_u64(value, key);
    if (w == 0 || w > 4096) throw ConfigError("workers must be in [1, 4096]");
    config.workers = static_cast<unsigned>(w);
  } else if (key == "strict_noise") {
    config.strict_noise = parse_bool(value, key);
  } else if (key == "exact_alpha_constant") {
    config.exact_alpha_constant = parse_bool(value, key);
  } else if (key == "sigma_phi_list") {
    config.sigma_phi_list = parse_number_list(value);
  } else if (key == "sweep") {
    config.sweep = parse_sweep(value);
  } else if (key == "output") {
    config.output_path = trim(value);
  } else if (key == "dump_pulses") {
    config.dump_pulses_path = trim(value);
  } else if (key == "mode") {
    throw ConfigError("the mode is chosen by the subcommand, not a config key");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    try {
      apply_key_value(config, stripped.substr(0, eq),
                      stripped.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::span<const ConfigKey> config_keys() {
  static const ConfigKey kKeys[] = {
      {"v_a", "Gaussian modulation variance, shot-noise units"},
      {"gamma", "fiber attenuation, dB/km"},
      {"length_km", "fiber length in km ('L' accepted in config files)"},
      {"eta", "detector efficiency in (0, 1]"},
      {"nu_el", "detector electronic noise variance, shot-noise units"},
      {"eps0", "displacement-independent channel excess noise, SNU"},
      {"sigma_phi", "residual phase noise variance, rad^2"},
      {"alpha", "displacement amplitude, or 'auto' for the BER target"},
      {"x_m", "detector linear-range half width, absolute units"},
      {"adc_bits", "ADC resolution in bits"},
      {"f", "reconciliation efficiency in (0, 1]"},
      {"n_pulses", "pulses per simulated frame"},
      {"master_seed", "seed for all random streams"},
      {"workers", "worker threads for simulate mode"},
      {"strict_noise", "fold clipping + quantization noise into eps"},
      {"exact_alpha_constant", "solve the 1e-9 BER target exactly"},
      {"sigma_phi_list", "comma-separated sigma_phi values (keyrate-sweep)"},
      {"sweep", "sweep axis: name:start:stop:step or name:v1,v2,..."},
      {"output", "write the report/CSV here instead of stdout"},
      {"dump_pulses", "also write per-pulse CSV here (simulate)"},
  };
  return kKeys;
}

double resolve_alpha(const RunConfig& config) {
  if (config.alpha_override) {
    if (*config.alpha_override < 0.0) {
      throw ConfigError("alpha must be >= 0");
    }
    return *config.alpha_override;
  }
  return required_displacement(config.params, config.exact_alpha_constant);
}

}  // namespace cvlink
