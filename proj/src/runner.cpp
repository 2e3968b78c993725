#include "cvlink/runner.hpp"

#include <cstdio>
#include <sstream>

#include "cvlink/estimation.hpp"
#include "cvlink/noise_budget.hpp"
#include "cvlink/security.hpp"
#include "cvlink/simulate.hpp"
#include "cvlink/version.hpp"

namespace cvlink {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

const char* mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::Budget: return "budget";
    case RunMode::AlphaSweep: return "alpha-sweep";
    case RunMode::KeyrateSweep: return "keyrate-sweep";
    case RunMode::Simulate: return "simulate";
  }
  return "?";
}

// '#' metadata block shared by every output: tool version plus the full
// parameter set, so any CSV is self-describing.
void write_header(std::ostringstream& out, const RunConfig& config) {
  const SystemParams& p = config.params;
  out << "# cvlink " << kVersion << " mode=" << mode_name(config.mode) << "\n";
  out << "# v_a = " << fmt(p.v_a) << "\n";
  out << "# gamma = " << fmt(p.gamma) << "\n";
  out << "# length_km = " << fmt(p.length_km) << "\n";
  out << "# eta = " << fmt(p.eta) << "\n";
  out << "# nu_el = " << fmt(p.nu_el) << "\n";
  out << "# eps0 = " << fmt(p.eps0) << "\n";
  out << "# sigma_phi = " << fmt(p.sigma_phi) << "\n";
  if (config.alpha_override) {
    out << "# alpha = " << fmt(*config.alpha_override) << " (explicit)\n";
  } else {
    out << "# alpha = auto (sized per point for the 1e-9 BER target)\n";
  }
  out << "# x_m = " << fmt(p.x_m) << "\n";
  out << "# adc_bits = " << p.adc_bits << "\n";
  out << "# f = " << fmt(p.f) << "\n";
  out << "# strict_noise = " << (config.strict_noise ? "true" : "false")
      << "\n";
}

SweepAxis length_axis_or_default(const RunConfig& config, double def_stop,
                                 double def_step) {
  if (!config.sweep) {
    SweepAxis axis;
    axis.name = "length_km";
    const auto count = static_cast<std::size_t>(def_stop / def_step + 0.5) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      axis.values.push_back(static_cast<double>(i) * def_step);
    }
    return axis;
  }
  const SweepAxis& axis = *config.sweep;
  if (axis.name != "L" && axis.name != "length_km") {
    throw ConfigError(std::string(mode_name(config.mode)) +
                      " sweeps the fiber length; use axis 'L'");
  }
  for (double v : axis.values) {
    if (v < 0.0) throw ConfigError("length_km must be >= 0");
  }
  return axis;
}

double alpha_for(const RunConfig& config, const SystemParams& params) {
  if (config.alpha_override) return *config.alpha_override;
  return required_displacement(params, config.exact_alpha_constant);
}

}  // namespace

RunOutputs run_budget(const RunConfig& config) {
  config.params.validate();
  const double alpha = resolve_alpha(config);
  const NoiseBudget b =
      compute_noise_budget_at(config.params, alpha, config.strict_noise);

  std::ostringstream out;
  write_header(out, config);
  out << "quantity,value\n";
  out << "alpha," << fmt(b.alpha) << "\n";
  out << "alpha_prime," << fmt(b.alpha_prime) << "\n";
  out << "v_b," << fmt(b.v_b) << "\n";
  out << "eps_c," << fmt(b.eps_c) << "\n";
  out << "eps_d," << fmt(b.eps_d) << "\n";
  out << "eps_p," << fmt(b.eps_p) << "\n";
  out << "eps_total," << fmt(b.eps_total) << "\n";
  out << "ber," << fmt(b.ber) << "\n";
  return {out.str(), std::nullopt};
}

RunOutputs run_alpha_sweep(const RunConfig& config) {
  config.params.validate();
  const SweepAxis axis = length_axis_or_default(config, 50.0, 1.0);

  std::ostringstream out;
  write_header(out, config);
  out << "L_km,alpha,alpha_prime,eps_c,eps_d,eps_p,ber_check\n";
  for (double length : axis.values) {
    SystemParams p = config.params;
    p.length_km = length;
    const NoiseBudget b =
        compute_noise_budget_at(p, alpha_for(config, p), config.strict_noise);
    out << fmt(length) << ',' << fmt(b.alpha) << ',' << fmt(b.alpha_prime)
        << ',' << fmt(b.eps_c) << ',' << fmt(b.eps_d) << ',' << fmt(b.eps_p)
        << ',' << fmt(b.ber) << "\n";
  }
  return {out.str(), std::nullopt};
}

RunOutputs run_keyrate_sweep(const RunConfig& config) {
  config.params.validate();
  const SweepAxis axis = length_axis_or_default(config, 60.0, 0.5);
  std::vector<double> sigmas = config.sigma_phi_list;
  if (sigmas.empty()) {
    sigmas = {1e-3, 1e-4, 1e-5, 1e-6};
  }
  for (double s : sigmas) {
    if (s < 0.0) throw ConfigError("sigma_phi_list entries must be >= 0");
  }

  std::ostringstream out;
  write_header(out, config);
  out << "# sigma_phi_list =";
  for (double s : sigmas) out << ' ' << fmt_short(s);
  out << "\n";
  out << "L_km";
  for (double s : sigmas) {
    out << ",R_" << fmt_short(s) << ",positive_rate_" << fmt_short(s);
  }
  out << "\n";

  for (double length : axis.values) {
    out << fmt(length);
    for (double s : sigmas) {
      SystemParams p = config.params;
      p.length_km = length;
      p.sigma_phi = s;
      const double alpha = alpha_for(config, p);
      const double eps = total_excess_noise(p, alpha, config.strict_noise);
      const KeyRateReport rep = key_rate(security_inputs(p, eps));
      out << ',' << fmt(rep.rate) << ',' << (rep.rate > 0.0 ? '1' : '0');
    }
    out << "\n";
  }
  return {out.str(), std::nullopt};
}

RunOutputs run_simulate(const RunConfig& config) {
  config.params.validate();
  SystemParams p = config.params;
  p.alpha = resolve_alpha(config);

  SimulateOptions opts;
  opts.n_pulses = config.n_pulses;
  opts.master_seed = config.master_seed;
  opts.workers = config.workers;
  opts.collect_records = !config.dump_pulses_path.empty();
  const SimulationResult result = simulate_frames(p, opts);
  const FrameStats& st = result.stats;

  std::ostringstream out;
  write_header(out, config);
  out << "# n_pulses = " << config.n_pulses << "\n";
  out << "# master_seed = " << config.master_seed << "\n";
  out << "# workers = " << config.workers << "\n";
  out << "alpha = " << fmt(p.alpha) << "\n";
  out << "n_pulses = " << st.n_pulses << "\n";
  out << "n_basis_x = " << result.n_basis_x << "\n";
  out << "n_basis_p = " << result.n_basis_p << "\n";
  out << "n_bit_errors = " << st.n_bit_errors << "\n";
  out << "ber_hat = " << fmt(st.ber_hat) << "\n";
  out << "ber_ci_low = " << fmt(st.ber_ci_low) << "\n";
  out << "ber_ci_high = " << fmt(st.ber_ci_high) << "\n";
  out << "corr_ab = " << fmt(st.corr_ab) << "\n";
  if (st.channel_valid) {
    out << "t_eta_hat = " << fmt(st.t_eta_hat) << "\n";
    out << "eps_hat = " << fmt(st.eps_hat) << "\n";
    const KeyRateReport rep = end_to_end_key_rate(st, p);
    out << "key_rate = " << fmt(rep.rate) << "\n";
    out << "i_ab = " << fmt(rep.i_ab) << "\n";
    out << "chi_be = " << fmt(rep.chi_be) << "\n";
    out << "chi_line = " << fmt(rep.chi_line) << "\n";
    out << "chi_hom = " << fmt(rep.chi_hom) << "\n";
    out << "chi_tot = " << fmt(rep.chi_tot) << "\n";
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
      out << "lambda_" << (i + 1) << " = " << fmt(rep.lambdas[i]) << "\n";
    }
  } else {
    out << "channel_estimate = unavailable (needs >= "
        << kMinChannelPulses << " pulses)\n";
  }

  RunOutputs outputs{out.str(), std::nullopt};
  if (opts.collect_records) {
    std::ostringstream dump;
    write_header(dump, config);
    dump << "index,bit,key_x,key_p,amp_x,amp_p,basis,raw,bit_decoded,"
            "key_value\n";
    for (std::size_t i = 0; i < result.pulses.size(); ++i) {
      const PulseRecord& pr = result.pulses[i];
      const DetectionRecord& dr = result.detections[i];
      dump << i << ',' << pr.bit << ',' << fmt(pr.key_x) << ','
           << fmt(pr.key_p) << ',' << fmt(pr.amplitude.x) << ','
           << fmt(pr.amplitude.p) << ','
           << (dr.basis == Basis::X ? 'x' : 'p') << ',' << fmt(dr.raw) << ','
           << dr.bit << ',' << fmt(dr.key_value) << "\n";
    }
    outputs.dump_text = dump.str();
  }
  return outputs;
}

RunOutputs run(const RunConfig& config) {
  switch (config.mode) {
    case RunMode::Budget: return run_budget(config);
    case RunMode::AlphaSweep: return run_alpha_sweep(config);
    case RunMode::KeyrateSweep: return run_keyrate_sweep(config);
    case RunMode::Simulate: return run_simulate(config);
  }
  throw ConfigError("unknown mode");
}

}  // namespace cvlink
