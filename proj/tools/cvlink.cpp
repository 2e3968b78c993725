// cvlink: analytic link budgets, security sweeps, and seeded Monte Carlo
// for a shared-pulse coherent link. See README.md for the output formats.

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cvlink/config.hpp"
#include "cvlink/runner.hpp"
#include "cvlink/security.hpp"
#include "cvlink/version.hpp"

namespace {

struct PendingArgs {
  std::vector<std::string> config_paths;
  std::vector<std::pair<std::string, std::string>> key_values;
};

void attach_options(CLI::App* sub, PendingArgs& pending) {
  sub->add_option_function<std::string>(
         "-c,--config",
         [&pending](const std::string& path) {
           pending.config_paths.push_back(path);
         },
         "key = value config file (flags override it)")
      ->type_name("FILE");
  for (const cvlink::ConfigKey& key : cvlink::config_keys()) {
    sub->add_option_function<std::string>(
           std::string("--") + key.name,
           [&pending, name = std::string(key.name)](const std::string& value) {
             pending.key_values.emplace_back(name, value);
           },
           key.help)
        ->type_name("VALUE");
  }
  sub->add_option_function<std::string>(
         "-o",
         [&pending](const std::string& path) {
           pending.key_values.emplace_back("output", path);
         },
         "shorthand for --output")
      ->type_name("FILE");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw cvlink::ConfigError("cannot open output file '" + path + "'");
  }
  out << text;
  if (!out) {
    throw cvlink::ConfigError("failed writing output file '" + path + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent-link budget, key-rate sweep and Monte Carlo tool"};
  app.set_version_flag("--version", cvlink::kVersion);
  app.require_subcommand(1);

  PendingArgs pending;
  CLI::App* budget =
      app.add_subcommand("budget", "analytic noise budget at one point");
  CLI::App* alpha_sweep = app.add_subcommand(
      "alpha-sweep", "displacement and impairment noises vs fiber length");
  CLI::App* keyrate_sweep = app.add_subcommand(
      "keyrate-sweep", "secret key rate vs fiber length per sigma_phi");
  CLI::App* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo of the full link");
  for (CLI::App* sub : {budget, alpha_sweep, keyrate_sweep, simulate}) {
    attach_options(sub, pending);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // help / version
    }
    app.exit(e);
    return 1;
  }

  cvlink::RunConfig config;
  if (budget->parsed()) config.mode = cvlink::RunMode::Budget;
  if (alpha_sweep->parsed()) config.mode = cvlink::RunMode::AlphaSweep;
  if (keyrate_sweep->parsed()) config.mode = cvlink::RunMode::KeyrateSweep;
  if (simulate->parsed()) config.mode = cvlink::RunMode::Simulate;

  try {
    for (const std::string& path : pending.config_paths) {
      cvlink::apply_config_file(config, path);
    }
    for (const auto& [key, value] : pending.key_values) {
      cvlink::apply_key_value(config, key, value);
    }

    const cvlink::RunOutputs outputs = cvlink::run(config);
    if (config.output_path.empty()) {
      std::cout << outputs.main_text;
    } else {
      write_file(config.output_path, outputs.main_text);
    }
    if (outputs.dump_text) {
      write_file(config.dump_pulses_path, *outputs.dump_text);
    }
  } catch (const cvlink::NumericalDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cvlink::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
