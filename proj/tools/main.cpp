#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trm/errors.hpp"
#include "trm/tools/config.hpp"
#include "trm/tools/experiments.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kGuardTripped = 3;

struct Options {
  std::string config;
  std::string out = "out";
  std::string scheme;
  std::string n_cells;
  std::optional<std::uint64_t> seed;
};

trm::tools::ExperimentConfig load(trm::tools::ExperimentKind kind, const Options& opt) {
  using trm::tools::ConfigError;
  using trm::tools::ExperimentConfig;
  ExperimentConfig config = ExperimentConfig::defaults(kind);
  if (!opt.config.empty()) {
    std::ifstream in(opt.config, std::ios::binary);
    if (!in) throw ConfigError(opt.config, "cannot open config file");
    std::stringstream text;
    text << in.rdbuf();
    try {
      config = ExperimentConfig::from_json_text(text.str(), kind);
    } catch (const ConfigError& e) {
      throw ConfigError(opt.config + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
  }
  if (!opt.scheme.empty()) config.schemes = {opt.scheme};
  if (!opt.n_cells.empty()) config.n_cells = trm::tools::parse_size_list(opt.n_cells);
  if (opt.seed) config.seed = *opt.seed;
  config.validate();
  return config;
}

int execute(trm::tools::ExperimentKind kind, const Options& opt) {
  try {
    const auto config = load(kind, opt);
    const auto output = trm::tools::run_experiment(config);
    trm::tools::write_outputs(output, opt.out);
    for (const auto& f : output.files) std::cout << opt.out << "/" << f.name << "\n";
    std::cout << output.summary << "\n";
    return output.passed ? 0 : 1;
  } catch (const trm::tools::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const trm::NumericalGuard& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kGuardTripped;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traffic reaction model experiments"};
  app.require_subcommand(1);
  Options opt;
  std::optional<trm::tools::ExperimentKind> chosen;

  for (auto kind : {trm::tools::ExperimentKind::Simulate, trm::tools::ExperimentKind::Accuracy,
                    trm::tools::ExperimentKind::RingStability, trm::tools::ExperimentKind::CrnExport}) {
    const std::string name(trm::tools::to_string(kind));
    auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", opt.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
    sub->add_option("--scheme", opt.scheme, "Numerical flux: trm | lxf | godunov");
    sub->add_option("--n-cells", opt.n_cells, "Comma separated cell counts");
    sub->add_option("--seed", opt.seed, "Seed for random initial states");
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return execute(*chosen, opt);
}
