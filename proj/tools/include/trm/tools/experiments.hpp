#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trm/analysis.hpp"
#include "trm/exact.hpp"
#include "trm/integrate.hpp"
#include "trm/schemes.hpp"
#include "trm/tools/config.hpp"

namespace trm::tools {

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunOutput {
  std::vector<OutputFile> files;
  bool passed = true;  ///< false when a checked property failed (ring-stability)
  std::string summary;
};

/// Shortest round-trip decimal form.
std::string format_number(double value);

NumericalFlux make_flux(const ExperimentConfig& config, std::string_view scheme);
FluxModel make_model(const ExperimentConfig& config);
DensityState initial_state(const ExperimentConfig& config, const Grid& grid);
std::optional<RampConfig> make_ramps(const ExperimentConfig& config, const Grid& grid);

/// The Riemann problem behind a shock/rarefaction config, nullopt otherwise.
std::optional<RiemannProblem> riemann_problem(const ExperimentConfig& config, double length);

/// Integrates with the configured method (euler with CFL or fixed dt, or rk4).
Trajectory integrate(const ExperimentConfig& config, const DensityState& initial,
                     const RhsContext& ctx);

struct AccuracyRun {
  ErrorReport report;
  Grid grid;
  DensityState initial;
  DensityState final_state;
  std::vector<double> exact_final;
};

/// Every (scheme, N) pair run concurrently, returned in (scheme, N) order.
std::vector<AccuracyRun> accuracy_sweep(const ExperimentConfig& config);

RunOutput run_accuracy(const ExperimentConfig& config);
RunOutput run_simulate(const ExperimentConfig& config);
RunOutput run_ring_stability(const ExperimentConfig& config);
RunOutput run_crn_export(const ExperimentConfig& config);
RunOutput run_experiment(const ExperimentConfig& config);

void write_outputs(const RunOutput& output, const std::filesystem::path& directory);

}  // namespace trm::tools
