#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trm/grid.hpp"
#include "trm/ramps.hpp"

namespace trm::tools {

/// Invalid experiment configuration. `where` is a JSON pointer to the
/// offending field, or "line L, column C" for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class ExperimentKind { Simulate, Accuracy, RingStability, CrnExport };

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept;

enum class ProblemKind { Shock, Rarefaction, Uniform, Random, Piecewise };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Shock;
  std::optional<double> x0;           ///< jump position, default L/2
  double value = 0.0;                 ///< uniform
  double low = 1.0, high = 99.0;      ///< random: uniform draws in [low, high]
  std::vector<double> breaks;         ///< piecewise: interior breakpoints
  std::vector<double> values;         ///< piecewise: breaks.size() + 1 values
};

struct RampSpec {
  std::vector<RampInterval> intervals;
  StepSignal rate;
};

struct CrnSegmentRamp {
  std::size_t segment = 1;  ///< one based
  std::optional<double> k_on;
  std::optional<double> k_off;
};

struct CrnSpec {
  std::size_t segments = 3;
  Topology topology = Topology::Line;
  std::vector<double> rates{1.0};  ///< one value is broadcast to every interface
  std::vector<CrnSegmentRamp> ramps;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Accuracy;
  double omega = 1.0;
  double rho_max = 100.0;
  double length = 20.0;
  std::optional<double> cell_width;  ///< when set, length = N * cell_width
  std::vector<std::size_t> n_cells{10, 20, 30, 50, 70, 100, 200, 300};
  double t_end = 2.0 / 60.0;
  std::size_t stride = 1;
  std::vector<std::string> schemes{"trm", "lxf", "godunov"};
  std::optional<double> lxf_diffusion;
  ProblemSpec problem;
  BoundaryPolicy boundary = boundary::CopyOut{};
  std::optional<RampSpec> on_ramp;
  std::optional<RampSpec> off_ramp;
  std::string integrator = "rk4";
  double courant = 0.9;
  std::optional<double> dt;
  double step_fraction = 0.1;
  double tolerance = 1e-6;
  std::uint64_t seed = 42;
  CrnSpec crn;

  /// Defaults for a kind before any user fields are applied.
  static ExperimentConfig defaults(ExperimentKind kind);

  /// Parses a JSON document; `kind` is used when the document has none.
  static ExperimentConfig from_json_text(std::string_view text,
                                         std::optional<ExperimentKind> kind = std::nullopt);

  double grid_length(std::size_t n) const;

  /// Fully resolved configuration as canonical JSON text.
  std::string to_json_text(int indent = -1) const;
  /// 16 hex digits of FNV-1a over to_json_text().
  std::string hash() const;

  /// Throws ConfigError for inconsistent combinations.
  void validate() const;
};

/// "10,20,30" -> {10, 20, 30}.
std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace trm::tools
