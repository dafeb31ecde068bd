#include "trm/tools/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "trm/crn.hpp"
#include "trm/errors.hpp"

namespace trm::tools {

using nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

namespace {

std::string hash_comment(const ExperimentConfig& config, std::string_view marker = "#") {
  return std::string(marker) + " config-hash: " + config.hash() + "\n";
}

std::string csv_line(std::span<const double> values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_number(values[i]);
  }
  line += '\n';
  return line;
}

Trajectory integrate_fixed(const DensityState& initial, double t_end, double dt,
                           const RhsContext& ctx, std::size_t stride) {
  Trajectory out;
  out.states.push_back(initial);
  DensityState state = initial;
  const double t0 = initial.t();
  const auto steps = static_cast<std::size_t>(std::ceil((t_end - t0) / dt - 1e-12));
  CflPolicy cfl{1.0};
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? t_end : t0 + static_cast<double>(k) * dt;
    state = step_euler(state, t_next - state.t(), ctx, cfl);
    if (k % stride == 0 || k == steps) out.states.push_back(state);
  }
  return out;
}

std::string profile_csv(const ExperimentConfig& config, const AccuracyRun& run) {
  std::string out = hash_comment(config);
  out += "x,initial,final,exact\n";
  for (std::size_t i = 0; i < run.grid.n_cells(); ++i) {
    const double row[] = {run.grid.center(i), run.initial[i], run.final_state[i], run.exact_final[i]};
    out += csv_line(row);
  }
  return out;
}

std::string problem_label(const ExperimentConfig& config) {
  return config.problem.kind == ProblemKind::Shock ? "shock" : "rarefaction";
}

}  // namespace

FluxModel make_model(const ExperimentConfig& config) {
  return FluxModel(config.omega, config.rho_max);
}

NumericalFlux make_flux(const ExperimentConfig& config, std::string_view scheme) {
  const FluxModel model = make_model(config);
  if (scheme == "trm") return NumericalFlux::trm(model);
  if (scheme == "lxf") return NumericalFlux::lax_friedrichs(model, config.lxf_diffusion);
  if (scheme == "godunov") return NumericalFlux::godunov(model);
  throw ConfigError("/schemes", "unknown scheme '" + std::string(scheme) + "'");
}

std::optional<RiemannProblem> riemann_problem(const ExperimentConfig& config, double length) {
  const double x0 = config.problem.x0.value_or(0.5 * length);
  switch (config.problem.kind) {
    case ProblemKind::Shock:
      return RiemannProblem(0.0, config.rho_max, x0, make_model(config));
    case ProblemKind::Rarefaction:
      return RiemannProblem(config.rho_max, 0.0, x0, make_model(config));
    default:
      return std::nullopt;
  }
}

DensityState initial_state(const ExperimentConfig& config, const Grid& grid) {
  const auto& p = config.problem;
  switch (p.kind) {
    case ProblemKind::Shock:
    case ProblemKind::Rarefaction: {
      const auto rp = *riemann_problem(config, grid.length());
      if (!(rp.x0 > 0.0 && rp.x0 < grid.length())) {
        throw ConfigError("/problem/x0", "must lie inside the road");
      }
      return cell_average_init(
          grid, PiecewiseLinearProfile::step(grid.length(), rp.x0, rp.rho_left, rp.rho_right),
          config.rho_max);
    }
    case ProblemKind::Uniform:
      return DensityState(0.0, std::vector<double>(grid.n_cells(), p.value), config.rho_max);
    case ProblemKind::Random: {
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> dist(p.low, p.high);
      std::vector<double> rho(grid.n_cells());
      for (auto& r : rho) r = dist(rng);
      return DensityState(0.0, std::move(rho), config.rho_max);
    }
    case ProblemKind::Piecewise: {
      std::vector<double> breaks{0.0};
      for (double b : p.breaks) {
        if (!(b > breaks.back() && b < grid.length())) {
          throw ConfigError("/problem/breaks", "must increase strictly inside the road");
        }
        breaks.push_back(b);
      }
      breaks.push_back(grid.length());
      return cell_average_init(grid, PiecewiseLinearProfile::piecewise_constant(breaks, p.values),
                               config.rho_max);
    }
  }
  throw ConfigError("/problem/type", "unsupported problem");
}

std::optional<RampConfig> make_ramps(const ExperimentConfig& config, const Grid& grid) {
  if (!config.on_ramp && !config.off_ramp) return std::nullopt;
  const RampSpec none{};
  const RampSpec& on = config.on_ramp ? *config.on_ramp : none;
  const RampSpec& off = config.off_ramp ? *config.off_ramp : none;
  try {
    return RampConfig::from_intervals(grid, on.intervals, off.intervals, on.rate, off.rate);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/ramps", e.what());
  } catch (const DomainError& e) {
    throw ConfigError("/ramps", e.what());
  }
}

Trajectory integrate(const ExperimentConfig& config, const DensityState& initial,
                     const RhsContext& ctx) {
  if (config.integrator == "rk4") {
    ReferenceOptions options;
    options.step_fraction = config.step_fraction;
    options.stride = config.stride;
    options.tolerance = config.tolerance;
    return integrate_reference(initial, config.t_end, ctx, options);
  }
  if (config.dt) return integrate_fixed(initial, config.t_end, *config.dt, ctx, config.stride);
  return integrate_euler(initial, config.t_end, ctx, CflPolicy{config.courant}, config.stride);
}

std::vector<AccuracyRun> accuracy_sweep(const ExperimentConfig& config) {
  std::vector<std::future<AccuracyRun>> jobs;
  for (const auto& scheme : config.schemes) {
    for (std::size_t n : config.n_cells) {
      jobs.push_back(std::async(std::launch::async, [&config, scheme, n] {
        Grid grid(config.grid_length(n), n);
        const auto problem = *riemann_problem(config, grid.length());
        RhsContext ctx(grid, config.boundary, make_flux(config, scheme), make_ramps(config, grid));
        DensityState init = initial_state(config, grid);
        Trajectory traj = integrate(config, init, ctx);
        auto report = error_norms(scheme, traj, grid, [&](double t) {
          return exact_cell_averages(problem, grid, t);
        });
        auto exact = exact_cell_averages(problem, grid, traj.back().t());
        return AccuracyRun{std::move(report), grid, std::move(init), traj.back(), std::move(exact)};
      }));
    }
  }
  std::vector<AccuracyRun> runs;
  runs.reserve(jobs.size());
  for (auto& job : jobs) runs.push_back(job.get());
  return runs;
}

RunOutput run_accuracy(const ExperimentConfig& config) {
  if (!riemann_problem(config, config.length)) {
    throw ConfigError("/problem/type", "accuracy runs need shock or rarefaction");
  }
  const auto runs = accuracy_sweep(config);
  RunOutput out;
  const std::string label = problem_label(config);
  std::string table = hash_comment(config) + ErrorReport::csv_header() + "\n";
  for (const auto& run : runs) {
    table += run.report.csv_row() + "\n";
    out.files.push_back({"profile_" + label + "_" + run.report.scheme + "_N" +
                             std::to_string(run.report.n_cells) + ".csv",
                         profile_csv(config, run)});
  }
  out.files.insert(out.files.begin(), {"accuracy_" + label + ".csv", table});
  out.summary = std::to_string(runs.size()) + " runs written to accuracy_" + label + ".csv";
  return out;
}

RunOutput run_simulate(const ExperimentConfig& config) {
  if (config.schemes.size() != 1) throw ConfigError("/schemes", "simulate runs exactly one scheme");
  if (config.n_cells.size() != 1) throw ConfigError("/grid/n_cells", "simulate runs exactly one N");
  const std::size_t n = config.n_cells.front();
  Grid grid(config.grid_length(n), n);
  RhsContext ctx(grid, config.boundary, make_flux(config, config.schemes.front()),
                 make_ramps(config, grid));
  const DensityState init = initial_state(config, grid);
  const double bound = CflPolicy::stability_bound(ctx, 0.0);
  const Trajectory traj = integrate(config, init, ctx);

  std::string csv = hash_comment(config) + "t,mass";
  for (std::size_t i = 1; i <= n; ++i) csv += ",rho_" + std::to_string(i);
  csv += '\n';
  std::vector<double> row;
  for (const auto& s : traj.states) {
    row.assign({s.t(), s.mass(grid.dx())});
    row.insert(row.end(), s.values().begin(), s.values().end());
    csv += csv_line(row);
  }

  ordered_json manifest;
  manifest["config_hash"] = config.hash();
  manifest["config"] = ordered_json::parse(config.to_json_text());
  manifest["dx"] = grid.dx();
  manifest["cfl_bound"] = bound;
  if (config.integrator == "rk4") {
    manifest["dt"] = reference_step(ctx, config.step_fraction);
  } else {
    manifest["dt"] = config.dt ? *config.dt : config.courant * bound;
  }
  manifest["samples"] = traj.size();
  manifest["mass_initial"] = traj.front().mass(grid.dx());
  manifest["mass_final"] = traj.back().mass(grid.dx());

  RunOutput out;
  out.files.push_back({"trajectory.csv", csv});
  out.files.push_back({"manifest.json", manifest.dump(2) + "\n"});
  out.summary = std::to_string(traj.size()) + " samples, CFL bound " + format_number(bound);
  return out;
}

RunOutput run_ring_stability(const ExperimentConfig& config) {
  if (!is_ring(config.boundary)) throw ConfigError("/boundary/type", "ring-stability needs the ring boundary");
  if (config.schemes.size() != 1 || config.schemes.front() != "trm") {
    throw ConfigError("/schemes", "ring-stability analyses the trm scheme only");
  }
  const FluxModel model = make_model(config);
  RunOutput out;
  ordered_json report;
  report["config_hash"] = config.hash();
  report["runs"] = ordered_json::array();
  for (std::size_t n : config.n_cells) {
    Grid grid(config.grid_length(n), n);
    RhsContext ctx(grid, config.boundary, make_flux(config, "trm"), make_ramps(config, grid));
    const DensityState init = initial_state(config, grid);
    for (double r : init.values()) {
      if (!(r > 0.0 && r < config.rho_max)) {
        throw InteriorViolation("ring-stability needs a strictly interior initial state");
      }
    }
    const Trajectory traj = integrate(config, init, ctx);
    const LyapunovReport lyap = lyapunov_decay_check(traj, model, grid.dx());

    std::string csv = hash_comment(config) + "t,V,bound,vdot\n";
    for (const auto& s : lyap.samples) {
      const double row[] = {s.t, s.value, s.bound, s.rate};
      csv += csv_line(row);
    }
    out.files.push_back({"lyapunov_N" + std::to_string(n) + ".csv", csv});

    const double eq = ring_equilibrium(traj.back().rho());
    double deviation = 0.0;
    for (double r : traj.back().values()) deviation = std::max(deviation, std::abs(r - eq));
    report["runs"].push_back({{"n_cells", n},
                              {"dx", grid.dx()},
                              {"samples", lyap.samples.size()},
                              {"V_initial", lyap.samples.front().value},
                              {"V_final", lyap.samples.back().value},
                              {"max_increase", lyap.max_increase},
                              {"max_bound_excess", lyap.max_bound_excess},
                              {"monotone", lyap.monotone},
                              {"bound_respected", lyap.bound_respected},
                              {"equilibrium", eq},
                              {"final_max_deviation", deviation},
                              {"passed", lyap.passed()}});
    out.passed = out.passed && lyap.passed();
  }
  report["passed"] = out.passed;
  out.files.push_back({"report.json", report.dump(2) + "\n"});
  out.summary = out.passed ? "Lyapunov decay verified" : "Lyapunov decay check FAILED";
  return out;
}

RunOutput run_crn_export(const ExperimentConfig& config) {
  const auto& spec = config.crn;
  std::vector<crn::SegmentRamp> ramps;
  if (!spec.ramps.empty()) {
    ramps.resize(spec.segments);
    for (const auto& r : spec.ramps) {
      if (r.segment == 0 || r.segment > spec.segments) {
        throw ConfigError("/crn/ramps", "segment out of range");
      }
      ramps[r.segment - 1] = {r.k_on, r.k_off};
    }
  }
  const auto net = spec.rates.size() == 1
                       ? crn::build_network(spec.segments, spec.topology, spec.rates.front(), ramps)
                       : crn::build_network(spec.segments, spec.topology, spec.rates, ramps);

  auto doc = ordered_json::parse(crn::to_json(net));
  ordered_json wrapped;
  wrapped["config_hash"] = config.hash();
  for (auto& [key, value] : doc.items()) wrapped[key] = value;

  RunOutput out;
  out.files.push_back({"reaction_graph.dot",
                       hash_comment(config, "//") + crn::to_dot(crn::export_reaction_graph(net))});
  out.files.push_back({"reaction_network.json", wrapped.dump(2) + "\n"});
  out.summary = std::to_string(net.complexes().size()) + " complexes, " +
                std::to_string(net.reactions().size()) + " reactions";
  return out;
}

RunOutput run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Simulate: return run_simulate(config);
    case ExperimentKind::Accuracy: return run_accuracy(config);
    case ExperimentKind::RingStability: return run_ring_stability(config);
    case ExperimentKind::CrnExport: return run_crn_export(config);
  }
  throw ConfigError("/kind", "unknown experiment kind");
}

void write_outputs(const RunOutput& output, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& file : output.files) {
    std::ofstream os(directory / file.name, std::ios::binary);
    os << file.content;
    if (!os) throw std::runtime_error("cannot write " + (directory / file.name).string());
  }
}

}  // namespace trm::tools
