#include "trm/tools/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace trm::tools {

using nlohmann::json;

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::Accuracy: return "accuracy";
    case ExperimentKind::RingStability: return "ring-stability";
    case ExperimentKind::CrnExport: return "crn-export";
  }
  return "?";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept {
  if (name == "simulate") return ExperimentKind::Simulate;
  if (name == "accuracy") return ExperimentKind::Accuracy;
  if (name == "ring-stability") return ExperimentKind::RingStability;
  if (name == "crn-export") return ExperimentKind::CrnExport;
  return std::nullopt;
}

namespace {

std::string_view problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Shock: return "shock";
    case ProblemKind::Rarefaction: return "rarefaction";
    case ProblemKind::Uniform: return "uniform";
    case ProblemKind::Random: return "random";
    case ProblemKind::Piecewise: return "piecewise";
  }
  return "?";
}

/// Walks a JSON object, remembering the pointer path for diagnostics and
/// rejecting keys nobody asked for.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("expected an object");
  }

  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError(path_ + "/" + key, "unknown field");
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }

  const json& at(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }

  std::string child(const std::string& key) const { return path_ + "/" + key; }

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_, message); }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(child(key), "expected a number");
    return v.get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key, 0.0);
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_number_unsigned()) throw ConfigError(child(key), "expected a nonnegative integer");
    return v.get<std::size_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(child(key), "expected a string");
    return v.get<std::string>();
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> number_list(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(path, "expected a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<std::size_t> count_list(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return {v.get<std::size_t>()};
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a nonempty list of cell counts");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned() || v[i].get<std::size_t>() == 0) {
      throw ConfigError(path + "/" + std::to_string(i), "expected a positive integer");
    }
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

StepSignal parse_signal(const json& v, const std::string& path) {
  try {
    if (v.is_number()) return StepSignal(v.get<double>());
    Reader r(v, path);
    const double initial = r.number("initial", 0.0);
    std::vector<std::pair<double, double>> switches;
    if (r.has("switches")) {
      const json& s = r.at("switches");
      if (!s.is_array()) throw ConfigError(r.child("switches"), "expected [[t, rate], ...]");
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_array() || s[i].size() != 2 || !s[i][0].is_number() || !s[i][1].is_number()) {
          throw ConfigError(r.child("switches") + "/" + std::to_string(i), "expected [t, rate]");
        }
        switches.emplace_back(s[i][0].get<double>(), s[i][1].get<double>());
      }
    }
    return StepSignal(initial, std::move(switches));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

RampSpec parse_ramp(const json& v, const std::string& path) {
  Reader r(v, path);
  RampSpec spec;
  if (!r.has("intervals")) r.fail("missing field 'intervals'");
  const json& iv = r.at("intervals");
  if (!iv.is_array()) throw ConfigError(r.child("intervals"), "expected [[lower, upper], ...]");
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const json& p = iv[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ConfigError(r.child("intervals") + "/" + std::to_string(i), "expected [lower, upper]");
    }
    spec.intervals.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  spec.rate = r.has("rate") ? parse_signal(r.at("rate"), r.child("rate")) : StepSignal(0.0);
  return spec;
}

json signal_json(const StepSignal& s) {
  json sw = json::array();
  for (const auto& [t, v] : s.switches()) sw.push_back({t, v});
  return {{"initial", s.initial()}, {"switches", sw}};
}

json ramp_json(const RampSpec& r) {
  json iv = json::array();
  for (const auto& i : r.intervals) iv.push_back({i.lower, i.upper});
  return {{"intervals", iv}, {"rate", signal_json(r.rate)}};
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::Accuracy:
      break;
    case ExperimentKind::Simulate:
      c.n_cells = {50};
      c.schemes = {"trm"};
      c.integrator = "euler";
      break;
    case ExperimentKind::RingStability:
      c.n_cells = {10};
      c.cell_width = 1.0;
      c.t_end = 5.0;
      c.schemes = {"trm"};
      c.boundary = boundary::Ring{};
      c.problem.kind = ProblemKind::Random;
      break;
    case ExperimentKind::CrnExport:
      c.schemes = {"trm"};
      break;
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json_text(std::string_view text,
                                                  std::optional<ExperimentKind> kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                      "malformed JSON");
  }

  Reader root(doc, "");
  if (root.has("kind")) {
    const json& k = root.at("kind");
    auto parsed = k.is_string() ? parse_kind(k.get<std::string>()) : std::nullopt;
    if (!parsed) throw ConfigError("/kind", "expected simulate | accuracy | ring-stability | crn-export");
    if (kind && *kind != *parsed) {
      throw ConfigError("/kind", "config is for '" + k.get<std::string>() +
                                     "' but the command is '" + std::string(to_string(*kind)) + "'");
    }
    kind = parsed;
  }
  if (!kind) throw ConfigError("/kind", "missing experiment kind");

  ExperimentConfig c = defaults(*kind);

  if (root.has("model")) {
    Reader m(root.at("model"), "/model");
    c.rho_max = m.number("rho_max", c.rho_max);
    if (m.has("v_max")) {
      if (m.has("omega")) m.fail("give either omega or v_max, not both");
      c.omega = m.number("v_max", 0.0) / c.rho_max;
    } else {
      c.omega = m.number("omega", c.omega);
    }
  }
  if (root.has("grid")) {
    Reader g(root.at("grid"), "/grid");
    if (g.has("length") && g.has("cell_width")) g.fail("give either length or cell_width");
    if (g.has("length")) {
      c.length = g.number("length", c.length);
      c.cell_width.reset();
    }
    if (g.has("cell_width")) c.cell_width = g.number("cell_width", 1.0);
    if (g.has("n_cells")) c.n_cells = count_list(g.at("n_cells"), g.child("n_cells"));
  }
  if (root.has("time")) {
    Reader t(root.at("time"), "/time");
    c.t_end = t.number("t_end", c.t_end);
    c.stride = t.count("stride", c.stride);
    c.dt = t.has("dt") ? t.optional_number("dt") : c.dt;
    c.courant = t.number("courant", c.courant);
    c.step_fraction = t.number("step_fraction", c.step_fraction);
    c.tolerance = t.number("tolerance", c.tolerance);
  }
  if (root.has("schemes") || root.has("scheme")) {
    if (root.has("schemes") && root.has("scheme")) {
      throw ConfigError("/scheme", "give either scheme or schemes");
    }
    const std::string key = root.has("schemes") ? "schemes" : "scheme";
    const json& s = root.at(key);
    c.schemes.clear();
    if (s.is_string()) {
      c.schemes.push_back(s.get<std::string>());
    } else if (s.is_array() && !s.empty()) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_string()) throw ConfigError("/" + key + "/" + std::to_string(i), "expected a string");
        c.schemes.push_back(s[i].get<std::string>());
      }
    } else {
      throw ConfigError("/" + key, "expected a scheme name or a list of names");
    }
  }
  c.lxf_diffusion = root.optional_number("lxf_diffusion");
  if (root.has("problem")) {
    Reader p(root.at("problem"), "/problem");
    const std::string type = p.text("type", std::string(problem_name(c.problem.kind)));
    if (type == "shock") c.problem.kind = ProblemKind::Shock;
    else if (type == "rarefaction") c.problem.kind = ProblemKind::Rarefaction;
    else if (type == "uniform") c.problem.kind = ProblemKind::Uniform;
    else if (type == "random") c.problem.kind = ProblemKind::Random;
    else if (type == "piecewise") c.problem.kind = ProblemKind::Piecewise;
    else throw ConfigError("/problem/type", "unknown problem '" + type + "'");
    c.problem.x0 = p.optional_number("x0");
    c.problem.value = p.number("value", c.problem.value);
    c.problem.low = p.number("low", c.problem.low);
    c.problem.high = p.number("high", c.problem.high);
    if (p.has("breaks")) c.problem.breaks = number_list(p.at("breaks"), p.child("breaks"));
    if (p.has("values")) c.problem.values = number_list(p.at("values"), p.child("values"));
  }
  if (root.has("boundary")) {
    Reader b(root.at("boundary"), "/boundary");
    const std::string type = b.text("type", "copy-out");
    if (type == "copy-out") c.boundary = boundary::CopyOut{};
    else if (type == "ring") c.boundary = boundary::Ring{};
    else if (type == "fixed") c.boundary = boundary::Fixed{b.number("left", 0.0), b.number("right", 0.0)};
    else throw ConfigError("/boundary/type", "expected copy-out | ring | fixed");
  }
  if (root.has("ramps")) {
    Reader r(root.at("ramps"), "/ramps");
    if (r.has("on")) c.on_ramp = parse_ramp(r.at("on"), r.child("on"));
    if (r.has("off")) c.off_ramp = parse_ramp(r.at("off"), r.child("off"));
  }
  c.integrator = root.text("integrator", c.integrator);
  if (root.has("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("/seed", "expected a nonnegative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (root.has("crn")) {
    Reader r(root.at("crn"), "/crn");
    c.crn.segments = r.count("segments", c.crn.segments);
    const std::string topo = r.text("topology", std::string(trm::to_string(c.crn.topology)));
    if (topo == "line") c.crn.topology = Topology::Line;
    else if (topo == "ring") c.crn.topology = Topology::Ring;
    else throw ConfigError("/crn/topology", "expected line | ring");
    if (r.has("rate")) c.crn.rates = number_list(r.at("rate"), r.child("rate"));
    if (r.has("ramps")) {
      const json& list = r.at("ramps");
      if (!list.is_array()) throw ConfigError("/crn/ramps", "expected an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        Reader e(list[i], "/crn/ramps/" + std::to_string(i));
        CrnSegmentRamp ramp;
        ramp.segment = e.count("segment", 0);
        ramp.k_on = e.optional_number("k_on");
        ramp.k_off = e.optional_number("k_off");
        c.crn.ramps.push_back(ramp);
      }
    }
  }
  c.validate();
  return c;
}

double ExperimentConfig::grid_length(std::size_t n) const {
  return cell_width ? *cell_width * static_cast<double>(n) : length;
}

void ExperimentConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(omega)) throw ConfigError("/model/omega", "must be positive");
  if (!positive(rho_max)) throw ConfigError("/model/rho_max", "must be positive");
  if (!positive(length)) throw ConfigError("/grid/length", "must be positive");
  if (cell_width && !positive(*cell_width)) throw ConfigError("/grid/cell_width", "must be positive");
  if (n_cells.empty()) throw ConfigError("/grid/n_cells", "needs at least one entry");
  for (std::size_t i = 0; i < n_cells.size(); ++i) {
    if (n_cells[i] == 0) throw ConfigError("/grid/n_cells/" + std::to_string(i), "must be positive");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("/time/t_end", "must be nonnegative");
  if (stride == 0) throw ConfigError("/time/stride", "must be positive");
  if (!(courant > 0.0 && courant <= 1.0)) throw ConfigError("/time/courant", "must lie in (0, 1]");
  if (!(step_fraction > 0.0 && step_fraction <= 1.0)) {
    throw ConfigError("/time/step_fraction", "must lie in (0, 1]");
  }
  if (!positive(tolerance)) throw ConfigError("/time/tolerance", "must be positive");
  if (dt && !positive(*dt)) throw ConfigError("/time/dt", "must be positive");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    const auto& s = schemes[i];
    if (s != "trm" && s != "lxf" && s != "godunov") {
      throw ConfigError("/schemes/" + std::to_string(i), "unknown scheme '" + s + "' (trm | lxf | godunov)");
    }
  }
  if (lxf_diffusion && *lxf_diffusion < 0.5 * omega * rho_max) {
    throw ConfigError("/lxf_diffusion", "must be at least omega*rho_max/2 for monotonicity");
  }
  if (integrator != "euler" && integrator != "rk4") {
    throw ConfigError("/integrator", "expected euler | rk4");
  }
  auto in_range = [&](double v) { return v >= 0.0 && v <= rho_max; };
  if (problem.kind == ProblemKind::Uniform && !in_range(problem.value)) {
    throw ConfigError("/problem/value", "must lie in [0, rho_max]");
  }
  if (problem.kind == ProblemKind::Random &&
      !(in_range(problem.low) && in_range(problem.high) && problem.low <= problem.high)) {
    throw ConfigError("/problem", "random bounds must satisfy 0 <= low <= high <= rho_max");
  }
  if (problem.kind == ProblemKind::Piecewise) {
    if (problem.values.size() != problem.breaks.size() + 1) {
      throw ConfigError("/problem/values", "needs exactly one more value than breaks");
    }
    for (std::size_t i = 0; i < problem.values.size(); ++i) {
      if (!in_range(problem.values[i])) {
        throw ConfigError("/problem/values/" + std::to_string(i), "must lie in [0, rho_max]");
      }
    }
  }
  if (const auto* f = std::get_if<boundary::Fixed>(&boundary)) {
    if (!in_range(f->left)) throw ConfigError("/boundary/left", "must lie in [0, rho_max]");
    if (!in_range(f->right)) throw ConfigError("/boundary/right", "must lie in [0, rho_max]");
  }
  if (kind == ExperimentKind::Accuracy && problem.kind != ProblemKind::Shock &&
      problem.kind != ProblemKind::Rarefaction) {
    throw ConfigError("/problem/type", "accuracy runs need shock or rarefaction");
  }
  if (kind == ExperimentKind::RingStability && !is_ring(boundary)) {
    throw ConfigError("/boundary/type", "ring-stability needs the ring boundary");
  }
  if (crn.segments == 0) throw ConfigError("/crn/segments", "must be positive");
  for (std::size_t i = 0; i < crn.rates.size(); ++i) {
    if (!positive(crn.rates[i])) throw ConfigError("/crn/rate/" + std::to_string(i), "must be positive");
  }
  for (std::size_t i = 0; i < crn.ramps.size(); ++i) {
    const auto& r = crn.ramps[i];
    const std::string where = "/crn/ramps/" + std::to_string(i);
    if (r.segment == 0 || r.segment > crn.segments) throw ConfigError(where + "/segment", "out of range");
    if (r.k_on && !positive(*r.k_on)) throw ConfigError(where + "/k_on", "must be positive");
    if (r.k_off && !positive(*r.k_off)) throw ConfigError(where + "/k_off", "must be positive");
  }
}

std::string ExperimentConfig::to_json_text(int indent) const {
  json j;
  j["kind"] = std::string(to_string(kind));
  j["model"] = {{"omega", omega}, {"rho_max", rho_max}};
  j["grid"] = {{"n_cells", n_cells}};
  if (cell_width) j["grid"]["cell_width"] = *cell_width;
  else j["grid"]["length"] = length;
  j["time"] = {{"t_end", t_end},     {"stride", stride},
               {"courant", courant}, {"step_fraction", step_fraction},
               {"tolerance", tolerance}};
  if (dt) j["time"]["dt"] = *dt;
  j["schemes"] = schemes;
  if (lxf_diffusion) j["lxf_diffusion"] = *lxf_diffusion;
  json p = {{"type", std::string(problem_name(problem.kind))}};
  switch (problem.kind) {
    case ProblemKind::Shock:
    case ProblemKind::Rarefaction:
      if (problem.x0) p["x0"] = *problem.x0;
      break;
    case ProblemKind::Uniform: p["value"] = problem.value; break;
    case ProblemKind::Random: p["low"] = problem.low; p["high"] = problem.high; break;
    case ProblemKind::Piecewise: p["breaks"] = problem.breaks; p["values"] = problem.values; break;
  }
  j["problem"] = p;
  json b = {{"type", std::string(boundary_name(boundary))}};
  if (const auto* f = std::get_if<boundary::Fixed>(&boundary)) {
    b["left"] = f->left;
    b["right"] = f->right;
  }
  j["boundary"] = b;
  if (on_ramp || off_ramp) {
    j["ramps"] = json::object();
    if (on_ramp) j["ramps"]["on"] = ramp_json(*on_ramp);
    if (off_ramp) j["ramps"]["off"] = ramp_json(*off_ramp);
  }
  j["integrator"] = integrator;
  j["seed"] = seed;
  json ramps = json::array();
  for (const auto& r : crn.ramps) {
    json e = {{"segment", r.segment}};
    if (r.k_on) e["k_on"] = *r.k_on;
    if (r.k_off) e["k_off"] = *r.k_off;
    ramps.push_back(e);
  }
  j["crn"] = {{"segments", crn.segments},
              {"topology", std::string(trm::to_string(crn.topology))},
              {"rate", crn.rates},
              {"ramps", ramps}};
  return j.dump(indent);
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : to_json_text()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
      throw ConfigError("--n-cells", "expected a comma separated list of positive integers");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("--n-cells", "empty list");
  return out;
}

}  // namespace trm::tools
