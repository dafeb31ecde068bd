#include "trm/crn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/rational.hpp>
#include <json.hpp>

#include "trm/errors.hpp"

namespace trm::crn {

namespace {

Composition normalize(Composition c) {
  std::sort(c.begin(), c.end());
  Composition out;
  for (const auto& [s, coef] : c) {
    if (coef == 0) continue;
    if (!out.empty() && out.back().first == s) {
      out.back().second += coef;
    } else {
      out.emplace_back(s, coef);
    }
  }
  return out;
}

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, std::size_t segments)
    : species_(std::move(species)), segments_(segments) {
  if (segments_ != 0 && species_.size() != 2 * segments_) {
    throw NetworkError("road network needs 2 species per segment");
  }
}

std::size_t ReactionNetwork::intern_complex(Composition composition) {
  composition = normalize(std::move(composition));
  for (const auto& [s, coef] : composition) {
    if (s >= species_.size()) throw NetworkError("complex references an unknown species");
  }
  auto it = std::find(complexes_.begin(), complexes_.end(), composition);
  if (it != complexes_.end()) return static_cast<std::size_t>(it - complexes_.begin());
  complexes_.push_back(std::move(composition));
  return complexes_.size() - 1;
}

void ReactionNetwork::add_reaction(Composition source, Composition product, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw NetworkError("reaction rate coefficients must be positive and finite");
  }
  const std::size_t s = intern_complex(std::move(source));
  const std::size_t p = intern_complex(std::move(product));
  reactions_.push_back({s, p, rate});
}

std::vector<std::vector<int>> ReactionNetwork::composition_matrix() const {
  std::vector<std::vector<int>> y(species_.size(), std::vector<int>(complexes_.size(), 0));
  for (std::size_t j = 0; j < complexes_.size(); ++j) {
    for (const auto& [s, coef] : complexes_[j]) y[s][j] = static_cast<int>(coef);
  }
  return y;
}

std::vector<int> ReactionNetwork::reaction_vector(std::size_t reaction) const {
  const Reaction& r = reactions_.at(reaction);
  std::vector<int> v(species_.size(), 0);
  for (const auto& [s, coef] : complexes_[r.product]) v[s] += static_cast<int>(coef);
  for (const auto& [s, coef] : complexes_[r.source]) v[s] -= static_cast<int>(coef);
  return v;
}

std::string ReactionNetwork::complex_label(std::size_t complex) const {
  const Composition& c = complexes_.at(complex);
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [s, coef] : c) {
    if (!out.empty()) out += "+";
    if (coef > 1) out += std::to_string(coef);
    out += species_[s];
  }
  return out;
}

unsigned ReactionNetwork::molecularity(std::size_t complex) const {
  unsigned total = 0;
  for (const auto& [s, coef] : complexes_.at(complex)) total += coef;
  return total;
}

ReactionNetwork build_network(std::size_t segments, Topology topology,
                              std::span<const double> interface_rates,
                              std::span<const SegmentRamp> ramps) {
  if (segments == 0) throw NetworkError("a road needs at least one segment");
  if (topology == Topology::Ring && segments < 2) {
    throw NetworkError("a ring needs at least two segments");
  }
  const std::size_t interfaces = topology == Topology::Ring ? segments : segments - 1;
  if (interface_rates.size() != interfaces) {
    throw NetworkError("expected " + std::to_string(interfaces) + " interface rates, got " +
                       std::to_string(interface_rates.size()));
  }
  if (!ramps.empty() && ramps.size() != segments) {
    throw NetworkError("ramp list must be empty or hold one entry per segment");
  }

  std::vector<std::string> names;
  names.reserve(2 * segments);
  for (std::size_t i = 0; i < segments; ++i) names.push_back("N_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < segments; ++i) names.push_back("S_" + std::to_string(i + 1));
  ReactionNetwork net(std::move(names), segments);

  auto N = [](std::size_t i) { return vehicle_species(i); };
  auto S = [segments](std::size_t i) { return space_species(i, segments); };

  for (std::size_t j = 0; j < interfaces; ++j) {
    const std::size_t up = j;
    const std::size_t down = (j + 1) % segments;
    net.add_reaction({{N(up), 1u}, {S(down), 1u}}, {{N(down), 1u}, {S(up), 1u}},
                     interface_rates[j]);
  }
  for (std::size_t i = 0; i < ramps.size(); ++i) {
    if (ramps[i].k_on) net.add_reaction({{S(i), 1u}}, {{N(i), 1u}}, *ramps[i].k_on);
    if (ramps[i].k_off) net.add_reaction({{N(i), 1u}}, {{S(i), 1u}}, *ramps[i].k_off);
  }
  return net;
}

ReactionNetwork build_network(std::size_t segments, Topology topology, double rate,
                              std::span<const SegmentRamp> ramps) {
  const std::size_t interfaces =
      topology == Topology::Ring ? segments : (segments == 0 ? 0 : segments - 1);
  std::vector<double> rates(interfaces, rate);
  return build_network(segments, topology, rates, ramps);
}

double reaction_rate(const ReactionNetwork& net, std::size_t reaction,
                     std::span<const double> x) {
  const Reaction& r = net.reactions().at(reaction);
  double rate = r.rate;
  for (const auto& [s, coef] : net.complexes()[r.source]) {
    for (unsigned k = 0; k < coef; ++k) rate *= x[s];
  }
  return rate;
}

std::vector<double> mass_action_rhs(const ReactionNetwork& net, std::span<const double> x) {
  if (x.size() != net.species().size()) {
    throw std::invalid_argument("concentration vector does not match the species count");
  }
  for (double v : x) {
    if (!(v >= 0.0)) throw DomainError("negative concentration " + std::to_string(v));
  }
  std::vector<double> dx(x.size(), 0.0);
  for (std::size_t r = 0; r < net.reactions().size(); ++r) {
    const double rate = reaction_rate(net, r, x);
    const Reaction& reaction = net.reactions()[r];
    for (const auto& [s, coef] : net.complexes()[reaction.source]) dx[s] -= coef * rate;
    for (const auto& [s, coef] : net.complexes()[reaction.product]) dx[s] += coef * rate;
  }
  return dx;
}

std::vector<Polynomial> kinetic_polynomials(const ReactionNetwork& net) {
  std::vector<Polynomial> field(net.species().size());
  for (const Reaction& r : net.reactions()) {
    const Composition& source = net.complexes()[r.source];
    const Monomial monomial(
        std::vector<std::pair<std::size_t, unsigned>>(source.begin(), source.end()));
    for (const auto& [s, coef] : source) field[s].add_term(monomial, -r.rate * coef);
    for (const auto& [s, coef] : net.complexes()[r.product]) {
      field[s].add_term(monomial, r.rate * coef);
    }
  }
  return field;
}

bool has_no_negative_cross_effects(std::span<const Polynomial> field) {
  for (std::size_t l = 0; l < field.size(); ++l) {
    for (const auto& [m, c] : field[l].terms()) {
      if (c < 0.0 && !m.contains(l)) return false;
    }
  }
  return true;
}

ReducedField::ReducedField(std::vector<Polynomial> field, std::vector<double> capacities)
    : field_(std::move(field)), capacities_(std::move(capacities)) {
  if (field_.size() != capacities_.size()) {
    throw std::invalid_argument("reduced field and capacities differ in length");
  }
}

std::vector<double> ReducedField::operator()(std::span<const double> n) const {
  if (n.size() != capacities_.size()) {
    throw std::invalid_argument("vehicle vector does not match the segment count");
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] >= 0.0 && n[i] <= capacities_[i])) {
      throw DomainError("n_" + std::to_string(i + 1) + " = " + std::to_string(n[i]) +
                        " outside [0, c_i]");
    }
  }
  std::vector<double> out(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) out[i] = field_[i].evaluate(n);
  return out;
}

ReducedField reduce_to_trm(const ReactionNetwork& net, std::span<const double> capacities) {
  const std::size_t k = net.segments();
  if (k == 0) throw NetworkError("reduce_to_trm needs a road network");
  if (capacities.size() != k) throw NetworkError("expected one capacity per segment");
  for (double c : capacities) {
    if (!(c > 0.0)) throw DomainError("capacities must be positive");
  }
  // N_i -> n_i, S_i -> c_i - n_i.
  std::vector<Polynomial> images(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    images[vehicle_species(i)] = Polynomial::variable(i);
    images[space_species(i, k)] = Polynomial::constant(capacities[i]) + (-1.0) * Polynomial::variable(i);
  }
  const std::vector<Polynomial> full = kinetic_polynomials(net);
  std::vector<Polynomial> reduced;
  reduced.reserve(k);
  for (std::size_t i = 0; i < k; ++i) reduced.push_back(full[vehicle_species(i)].compose(images));
  return ReducedField(std::move(reduced), std::vector<double>(capacities.begin(), capacities.end()));
}

std::vector<std::vector<int>> stoichiometric_subspace(const ReactionNetwork& net) {
  using Rational = boost::rational<long long>;
  const std::size_t n = net.species().size();
  std::vector<std::vector<Rational>> echelon;  // rows with distinct pivots
  std::vector<std::size_t> pivots;
  std::vector<std::vector<int>> basis;

  for (std::size_t r = 0; r < net.reactions().size(); ++r) {
    const std::vector<int> v = net.reaction_vector(r);
    std::vector<Rational> row(v.begin(), v.end());
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational factor = row[pivots[e]];
      if (factor.numerator() == 0) continue;
      for (std::size_t j = 0; j < n; ++j) row[j] -= factor * echelon[e][j];
    }
    auto nz = std::find_if(row.begin(), row.end(), [](const Rational& q) { return q.numerator() != 0; });
    if (nz == row.end()) continue;
    const std::size_t pivot = static_cast<std::size_t>(nz - row.begin());
    const Rational scale = row[pivot];
    for (auto& q : row) q /= scale;
    // Keep the echelon fully reduced so later rows see every pivot as zero.
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational factor = echelon[e][pivot];
      if (factor.numerator() == 0) continue;
      for (std::size_t j = 0; j < n; ++j) echelon[e][j] -= factor * row[j];
    }
    echelon.push_back(std::move(row));
    pivots.push_back(pivot);
    basis.push_back(v);
  }
  return basis;
}

CompatibilityReport compatibility_class_check(std::span<const std::vector<double>> trajectory,
                                              const ReactionNetwork& net, double tolerance) {
  CompatibilityReport report;
  if (trajectory.empty()) return report;
  const std::size_t n = net.species().size();

  // Orthonormal basis of the stoichiometric subspace (modified Gram-Schmidt).
  std::vector<std::vector<double>> q;
  for (const auto& v : stoichiometric_subspace(net)) {
    std::vector<double> w(v.begin(), v.end());
    for (const auto& b : q) {
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += b[j] * w[j];
      for (std::size_t j = 0; j < n; ++j) w[j] -= dot * b[j];
    }
    double norm = 0.0;
    for (double c : w) norm += c * c;
    norm = std::sqrt(norm);
    for (double& c : w) c /= norm;
    q.push_back(std::move(w));
  }

  const auto& x0 = trajectory.front();
  report.min_value = *std::min_element(x0.begin(), x0.end());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const auto& x = trajectory[k];
    if (x.size() != n) throw std::invalid_argument("trajectory state has the wrong length");
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = x[j] - x0[j];
    for (const auto& b : q) {
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += b[j] * d[j];
      for (std::size_t j = 0; j < n; ++j) d[j] -= dot * b[j];
    }
    double residual = 0.0;
    for (double c : d) residual = std::max(residual, std::abs(c));
    const double lowest = *std::min_element(x.begin(), x.end());
    report.max_residual = std::max(report.max_residual, residual);
    report.min_value = std::min(report.min_value, lowest);
    if (residual > tolerance || lowest < 0.0) report.violations.push_back(k);
  }
  report.passed = report.violations.empty();
  return report;
}

std::vector<std::vector<double>> simulate_mass_action(const ReactionNetwork& net,
                                                      std::vector<double> x0, double t_end,
                                                      double dt, std::size_t stride) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("need dt > 0 and t_end >= 0");
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  const std::size_t steps =
      t_end == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
  const std::size_t n = x0.size();

  // Stage values are not clamped; tiny negative excursions are fed through
  // the polynomial field directly.
  const std::vector<Polynomial> field = kinetic_polynomials(net);
  auto eval = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = field[j].evaluate(x);
  };
  mass_action_rhs(net, x0);  // validates x0

  std::vector<std::vector<double>> out{x0};
  std::vector<double> x = std::move(x0), k1(n), k2(n), k3(n), k4(n), stage(n);
  for (std::size_t s = 1; s <= steps; ++s) {
    eval(x, k1);
    for (std::size_t j = 0; j < n; ++j) stage[j] = x[j] + 0.5 * h * k1[j];
    eval(stage, k2);
    for (std::size_t j = 0; j < n; ++j) stage[j] = x[j] + 0.5 * h * k2[j];
    eval(stage, k3);
    for (std::size_t j = 0; j < n; ++j) stage[j] = x[j] + h * k3[j];
    eval(stage, k4);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    if (s % stride == 0 || s == steps) out.push_back(x);
  }
  return out;
}

ReactionGraph export_reaction_graph(const ReactionNetwork& net) {
  ReactionGraph graph;
  for (std::size_t j = 0; j < net.complexes().size(); ++j) {
    graph.vertices.push_back(net.complex_label(j));
  }
  for (const Reaction& r : net.reactions()) graph.edges.push_back({r.source, r.product, r.rate});
  return graph;
}

std::string to_dot(const ReactionGraph& graph, std::string_view name) {
  std::string out = "digraph " + std::string(name) + " {\n";
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    out += "  c" + std::to_string(v) + " [label=\"" + graph.vertices[v] + "\"];\n";
  }
  for (const auto& e : graph.edges) {
    out += "  c" + std::to_string(e.from) + " -> c" + std::to_string(e.to) + " [label=\"" +
           format_g6(e.weight) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string to_json(const ReactionNetwork& net, int indent) {
  nlohmann::ordered_json doc;
  doc["species"] = net.species();
  auto complexes = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < net.complexes().size(); ++j) {
    nlohmann::ordered_json composition = nlohmann::ordered_json::object();
    for (const auto& [s, coef] : net.complexes()[j]) composition[net.species()[s]] = coef;
    complexes.push_back({{"label", net.complex_label(j)}, {"composition", composition}});
  }
  doc["complexes"] = std::move(complexes);
  auto reactions = nlohmann::ordered_json::array();
  for (const Reaction& r : net.reactions()) {
    reactions.push_back({{"source", r.source}, {"product", r.product}, {"rate", r.rate}});
  }
  doc["reactions"] = std::move(reactions);
  doc["Y"] = net.composition_matrix();
  return doc.dump(indent);
}

}  // namespace trm::crn
