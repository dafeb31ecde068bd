#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trm/grid.hpp"
#include "trm/polynomial.hpp"

namespace trm::crn {

/// Sparse stoichiometric coefficients of a complex: (species, coefficient)
/// pairs sorted by species with positive coefficients.
using Composition = std::vector<std::pair<std::size_t, unsigned>>;

struct Reaction {
  std::size_t source;
  std::size_t product;
  double rate;
};

/// Species, deduplicated complexes and mass-action reactions.
class ReactionNetwork {
 public:
  /// `segments` is nonzero for road networks (species N_1..N_k, S_1..S_k).
  explicit ReactionNetwork(std::vector<std::string> species, std::size_t segments = 0);

  /// Returns the index of an identical complex if one exists.
  std::size_t intern_complex(Composition composition);
  /// Rate must be strictly positive and finite.
  void add_reaction(Composition source, Composition product, double rate);

  const std::vector<std::string>& species() const noexcept { return species_; }
  const std::vector<Composition>& complexes() const noexcept { return complexes_; }
  const std::vector<Reaction>& reactions() const noexcept { return reactions_; }

  /// Y with Y[species][complex] = stoichiometric coefficient.
  std::vector<std::vector<int>> composition_matrix() const;
  /// Y_{.,product} - Y_{.,source}.
  std::vector<int> reaction_vector(std::size_t reaction) const;
  /// e.g. "N_1+S_2", "2N_1", or "0" for the empty complex.
  std::string complex_label(std::size_t complex) const;
  unsigned molecularity(std::size_t complex) const;

  /// Number of road segments for networks made by build_network, else 0.
  std::size_t segments() const noexcept { return segments_; }

 private:
  std::vector<std::string> species_;
  std::vector<Composition> complexes_;
  std::vector<Reaction> reactions_;
  std::size_t segments_;
};

/// Optional on-ramp S_i -> N_i and off-ramp N_i -> S_i rate coefficients.
struct SegmentRamp {
  std::optional<double> k_on;
  std::optional<double> k_off;
};

/// Species index of N_i and S_i (zero-based segment i) in a road network.
inline std::size_t vehicle_species(std::size_t segment) noexcept { return segment; }
inline std::size_t space_species(std::size_t segment, std::size_t segments) noexcept {
  return segments + segment;
}

/// Road of `segments` compartments. Interface j carries
/// N_j + S_{j+1} -> N_{j+1} + S_j with rate interface_rates[j]; a line has
/// segments-1 interfaces, a ring `segments` (the last one closes N_k -> N_1).
/// `ramps` is empty or holds one entry per segment.
ReactionNetwork build_network(std::size_t segments, Topology topology,
                              std::span<const double> interface_rates,
                              std::span<const SegmentRamp> ramps = {});

/// Same with one rate on every interface.
ReactionNetwork build_network(std::size_t segments, Topology topology, double rate,
                              std::span<const SegmentRamp> ramps = {});

/// sum over reactions of (Y_{.,product} - Y_{.,source}) * k * prod x^Y_{.,source}.
/// Throws DomainError for negative concentrations.
std::vector<double> mass_action_rhs(const ReactionNetwork& net, std::span<const double> x);

/// k * prod x_l^Y_{l,source}.
double reaction_rate(const ReactionNetwork& net, std::size_t reaction, std::span<const double> x);

/// The mass-action vector field as one polynomial per species.
std::vector<Polynomial> kinetic_polynomials(const ReactionNetwork& net);

/// True when every negative term of d x_l / dt contains x_l.
bool has_no_negative_cross_effects(std::span<const Polynomial> field);

/// Vehicle-only field obtained by substituting s_i = c_i - n_i.
class ReducedField {
 public:
  ReducedField(std::vector<Polynomial> field, std::vector<double> capacities);

  /// Throws DomainError unless 0 <= n_i <= c_i.
  std::vector<double> operator()(std::span<const double> n) const;

  const std::vector<Polynomial>& polynomials() const noexcept { return field_; }
  const std::vector<double>& capacities() const noexcept { return capacities_; }

 private:
  std::vector<Polynomial> field_;
  std::vector<double> capacities_;
};

ReducedField reduce_to_trm(const ReactionNetwork& net, std::span<const double> capacities);

/// Linearly independent subset of the reaction vectors (exact rational
/// elimination), in reaction order.
std::vector<std::vector<int>> stoichiometric_subspace(const ReactionNetwork& net);

struct CompatibilityReport {
  bool passed = true;
  double max_residual = 0.0;
  double min_value = 0.0;
  std::vector<std::size_t> violations;
};

/// Checks x(t) - x(0) lies in the stoichiometric subspace and x(t) >= 0.
CompatibilityReport compatibility_class_check(std::span<const std::vector<double>> trajectory,
                                              const ReactionNetwork& net,
                                              double tolerance = 1e-9);

/// Fixed-step RK4 of the mass-action system; returns every stride-th state
/// plus the last one.
std::vector<std::vector<double>> simulate_mass_action(const ReactionNetwork& net,
                                                      std::vector<double> x0, double t_end,
                                                      double dt, std::size_t stride = 1);

struct ReactionGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    double weight;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

ReactionGraph export_reaction_graph(const ReactionNetwork& net);

/// Directed DOT graph; edge label is the rate with six significant digits.
std::string to_dot(const ReactionGraph& graph, std::string_view name = "reaction_graph");

/// {"species": [...], "complexes": [{"label", "composition"}], "reactions":
/// [{"source", "product", "rate"}], "Y": [[...]]}
std::string to_json(const ReactionNetwork& net, int indent = 2);

}  // namespace trm::crn
