#pragma once

// Z^2-periodic weighted graphs as discrete toral metrics: grids, canyon
// graphs around a geodesic graph, and shortest cycles per homology class.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "snl/geometry.hpp"
#include "snl/lattice_span.hpp"
#include "snl/norms.hpp"
#include "snl/toral_graph.hpp"

namespace snl {

/// Undirected edge; the lift of v sits at position(v) + period relative to u.
struct PeriodicEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
  IntVec period;
};

class PeriodicWeightedGraph {
 public:
  struct Arc {
    std::size_t to;
    double weight;
    IntVec period;
  };

  /// Throws ValidationError unless every weight is positive, every position
  /// lies in [0,1)^2 and the quotient graph is connected.
  PeriodicWeightedGraph(std::vector<Vec2> positions, std::vector<PeriodicEdge> edges);

  std::size_t node_count() const { return positions_.size(); }
  const std::vector<Vec2>& positions() const { return positions_; }
  const std::vector<PeriodicEdge>& edges() const { return edges_; }
  std::span<const Arc> arcs(std::size_t node) const {
    return {arcs_.data() + offsets_[node], arcs_.data() + offsets_[node + 1]};
  }

  /// min weight / geometric length over edges of nonzero geometric length.
  /// Every cycle of class h has length >= speed() * |h|_2.
  double speed() const { return speed_; }
  /// Whether some cycle has class h.
  bool represents(IntegralClass h) const;

 private:
  std::vector<Vec2> positions_;
  std::vector<PeriodicEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  double speed_ = 0.0;
  LatticeSpan cycle_lattice_;
};

/// N x N torus grid, 4-neighbour stencil, every edge of weight `weight`.
PeriodicWeightedGraph uniform_grid(std::size_t n, double weight);

struct CanyonOptions {
  double background = 1.0;  // B: background grid edges weigh B / N
  std::size_t resolution = 64;
  bool include_corridors = true;
  std::optional<double> ell_k;  // defaults to the longest pinned geodesic
};

/// Corridors carry the exact lengths q * ell_i; a turn between corridors of
/// different geodesics at a hub saves `savings` <= theta against passing
/// through the hub centre; the background costs B per unit of L1 length and
/// every corridor-background connector costs B / 2.
struct CanyonGraph {
  PeriodicWeightedGraph graph;
  std::size_t grid_nodes = 0;
  std::vector<std::size_t> hub_nodes;  // one per geodesic-graph vertex
  double savings = 0.0;
  double hub_radius = 0.0;  // port to centre weight
};

CanyonGraph build_canyon_graph(const ToralGeodesicGraph& graph, double theta, const CanyonOptions& options);

struct SpectrumEntry {
  IntegralClass cls;
  double length = 0.0;
  std::vector<std::size_t> witness;  // quotient node sequence of a shortest cycle; may be empty
};

/// Cover window W: offsets are confined to [-W, W]^2. A result of length L is
/// certified when W >= ceil(L / speed) + 1, otherwise WindowError.
SpectrumEntry marked_min_length(const PeriodicWeightedGraph& pg, IntegralClass h,
                                std::optional<long long> window = std::nullopt);

struct StableNormEstimate {
  std::vector<double> sequence;  // f(n h) / n for n = 1..n_max
  double estimate = 0.0;         // minimum of the sequence
  std::size_t minimum_at = 1;    // first n attaining the estimate
  bool stable = false;           // f(n h) = n f(h) for some 2 <= n <= n_max (relative 1e-9)
};

StableNormEstimate stable_norm_estimate(const PeriodicWeightedGraph& pg, IntegralClass h, std::size_t n_max,
                                        std::optional<long long> window = std::nullopt);

struct SpectrumGroup {
  double length = 0.0;
  std::vector<IntegralClass> classes;
  std::size_t m = 0;  // classes in the group
  std::size_t n = 0;  // classes strictly shorter, trivial class included
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  // sorted by (length, class)
  std::vector<SpectrumGroup> groups;
  double tolerance = 1e-6;
};

/// Groups sorted lengths whose relative difference to the group head is <= tolerance.
std::vector<SpectrumGroup> group_lengths(std::span<const ClassLength> sorted, double tolerance);

/// Every canonical class with shortest cycle <= norm_bound, in one sweep of
/// bounded Dijkstra searches from the seam nodes.
Spectrum spectrum(const PeriodicWeightedGraph& pg, double norm_bound, std::optional<long long> window = std::nullopt,
                  double tolerance = 1e-6, bool with_witnesses = false);

struct StableNormField {
  std::vector<IntegralClass> classes;
  std::vector<double> estimates;  // min over n <= n_max of f(n h) / n
  HullGauge gauge;                // hull of +-h / estimate
};

StableNormField stable_norm_field(const PeriodicWeightedGraph& pg, std::span<const IntegralClass> classes,
                                  std::size_t n_max);

}  // namespace snl
