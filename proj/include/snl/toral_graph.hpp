#pragma once

// Geodesic graph of finitely many closed geodesics on the flat torus R^2/Z^2,
// with exact rational vertices, and cycle searches in its Z^2 cover.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "snl/geometry.hpp"
#include "snl/norms.hpp"
#include "snl/rational.hpp"

namespace snl {

struct GeodesicClass {
  IntegralClass h;      // primitive
  double length = 0.0;  // ell_i > 0
};

/// Segment of geodesic `class_index` between consecutive intersection points.
struct GraphEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  std::size_t class_index = 0;
  Rational q;                  // fraction of the closed geodesic, in (0, 1]
  RationalPoint displacement;  // q * h_i
  IntVec period;               // lift of head = position(tail) + displacement - position(head)
  double length = 0.0;         // q * ell_i
};

class ToralGeodesicGraph {
 public:
  /// Throws ValidationError for a non-primitive class, a proportional pair,
  /// or a non-positive length.
  static ToralGeodesicGraph build(std::vector<GeodesicClass> classes);

  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<GeodesicClass>& classes() const { return classes_; }
  /// Index of p0 = (0,0), shared by every geodesic.
  std::size_t base_vertex() const { return base_; }

  /// ell_i / |h_i|_2 minimised over classes: every walk of length L has a
  /// lift displacement of Euclidean size at most L / speed().
  double speed() const { return speed_; }

 private:
  std::vector<RationalPoint> vertices_;  // lexicographic
  std::vector<GraphEdge> edges_;         // grouped by class, in traversal order
  std::vector<GeodesicClass> classes_;
  std::size_t base_ = 0;
  double speed_ = 0.0;
};

struct OrientedEdge {
  std::size_t edge = 0;
  int dir = 1;  // +1 along the geodesic, -1 against
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

struct Cycle {
  std::vector<OrientedEdge> steps;
};

std::size_t step_tail(const ToralGeodesicGraph& g, OrientedEdge s);
std::size_t step_head(const ToralGeodesicGraph& g, OrientedEdge s);

bool is_closed(const ToralGeodesicGraph& g, const Cycle& c);
/// No step is followed (cyclically) by its own reversal.
bool is_cyclically_reduced(const Cycle& c);
/// Every step uses the same geodesic in the same direction (an iterate of gamma_i).
bool is_single_class_iterate(const ToralGeodesicGraph& g, const Cycle& c);

/// Sum of oriented lift displacements; throws if not integral.
IntegralClass homology_by_displacement(const ToralGeodesicGraph& g, const Cycle& c);
/// Signed crossings with the curves x = x0 (mod 1) and y = y0 (mod 1), where
/// x0, y0 avoid every vertex coordinate. Uses vertex positions and periods only.
IntegralClass homology_by_intersection(const ToralGeodesicGraph& g, const Cycle& c);

/// Sum over classes of (exact total fraction) * ell_i, so a full traversal of
/// gamma_i has length exactly ell_i.
double cycle_length(const ToralGeodesicGraph& g, const Cycle& c);

/// Hermite basis {(p, q), (0, r)} of the lattice of cycle classes; membership test.
bool class_reachable(const ToralGeodesicGraph& g, IntegralClass h);

struct CycleResult {
  Cycle cycle;
  double length = 0.0;
};

/// Shortest cycle with homology h, by Dijkstra in the cover over every start
/// vertex. With a window, cover offsets are confined to [-window, window]^2
/// and the answer must certify itself (floor(L / speed) + 1 <= window), else
/// WindowError reports the required window. nullopt when h is unreachable.
std::optional<CycleResult> minimal_cycle(const ToralGeodesicGraph& g, IntegralClass h,
                                         std::optional<long long> window = std::nullopt);

/// Calls visit(cycle) once per cyclically reduced closed walk with at most
/// max_edges steps, up to rotation and reversal. Throws SearchLimitError when
/// more than node_budget partial walks are expanded.
std::size_t for_each_reduced_cycle(const ToralGeodesicGraph& g, std::size_t max_edges,
                                   std::size_t node_budget,
                                   const std::function<void(const Cycle&)>& visit);

struct EpsilonOptions {
  std::size_t node_budget = 50'000'000;  // walk states across all layers
  double theta_default = 0.1;            // used when the cycle set is empty
};

struct EpsilonResult {
  double zeta = 0.0;           // half the shortest edge
  std::size_t edge_bound = 0;  // floor(ell_k / zeta)
  double epsilon = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  std::optional<Cycle> witness;
  IntegralClass witness_class;
  std::size_t closing_states = 0;  // distinct closed-walk states outside the excluded iterates
  std::size_t nodes_expanded = 0;  // walk states
};

double zeta_of(const ToralGeodesicGraph& g);
std::size_t edge_bound_of(const ToralGeodesicGraph& g, double ell_k);

/// epsilon = min of length - ||class|| over the cyclically reduced closed walks
/// with at most edge_bound edges, single-class single-direction iterates
/// excluded. A layered search over (first step, last step, class so far,
/// still an iterate) keeps the shortest walk per state, which is exact since
/// the gap depends on the walk only through its length and class.
/// Theta = epsilon / (2 edge_bound), or theta_default when no walk qualifies.
EpsilonResult compute_zeta_epsilon_theta(const ToralGeodesicGraph& g, const NormSpec& norm, double ell_k,
                                         const EpsilonOptions& options = {});

struct InequalityReport {
  bool pass = true;
  std::size_t cycle_count = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  double mean_gap = 0.0;
  std::vector<double> deciles;  // gap quantiles at 0, 0.1, ..., 1
  std::optional<Cycle> violation;
  bool homology_agrees = true;  // displacement and intersection homology match on every cycle
};

InequalityReport verify_strict_inequality(const ToralGeodesicGraph& g, const NormSpec& norm,
                                          std::size_t edge_bound,
                                          std::size_t node_budget = 10'000'000);

/// The first k entries of enumerate_classes(norm, k); the graph uses the
/// primitive nontrivial ones, ell_k is the length of entry k.
struct PinnedGraph {
  ToralGeodesicGraph graph;
  std::vector<ClassLength> entries;
  double ell_k = 0.0;
};

PinnedGraph graph_from_norm(const NormSpec& norm, std::size_t k);

/// As graph_from_norm, but pins exactly `count` nontrivial primitive classes;
/// ell_k is the length of the last one.
PinnedGraph graph_from_norm_primitive(const NormSpec& norm, std::size_t count);

/// Shortest cycle length of every canonical class with length <= bound
/// (trivial class first), sorted by (length, class).
std::vector<ClassLength> graph_spectrum(const ToralGeodesicGraph& g, double bound);

}  // namespace snl
