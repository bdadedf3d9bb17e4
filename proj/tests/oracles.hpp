#pragma once

// Independent brute-force references. Nothing here calls the search code it
// is used to check; only plain data types are shared with the library.

#include <cstdint>
#include <optional>
#include <vector>

#include "snl/geometry.hpp"
#include "snl/norms.hpp"
#include "snl/toral_graph.hpp"

namespace oracle {

using snl::IntVec;

/// Interior and boundary lattice points of a convex CCW polygon by scanning
/// its bounding box with integer orientation tests.
struct Scan {
  std::int64_t interior = 0;
  std::int64_t boundary = 0;
  std::int64_t doubled_area = 0;
};
Scan scan_polygon(const std::vector<IntVec>& ccw);

/// Least doubled area of a strictly convex lattice k-gon whose edge vectors
/// have coordinates in [-bound, bound]. Exhaustive over angle-ordered edge
/// choices; no pruning.
std::int64_t min_doubled_area(int k, std::int64_t bound);

/// Least interior count of a convex lattice 2m-gon symmetric about the
/// origin with vertices in [-box, box]^2, by trying every set of m vertex
/// representatives. m = 1 is the segment [-v, v].
std::optional<std::int64_t> min_symmetric_interior(int m, std::int64_t box);

/// Least length - norm(class) over closed non-backtracking walks of at most
/// max_edges steps, skipping walks that repeat one geodesic in one direction.
/// Plain depth-first enumeration from every starting step.
struct GapResult {
  double min_gap = 1e300;
  std::size_t walks = 0;
};
GapResult min_cycle_gap(const snl::ToralGeodesicGraph& g, const snl::NormSpec& norm, std::size_t max_edges);

/// Every canonical class with norm <= bound by scanning a square of the
/// given half-width.
std::vector<snl::ClassLength> lattice_scan(const snl::NormSpec& norm, double bound, std::int64_t half_width);

/// Least weight of a closed walk of class h in an undirected periodic graph
/// given as (u, v, weight, period) edges: plain Dijkstra over the cover from
/// every node, offsets confined to [-window, window]^2, no pruning.
struct CoverEdge {
  std::size_t u;
  std::size_t v;
  double weight;
  IntVec period;
};
double min_class_length(std::size_t nodes, const std::vector<CoverEdge>& edges, IntVec h, std::int64_t window);

}  // namespace oracle
