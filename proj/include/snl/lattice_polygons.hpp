#pragma once

// Convex lattice polygons: Pick counts, minimal-area k-gons A(k), minimal
// interior counts i(k), and the origin-symmetric minimum behind f(m).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "snl/geometry.hpp"
#include "snl/rational.hpp"

namespace snl {

struct LatticePolygon {
  std::vector<LatticePoint> vertices;  // counter-clockwise
  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;
};

struct PickCounts {
  Rational area;
  std::int64_t interior = 0;
  std::int64_t boundary = 0;
  friend bool operator==(const PickCounts&, const PickCounts&) = default;
};

/// Strictly convex, counter-clockwise, at least 3 vertices, no repeated vertex.
bool is_strictly_convex(const LatticePolygon& p);
bool is_centrally_symmetric_about_origin(const LatticePolygon& p);

/// Twice the shoelace area (exact integer).
std::int64_t doubled_area(const LatticePolygon& p);

/// Area by shoelace, boundary by edge gcds, interior by Pick. With
/// self_check, a bounding-box scan must agree or std::logic_error is thrown.
/// Throws ValidationError for non-convex or degenerate input.
PickCounts pick_counts(const LatticePolygon& p, bool self_check = false);

/// Strictly convex hull (collinear boundary points dropped), counter-clockwise.
LatticePolygon convex_hull(std::vector<LatticePoint> points);

/// Interior and boundary by scanning the bounding box; area by shoelace.
PickCounts scan_counts(const LatticePolygon& p);

/// Lexicographically least vertex list over the 8 lattice symmetries fixing
/// the origin, each listed counter-clockwise from its least vertex. With
/// translate, each image is first moved so its bounding box starts at (0,0).
LatticePolygon canonical_position(const LatticePolygon& p, bool translate = true);

struct PolygonSearchOptions {
  std::size_t node_budget = 500'000'000;
  /// Edge-vector coordinate bound; default 6 for k <= 8, else 10.
  std::optional<std::int64_t> coordinate_bound;
  /// Run the exhaustive normalized-frame search that rules out anything
  /// better beyond the coordinate bound.
  bool certify = true;
};

struct MinAreaResult {
  int k = 0;
  Rational area;
  LatticePolygon witness;
  bool certified = false;
  std::int64_t coordinate_bound = 0;
  std::size_t nodes = 0;
};

/// A(k) for 3 <= k <= 12. SearchLimitError (with the best area so far) when
/// the node budget runs out.
MinAreaResult min_area_convex_kgon(int k, const PolygonSearchOptions& options = {});

/// i(k) = A(k) + (2 - k)/2, cross-checked against the witness's interior count.
std::int64_t i_of_k(const MinAreaResult& result);

struct SymmetricResult {
  int two_m = 0;
  std::int64_t interior = 0;  // i0symm(2m), always odd
  LatticePolygon witness;     // vertex set closed under negation
  bool certified = false;
  std::size_t nodes = 0;
};

/// Minimum interior count over convex lattice 2m-gons centred at the origin,
/// 2 <= two_m <= 16, two_m even. two_m = 2 is the segment [-(1,0), (1,0)].
SymmetricResult min_interior_symmetric(int two_m, const PolygonSearchOptions& options = {});

/// f(m) = (i0symm(2m) + 1) / 2 for 1 <= m <= 8; cached per process.
std::int64_t f_of_m(int m);

/// Exact sufficient test of 1/(8 pi^2) < area / k^3, using pi > 3.14159.
bool rabinowitz_lower_bound_holds(const Rational& area, int k);

}  // namespace snl
