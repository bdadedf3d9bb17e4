#pragma once

// Strictly convex norms on R^2 and the integral classes they order.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "snl/geometry.hpp"

namespace snl {

/// ||v|| = sqrt(v^T Q v) with Q symmetric positive definite.
struct Ellipse {
  double q11 = 1.0;
  double q12 = 0.0;
  double q22 = 1.0;
};

/// ||v|| = (|x|^p + |y|^p)^(1/p), 1 < p < inf.
struct PNorm {
  double p = 2.0;
};

/// Gauge of a centrally symmetric lattice polygon whose edges are replaced by
/// outward circular arcs of a common radius. The vertices sit at norm value
/// `level`. radius = +inf keeps straight edges (a non-strictly convex gauge).
struct ArcPolygon {
  std::vector<LatticePoint> vertices;  // counter-clockwise
  double radius = std::numeric_limits<double>::infinity();
  double level = 1.0;
};

using NormVariant = std::variant<Ellipse, PNorm, ArcPolygon>;

/// A validated norm on R^2. Construction throws ValidationError for a
/// non-SPD matrix, p <= 1, or an arc polygon that is not convex, not
/// centrally symmetric, or whose arcs do not enclose the origin.
class NormSpec {
 public:
  explicit NormSpec(NormVariant variant, double scale = 1.0);

  static NormSpec euclidean() { return NormSpec(Ellipse{}); }
  /// Gram matrix of the hexagonal lattice, [[1, 1/2], [1/2, 1]].
  static NormSpec hexagonal() { return NormSpec(Ellipse{1.0, 0.5, 1.0}); }

  double operator()(Vec2 v) const;
  double operator()(IntegralClass h) const { return (*this)(h.real()); }

  const NormVariant& variant() const { return variant_; }
  double scale() const { return scale_; }
  NormSpec scaled(double factor) const;

 private:
  struct Arc {
    Vec2 center;
    bool straight = true;
  };

  double arc_gauge(Vec2 v) const;

  NormVariant variant_;
  double scale_ = 1.0;
  // ArcPolygon support data: vertices sorted by polar angle.
  std::vector<Vec2> arc_vertices_;
  std::vector<double> arc_angles_;
  std::vector<Arc> arcs_;
};

using NormFunction = std::function<double(Vec2)>;

double eval_norm(const NormSpec& norm, Vec2 v);

struct ConvexityReport {
  bool pass = true;
  std::optional<std::pair<Vec2, Vec2>> witness;  // unit-norm pair violating strictness
  double smallest_deficit = std::numeric_limits<double>::infinity();  // min of 2 - ||u+v||
};

/// Samples unit-norm points at `sample_count` equally spaced directions and
/// checks ||u+v|| < 2 - tolerance for every pair that is not (anti)parallel.
ConvexityReport strict_convexity_check(const NormSpec& norm, std::size_t sample_count = 256,
                                       double tolerance = 1e-12);

struct ClassLength {
  IntegralClass cls;
  double length = 0.0;
  friend bool operator==(const ClassLength&, const ClassLength&) = default;
};

struct ClassEnumeration {
  std::vector<ClassLength> entries;
  /// Set when two non-parallel classes of equal length have a midpoint of the
  /// same length, i.e. the unit sphere contains a segment.
  bool non_strict_warning = false;
};

/// The first `count` canonical classes ordered by (length, class), trivial
/// class first. Completeness is certified by the lower bound
/// ||x|| >= inf_{|u|=1} ||u|| * |x|.
ClassEnumeration enumerate_classes(const NormSpec& norm, std::size_t count,
                                   double tie_tolerance = 1e-9);

/// Every canonical class with length <= bound, same ordering.
ClassEnumeration classes_within(const NormSpec& norm, double bound, double tie_tolerance = 1e-9);

/// Lower bound for inf ||u|| over the Euclidean unit circle.
double unit_circle_lower_bound(const NormSpec& norm);

/// sqrt(v1^2 + v2^2): a Lipschitz constant for any norm with ||e1|| = v1, ||e2|| = v2.
double lipschitz_bound(double v1, double v2);

struct LipschitzWitness {
  std::size_t index = 0;
  Vec2 x;
  Vec2 y;
  double excess = 0.0;
};

struct ConvergenceReport {
  std::vector<double> deviations;  // sup over grid of |norm_j - limit|
  double lipschitz_constant = 0.0;
  bool lipschitz_ok = true;
  std::optional<LipschitzWitness> witness;
};

/// Sup deviation of each norm from `limit` over `grid`, and the shared
/// Lipschitz bound |n_j(x) - n_j(y)| <= B |x - y| (+ tolerance) on all grid
/// pairs for every j >= pinned_from.
ConvergenceReport compact_convergence_check(std::span<const NormFunction> norms,
                                            const NormFunction& limit, std::span<const Vec2> grid,
                                            std::size_t pinned_from = 0, double tolerance = 1e-9);

/// Gauge of the convex hull of a point set symmetrised through the origin.
/// The hull must contain the origin in its interior.
class HullGauge {
 public:
  explicit HullGauge(std::span<const Vec2> points);
  double operator()(Vec2 v) const;
  const std::vector<Vec2>& hull() const { return hull_; }

 private:
  std::vector<Vec2> hull_;  // counter-clockwise
};

/// Points on the Euclidean unit circle at `count` equally spaced angles.
std::vector<Vec2> unit_circle_sample(std::size_t count);

/// Smallest arc radius for which the bulged polygon stays strictly convex and
/// its arcs add no lattice points. Starts from the longest chord and doubles
/// the radius up to 32 times; throws ValidationError on failure.
double admissible_arc_radius(std::span<const LatticePoint> vertices);

}  // namespace snl
