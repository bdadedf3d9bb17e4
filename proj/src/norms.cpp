#include "snl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "snl/errors.hpp"

namespace snl {
namespace {

constexpr double kPi = std::numbers::pi;

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void validate(const Ellipse& e) {
  if (!std::isfinite(e.q11) || !std::isfinite(e.q12) || !std::isfinite(e.q22)) {
    throw ValidationError("ellipse matrix has non-finite entries");
  }
  // Both eigenvalues of a symmetric 2x2 matrix are positive iff trace > 0 and det > 0.
  const double det = e.q11 * e.q22 - e.q12 * e.q12;
  if (!(e.q11 > 0.0 && e.q22 > 0.0 && det > 0.0)) {
    throw ValidationError("ellipse matrix is not symmetric positive definite");
  }
}

void validate(const PNorm& p) {
  if (!std::isfinite(p.p) || !(p.p > 1.0)) {
    throw ValidationError("p-norm requires 1 < p < inf, got p = " + std::to_string(p.p));
  }
}

double eval_ellipse(const Ellipse& e, Vec2 v) {
  const double q = e.q11 * v.x * v.x + 2.0 * e.q12 * v.x * v.y + e.q22 * v.y * v.y;
  return std::sqrt(std::max(0.0, q));
}

double eval_pnorm(const PNorm& p, Vec2 v) {
  const double ax = std::abs(v.x);
  const double ay = std::abs(v.y);
  const double m = std::max(ax, ay);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(ax / m, p.p) + std::pow(ay / m, p.p), 1.0 / p.p);
}

bool closed_polygon_contains(std::span<const LatticePoint> ccw, LatticePoint p) {
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const LatticePoint a = ccw[i];
    const LatticePoint b = ccw[(i + 1) % ccw.size()];
    if (cross(b - a, p - a) < 0) return false;
  }
  return true;
}

}  // namespace

NormSpec::NormSpec(NormVariant variant, double scale) : variant_(std::move(variant)), scale_(scale) {
  if (!finite_positive(scale_)) throw ValidationError("norm scale must be a positive finite number");
  if (auto* e = std::get_if<Ellipse>(&variant_)) {
    validate(*e);
    return;
  }
  if (auto* p = std::get_if<PNorm>(&variant_)) {
    validate(*p);
    return;
  }
  auto& poly = std::get<ArcPolygon>(variant_);
  if (!finite_positive(poly.level)) throw ValidationError("arc polygon level must be positive");
  if (!(poly.radius > 0.0) || std::isnan(poly.radius)) throw ValidationError("arc radius must be positive");
  const std::size_t n = poly.vertices.size();
  if (n < 4 || n % 2 != 0) throw ValidationError("arc polygon needs an even number (>= 4) of vertices");

  std::int64_t twice_area = 0;
  for (std::size_t i = 0; i < n; ++i) twice_area += cross(poly.vertices[i], poly.vertices[(i + 1) % n]);
  if (twice_area < 0) std::reverse(poly.vertices.begin(), poly.vertices.end());

  for (const auto& v : poly.vertices) {
    if (std::find(poly.vertices.begin(), poly.vertices.end(), -v) == poly.vertices.end()) {
      throw ValidationError("arc polygon vertices are not centrally symmetric about the origin");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const IntVec d0 = poly.vertices[(i + 1) % n] - poly.vertices[i];
    const IntVec d1 = poly.vertices[(i + 2) % n] - poly.vertices[(i + 1) % n];
    if (cross(d0, d1) <= 0) throw ValidationError("arc polygon vertices are not in strictly convex position");
  }

  // Rotate so polar angles increase from the first vertex.
  std::vector<std::pair<double, Vec2>> by_angle;
  for (const auto& v : poly.vertices) {
    const Vec2 p = to_vec2(v);
    by_angle.emplace_back(std::atan2(p.y, p.x), p);
  }
  const auto first = std::min_element(by_angle.begin(), by_angle.end(),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
  std::rotate(by_angle.begin(), first, by_angle.end());
  for (const auto& [angle, p] : by_angle) {
    arc_angles_.push_back(angle);
    arc_vertices_.push_back(p);
  }

  const bool straight = std::isinf(poly.radius);
  const double r = poly.radius;
  std::vector<double> half_angles(n, 0.0);
  arcs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = arc_vertices_[i];
    const Vec2 b = arc_vertices_[(i + 1) % n];
    const Vec2 d = b - a;
    const double chord = length(d);
    if (straight) continue;
    if (2.0 * r <= chord) throw ValidationError("arc radius is smaller than half a polygon edge");
    const Vec2 inward{-d.y / chord, d.x / chord};
    const double offset = std::sqrt(r * r - 0.25 * chord * chord);
    const Vec2 center = 0.5 * (a + b) + offset * inward;
    if (length(center) >= r) throw ValidationError("arc circle does not enclose the origin");
    arcs_[i] = Arc{center, false};
    half_angles[i] = std::asin(chord / (2.0 * r));
  }
  if (!straight) {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 d0 = arc_vertices_[i] - arc_vertices_[(i + n - 1) % n];
      const Vec2 d1 = arc_vertices_[(i + 1) % n] - arc_vertices_[i];
      const double turn = std::atan2(cross(d0, d1), dot(d0, d1));
      if (turn - half_angles[(i + n - 1) % n] - half_angles[i] <= 1e-12) {
        throw ValidationError("bulged arc polygon is not convex at a vertex; increase the radius");
      }
    }
  }
}

double NormSpec::arc_gauge(Vec2 v) const {
  const double len = length(v);
  if (len == 0.0) return 0.0;
  const Vec2 u{v.x / len, v.y / len};
  const double theta = std::atan2(v.y, v.x);
  const std::size_t n = arc_vertices_.size();
  auto it = std::upper_bound(arc_angles_.begin(), arc_angles_.end(), theta);
  const std::size_t i = (it == arc_angles_.begin()) ? n - 1 : static_cast<std::size_t>(it - arc_angles_.begin()) - 1;
  const Vec2 a = arc_vertices_[i];
  const Vec2 b = arc_vertices_[(i + 1) % n];
  double t = 0.0;
  if (arcs_[i].straight) {
    const Vec2 d = b - a;
    t = cross(a, d) / cross(u, d);
  } else {
    const auto& poly = std::get<ArcPolygon>(variant_);
    const Vec2 c = arcs_[i].center;
    const double uc = dot(u, c);
    t = uc + std::sqrt(uc * uc - dot(c, c) + poly.radius * poly.radius);
  }
  return len / t;
}

double NormSpec::operator()(Vec2 v) const {
  if (const auto* e = std::get_if<Ellipse>(&variant_)) return scale_ * eval_ellipse(*e, v);
  if (const auto* p = std::get_if<PNorm>(&variant_)) return scale_ * eval_pnorm(*p, v);
  return scale_ * std::get<ArcPolygon>(variant_).level * arc_gauge(v);
}

NormSpec NormSpec::scaled(double factor) const { return NormSpec(variant_, scale_ * factor); }

double eval_norm(const NormSpec& norm, Vec2 v) { return norm(v); }

ConvexityReport strict_convexity_check(const NormSpec& norm, std::size_t sample_count, double tolerance) {
  if (sample_count < 8) throw ValidationError("strict convexity check needs at least 8 samples");
  std::vector<Vec2> unit(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(sample_count);
    const Vec2 d{std::cos(theta), std::sin(theta)};
    unit[i] = (1.0 / norm(d)) * d;
  }
  ConvexityReport report;
  for (std::size_t i = 0; i < sample_count; ++i) {
    for (std::size_t j = i + 1; j < sample_count; ++j) {
      if (2 * (j - i) == sample_count) continue;  // antipodal
      const double deficit = 2.0 - norm(unit[i] + unit[j]);
      if (deficit < report.smallest_deficit) {
        report.smallest_deficit = deficit;
        if (deficit <= tolerance) report.witness = std::pair{unit[i], unit[j]};
      }
    }
  }
  report.pass = !report.witness.has_value();
  return report;
}

double unit_circle_lower_bound(const NormSpec& norm) {
  const double lip = lipschitz_bound(norm(Vec2{1, 0}), norm(Vec2{0, 1}));
  for (std::size_t samples = 4096;; samples *= 4) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) {
      const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(samples);
      lowest = std::min(lowest, norm(Vec2{std::cos(theta), std::sin(theta)}));
    }
    // Every unit vector is within pi/samples of a sample.
    const double bound = lowest - lip * kPi / static_cast<double>(samples);
    if (bound > 0.0) return bound;
    if (samples > (1u << 22)) throw ValidationError("norm is not bounded below on the unit circle");
  }
}

namespace {

void sort_and_flag(const NormSpec& norm, std::vector<ClassLength>& entries, double tol, bool& warning) {
  std::sort(entries.begin(), entries.end(), [](const ClassLength& x, const ClassLength& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.cls < y.cls;
  });
  // Within runs of lengths equal up to tol, order lexicographically.
  std::size_t begin = 0;
  while (begin < entries.size()) {
    std::size_t end = begin + 1;
    const double ref = entries[begin].length;
    while (end < entries.size() && entries[end].length - ref <= tol * std::max(ref, 1e-300)) ++end;
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(begin), entries.begin() + static_cast<std::ptrdiff_t>(end),
              [](const ClassLength& x, const ClassLength& y) { return x.cls < y.cls; });
    for (std::size_t i = begin; i < end && !warning; ++i) {
      for (std::size_t j = i + 1; j < end && !warning; ++j) {
        const IntegralClass u = entries[i].cls;
        const IntegralClass v = entries[j].cls;
        if (u.is_trivial() || cross(u.vec(), v.vec()) == 0) continue;
        for (const IntegralClass w : {u + v, u + (-v)}) {
          if (norm(0.5 * w.real()) >= ref * (1.0 - tol)) warning = true;
        }
      }
    }
    begin = end;
  }
}

std::vector<ClassLength> canonical_classes_in_disk(const NormSpec& norm, double radius) {
  std::vector<ClassLength> out;
  const auto r = static_cast<std::int64_t>(std::ceil(radius));
  for (std::int64_t a = 0; a <= r; ++a) {
    for (std::int64_t b = -r; b <= r; ++b) {
      const IntegralClass h{a, b};
      if (!h.is_canonical()) continue;
      if (static_cast<double>(a * a + b * b) > radius * radius) continue;
      out.push_back({h, norm(h)});
    }
  }
  return out;
}

}  // namespace

ClassEnumeration enumerate_classes(const NormSpec& norm, std::size_t count, double tie_tolerance) {
  if (count < 1) throw ValidationError("enumerate_classes needs count >= 1");
  const double lower = unit_circle_lower_bound(norm);
  ClassEnumeration result;
  for (double radius = 2.0;; radius *= 2.0) {
    auto entries = canonical_classes_in_disk(norm, radius);
    std::sort(entries.begin(), entries.end(),
              [](const ClassLength& x, const ClassLength& y) { return x.length < y.length; });
    // Any class outside the disk has length > lower * radius.
    if (entries.size() > count && entries[count - 1].length * (1.0 + tie_tolerance) < lower * radius) {
      // Keep every tie of the last kept length so ordering within the tie is lexicographic.
      std::size_t keep = count;
      const double last = entries[count - 1].length;
      while (keep < entries.size() && entries[keep].length - last <= tie_tolerance * last) ++keep;
      entries.resize(keep);
      sort_and_flag(norm, entries, tie_tolerance, result.non_strict_warning);
      entries.resize(count);
      result.entries = std::move(entries);
      return result;
    }
  }
}

ClassEnumeration classes_within(const NormSpec& norm, double bound, double tie_tolerance) {
  if (!(bound >= 0.0)) throw ValidationError("class bound must be nonnegative");
  const double lower = unit_circle_lower_bound(norm);
  auto entries = canonical_classes_in_disk(norm, bound * (1.0 + tie_tolerance) / lower + 1.0);
  std::erase_if(entries, [&](const ClassLength& e) { return e.length > bound * (1.0 + tie_tolerance); });
  ClassEnumeration result;
  sort_and_flag(norm, entries, tie_tolerance, result.non_strict_warning);
  result.entries = std::move(entries);
  return result;
}

double lipschitz_bound(double v1, double v2) {
  if (!finite_positive(v1) || !finite_positive(v2)) {
    throw ValidationError("lipschitz_bound needs positive norm values at (1,0) and (0,1)");
  }
  return std::hypot(v1, v2);
}

ConvergenceReport compact_convergence_check(std::span<const NormFunction> norms, const NormFunction& limit,
                                            std::span<const Vec2> grid, std::size_t pinned_from,
                                            double tolerance) {
  ConvergenceReport report;
  report.lipschitz_constant = lipschitz_bound(limit(Vec2{1, 0}), limit(Vec2{0, 1}));
  std::vector<double> limit_values;
  limit_values.reserve(grid.size());
  for (const Vec2 x : grid) limit_values.push_back(limit(x));

  for (std::size_t j = 0; j < norms.size(); ++j) {
    std::vector<double> values;
    values.reserve(grid.size());
    double sup = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      values.push_back(norms[j](grid[g]));
      sup = std::max(sup, std::abs(values.back() - limit_values[g]));
    }
    report.deviations.push_back(sup);
    if (j < pinned_from || report.witness) continue;
    for (std::size_t p = 0; p < grid.size() && !report.witness; ++p) {
      for (std::size_t q = p + 1; q < grid.size(); ++q) {
        const double excess =
            std::abs(values[p] - values[q]) - report.lipschitz_constant * length(grid[p] - grid[q]);
        if (excess > tolerance) {
          report.witness = LipschitzWitness{j, grid[p], grid[q], excess};
          break;
        }
      }
    }
  }
  report.lipschitz_ok = !report.witness.has_value();
  return report;
}

HullGauge::HullGauge(std::span<const Vec2> points) {
  std::vector<Vec2> pts;
  pts.reserve(2 * points.size());
  for (const Vec2 p : points) {
    pts.push_back(p);
    pts.push_back(-1.0 * p);
  }
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw ValidationError("hull gauge needs points spanning the plane");
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (cross(hull[(i + 1) % hull.size()] - hull[i], -1.0 * hull[i]) <= 0) {
      throw ValidationError("hull gauge: origin is not interior to the hull");
    }
  }
  hull_ = std::move(hull);
}

double HullGauge::operator()(Vec2 v) const {
  double g = 0.0;
  for (std::size_t i = 0; i < hull_.size(); ++i) {
    const Vec2 a = hull_[i];
    const Vec2 d = hull_[(i + 1) % hull_.size()] - a;
    const Vec2 outward{d.y, -d.x};
    g = std::max(g, dot(outward, v) / dot(outward, a));
  }
  return g;
}

std::vector<Vec2> unit_circle_sample(std::size_t count) {
  std::vector<Vec2> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(count);
    out.push_back({std::cos(theta), std::sin(theta)});
  }
  return out;
}

double admissible_arc_radius(std::span<const LatticePoint> vertices) {
  std::vector<LatticePoint> ccw(vertices.begin(), vertices.end());
  std::int64_t twice_area = 0;
  for (std::size_t i = 0; i < ccw.size(); ++i) twice_area += cross(ccw[i], ccw[(i + 1) % ccw.size()]);
  if (twice_area < 0) std::reverse(ccw.begin(), ccw.end());

  double chord = 0.0;
  std::int64_t reach = 0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    chord = std::max(chord, length(to_vec2(ccw[(i + 1) % ccw.size()] - ccw[i])));
    reach = std::max({reach, ccw[i].x < 0 ? -ccw[i].x : ccw[i].x, ccw[i].y < 0 ? -ccw[i].y : ccw[i].y});
  }
  double radius = chord;
  for (int attempt = 0; attempt <= 32; ++attempt, radius *= 2.0) {
    std::optional<NormSpec> norm;
    try {
      norm.emplace(ArcPolygon{ccw, radius, 1.0});
    } catch (const ValidationError&) {
      continue;
    }
    const double sagitta = radius - std::sqrt(radius * radius - 0.25 * chord * chord);
    const std::int64_t box = reach + static_cast<std::int64_t>(std::ceil(sagitta)) + 1;
    bool clean = true;
    for (std::int64_t x = -box; x <= box && clean; ++x) {
      for (std::int64_t y = -box; y <= box && clean; ++y) {
        const LatticePoint p{x, y};
        if (closed_polygon_contains(ccw, p)) continue;
        if ((*norm)(to_vec2(p)) <= 1.0 + 1e-9) clean = false;
      }
    }
    if (clean) return radius;
  }
  throw ValidationError("no admissible arc radius found after 32 doublings");
}

}  // namespace snl
