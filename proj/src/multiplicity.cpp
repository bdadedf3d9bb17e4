#include "snl/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "snl/errors.hpp"
#include "snl/lattice_polygons.hpp"

namespace snl {
namespace {

constexpr int kLargestTabulatedM = 8;

// The inequality concerns positive lengths; the trivial class has length 0.
void check_bound(MultiplicityGroup& g) {
  if (g.m == 0 || g.m > static_cast<std::size_t>(kLargestTabulatedM)) return;
  if (std::any_of(g.classes.begin(), g.classes.end(), [](IntegralClass h) { return h.is_trivial(); })) return;
  g.f_of_m = f_of_m(static_cast<int>(g.m));
  g.bound_holds = static_cast<std::int64_t>(g.n) >= *g.f_of_m;
}

MultiplicityProfile profile_from(std::span<const ClassLength> sorted, double tolerance, bool last_truncated) {
  if (!(tolerance >= 0.0)) throw ValidationError("tie tolerance must be nonnegative");
  MultiplicityProfile profile;
  profile.tie_tolerance = tolerance;
  for (SpectrumGroup& sg : group_lengths(sorted, tolerance)) {
    MultiplicityGroup g;
    g.length = sg.length;
    g.classes = std::move(sg.classes);
    g.m = sg.m;
    g.n = sg.n;
    profile.groups.push_back(std::move(g));
  }
  if (last_truncated && !profile.groups.empty()) profile.groups.back().truncated = true;
  for (MultiplicityGroup& g : profile.groups) {
    if (g.truncated) continue;
    check_bound(g);
    if (!g.bound_holds) {
      profile.bound_holds = false;
      std::ostringstream msg;
      msg << "n >= f(m) violated at length " << g.length << ": m = " << g.m << ", n = " << g.n
          << ", f(m) = " << *g.f_of_m;
      profile.warnings.push_back(msg.str());
    }
  }

  // Adjacent lengths that differ at all but land in one group.
  std::size_t gaps = 0;
  std::size_t merged = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double a = sorted[i].length;
    const double b = sorted[i + 1].length;
    if (b - a <= 1e-15 * std::max(1.0, b)) continue;
    ++gaps;
    if (b - a <= tolerance * std::max(a, 1e-300)) ++merged;
  }
  if (gaps > 0 && 5 * merged > gaps) {
    std::ostringstream msg;
    msg << "tie tolerance " << tolerance << " merges " << merged << " of " << gaps
        << " distinct adjacent lengths; it is likely too coarse";
    profile.warnings.push_back(msg.str());
  }
  return profile;
}

}  // namespace

MultiplicityProfile multiplicity_profile(const NormSpec& norm, std::size_t class_budget, double tie_tolerance) {
  if (class_budget < 1) throw ValidationError("class budget must be at least 1");
  // One extra class tells whether the budget cuts the last group.
  const auto entries = enumerate_classes(norm, class_budget + 1, tie_tolerance).entries;
  const std::span<const ClassLength> kept(entries.data(), std::min(class_budget, entries.size()));
  bool truncated = false;
  if (entries.size() > class_budget) {
    const double last = kept.back().length;
    truncated = entries[class_budget].length - last <= tie_tolerance * last;
  }
  return profile_from(kept, tie_tolerance, truncated);
}

MultiplicityProfile multiplicity_profile(std::span<const ClassLength> sorted, double tie_tolerance) {
  return profile_from(sorted, tie_tolerance, false);
}

MultiplicityProfile multiplicity_profile(const Spectrum& spectrum, double tie_tolerance) {
  std::vector<ClassLength> flat;
  flat.reserve(spectrum.entries.size());
  for (const SpectrumEntry& e : spectrum.entries) flat.push_back({e.cls, e.length});
  return profile_from(flat, tie_tolerance, false);
}

NormSpec construct_sharp_norm(int m, double level) {
  if (!(level > 0.0) || !std::isfinite(level)) throw ValidationError("level must be a positive finite number");
  if (m < 1 || m > 6) throw ValidationError("sharp norms are constructed for 1 <= m <= 6");
  if (m == 1) return NormSpec(Ellipse{1.0, 0.0, 1.3}, level);

  const SymmetricResult optimum = min_interior_symmetric(2 * m);
  const auto& v = optimum.witness.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (gcd_abs(v[(i + 1) % v.size()] - v[i]) != 1) {
      throw ValidationError("optimal symmetric polygon has a lattice point inside an edge; bulging would count it");
    }
  }
  const double radius = admissible_arc_radius(v);
  return NormSpec(ArcPolygon{v, radius, level});
}

SharpnessReport verify_sharpness(int m, double level) {
  SharpnessReport report;
  report.m = m;
  const NormSpec norm = construct_sharp_norm(m, level);
  report.f = f_of_m(m);
  report.strictly_convex = strict_convexity_check(norm).pass;
  if (!report.strictly_convex) report.failures.push_back("constructed norm is not strictly convex");

  constexpr double tol = 1e-9;
  const auto entries = classes_within(norm, level * (1.0 + 10 * tol), tol).entries;
  for (const ClassLength& e : entries) {
    if (e.length < level * (1.0 - tol)) report.below_level.push_back(e);
  }
  const MultiplicityProfile profile = multiplicity_profile(entries, tol);
  for (const MultiplicityGroup& g : profile.groups) {
    if (std::abs(g.length - level) <= tol * level) report.group = g;
  }

  // Direct scan of the lattice points whose norm is the level.
  const double reach = level / unit_circle_lower_bound(norm);
  const auto box = static_cast<std::int64_t>(std::ceil(reach)) + 1;
  for (std::int64_t x = -box; x <= box; ++x) {
    for (std::int64_t y = -box; y <= box; ++y) {
      if (std::abs(norm(Vec2{static_cast<double>(x), static_cast<double>(y)}) - level) <= tol * level) {
        ++report.boundary_points;
      }
    }
  }

  if (!report.group) {
    report.failures.push_back("no class attains the level");
  } else {
    if (report.group->m != static_cast<std::size_t>(m)) {
      report.failures.push_back("multiplicity at the level is " + std::to_string(report.group->m));
    }
    if (static_cast<std::int64_t>(report.group->n) != report.f) {
      report.failures.push_back("classes below the level: " + std::to_string(report.group->n) +
                                ", expected f(m) = " + std::to_string(report.f));
    }
  }
  if (report.boundary_points != static_cast<std::size_t>(2 * m)) {
    report.failures.push_back("lattice points on the level set: " + std::to_string(report.boundary_points));
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace snl
