#pragma once

// Multiplicities in minimum length spectra: the n >= f(m) profile check and
// norms that attain it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snl/norms.hpp"
#include "snl/periodic_metric.hpp"

namespace snl {

struct MultiplicityGroup {
  double length = 0.0;
  std::vector<IntegralClass> classes;  // canonical
  std::size_t m = 0;
  std::size_t n = 0;  // classes strictly shorter, trivial class included
  /// f(m) when m <= 8, in which case bound_holds reports n >= f(m).
  std::optional<std::int64_t> f_of_m;
  bool bound_holds = true;
  /// The enumeration budget ended inside this group, so m may be undercounted.
  bool truncated = false;
};

struct MultiplicityProfile {
  std::vector<MultiplicityGroup> groups;
  double tie_tolerance = 1e-9;
  bool bound_holds = true;  // over every group that is not truncated
  std::vector<std::string> warnings;
};

/// Groups the first class_budget classes of the norm (trivial class included).
MultiplicityProfile multiplicity_profile(const NormSpec& norm, std::size_t class_budget,
                                         double tie_tolerance = 1e-9);

/// Groups an already sorted list of class lengths; the caller supplies the
/// tolerance (grid spectra have no natural default).
MultiplicityProfile multiplicity_profile(std::span<const ClassLength> sorted, double tie_tolerance);
MultiplicityProfile multiplicity_profile(const Spectrum& spectrum, double tie_tolerance);

/// A strictly convex norm whose shortest nontrivial length ell is attained by
/// exactly m classes with exactly f(m) classes shorter. For 2 <= m <= 6 this
/// bulges the optimal origin-symmetric 2m-gon; m = 1 is an ellipse.
NormSpec construct_sharp_norm(int m, double level = 1.0);

struct SharpnessReport {
  int m = 0;
  std::int64_t f = 0;
  bool pass = false;
  std::optional<MultiplicityGroup> group;       // the group at the level
  std::vector<ClassLength> below_level;         // every class shorter than the level
  std::size_t boundary_points = 0;              // lattice points on the unit level set
  bool strictly_convex = false;
  std::vector<std::string> failures;
};

SharpnessReport verify_sharpness(int m, double level = 1.0);

}  // namespace snl
