#include <cmath>

#include "doctest.h"
#include "snl/errors.hpp"
#include "snl/lattice_polygons.hpp"
#include "snl/multiplicity.hpp"

using namespace snl;

namespace {

void check_group_bookkeeping(const MultiplicityProfile& p, std::size_t total) {
  std::size_t before = 0;
  for (std::size_t i = 0; i < p.groups.size(); ++i) {
    if (i > 0) CHECK(p.groups[i - 1].length < p.groups[i].length);
    CHECK(p.groups[i].n == before);
    CHECK(p.groups[i].m == p.groups[i].classes.size());
    before += p.groups[i].m;
  }
  CHECK(before == total);
}

}  // namespace

TEST_CASE("euclidean profile") {
  const auto p = multiplicity_profile(NormSpec::euclidean(), 5);
  REQUIRE(p.groups.size() >= 2);
  CHECK(p.groups[1].length == doctest::Approx(1.0));
  CHECK(p.groups[1].m == 2);
  CHECK(p.groups[1].n == 1);
  CHECK(p.bound_holds);
  check_group_bookkeeping(p, 5);
}

TEST_CASE("hexagonal profile") {
  const auto p = multiplicity_profile(NormSpec::hexagonal(), 10);
  REQUIRE(p.groups.size() >= 2);
  CHECK(p.groups[1].m == 3);
  CHECK(p.groups[1].n == 1);
  CHECK(p.bound_holds);
}

TEST_CASE("trivial class alone") {
  const auto p = multiplicity_profile(NormSpec::euclidean(), 1);
  REQUIRE(p.groups.size() == 1);
  CHECK(p.groups[0].length == 0.0);
  CHECK(p.groups[0].m == 1);
  CHECK(p.groups[0].n == 0);
}

TEST_CASE("profiles are scale invariant") {
  const NormSpec base(Ellipse{1.3, 0.2, 0.8});
  const auto a = multiplicity_profile(base, 30);
  const auto b = multiplicity_profile(base.scaled(7.5), 30);
  REQUIRE(a.groups.size() == b.groups.size());
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    CHECK(a.groups[i].m == b.groups[i].m);
    CHECK(a.groups[i].n == b.groups[i].n);
    CHECK(b.groups[i].length == doctest::Approx(7.5 * a.groups[i].length));
  }
}

TEST_CASE("bound holds for several norms") {
  for (const NormSpec& n : {NormSpec::euclidean(), NormSpec::hexagonal(), NormSpec(PNorm{1.5}), NormSpec(PNorm{3.0}),
                            NormSpec(Ellipse{2.0, 0.9, 1.0})}) {
    const auto p = multiplicity_profile(n, 60);
    CHECK(p.bound_holds);
    check_group_bookkeeping(p, 60);
  }
}

TEST_CASE("coarse tolerance warns") {
  const auto p = multiplicity_profile(NormSpec(Ellipse{1.3, 0.2, 0.8}), 30, 0.5);
  CHECK_FALSE(p.warnings.empty());
  CHECK_THROWS_AS(multiplicity_profile(NormSpec::euclidean(), 0), ValidationError);
}

TEST_CASE("sharp norm constructions") {
  const NormSpec one = construct_sharp_norm(1, 1.0);
  CHECK(one(IntegralClass{1, 0}) == doctest::Approx(1.0));
  CHECK(one(IntegralClass{0, 1}) > 1.0);

  for (int m = 1; m <= 3; ++m) {
    CAPTURE(m);
    const SharpnessReport r = verify_sharpness(m);
    CHECK(r.pass);
    CHECK(r.f == 1);
    REQUIRE(r.group.has_value());
    CHECK(r.group->m == static_cast<std::size_t>(m));
    CHECK(r.group->n == 1);
    CHECK(r.strictly_convex);
  }
  const SharpnessReport r2 = verify_sharpness(2, 3.0);
  CHECK(r2.pass);
  CHECK(r2.group->length == doctest::Approx(3.0));
  CHECK(r2.boundary_points == 4);
  CHECK_THROWS_AS(construct_sharp_norm(7, 1.0), ValidationError);
  CHECK_THROWS_AS(construct_sharp_norm(2, 0.0), ValidationError);
}
