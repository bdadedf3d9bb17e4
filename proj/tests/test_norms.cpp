#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "snl/errors.hpp"
#include "snl/norms.hpp"

using namespace snl;

namespace {

std::vector<NormSpec> sample_norms() {
  return {NormSpec::euclidean(),           NormSpec::hexagonal(),
          NormSpec(Ellipse{2.0, -0.7, 0.6}), NormSpec(PNorm{1.5}),
          NormSpec(PNorm{4.0}, 0.8),        NormSpec(ArcPolygon{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, 2.0, 1.0})};
}

}  // namespace

TEST_CASE("validation rejects bad norms") {
  CHECK_THROWS_AS(NormSpec(Ellipse{1.0, 2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(NormSpec(PNorm{1.0}), ValidationError);
  CHECK_THROWS_AS(NormSpec(Ellipse{}, -1.0), ValidationError);
  CHECK_THROWS_AS(NormSpec(ArcPolygon{{{1, 0}, {0, 1}, {-1, 0}}, 2.0, 1.0}), ValidationError);
}

TEST_CASE("norm axioms on random vectors") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> s(-3.0, 3.0);
  for (const NormSpec& n : sample_norms()) {
    for (int t = 0; t < 1000; ++t) {
      const Vec2 x{u(rng), u(rng)};
      const Vec2 y{u(rng), u(rng)};
      const double c = s(rng);
      CHECK(n(c * x) == doctest::Approx(std::abs(c) * n(x)).epsilon(1e-12));
      CHECK(n(x + y) <= n(x) + n(y) + 1e-12);
    }
  }
}

TEST_CASE("strict convexity check") {
  CHECK(strict_convexity_check(NormSpec::euclidean()).pass);
  CHECK(strict_convexity_check(NormSpec(PNorm{4.0})).pass);
  const auto flat = strict_convexity_check(NormSpec(ArcPolygon{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}));
  CHECK_FALSE(flat.pass);
  REQUIRE(flat.witness.has_value());
  // Both witness points lie on one straight edge of the diamond.
  const auto [p, q] = *flat.witness;
  CHECK(std::abs(std::abs(p.x) + std::abs(p.y) - 1.0) < 1e-9);
  CHECK(std::abs(std::abs(q.x) + std::abs(q.y) - 1.0) < 1e-9);
}

TEST_CASE("enumerate classes: small examples") {
  const auto e = enumerate_classes(NormSpec::euclidean(), 4).entries;
  REQUIRE(e.size() == 4);
  CHECK(e[0] == ClassLength{{0, 0}, 0.0});
  CHECK(e[1].cls == IntegralClass{0, 1});
  CHECK(e[2].cls == IntegralClass{1, 0});
  // (1,-1) and (1,1) tie at sqrt 2; the lexicographic rule keeps (1,-1).
  CHECK(e[3].cls == IntegralClass{1, -1});
  CHECK(e[3].length == doctest::Approx(std::sqrt(2.0)));

  const auto one = enumerate_classes(NormSpec::euclidean(), 1).entries;
  REQUIRE(one.size() == 1);
  CHECK(one[0].cls.is_trivial());

  // Under the 4-norm, (1,1) at 2^(1/4) comes before (0,2) at 2.
  const NormSpec p4(PNorm{4.0});
  const auto f = enumerate_classes(p4, 5).entries;
  const auto brute = oracle::lattice_scan(p4, 2.0 + 1e-12, 3);
  REQUIRE(f.size() == 5);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i].cls == brute[i].cls);
  CHECK(f[4].cls == IntegralClass{1, 1});
  CHECK(f[4].length == doctest::Approx(std::pow(2.0, 0.25)));
  CHECK(f[4].length < p4(IntegralClass{0, 2}));
}

TEST_CASE("enumerate classes is complete and sorted") {
  for (const NormSpec& n : sample_norms()) {
    const auto e = enumerate_classes(n, 40).entries;
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1].length <= e[i].length);
    const double last = e.back().length;
    const auto brute = oracle::lattice_scan(n, last * (1.0 - 1e-9), 40);
    for (const ClassLength& b : brute) {
      const bool found = std::any_of(e.begin(), e.end(), [&](const ClassLength& x) { return x.cls == b.cls; });
      CHECK_MESSAGE(found, "missing class " << b.cls);
    }
  }
}

TEST_CASE("lipschitz bound") {
  CHECK(lipschitz_bound(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(lipschitz_bound(3, 4) == doctest::Approx(5.0));
  CHECK(lipschitz_bound(2, 2) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK_THROWS_AS(lipschitz_bound(0, 1), ValidationError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const NormSpec& n : sample_norms()) {
    const double b = lipschitz_bound(n(Vec2{1, 0}), n(Vec2{0, 1}));
    for (int t = 0; t < 100; ++t) {
      const Vec2 x{u(rng), u(rng)};
      const Vec2 y{u(rng), u(rng)};
      CHECK(std::abs(n(x) - n(y)) <= b * length(x - y) + 1e-9);
    }
  }
}

TEST_CASE("compact convergence check") {
  const NormFunction limit = [](Vec2 v) { return length(v); };
  const auto grid = unit_circle_sample(64);
  std::vector<NormFunction> same(3, limit);
  const auto r0 = compact_convergence_check(same, limit, grid);
  for (const double d : r0.deviations) CHECK(d == 0.0);
  CHECK(r0.lipschitz_ok);

  std::vector<Vec2> disk = grid;
  for (const Vec2 v : grid) disk.push_back(0.5 * v);
  std::vector<NormFunction> shrinking;
  for (int j = 1; j <= 5; ++j) {
    shrinking.push_back([j](Vec2 v) { return (1.0 + 1.0 / j) * length(v); });
  }
  const auto r1 = compact_convergence_check(shrinking, limit, disk, 4);
  for (int j = 1; j <= 5; ++j) CHECK(r1.deviations[j - 1] == doctest::Approx(1.0 / j));
  // (1 + 1/5) |x| has Lipschitz constant 1.2 < sqrt(2); the earlier ones are skipped.
  CHECK(r1.lipschitz_ok);

  const auto r2 = compact_convergence_check(shrinking, limit, disk, 0);
  CHECK_FALSE(r2.lipschitz_ok);
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness->index == 0);
}

TEST_CASE("sharp norms are strictly convex") {
  const std::vector<LatticePoint> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const NormSpec diamond(ArcPolygon{square, admissible_arc_radius(square), 1.0});
  CHECK(strict_convexity_check(diamond).pass);
  CHECK(diamond(IntegralClass{1, 0}) == doctest::Approx(1.0));
  CHECK(diamond(IntegralClass{1, 1}) > 1.0);
}
