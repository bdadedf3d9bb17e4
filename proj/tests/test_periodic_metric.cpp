#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "snl/errors.hpp"
#include "snl/periodic_metric.hpp"

using namespace snl;

namespace {

const double kRoot2 = std::sqrt(2.0);

CanyonGraph square_canyon(bool corridors = true) {
  const auto g = ToralGeodesicGraph::build({{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  CanyonOptions options;
  options.background = 1.0;
  options.resolution = 64;
  options.include_corridors = corridors;
  return build_canyon_graph(g, 0.14, options);
}

}  // namespace

TEST_CASE("periodic graph validation") {
  CHECK_THROWS_AS(PeriodicWeightedGraph({{0.0, 0.0}}, {{0, 0, -1.0, {1, 0}}}), ValidationError);
  CHECK_THROWS_AS(PeriodicWeightedGraph({{0.0, 0.0}, {0.5, 0.5}}, {{0, 0, 1.0, {1, 0}}}), ValidationError);
  CHECK_THROWS_AS(PeriodicWeightedGraph({{1.5, 0.0}}, {{0, 0, 1.0, {1, 0}}}), ValidationError);
}

TEST_CASE("uniform grid is the L1 norm") {
  const auto grid = uniform_grid(16, 1.0 / 16);
  CHECK(marked_min_length(grid, {1, 0}).length == doctest::Approx(1.0));
  CHECK(marked_min_length(grid, {1, 1}).length == doctest::Approx(2.0));
  CHECK(marked_min_length(grid, {2, 1}).length == doctest::Approx(3.0));
  CHECK(marked_min_length(grid, {0, 0}).length == 0.0);
  CHECK(marked_min_length(grid, {-2, 3}).length == doctest::Approx(marked_min_length(grid, {2, -3}).length));
  CHECK_THROWS_AS(marked_min_length(grid, {3, 3}, 2), WindowError);
}

TEST_CASE("stable norm on the grid") {
  const auto grid = uniform_grid(16, 1.0 / 16);
  const auto s = stable_norm_estimate(grid, {1, 0}, 4);
  REQUIRE(s.sequence.size() == 4);
  for (const double v : s.sequence) CHECK(v == doctest::Approx(1.0));
  CHECK(s.minimum_at == 1);
  CHECK(s.stable);
}

TEST_CASE("grid spectrum") {
  const auto grid = uniform_grid(16, 1.0 / 16);
  const Spectrum s = spectrum(grid, 2.1);
  REQUIRE(s.entries.size() == 7);
  CHECK(s.entries[0].cls == IntegralClass{0, 0});
  CHECK(s.entries[1].cls == IntegralClass{0, 1});
  CHECK(s.entries[2].cls == IntegralClass{1, 0});
  REQUIRE(s.groups.size() == 3);
  CHECK(s.groups[2].m == 4);
  CHECK(s.groups[2].n == 3);
  CHECK(s.groups[2].length == doctest::Approx(2.0));

  const Spectrum tiny = spectrum(grid, 0.5);
  REQUIRE(tiny.entries.size() == 1);
  CHECK(tiny.entries[0].cls.is_trivial());
}

TEST_CASE("canyon graph keeps corridor lengths") {
  const CanyonGraph c = square_canyon();
  CHECK(marked_min_length(c.graph, {1, 0}).length == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(marked_min_length(c.graph, {0, 1}).length == doctest::Approx(1.0).epsilon(1e-12));
  const double diag = marked_min_length(c.graph, {1, 1}).length;
  CHECK(diag >= kRoot2);
  CHECK(diag <= 2.0 + 1e-12);

  const auto s10 = stable_norm_estimate(c.graph, {1, 0}, 3);
  for (const double v : s10.sequence) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const auto s11 = stable_norm_estimate(c.graph, {1, 1}, 3);
  for (std::size_t i = 1; i < s11.sequence.size(); ++i) CHECK(s11.sequence[i] <= s11.sequence[i - 1] + 1e-12);
  for (const double v : s11.sequence) CHECK(v >= kRoot2 - 1e-9);
}

TEST_CASE("background alone costs at least B") {
  const CanyonGraph c = square_canyon(false);
  CHECK(marked_min_length(c.graph, {1, 0}).length >= 1.0 - 1e-12);
}

TEST_CASE("canyon validation") {
  const auto g = ToralGeodesicGraph::build({{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  CanyonOptions options;
  CHECK_THROWS_AS(build_canyon_graph(g, 0.0, options), ValidationError);
  options.background = 0.5;
  CHECK_THROWS_AS(build_canyon_graph(g, 0.1, options), ValidationError);
  options.background = 1.0;
  options.resolution = 8;
  CHECK_THROWS_AS(build_canyon_graph(g, 0.1, options), ValidationError);
}

TEST_CASE("canyon spectrum for three Euclidean classes") {
  const NormSpec eu = NormSpec::euclidean();
  const PinnedGraph p = graph_from_norm(eu, 4);
  const auto eps = compute_zeta_epsilon_theta(p.graph, eu, p.ell_k);
  CanyonOptions options;
  options.background = p.ell_k;
  options.resolution = 64;
  const CanyonGraph c = build_canyon_graph(p.graph, eps.theta, options);
  const Spectrum s = spectrum(c.graph, 1.2 * p.ell_k);
  for (const auto& gc : p.graph.classes()) {
    const auto it = std::find_if(s.entries.begin(), s.entries.end(),
                                 [&](const SpectrumEntry& e) { return e.cls == gc.h.canonical(); });
    REQUIRE(it != s.entries.end());
    CHECK(it->length == doctest::Approx(gc.length).epsilon(0.05));
  }
  for (const SpectrumEntry& e : s.entries) {
    if (e.cls.is_trivial()) continue;
    const bool pinned = std::any_of(p.graph.classes().begin(), p.graph.classes().end(),
                                    [&](const GeodesicClass& gc) { return gc.h.canonical() == e.cls; });
    if (!pinned) CHECK(e.length >= 0.95 * p.ell_k);
  }
}

TEST_CASE("quotient distances satisfy the triangle inequality") {
  const CanyonGraph c = square_canyon();
  const auto& pg = c.graph;
  // Quotient distance: Dijkstra ignoring periods.
  auto dist_from = [&](std::size_t s) {
    std::vector<double> d(pg.node_count(), 1e300);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
    d[s] = 0.0;
    q.push({0.0, s});
    while (!q.empty()) {
      const auto [du, u] = q.top();
      q.pop();
      if (du > d[u]) continue;
      for (const auto& a : pg.arcs(u)) {
        if (du + a.weight < d[a.to]) {
          d[a.to] = du + a.weight;
          q.push({d[a.to], a.to});
        }
      }
    }
    return d;
  };
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, pg.node_count() - 1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t a = pick(rng), b = pick(rng), x = pick(rng);
    const auto da = dist_from(a);
    const auto db = dist_from(b);
    CHECK(da[x] <= da[b] + db[x] + 1e-12);
  }
}

TEST_CASE("marked lengths match an unpruned cover search on random graphs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> step(-1, 1);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 5 + trial;
    std::vector<Vec2> pos;
    for (std::size_t i = 0; i < n; ++i) pos.push_back({unit(rng), unit(rng)});
    std::vector<oracle::CoverEdge> edges;
    auto add = [&](std::size_t u, std::size_t v, IntVec p) {
      const Vec2 disp = pos[v] + Vec2{static_cast<double>(p.x), static_cast<double>(p.y)} - pos[u];
      edges.push_back({u, v, (1.0 + unit(rng)) * std::max(0.05, length(disp)), p});
    };
    for (std::size_t i = 1; i < n; ++i) add(i - 1, i, {0, 0});
    add(0, 0, {1, 0});
    add(n - 1, n - 1, {0, 1});
    for (std::size_t extra = 0; extra < 2 * n; ++extra) {
      const std::size_t u = rng() % n, v = rng() % n;
      const IntVec p{step(rng), step(rng)};
      if (u == v && p == IntVec{0, 0}) continue;
      add(u, v, p);
    }
    std::vector<PeriodicEdge> pe;
    for (const auto& e : edges) pe.push_back({e.u, e.v, e.weight, e.period});
    const PeriodicWeightedGraph pg(pos, pe);
    for (std::int64_t a = -2; a <= 2; ++a) {
      for (std::int64_t b = -2; b <= 2; ++b) {
        if (a == 0 && b == 0) continue;
        const double got = marked_min_length(pg, {a, b}).length;
        const double want = oracle::min_class_length(n, edges, {a, b}, 12);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}
