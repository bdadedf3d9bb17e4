// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "experiments.hpp"
#include "oracles.hpp"
#include "snl/lattice_polygons.hpp"
#include "snl/multiplicity.hpp"
#include "snl/periodic_metric.hpp"
#include "snl/toral_graph.hpp"

using namespace snl;

namespace {

constexpr double kExact = 1e-9;  // relative tolerance for floating-point equalities

bool same(double a, double b) { return std::abs(a - b) <= kExact * std::max(1.0, std::abs(b)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < limit_seconds, "runtime over limit");
  if (!o.pass) ++failures;
  std::printf("%s %d %s [%.2f s of %.0f s] %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, limit_seconds,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<MinAreaResult> area_table;

void pick_identity(Outcome& o) {
  std::mt19937_64 rng(20240101);
  std::uniform_int_distribution<std::int64_t> coord(-20, 20);
  std::uniform_int_distribution<int> count(3, 14);
  int done = 0;
  while (done < 1000) {
    std::vector<LatticePoint> pts(static_cast<std::size_t>(count(rng)));
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    const LatticePolygon poly = convex_hull(pts);
    if (poly.vertices.size() < 3) continue;
    ++done;
    const Rational area(doubled_area(poly), 2);
    const oracle::Scan s = oracle::scan_polygon(poly.vertices);
    o.require(area == Rational(s.interior) + Rational(s.boundary, 2) - Rational(1), "Pick identity");
    const PickCounts pc = pick_counts(poly);
    o.require(pc.interior == s.interior && pc.boundary == s.boundary && pc.area == area, "pick_counts vs scan");
  }
  o.detail << "polygons=" << done;
}

void area_criterion(Outcome& o) {
  area_table.clear();
  for (int k = 3; k <= 8; ++k) {
    MinAreaResult r = min_area_convex_kgon(k);
    const Rational brute(oracle::min_doubled_area(k, 6), 2);
    o.require(r.area == brute, "A(" + std::to_string(k) + ") differs from the unpruned oracle");
    o.require(r.certified, "A(" + std::to_string(k) + ") not certified");
    const Rational i = r.area + Rational(2 - k, 2);
    o.require(i.is_integer(), "i(k) not integral");
    o.require(i_of_k(r) == oracle::scan_polygon(r.witness.vertices).interior, "i(k) vs witness scan");
    o.require(is_strictly_convex(r.witness) && r.witness.vertices.size() == static_cast<std::size_t>(k),
              "witness is not a convex k-gon");
    o.detail << "A(" << k << ")=" << r.area << " ";
    area_table.push_back(std::move(r));
  }
  o.require(area_table.front().area == Rational(1, 2), "A(3) != 1/2");
}

void symmetric_criterion(Outcome& o) {
  for (int m = 1; m <= 4; ++m) {
    const SymmetricResult s = min_interior_symmetric(2 * m);
    o.require(s.interior % 2 == 1, "i0symm even");
    o.require(s.certified, "symmetric minimum not certified");
    if (m >= 2) {
      o.require(is_strictly_convex(s.witness), "witness not convex");
      o.require(is_centrally_symmetric_about_origin(s.witness), "witness not symmetric");
      o.require(pick_counts(s.witness).interior == s.interior, "witness interior count");
    }
    if (m <= 3) {
      o.require(oracle::min_symmetric_interior(m, 3) == s.interior, "oracle disagrees");
      o.require(f_of_m(m) == 1, "f(m) != 1");
    }
    o.detail << "i0symm(" << 2 * m << ")=" << s.interior << " ";
  }
}

void epsilon_criterion(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> diag(0.5, 2.0);
  std::uniform_real_distribution<double> corr(-0.9, 0.9);
  const double ps[] = {1.5, 2.0, 3.0, 4.0};
  constexpr std::size_t kEnumerationCap = 10;
  std::size_t cycles = 0;
  std::size_t capped = 0;
  double smallest = INFINITY;
  for (int t = 0; t < 20; ++t) {
    const double a = diag(rng), b = diag(rng), c = corr(rng);
    const NormSpec norm = t % 2 == 0 ? NormSpec(Ellipse{a, c * std::sqrt(a * b), b}) : NormSpec(PNorm{ps[(t / 2) % 4]}, a);
    for (std::size_t k = 2; k <= 6; ++k) {
      const PinnedGraph p = graph_from_norm(norm, k);
      const EpsilonResult e = compute_zeta_epsilon_theta(p.graph, norm, p.ell_k);
      o.require(e.epsilon > 0.0, "epsilon not positive");
      smallest = std::min(smallest, e.epsilon);
      if (e.witness) {
        o.require(homology_by_displacement(p.graph, *e.witness) == homology_by_intersection(p.graph, *e.witness),
                  "witness homology mismatch");
      }
      const std::size_t cap = std::min(e.edge_bound, kEnumerationCap);
      if (cap < e.edge_bound) ++capped;
      const InequalityReport rep = verify_strict_inequality(p.graph, norm, cap, 50'000'000);
      cycles += rep.cycle_count;
      o.require(rep.homology_agrees, "homology mismatch on an enumerated cycle");
      o.require(rep.pass, "nonpositive gap on an enumerated cycle");
      if (rep.cycle_count > 0) {
        if (cap == e.edge_bound) {
          o.require(same(e.epsilon, rep.min_gap), "epsilon differs from the enumerated minimum");
        } else {
          o.require(e.epsilon <= rep.min_gap + 1e-12, "epsilon exceeds a shorter enumerated gap");
        }
      }
    }
  }
  o.detail << "min_epsilon=" << smallest << " enumerated_cycles=" << cycles << " graphs_enumerated_to_"
           << kEnumerationCap << "_edges=" << capped;
}

bool is_pinned(const ToralGeodesicGraph& g, IntegralClass h) {
  for (const auto& c : g.classes()) {
    if (c.h.canonical() == h.canonical()) return true;
  }
  return false;
}

void canyon_criterion(Outcome& o) {
  const NormSpec eu = NormSpec::euclidean();
  CanyonRequest request;
  request.k = 5;
  request.resolution = 128;
  const CanyonSetup setup = build_canyon(eu, request);
  const ToralGeodesicGraph& g = setup.pinned.graph;
  const double ell_k = setup.pinned.ell_k;
  const double bound = 1.25 * ell_k;

  const Spectrum s = spectrum(setup.canyon.graph, bound);
  std::size_t found = 0;
  for (const SpectrumEntry& e : s.entries) {
    if (e.cls.is_trivial()) continue;
    if (is_pinned(g, e.cls)) {
      ++found;
      o.require(same(e.length, eu(e.cls)), "canyon corridor class length");
    } else {
      o.require(e.length >= 0.95 * ell_k, "canyon class below 0.95 ell_k");
    }
  }
  o.require(found == g.classes().size(), "canyon spectrum misses a pinned class");

  const auto graph_level = graph_spectrum(g, bound);
  std::size_t found_g = 0;
  for (const ClassLength& e : graph_level) {
    if (e.cls.is_trivial()) continue;
    if (is_pinned(g, e.cls)) {
      ++found_g;
      o.require(same(e.length, eu(e.cls)), "graph corridor class length");
    } else {
      o.require(e.length >= ell_k - setup.epsilon.epsilon / 2, "graph class below ell_k - epsilon/2");
    }
  }
  o.require(found_g == g.classes().size(), "graph spectrum misses a pinned class");
  o.detail << "ell_k=" << ell_k << " epsilon=" << setup.epsilon.epsilon << " theta=" << setup.epsilon.theta
           << " canyon_classes=" << s.entries.size();
}

void convergence_criterion(Outcome& o) {
  const ConvergenceResult r = convergence_experiment(NormSpec::hexagonal(), 2, 6, 64, 64, 2);
  o.require(r.nonincreasing, "sup deviation increases");
  o.require(r.levels.back().sup_deviation < 0.05, "deviation at k=6 not below 0.05");
  o.require(r.lipschitz_ok, "Lipschitz bound violated");
  for (const auto& l : r.levels) o.detail << "dev(" << l.k << ")=" << l.sup_deviation << " ";
}

void sharpness_criterion(Outcome& o) {
  for (int m = 2; m <= 4; ++m) {
    const SharpnessReport r = verify_sharpness(m);
    const std::int64_t expected = m <= 3 ? 1 : f_of_m(4);
    o.require(r.pass, "verify_sharpness(" + std::to_string(m) + ") failed");
    o.require(r.group && static_cast<std::int64_t>(r.group->n) == expected, "n differs from f(m)");
    o.detail << "m=" << m << ":n=" << (r.group ? static_cast<long long>(r.group->n) : -1LL) << " ";
  }
}

void subadditivity_on(Outcome& o, const std::string& name, const PeriodicWeightedGraph& pg,
                      const std::vector<IntegralClass>& straight, const ToralGeodesicGraph* geodesics) {
  std::map<IntegralClass, double> memo;
  const auto f = [&](IntegralClass h) {
    if (h.is_trivial()) return 0.0;
    const auto it = memo.find(h.canonical());
    if (it != memo.end()) return it->second;
    const double v = marked_min_length(pg, h.canonical()).length;
    memo.emplace(h.canonical(), v);
    return v;
  };
  std::vector<IntegralClass> small;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) small.push_back({a, b});
  }
  std::size_t pairs = 0;
  for (const auto h1 : small) {
    for (const auto h2 : small) {
      ++pairs;
      o.require(f(h1 + h2) <= (f(h1) + f(h2)) * (1.0 + kExact), name + ": subadditivity");
    }
    if (!h1.is_trivial()) o.require(same(f(h1), marked_min_length(pg, -h1).length), name + ": symmetry");
  }
  for (const auto h : straight) {
    for (int n = 1; n <= 4; ++n) {
      o.require(same(f(n * h), n * f(h)), name + ": homogeneity");
      if (geodesics) {
        o.require(same(minimal_cycle(*geodesics, n * h)->length, n * minimal_cycle(*geodesics, h)->length),
                  name + ": graph-level homogeneity");
      }
    }
  }
  o.detail << name << " pairs=" << pairs << " ";
}

void subadditivity_criterion(Outcome& o) {
  subadditivity_on(o, "grid", uniform_grid(32, 1.0 / 32), {{1, 0}, {0, 1}}, nullptr);
  for (const auto& [name, norm, k] : {std::tuple{"euclidean", NormSpec::euclidean(), std::size_t{4}},
                                      std::tuple{"hexagonal", NormSpec::hexagonal(), std::size_t{3}}}) {
    CanyonRequest request;
    request.k = k;
    request.primitive_count = std::string(name) == "hexagonal";
    request.resolution = 64;
    const CanyonSetup setup = build_canyon(norm, request);
    std::vector<IntegralClass> pinned;
    for (const auto& c : setup.pinned.graph.classes()) pinned.push_back(c.h);
    subadditivity_on(o, name, setup.canyon.graph, pinned, &setup.pinned.graph);
  }
}

void rabinowitz_criterion(Outcome& o) {
  o.require(area_table.size() == 6, "A(k) table missing");
  for (const MinAreaResult& r : area_table) {
    o.require(rabinowitz_lower_bound_holds(r.area, r.k), "bound fails at k=" + std::to_string(r.k));
    o.detail << r.k << ":" << r.area.to_double() / (r.k * r.k * r.k) << " ";
  }
}

}  // namespace

int main() {
  criterion(1, "Pick identity on random lattice polygons", 5, pick_identity);
  criterion(2, "minimal-area table against the unpruned oracle", 60, area_criterion);
  criterion(3, "symmetric minima and f(m)", 120, symmetric_criterion);
  criterion(4, "strict-inequality gap on random norms", 120, epsilon_criterion);
  criterion(5, "canyon and graph-level minimum length spectrum", 120, canyon_criterion);
  criterion(6, "stable-norm convergence of canyon graphs", 300, convergence_criterion);
  criterion(7, "sharpness of n >= f(m)", 120, sharpness_criterion);
  criterion(8, "subadditivity and homogeneity on periodic graphs", 60, subadditivity_criterion);
  criterion(9, "Rabinowitz lower bound", 1, rabinowitz_criterion);
  return failures == 0 ? 0 : 1;
}
