#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "snl/errors.hpp"

namespace snl {

CanyonSetup build_canyon(const NormSpec& norm, const CanyonRequest& request) {
  PinnedGraph pinned =
      request.primitive_count ? graph_from_norm_primitive(norm, request.k) : graph_from_norm(norm, request.k);
  EpsilonResult eps = compute_zeta_epsilon_theta(pinned.graph, norm, pinned.ell_k, request.epsilon);
  CanyonOptions options;
  options.resolution = request.resolution;
  options.background = request.background.value_or(pinned.ell_k);
  options.ell_k = pinned.ell_k;
  CanyonGraph canyon = build_canyon_graph(pinned.graph, eps.theta, options);
  return {std::move(pinned), std::move(eps), std::move(canyon)};
}

ConvergenceResult convergence_experiment(const NormSpec& norm, std::size_t k_min, std::size_t k_max,
                                         std::size_t resolution, std::size_t directions, std::size_t n_max) {
  if (k_min < 2 || k_max < k_min) throw ValidationError("need 2 <= k_min <= k_max");
  if (directions < 4) throw ValidationError("need at least 4 directions");
  const std::vector<Vec2> grid = unit_circle_sample(directions);
  ConvergenceResult result;
  std::vector<NormFunction> gauges;
  // The shared Lipschitz constant applies once both basis vectors are pinned.
  std::optional<std::size_t> pinned_from;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    CanyonRequest request;
    request.k = k;
    request.primitive_count = true;
    request.resolution = resolution;
    const CanyonSetup setup = build_canyon(norm, request);

    ConvergenceLevel level;
    level.k = k;
    for (const auto& c : setup.pinned.graph.classes()) level.pinned.push_back(c.h);
    const auto has = [&](IntegralClass h) {
      return std::any_of(level.pinned.begin(), level.pinned.end(), [&](IntegralClass p) { return p == h || p == -h; });
    };
    if (!pinned_from && has(IntegralClass{1, 0}) && has(IntegralClass{0, 1})) pinned_from = result.levels.size();
    const StableNormField field = stable_norm_field(setup.canyon.graph, level.pinned, n_max);
    for (std::size_t i = 0; i < field.classes.size(); ++i) {
      const double target = norm(field.classes[i]);
      level.pinned_deviation = std::max(level.pinned_deviation, std::abs(field.estimates[i] - target) / target);
    }
    gauges.emplace_back([gauge = field.gauge](Vec2 v) { return gauge(v); });
    result.levels.push_back(std::move(level));
  }

  const NormFunction limit = [&norm](Vec2 v) { return norm(v); };
  const ConvergenceReport report = compact_convergence_check(gauges, limit, grid, pinned_from.value_or(gauges.size()));
  result.lipschitz_from_k = pinned_from ? std::optional<std::size_t>(result.levels[*pinned_from].k) : std::nullopt;
  for (std::size_t j = 0; j < result.levels.size(); ++j) {
    result.levels[j].sup_deviation = report.deviations[j];
    if (j > 0 && report.deviations[j] > report.deviations[j - 1] * (1.0 + 1e-12)) result.nonincreasing = false;
  }
  result.lipschitz_constant = report.lipschitz_constant;
  result.lipschitz_ok = report.lipschitz_ok;
  result.lipschitz_witness = report.witness;
  return result;
}

}  // namespace snl
