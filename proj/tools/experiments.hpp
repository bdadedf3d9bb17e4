#pragma once

// End-to-end pipelines shared by the command line and the acceptance suite.

#include <cstddef>
#include <optional>
#include <vector>

#include "snl/norms.hpp"
#include "snl/periodic_metric.hpp"
#include "snl/toral_graph.hpp"

namespace snl {

struct CanyonSetup {
  PinnedGraph pinned;
  EpsilonResult epsilon;
  CanyonGraph canyon;
};

struct CanyonRequest {
  std::size_t k = 3;
  /// k counts nontrivial primitive classes instead of enumeration entries.
  bool primitive_count = false;
  std::size_t resolution = 64;
  std::optional<double> background;  // defaults to ell_k
  EpsilonOptions epsilon;
};

/// Pins the first classes of the norm, computes zeta, epsilon and Theta, and
/// builds the canyon graph around the resulting geodesic graph.
CanyonSetup build_canyon(const NormSpec& norm, const CanyonRequest& request);

struct ConvergenceLevel {
  std::size_t k = 0;
  std::vector<IntegralClass> pinned;
  double sup_deviation = 0.0;  // over the direction sample, estimate gauge vs norm
  double pinned_deviation = 0.0;  // max relative error at the pinned classes
};

struct ConvergenceResult {
  std::vector<ConvergenceLevel> levels;
  bool nonincreasing = true;
  double lipschitz_constant = 0.0;
  bool lipschitz_ok = true;
  std::optional<std::size_t> lipschitz_from_k;  // first level checked
  std::optional<LipschitzWitness> lipschitz_witness;
};

/// Stable-norm estimates of canyon graphs pinning k = k_min..k_max primitive
/// classes of `norm`, compared with `norm` on `directions` unit vectors.
ConvergenceResult convergence_experiment(const NormSpec& norm, std::size_t k_min, std::size_t k_max,
                                         std::size_t resolution, std::size_t directions, std::size_t n_max);

}  // namespace snl
