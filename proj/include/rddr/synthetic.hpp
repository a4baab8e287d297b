#pragma once

#include "rddr/matrix.hpp"
#include "rddr/problem.hpp"

#include <cstdint>
#include <vector>

namespace rddr {

/// Parameters of a synthetic instance with sample-specific corruption.
struct GenSpec {
  Eigen::Index m = 40;
  Eigen::Index k = 20;
  Eigen::Index n = 100;
  double corruption_fraction = 0.1;
  double corruption_magnitude = 10.0;
  double clean_coeff_sparsity = 1.0;
  double noise_sigma = 0.01;
  std::uint64_t seed = 0;
  /// When set, an instance whose corruption cannot be made orthogonal to
  /// range(D) is rejected with Error(InfeasibleOrthogonal) instead of
  /// falling back to unprojected noise.
  bool require_orthogonal = false;

  void validate() const;
  std::size_t corrupted_count() const;
};

struct CorruptionGroundTruth {
  /// Sorted, distinct column indices of the corrupted samples.
  std::vector<std::size_t> corrupted_indices;
  double corruption_magnitude = 0.0;
  std::uint64_t seed = 0;
  /// False when the orthogonal-complement construction was infeasible and
  /// corrupted columns are plain rescaled noise.
  bool orthogonal = true;
};

struct GeneratedInstance {
  ProblemSpec spec;
  CorruptionGroundTruth truth;
  DenseMatrix z_true;
};

/// m x k Gaussian dictionary with unit-norm columns.
DenseMatrix generate_dictionary(const GenSpec& gen);

/// Plain-variant instance with lambda = 1; callers rebuild the ProblemSpec
/// for other variants or parameters.
GeneratedInstance generate_instance(const GenSpec& gen, double lambda = 1.0);

}  // namespace rddr
