#include "rddr/synthetic.hpp"

#include "rddr/error.hpp"
#include "rddr/random.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rddr {

namespace {

Eigen::MatrixXd draw_dictionary(const GenSpec& gen, RandomStream& rng) {
  Eigen::MatrixXd d(gen.m, gen.k);
  for (Eigen::Index c = 0; c < gen.k; ++c) {
    for (Eigen::Index r = 0; r < gen.m; ++r) d(r, c) = rng.normal();
    const double norm = d.col(c).norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::InvalidArgument, "degenerate dictionary column");
    }
    d.col(c) /= norm;
  }
  return d;
}

std::size_t support_size(const GenSpec& gen) {
  const double raw = gen.clean_coeff_sparsity * static_cast<double>(gen.k);
  // Guard against 0.2 * 20 landing a hair above 4.
  const auto s = static_cast<Eigen::Index>(std::ceil(raw - 1e-9));
  return static_cast<std::size_t>(std::clamp<Eigen::Index>(s, 1, gen.k));
}

}  // namespace

void GenSpec::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (m < 1 || k < 1 || n < 1) fail("m, k and n must be at least 1");
  if (!(corruption_fraction >= 0.0 && corruption_fraction < 1.0)) {
    fail("corruption_fraction must lie in [0, 1)");
  }
  if (corrupted_count() >= static_cast<std::size_t>(n)) {
    fail("at least one clean sample is required");
  }
  if (!(corruption_magnitude > 0.0) || !std::isfinite(corruption_magnitude)) {
    fail("corruption_magnitude must be positive");
  }
  if (!(clean_coeff_sparsity > 0.0 && clean_coeff_sparsity <= 1.0)) {
    fail("clean_coeff_sparsity must lie in (0, 1]");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    fail("noise_sigma must be nonnegative");
  }
}

std::size_t GenSpec::corrupted_count() const {
  return static_cast<std::size_t>(
      std::floor(corruption_fraction * static_cast<double>(n)));
}

DenseMatrix generate_dictionary(const GenSpec& gen) {
  gen.validate();
  RandomStream rng(gen.seed);
  return DenseMatrix(draw_dictionary(gen, rng));
}

GeneratedInstance generate_instance(const GenSpec& gen, double lambda) {
  gen.validate();
  RandomStream rng(gen.seed);
  // Draw order is part of the reproducibility contract: dictionary,
  // corrupted indices, per-column clean coefficients and noise, then the
  // raw corruption vectors.
  const Eigen::MatrixXd d = draw_dictionary(gen, rng);

  std::vector<std::size_t> corrupted =
      rng.sample_without_replacement(static_cast<std::size_t>(gen.n),
                                     gen.corrupted_count());
  std::sort(corrupted.begin(), corrupted.end());
  std::vector<bool> is_corrupted(static_cast<std::size_t>(gen.n), false);
  for (auto i : corrupted) is_corrupted[i] = true;

  const std::size_t support = support_size(gen);
  Eigen::MatrixXd z_true = Eigen::MatrixXd::Zero(gen.k, gen.n);
  Eigen::MatrixXd x(gen.m, gen.n);
  double clean_norm_sum = 0.0;
  std::size_t clean_count = 0;
  for (Eigen::Index i = 0; i < gen.n; ++i) {
    if (is_corrupted[static_cast<std::size_t>(i)]) continue;
    for (auto row : rng.sample_without_replacement(static_cast<std::size_t>(gen.k),
                                                   support)) {
      z_true(static_cast<Eigen::Index>(row), i) = rng.normal();
    }
    Eigen::VectorXd noise(gen.m);
    for (Eigen::Index r = 0; r < gen.m; ++r) noise(r) = rng.normal();
    x.col(i) = d * z_true.col(i) + gen.noise_sigma * noise;
    clean_norm_sum += x.col(i).norm();
    ++clean_count;
  }
  const double mean_clean_norm = clean_norm_sum / static_cast<double>(clean_count);

  CorruptionGroundTruth truth;
  truth.corrupted_indices = corrupted;
  truth.corruption_magnitude = gen.corruption_magnitude;
  truth.seed = gen.seed;

  if (!corrupted.empty()) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d);
    const Eigen::Index rank = qr.rank();
    const bool orthogonal = rank < gen.m;
    if (!orthogonal && gen.require_orthogonal) {
      throw Error(ErrorCode::InfeasibleOrthogonal,
                  "range(D) spans the ambient space; corruption cannot be "
                  "orthogonal to the dictionary");
    }
    truth.orthogonal = orthogonal;
    Eigen::MatrixXd q;
    if (orthogonal) {
      q = (qr.householderQ() * Eigen::MatrixXd::Identity(gen.m, gen.m))
              .leftCols(rank);
    }
    const double target = gen.corruption_magnitude * mean_clean_norm;
    for (auto idx : corrupted) {
      Eigen::VectorXd v(gen.m);
      for (Eigen::Index r = 0; r < gen.m; ++r) v(r) = rng.normal();
      if (orthogonal) {
        // Two projection passes push the residual in range(D) to rounding.
        v -= q * (q.transpose() * v);
        v -= q * (q.transpose() * v);
      }
      x.col(static_cast<Eigen::Index>(idx)) = v * (target / v.norm());
    }
  }

  return GeneratedInstance{
      ProblemSpec(DenseMatrix(std::move(x)), DenseMatrix(d), Variant::Plain, lambda),
      std::move(truth), DenseMatrix(std::move(z_true))};
}

}  // namespace rddr
