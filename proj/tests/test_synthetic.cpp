#include "rddr/error.hpp"
#include "rddr/norms.hpp"
#include "rddr/random.hpp"
#include "rddr/solvers.hpp"
#include "rddr/synthetic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace rddr {
namespace {

GenSpec small_gen(std::uint64_t seed) {
  GenSpec g;
  g.m = 20;
  g.k = 10;
  g.n = 30;
  g.corruption_fraction = 0.1;
  g.seed = seed;
  return g;
}

bool is_corrupted(const CorruptionGroundTruth& t, Eigen::Index i) {
  return std::binary_search(t.corrupted_indices.begin(), t.corrupted_indices.end(),
                            static_cast<std::size_t>(i));
}

TEST(RandomStream, UniformRangeAndDeterminism) {
  RandomStream a(9), b(9), c(10);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
    differs |= u != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomStream, NormalMoments) {
  RandomStream rng(11);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    s += v;
    s2 += v * v;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(RandomStream, SampleWithoutReplacementIsDistinctAndInRange) {
  RandomStream rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const std::size_t count = rng.below(n + 1);
    const auto s = rng.sample_without_replacement(n, count);
    ASSERT_EQ(s.size(), count);
    const std::set<std::size_t> uniq(s.begin(), s.end());
    EXPECT_EQ(uniq.size(), count);
    for (auto v : s) EXPECT_LT(v, n);
  }
  EXPECT_THROW(rng.sample_without_replacement(3, 4), Error);
}

TEST(RandomStream, BelowIsRoughlyUniform) {
  RandomStream rng(13);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 400);
}

TEST(GenerateDictionary, UnitNormColumns) {
  const auto d = generate_dictionary(small_gen(1));
  ASSERT_EQ(d.rows(), 20);
  ASSERT_EQ(d.cols(), 10);
  const Eigen::VectorXd norms = column_norms(d.eigen());
  for (Eigen::Index i = 0; i < norms.size(); ++i) EXPECT_NEAR(norms(i), 1.0, 1e-12);
}

TEST(GenerateInstance, DeterministicForSeed) {
  const auto a = generate_instance(small_gen(5));
  const auto b = generate_instance(small_gen(5));
  EXPECT_EQ(a.spec.X(), b.spec.X());
  EXPECT_EQ(a.spec.D(), b.spec.D());
  EXPECT_EQ(a.z_true, b.z_true);
  EXPECT_EQ(a.truth.corrupted_indices, b.truth.corrupted_indices);
}

TEST(GenerateInstance, DifferentSeedsDiffer) {
  const auto a = generate_instance(small_gen(5));
  const auto b = generate_instance(small_gen(6));
  EXPECT_FALSE(a.spec.X() == b.spec.X());
}

TEST(GenerateInstance, GroundTruthShape) {
  const auto inst = generate_instance(small_gen(7));
  const auto& idx = inst.truth.corrupted_indices;
  EXPECT_EQ(idx.size(), 3u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(std::adjacent_find(idx.begin(), idx.end()), idx.end());
  for (auto i : idx) EXPECT_LT(i, 30u);
  EXPECT_EQ(inst.truth.seed, 7u);
  EXPECT_DOUBLE_EQ(inst.truth.corruption_magnitude, 10.0);
  EXPECT_EQ(inst.spec.variant(), Variant::Plain);
  for (auto i : idx) EXPECT_EQ(inst.z_true.eigen().col(static_cast<Eigen::Index>(i)).norm(), 0.0);
}

TEST(GenerateInstance, ZeroFractionHasNoCorruption) {
  auto g = small_gen(8);
  g.corruption_fraction = 0.0;
  const auto inst = generate_instance(g);
  EXPECT_TRUE(inst.truth.corrupted_indices.empty());
}

TEST(GenerateInstance, NoiselessCleanColumnsAreRepresentable) {
  auto g = small_gen(9);
  g.noise_sigma = 0.0;
  const auto inst = generate_instance(g);
  const auto& x = inst.spec.X().eigen();
  const auto& d = inst.spec.D().eigen();
  for (Eigen::Index i = 0; i < g.n; ++i) {
    if (is_corrupted(inst.truth, i)) continue;
    EXPECT_LT((x.col(i) - d * inst.z_true.eigen().col(i)).norm(), 1e-12);
  }
}

TEST(GenerateInstance, NoiselessCleanDataIsFitByIrls) {
  auto g = small_gen(10);
  g.corruption_fraction = 0.0;
  g.noise_sigma = 0.0;
  const auto inst = generate_instance(g, 1e6);
  const auto r = solve_irls(inst.spec);
  const auto& x = inst.spec.X().eigen();
  const double rel = (x - inst.spec.D().eigen() * r.Z.eigen()).norm() / x.norm();
  EXPECT_LT(rel, 1e-3);
}

TEST(GenerateInstance, CorruptionIsOrthogonalToDictionary) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = generate_instance(small_gen(seed));
    ASSERT_TRUE(inst.truth.orthogonal);
    const auto& x = inst.spec.X().eigen();
    const auto& d = inst.spec.D().eigen();
    for (auto i : inst.truth.corrupted_indices) {
      const Eigen::VectorXd xi = x.col(static_cast<Eigen::Index>(i));
      EXPECT_LT((d.transpose() * xi).norm(), 1e-10 * xi.norm());
    }
  }
}

TEST(GenerateInstance, CorruptionMagnitudeRelativeToCleanMean) {
  const auto g = small_gen(11);
  const auto inst = generate_instance(g);
  const auto& x = inst.spec.X().eigen();
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < g.n; ++i) {
    if (is_corrupted(inst.truth, i)) continue;
    sum += x.col(i).norm();
    ++count;
  }
  const double target = g.corruption_magnitude * sum / count;
  for (auto i : inst.truth.corrupted_indices) {
    EXPECT_NEAR(x.col(static_cast<Eigen::Index>(i)).norm(), target, 1e-9 * target);
  }
}

TEST(GenerateInstance, FullRankDictionaryFallsBackOrThrows) {
  GenSpec g;
  g.m = 10;
  g.k = 20;
  g.n = 20;
  g.seed = 3;
  const auto inst = generate_instance(g);
  EXPECT_FALSE(inst.truth.orthogonal);
  EXPECT_EQ(inst.truth.corrupted_indices.size(), 2u);
  g.require_orthogonal = true;
  try {
    generate_instance(g);
    FAIL() << "expected InfeasibleOrthogonal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleOrthogonal);
  }
}

TEST(GenSpec, Validation) {
  auto g = small_gen(1);
  g.corruption_fraction = 1.0;
  EXPECT_THROW(g.validate(), Error);
  g = small_gen(1);
  g.m = 0;
  EXPECT_THROW(g.validate(), Error);
  g = small_gen(1);
  g.noise_sigma = -1.0;
  EXPECT_THROW(g.validate(), Error);
  g = small_gen(1);
  g.clean_coeff_sparsity = 0.0;
  EXPECT_THROW(g.validate(), Error);
  g = small_gen(1);
  g.corruption_magnitude = 0.0;
  EXPECT_THROW(g.validate(), Error);
  g = small_gen(1);
  g.n = 2;
  g.corruption_fraction = 0.99;
  EXPECT_NO_THROW(g.validate());  // floor(1.98) = 1 corrupted, 1 clean
}

TEST(GenSpec, SupportSizeFollowsDensity) {
  auto g = small_gen(12);
  g.corruption_fraction = 0.0;
  g.clean_coeff_sparsity = 0.2;
  const auto inst = generate_instance(g);
  for (Eigen::Index i = 0; i < g.n; ++i) {
    EXPECT_EQ((inst.z_true.eigen().col(i).array() != 0.0).count(), 2);
  }
}

}  // namespace
}  // namespace rddr
