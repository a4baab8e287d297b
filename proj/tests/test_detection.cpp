#include "rddr/detection.hpp"
#include "rddr/error.hpp"
#include "rddr/norms.hpp"
#include "rddr/random.hpp"
#include "rddr/solvers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace rddr {
namespace {

TEST(ScoreColumns, ColumnNorms) {
  const auto z = DenseMatrix::from_rows({{3.0, 0.0, 1.0}, {4.0, 0.0, 0.0}});
  const auto s = score_columns(z);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0], 5.0);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
  EXPECT_DOUBLE_EQ(s[2], 1.0);
}

TEST(FlagCorrupted, AbsoluteThreshold) {
  const std::vector<double> s{5.0, 0.0, 1.0, 0.5};
  const auto r = flag_corrupted(s, AbsoluteThreshold{0.75});
  EXPECT_EQ(r.flagged, (std::vector<std::size_t>{1, 3}));
  EXPECT_DOUBLE_EQ(r.threshold_used, 0.75);
  EXPECT_EQ(r.scores, s);
  EXPECT_TRUE(flag_corrupted(s, AbsoluteThreshold{0.0}).flagged.empty());
}

TEST(FlagCorrupted, RelativeMedian) {
  const std::vector<double> odd{4.0, 1.0, 0.1, 3.0, 2.0};
  const auto r = flag_corrupted(odd, RelativeMedian{0.1});
  EXPECT_DOUBLE_EQ(r.threshold_used, 0.2);
  EXPECT_EQ(r.flagged, (std::vector<std::size_t>{2}));
  const std::vector<double> even{1.0, 3.0, 0.0, 5.0};
  EXPECT_DOUBLE_EQ(flag_corrupted(even, RelativeMedian{0.5}).threshold_used, 1.0);
}

TEST(FlagCorrupted, LargestGapMidpoint) {
  const std::vector<double> s{2.0, 0.01, 2.2, 1.9, 0.0};
  const auto r = flag_corrupted(s, LargestGap{});
  EXPECT_DOUBLE_EQ(r.threshold_used, 0.5 * (0.01 + 1.9));
  EXPECT_EQ(r.flagged, (std::vector<std::size_t>{1, 4}));
}

TEST(FlagCorrupted, LargestGapEvenlySpacedFlagsNothing) {
  const std::vector<double> s{1.0, 2.0, 3.0, 4.0};
  const auto r = flag_corrupted(s, LargestGap{});
  EXPECT_TRUE(r.flagged.empty());
}

TEST(FlagCorrupted, Errors) {
  const std::vector<double> none;
  EXPECT_THROW(flag_corrupted(none, LargestGap{}), Error);
  try {
    flag_corrupted(none, AbsoluteThreshold{1.0});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  const std::vector<double> one{1.0};
  EXPECT_THROW(flag_corrupted(one, LargestGap{}), Error);
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(flag_corrupted(two, AbsoluteThreshold{-1.0}), Error);
  EXPECT_THROW(flag_corrupted(two, RelativeMedian{0.0}), Error);
  EXPECT_THROW(flag_corrupted(two, RelativeMedian{1.0}), Error);
}

TEST(DetectionMetrics, Examples) {
  DetectionResult r;
  r.flagged = {1, 3, 4};
  CorruptionGroundTruth t;
  t.corrupted_indices = {3, 4, 7, 9};
  const auto m = detection_metrics(r, t);
  EXPECT_DOUBLE_EQ(m.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);

  DetectionResult empty;
  EXPECT_DOUBLE_EQ(detection_metrics(empty, t).precision, 1.0);
  EXPECT_DOUBLE_EQ(detection_metrics(empty, t).recall, 0.0);
  CorruptionGroundTruth clean;
  EXPECT_DOUBLE_EQ(detection_metrics(r, clean).recall, 1.0);
  EXPECT_DOUBLE_EQ(detection_metrics(r, clean).precision, 0.0);
}

Eigen::MatrixXd random_z(RandomStream& rng, int k, int n) {
  Eigen::MatrixXd z(k, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) z(r, c) = rng.normal();
  }
  return z;
}

TEST(DetectionProperties, ScoresSumToColumnL21) {
  RandomStream rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd z = random_z(rng, 4, 9);
    const auto s = score_columns(DenseMatrix(z));
    EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), l21_norm(z), 1e-12);
  }
}

TEST(DetectionProperties, PermutationEquivariance) {
  RandomStream rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 9;
    const Eigen::MatrixXd z = random_z(rng, 3, n);
    const auto perm = rng.sample_without_replacement(n, n);
    Eigen::MatrixXd zp(3, n);
    for (int c = 0; c < n; ++c) zp.col(c) = z.col(static_cast<Eigen::Index>(perm[c]));
    const auto a = flag_corrupted(score_columns(DenseMatrix(z)), LargestGap{});
    const auto b = flag_corrupted(score_columns(DenseMatrix(zp)), LargestGap{});
    EXPECT_DOUBLE_EQ(a.threshold_used, b.threshold_used);
    std::vector<std::size_t> mapped;
    for (auto i : b.flagged) mapped.push_back(perm[i]);
    std::sort(mapped.begin(), mapped.end());
    EXPECT_EQ(mapped, a.flagged);
  }
}

TEST(DetectionProperties, ScaleInvariance) {
  RandomStream rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd z = random_z(rng, 3, 8);
    const double c = 0.25 + 4.0 * rng.uniform();
    for (const FlagStrategy& strat : {FlagStrategy{LargestGap{}}, FlagStrategy{RelativeMedian{0.3}}}) {
      const auto a = flag_corrupted(score_columns(DenseMatrix(z)), strat);
      const auto b = flag_corrupted(score_columns(DenseMatrix(Eigen::MatrixXd(c * z))), strat);
      EXPECT_EQ(a.flagged, b.flagged);
    }
  }
}

TEST(DetectionEndToEnd, LadmapRecoversCorruptedColumns) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GenSpec g;
    g.m = 40;
    g.k = 20;
    g.n = 100;
    g.seed = seed;
    const auto inst = generate_instance(g);
    const auto r = solve_ladmap(inst.spec);
    const auto det = flag_corrupted(score_columns(r.Z), LargestGap{});
    const auto m = detection_metrics(det, inst.truth);
    EXPECT_GE(m.precision, 0.9) << "seed " << seed;
    EXPECT_GE(m.recall, 0.9) << "seed " << seed;
  }
}

}  // namespace
}  // namespace rddr
