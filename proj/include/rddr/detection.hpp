#pragma once

#include "rddr/matrix.hpp"
#include "rddr/synthetic.hpp"

#include <span>
#include <variant>
#include <vector>

namespace rddr {

struct AbsoluteThreshold {
  double tau;
};
struct RelativeMedian {
  double fraction;
};
/// Flags every score below the widest gap in the sorted scores.
struct LargestGap {};

using FlagStrategy = std::variant<AbsoluteThreshold, RelativeMedian, LargestGap>;

struct DetectionResult {
  std::vector<double> scores;
  /// Ascending; exactly { i : scores[i] < threshold_used }.
  std::vector<std::size_t> flagged;
  double threshold_used = 0.0;
};

struct DetectionMetrics {
  double precision;
  double recall;
};

/// Euclidean norm of every column of Z.
std::vector<double> score_columns(const DenseMatrix& z);

/// Throws Error(EmptyInput) on no scores and Error(InvalidArgument) when the
/// strategy's parameter is out of range (or fewer than two scores for
/// LargestGap).
DetectionResult flag_corrupted(std::span<const double> scores,
                               const FlagStrategy& strategy);

/// Precision is 1 when nothing is flagged; recall is 1 when the truth set is
/// empty.
DetectionMetrics detection_metrics(const DetectionResult& result,
                                   const CorruptionGroundTruth& truth);

}  // namespace rddr
