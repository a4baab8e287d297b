#include "rddr/detection.hpp"

#include "rddr/error.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>

namespace rddr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double largest_gap_threshold(std::span<const double> scores) {
  if (scores.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "largest-gap detection needs two scores");
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t best = 0;
  double best_gap = -1.0;
  double smallest_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double gap = sorted[i + 1] - sorted[i];
    smallest_gap = std::min(smallest_gap, gap);
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  // Evenly spaced scores carry no split.
  if (best_gap - smallest_gap <= 1e-12) return 0.0;
  return 0.5 * (sorted[best] + sorted[best + 1]);
}

}  // namespace

std::vector<double> score_columns(const DenseMatrix& z) {
  const auto& zm = z.eigen();
  std::vector<double> scores(static_cast<std::size_t>(zm.cols()));
  for (Eigen::Index c = 0; c < zm.cols(); ++c) {
    scores[static_cast<std::size_t>(c)] = zm.col(c).norm();
  }
  return scores;
}

DetectionResult flag_corrupted(std::span<const double> scores,
                               const FlagStrategy& strategy) {
  if (scores.empty()) throw Error(ErrorCode::EmptyInput, "no scores to flag");
  const double threshold = std::visit(
      overloaded{
          [](const AbsoluteThreshold& s) {
            if (!(s.tau >= 0.0)) {
              throw Error(ErrorCode::InvalidArgument, "threshold must be nonnegative");
            }
            return s.tau;
          },
          [&](const RelativeMedian& s) {
            if (!(s.fraction > 0.0 && s.fraction < 1.0)) {
              throw Error(ErrorCode::InvalidArgument,
                          "median fraction must lie in (0, 1)");
            }
            return s.fraction * median({scores.begin(), scores.end()});
          },
          [&](const LargestGap&) { return largest_gap_threshold(scores); },
      },
      strategy);

  DetectionResult result;
  result.scores.assign(scores.begin(), scores.end());
  result.threshold_used = threshold;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] < threshold) result.flagged.push_back(i);
  }
  return result;
}

DetectionMetrics detection_metrics(const DetectionResult& result,
                                   const CorruptionGroundTruth& truth) {
  std::vector<std::size_t> flagged = result.flagged;
  std::vector<std::size_t> actual = truth.corrupted_indices;
  std::sort(flagged.begin(), flagged.end());
  std::sort(actual.begin(), actual.end());
  std::vector<std::size_t> hits;
  std::set_intersection(flagged.begin(), flagged.end(), actual.begin(), actual.end(),
                        std::back_inserter(hits));
  const auto tp = static_cast<double>(hits.size());
  const double precision =
      flagged.empty() ? 1.0 : tp / static_cast<double>(flagged.size());
  const double recall = actual.empty() ? 1.0 : tp / static_cast<double>(actual.size());
  return {precision, recall};
}

}  // namespace rddr
