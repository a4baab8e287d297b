#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rddr {

/// Seeded random stream with a fully specified algorithm so that generated
/// instances are reproducible across compilers and standard libraries.
///
/// - engine: std::mt19937_64 (bit-exact by the C++ standard)
/// - uniform: top 53 bits of one engine output, scaled to [0, 1)
/// - normal: Marsaglia polar method, caching the second variate
/// - index draws: modulo with rejection of the top partial block
///
/// std::normal_distribution and std::shuffle are deliberately not used; their
/// algorithms are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// `count` distinct indices from [0, n), in draw order (partial
  /// Fisher-Yates over the identity permutation).
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t count);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rddr
