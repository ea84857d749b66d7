#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trollscope {

/// Two-cluster split of scalar values. Both clusters are non-empty and
/// `center_high >= center_low`; ids keep the input order.
struct Partition2 {
  std::vector<std::string> high;
  std::vector<std::string> low;
  double center_high = 0.0;
  double center_low = 0.0;
  std::size_t iterations = 0;
};

/// Values closer than this are treated as identical.
inline constexpr double kDegenerateSpread = 1e-12;
inline constexpr std::size_t kMaxLloydIterations = 100;

/// 1-D k-means with K = 2.
///
/// Centers are seeded from the split of the sorted values with minimal
/// within-cluster sum of squares, then refined with Lloyd's iteration until
/// the assignment is stable. A value equidistant from both centers joins the
/// low cluster.
///
/// Throws kDegenerate for fewer than two items or all values equal, and
/// kNotConverged if Lloyd's iteration has not settled after
/// kMaxLloydIterations passes.
Partition2 kmeans2(std::span<const std::pair<std::string, double>> values);

}  // namespace trollscope
