#include "trollscope/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trollscope/error.hpp"

namespace trollscope {

namespace {

// Index into the sorted order of the first high-cluster element for the
// split minimising the within-cluster sum of squares. With centered values
// x, WCSS(k) = sum x^2 - S_low^2 / k - S_high^2 / (n - k), so we maximise
// the last two terms. Splits between equal values are not admissible.
std::size_t best_split(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double total = 0.0;
  for (double v : sorted) total += v - mean;

  std::size_t best = 0;
  double best_score = -1.0;
  double low_sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    low_sum += sorted[k - 1] - mean;
    if (sorted[k] - sorted[k - 1] <= kDegenerateSpread) continue;
    const double high_sum = total - low_sum;
    const double score = low_sum * low_sum / k + high_sum * high_sum / (n - k);
    // Ties prefer the smaller high cluster.
    if (score >= best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

}  // namespace

Partition2 kmeans2(std::span<const std::pair<std::string, double>> values) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::kDegenerate, "k-means needs at least two items");
  for (const auto& [id, v] : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kDegenerate, "non-finite value for '" + id + "'");
  }
  const auto [min_it, max_it] = std::minmax_element(
      values.begin(), values.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  if (max_it->second - min_it->second <= kDegenerateSpread) {
    throw Error(ErrorCode::kDegenerate, "all values are equal; no two-cluster structure");
  }

  std::vector<double> sorted(n);
  std::transform(values.begin(), values.end(), sorted.begin(), [](const auto& p) { return p.second; });
  std::sort(sorted.begin(), sorted.end());
  const std::size_t split = best_split(sorted);
  auto mean_of = [](auto first, auto last) {
    return std::accumulate(first, last, 0.0) / static_cast<double>(last - first);
  };
  double center_low = mean_of(sorted.begin(), sorted.begin() + split);
  double center_high = mean_of(sorted.begin() + split, sorted.end());

  std::vector<char> is_high(n, 2);  // 2 = not yet assigned
  std::size_t iterations = 0;
  for (;;) {
    if (iterations == kMaxLloydIterations) {
      throw Error(ErrorCode::kNotConverged, "Lloyd iteration did not converge");
    }
    ++iterations;
    bool changed = false;
    double low_sum = 0.0, high_sum = 0.0;
    std::size_t low_n = 0, high_n = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = values[i].second;
      const char high = std::abs(v - center_high) < std::abs(v - center_low) ? 1 : 0;
      changed |= high != is_high[i];
      is_high[i] = high;
      if (high) {
        high_sum += v;
        ++high_n;
      } else {
        low_sum += v;
        ++low_n;
      }
    }
    if (low_n == 0 || high_n == 0) {
      throw Error(ErrorCode::kDegenerate, "a cluster became empty");
    }
    if (!changed) break;
    center_low = low_sum / low_n;
    center_high = high_sum / high_n;
  }

  Partition2 out;
  out.center_low = center_low;
  out.center_high = center_high;
  out.iterations = iterations;
  for (std::size_t i = 0; i < n; ++i) {
    (is_high[i] ? out.high : out.low).push_back(values[i].first);
  }
  return out;
}

}  // namespace trollscope
