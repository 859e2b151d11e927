#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "eqcenter/instance.hpp"
#include "eqcenter/metric.hpp"

namespace eqcenter {

/// Output of the thresholding filter: r_f is a lower bound on the optimal
/// unfair k-center value, and the greedy run at r_f achieved radius at most
/// 2 * r_f with at most k centers.
struct FilterResult {
  double r_f = 0.0;
  std::vector<PointId> centers_at_rf;
  double radius_bound = 0.0;  // 2 * r_f
};

namespace detail {

inline std::vector<PointId> nearest_center_assignment(const DistanceMatrix& d,
                                                      const std::vector<PointId>& centers) {
  std::vector<PointId> phi(d.size());
  for (PointId j = 0; j < d.size(); ++j) {
    PointId best = centers.front();
    for (PointId c : centers)
      if (d(j, c) < d(j, best)) best = c;
    phi[j] = best;
  }
  return phi;
}

}  // namespace detail

/// Farthest-first traversal. The first center is index 0; each next center is
/// the point maximizing the distance to the current center set, lowest index
/// on ties. Classic 2-approximation for unfair k-center.
inline Solution gonzalez(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  if (n == 0 || k == 0) throw std::invalid_argument("gonzalez requires n >= 1 and k >= 1");
  std::vector<PointId> centers = {0};
  std::vector<double> dist_to_set(n);
  for (PointId j = 0; j < n; ++j) dist_to_set[j] = d(j, 0);
  while (centers.size() < std::min(k, n)) {
    PointId next = 0;
    for (PointId j = 1; j < n; ++j)
      if (dist_to_set[j] > dist_to_set[next]) next = j;
    centers.push_back(next);
    for (PointId j = 0; j < n; ++j) dist_to_set[j] = std::min(dist_to_set[j], d(j, next));
  }
  return make_solution(d, centers, detail::nearest_center_assignment(d, centers));
}

/// One pass of the bottleneck greedy at radius r: repeatedly open the
/// lowest-index uncovered point and cover everything within 2r of it.
inline std::vector<PointId> threshold_greedy_centers(const DistanceMatrix& d, double r) {
  const std::size_t n = d.size();
  std::vector<bool> covered(n, false);
  std::vector<PointId> centers;
  for (PointId j = 0; j < n; ++j) {
    if (covered[j]) continue;
    centers.push_back(j);
    for (PointId m = j; m < n; ++m)
      if (!covered[m] && d(j, m) <= 2.0 * r) covered[m] = true;
  }
  return centers;
}

/// Bottleneck thresholding: bisect the ascending unique pairwise distances
/// (with 0 prepended) for a boundary radius R_f whose greedy opens at most k
/// centers while the candidate just below it needs more. R_f <= R*_unf holds
/// because any radius needing more than k greedy centers is below R*_unf (at
/// r >= R*_unf each greedy center's 2r-ball swallows its optimal cluster),
/// and R*_unf is itself one of the candidates. The greedy centers at R_f
/// with nearest-center assignment form the returned solution.
inline std::pair<Solution, FilterResult> hochbaum_shmoys(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  if (n == 0 || k == 0) throw std::invalid_argument("hochbaum_shmoys requires n >= 1 and k >= 1");

  std::vector<double> candidates = pairwise_distance_candidates(d, 0.0);
  if (candidates.empty() || candidates.front() != 0.0)
    candidates.insert(candidates.begin(), 0.0);

  // The greedy count is not globally monotone in r, but the top candidate
  // always passes, so bisection lands on a valid boundary.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (threshold_greedy_centers(d, candidates[mid]).size() <= k)
      hi = mid;
    else
      lo = mid + 1;
  }
  const double r_f = candidates[lo];
  auto centers = threshold_greedy_centers(d, r_f);

  FilterResult filter{r_f, centers, 2.0 * r_f};
  return {make_solution(d, centers, detail::nearest_center_assignment(d, centers)),
          std::move(filter)};
}

}  // namespace eqcenter
