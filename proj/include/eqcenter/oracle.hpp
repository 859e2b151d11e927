#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqcenter/assignment.hpp"
#include "eqcenter/instance.hpp"
#include "eqcenter/metric.hpp"

namespace eqcenter {

/// Enumeration limits for the ground-truth oracles. Defaults keep the work
/// within a few hundred million elementary operations.
struct OracleBudget {
  std::size_t max_points = 10;
  std::size_t max_k = 3;
  std::size_t max_assignment_points = 8;
};

namespace detail {

inline void require_budget(std::size_t n, std::size_t k, const OracleBudget& budget) {
  if (n > budget.max_points) throw std::invalid_argument("oracle budget exceeded: too many points");
  if (k > budget.max_k) throw std::invalid_argument("oracle budget exceeded: k too large");
}

/// Calls fn(subset) for every nonempty subset of 0..n-1 with size <= max_size.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t max_size, Fn&& fn) {
  std::vector<PointId> subset;
  auto rec = [&](auto&& self, PointId next) -> void {
    if (!subset.empty()) fn(subset);
    if (subset.size() == max_size) return;
    for (PointId c = next; c < n; ++c) {
      subset.push_back(c);
      self(self, c + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Exact optimal value of the unconstrained k-center instance, by exhausting
/// center subsets. More centers never hurt, so subsets of size min(k, n)
/// suffice, but all sizes <= k are scanned for faithfulness.
inline double brute_unfair_optimum(const DistanceMatrix& d, std::size_t k,
                                   const OracleBudget& budget = {}) {
  const std::size_t n = d.size();
  if (n == 0 || k == 0) throw std::invalid_argument("need n >= 1 and k >= 1");
  detail::require_budget(n, k, budget);

  double best = std::numeric_limits<double>::infinity();
  detail::for_each_subset(n, std::min(k, n), [&](const std::vector<PointId>& centers) {
    double radius = 0.0;
    for (PointId j = 0; j < n; ++j) {
      double nearest = std::numeric_limits<double>::infinity();
      for (PointId c : centers) nearest = std::min(nearest, d(j, c));
      radius = std::max(radius, nearest);
      if (radius >= best) return;
    }
    best = std::min(best, radius);
  });
  return best;
}

/// Exhaustively decides whether some assignment to the given centers has
/// value <= guess and passes the fairness check.
inline bool exhaustive_assignment_check(const Instance& inst, const std::vector<PointId>& centers,
                                        double guess, const OracleBudget& budget = {}) {
  const std::size_t n = inst.size();
  if (centers.empty()) throw std::invalid_argument("centers must be nonempty");
  if (n > budget.max_assignment_points)
    throw std::invalid_argument("oracle budget exceeded: too many points for enumeration");

  std::vector<PointId> sorted_centers = centers;
  std::sort(sorted_centers.begin(), sorted_centers.end());
  sorted_centers.erase(std::unique(sorted_centers.begin(), sorted_centers.end()),
                       sorted_centers.end());

  // Per point, only centers within the guess are admissible.
  std::vector<std::vector<PointId>> options(n);
  for (PointId j = 0; j < n; ++j) {
    for (PointId c : sorted_centers)
      if (inst.d(j, c) <= guess) options[j].push_back(c);
    if (options[j].empty()) return false;
  }

  std::vector<std::size_t> pick(n, 0);
  std::vector<PointId> phi(n);
  while (true) {
    for (PointId j = 0; j < n; ++j) phi[j] = options[j][pick[j]];
    const Solution sol = make_solution(inst.d, sorted_centers, phi);
    if (check_fairness(inst, sol).all_satisfied()) return true;

    std::size_t pos = 0;
    while (pos < n && ++pick[pos] == options[pos].size()) pick[pos++] = 0;
    if (pos == n) return false;
  }
}

namespace detail {

/// Minimum feasible value over all assignments to fixed centers, by full
/// enumeration (independent of the iterative repair path).
inline std::optional<double> exhaustive_value_for_centers(const Instance& inst,
                                                          const std::vector<PointId>& centers,
                                                          double below = std::numeric_limits<double>::infinity()) {
  auto guesses = pairwise_distance_candidates(inst.d, 0.0);
  if (guesses.empty() || guesses.front() != 0.0) guesses.insert(guesses.begin(), 0.0);
  OracleBudget unlimited;
  unlimited.max_assignment_points = inst.size();
  for (double guess : guesses) {
    if (guess >= below) break;
    if (exhaustive_assignment_check(inst, centers, guess, unlimited)) return guess;
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact optimal value of the fair problem (either variant), by exhausting
/// center subsets of size <= k. Per subset, the optimal assignment value
/// comes from full enumeration when n <= max_assignment_points and from the
/// iterative repair otherwise. Empty result means no feasible solution
/// exists at all.
inline std::optional<double> brute_fair_optimum(const Instance& inst,
                                                const OracleBudget& budget = {}) {
  const std::size_t n = inst.size();
  detail::require_budget(n, inst.k, budget);

  const bool enumerate = n <= budget.max_assignment_points;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  auto candidates = pairwise_distance_candidates(inst.d, 0.0);
  if (candidates.empty() || candidates.front() != 0.0) candidates.insert(candidates.begin(), 0.0);

  detail::for_each_subset(n, std::min(inst.k, n), [&](const std::vector<PointId>& centers) {
    if (enumerate) {
      auto value = detail::exhaustive_value_for_centers(inst, centers, best);
      if (value) {
        best = std::min(best, *value);
        found = true;
      }
      return;
    }
    for (double guess : candidates) {
      if (guess >= best) break;
      auto outcome = optimal_assignment(inst, centers, guess);
      if (outcome.feasible()) {
        best = std::min(best, guess);
        found = true;
        break;
      }
    }
  });
  if (!found) return std::nullopt;
  return best;
}

}  // namespace eqcenter
