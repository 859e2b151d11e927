#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqcenter/instance.hpp"
#include "eqcenter/metric.hpp"

namespace eqcenter {

struct ReassignStep {
  PointId point;
  PointId from_center, to_center;
  double from_distance, to_distance;
};

struct AssignmentOutcome {
  std::optional<Solution> solution;
  std::size_t iterations = 0;        // corrective steps taken
  std::vector<ReassignStep> trace;   // one entry per corrective step

  bool feasible() const { return solution.has_value(); }
};

/// Iterative assignment repair for a fixed center set and a value guess.
/// Starts from the farthest-center-within-guess map and repeatedly fixes the
/// lexicographically first violated constraint by moving that point to the
/// farthest center that is strictly closer than its current one and within
/// the violated bound. Declares infeasibility when a point has no center
/// within the guess, when no such move exists, or when the |C|*|S| iteration
/// cap is exceeded; a feasible assignment of value <= guess is always found
/// within the cap when one exists.
inline AssignmentOutcome optimal_assignment(const Instance& inst,
                                            const std::vector<PointId>& centers, double guess) {
  const std::size_t n = inst.size();
  if (centers.empty()) throw std::invalid_argument("centers must be nonempty");
  for (PointId c : centers)
    if (c >= n) throw std::invalid_argument("center out of range");
  if (guess < 0.0) throw std::invalid_argument("guess must be nonnegative");

  std::vector<PointId> sorted_centers = centers;
  std::sort(sorted_centers.begin(), sorted_centers.end());
  sorted_centers.erase(std::unique(sorted_centers.begin(), sorted_centers.end()),
                       sorted_centers.end());

  AssignmentOutcome out;
  std::vector<PointId> phi(n, kNoPoint);
  for (PointId j = 0; j < n; ++j) {
    for (PointId c : sorted_centers) {
      if (inst.d(j, c) > guess) continue;
      if (phi[j] == kNoPoint || inst.d(j, c) > inst.d(j, phi[j])) phi[j] = c;
    }
    if (phi[j] == kNoPoint) return out;  // no center within the guess
  }

  const std::size_t cap = n * sorted_centers.size();
  std::vector<double> similar_dists;
  while (true) {
    // Find the first violated constraint: lowest point, then (for PP) the
    // lowest similar partner forming a violated pair. The AG bound is the
    // current average over the whole similarity set.
    PointId violator = kNoPoint;
    double threshold = 0.0;
    for (PointId j = 0; j < n && violator == kNoPoint; ++j) {
      const auto& set = inst.sim.sets[j];
      if (set.empty()) continue;
      const double dist = inst.d(j, phi[j]);
      if (inst.variant == FairnessVariant::PP) {
        for (PointId m : set) {
          const double bound = inst.alpha * inst.d(m, phi[m]);
          if (dist > bound) {
            violator = j;
            threshold = bound;
            break;
          }
        }
      } else {
        similar_dists.clear();
        for (PointId m : set) similar_dists.push_back(inst.d(m, phi[m]));
        if (!fairness_constraint_holds(inst.variant, inst.alpha, dist, similar_dists)) {
          violator = j;
          threshold = fairness_bound(inst.variant, inst.alpha, similar_dists);
        }
      }
    }
    if (violator == kNoPoint) break;

    if (out.iterations + 1 > cap) return out;  // cap exceeded: infeasible

    const double current = inst.d(violator, phi[violator]);
    PointId best = kNoPoint;
    for (PointId c : sorted_centers) {
      if (inst.d(violator, c) >= current || inst.d(violator, c) > threshold) continue;
      if (best == kNoPoint || inst.d(violator, c) > inst.d(violator, best)) best = c;
    }
    if (best == kNoPoint) return out;  // empty Delta: infeasible

    ++out.iterations;
    out.trace.push_back({violator, phi[violator], best, current, inst.d(violator, best)});
    phi[violator] = best;
  }

  out.solution = make_solution(inst.d, sorted_centers, std::move(phi));
  return out;
}

struct ValueForCenters {
  double value = 0.0;
  Solution solution;
  std::size_t iterations = 0;
};

/// Optimal objective value for a fixed center set: the first guess among the
/// ascending unique pairwise distances (plus 0) for which the repair
/// succeeds. Empty result means no feasible assignment exists at any value.
inline std::optional<ValueForCenters> optimal_value_for_centers(
    const Instance& inst, const std::vector<PointId>& centers) {
  auto guesses = pairwise_distance_candidates(inst.d, 0.0);
  if (guesses.empty() || guesses.front() != 0.0) guesses.insert(guesses.begin(), 0.0);
  for (double guess : guesses) {
    auto outcome = optimal_assignment(inst, centers, guess);
    if (outcome.feasible())
      return ValueForCenters{guess, std::move(*outcome.solution), outcome.iterations};
  }
  return std::nullopt;
}

}  // namespace eqcenter
