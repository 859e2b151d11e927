#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqcenter/instance.hpp"
#include "eqcenter/metric.hpp"

namespace eqcenter {

/// Output of the center-choosing pass (Algorithm 1 of the framework). The
/// chosen centers are pairwise further than 2R apart, the covering sets G_c
/// partition all points with d(j, rho(j)) <= 2R, and every center sharing its
/// partition set has a neighbor center within 3R.
struct CenterSelection {
  double guess = 0.0;                            // the radius R used
  std::vector<PointId> centers;                  // S, in insertion order
  std::vector<std::vector<PointId>> partition;   // P_1..P_T
  std::vector<std::size_t> partition_of;         // t(c), aligned with centers
  std::vector<std::vector<PointId>> groups;      // G_c, aligned with centers
  std::vector<PointId> covered_by;               // rho(j), size n
};

/// Greedy center selection under a radius guess R. Partition sets are grown
/// while an uncovered point lies within 3R of the current set; every new
/// center covers the uncovered points within 2R of it. "Choose a point"
/// always resolves to the lowest index.
inline CenterSelection select_centers(const DistanceMatrix& d, double guess) {
  if (guess < 0.0) throw std::invalid_argument("guess must be nonnegative");
  const std::size_t n = d.size();
  CenterSelection sel;
  sel.guess = guess;
  sel.covered_by.assign(n, kNoPoint);

  std::vector<bool> uncovered(n, true);
  std::size_t remaining = n;
  // near_current[j]: j is within 3R of some center of the partition set being
  // grown; maintained incrementally as centers join it.
  std::vector<bool> near_current(n, false);

  while (remaining > 0) {
    PointId chosen = kNoPoint;
    for (PointId j = 0; j < n; ++j) {
      if (uncovered[j] && near_current[j]) {
        chosen = j;
        break;
      }
    }
    if (chosen == kNoPoint) {
      for (PointId j = 0; j < n; ++j) {
        if (uncovered[j]) {
          chosen = j;
          break;
        }
      }
      near_current.assign(n, false);
      sel.partition.emplace_back();
    }

    sel.partition.back().push_back(chosen);
    sel.partition_of.push_back(sel.partition.size() - 1);
    sel.centers.push_back(chosen);
    sel.groups.emplace_back();
    auto& group = sel.groups.back();
    for (PointId j = 0; j < n; ++j) {
      if (uncovered[j] && d(j, chosen) <= 2.0 * guess) {
        group.push_back(j);
        sel.covered_by[j] = chosen;
        uncovered[j] = false;
        --remaining;
      }
    }
    for (PointId j = 0; j < n; ++j)
      if (uncovered[j] && d(j, chosen) <= 3.0 * guess) near_current[j] = true;
  }
  return sel;
}

/// Split of the selection into isolated centers (alone in their partition
/// set; their groups are separated from the rest by more than R) and
/// non-isolated ones, with the corresponding point sets.
struct IsolationSplit {
  std::vector<PointId> isolated;      // S_I, ascending
  std::vector<PointId> non_isolated;  // S_N, ascending
  std::vector<PointId> covered_iso;   // C_I, ascending
  std::vector<PointId> covered_non;   // C_N, ascending
  std::vector<bool> point_isolated;   // size n: j in C_I
  std::vector<PointId> covered_by;    // rho(j), carried over from the selection
};

inline IsolationSplit split_isolation(const CenterSelection& sel) {
  IsolationSplit split;
  split.covered_by = sel.covered_by;
  split.point_isolated.assign(sel.covered_by.size(), false);
  for (std::size_t ci = 0; ci < sel.centers.size(); ++ci) {
    const bool iso = sel.partition[sel.partition_of[ci]].size() == 1;
    (iso ? split.isolated : split.non_isolated).push_back(sel.centers[ci]);
    if (iso)
      for (PointId j : sel.groups[ci]) split.point_isolated[j] = true;
  }
  std::sort(split.isolated.begin(), split.isolated.end());
  std::sort(split.non_isolated.begin(), split.non_isolated.end());
  for (PointId j = 0; j < split.point_isolated.size(); ++j)
    (split.point_isolated[j] ? split.covered_iso : split.covered_non).push_back(j);
  return split;
}

/// Picks the two farthest points of the group (lexicographically smallest
/// pair on ties) and assigns every member to the farther of the two, the
/// first on ties. All assigned distances land in [d(c1,c2)/2, d(c1,c2)].
struct FarthestPair {
  PointId c1 = kNoPoint, c2 = kNoPoint;
  std::vector<PointId> assigned;  // aligned with the input group
};

inline FarthestPair farthest_pair_assignment(const DistanceMatrix& d,
                                             const std::vector<PointId>& group) {
  if (group.size() < 2) throw std::invalid_argument("farthest pair needs at least two points");
  FarthestPair fp;
  double best = -1.0;
  for (std::size_t a = 0; a < group.size(); ++a) {
    for (std::size_t b = a + 1; b < group.size(); ++b) {
      const double dist = d(group[a], group[b]);
      const PointId lo = std::min(group[a], group[b]);
      const PointId hi = std::max(group[a], group[b]);
      if (dist > best ||
          (dist == best && (lo < fp.c1 || (lo == fp.c1 && hi < fp.c2)))) {
        best = dist;
        fp.c1 = lo;
        fp.c2 = hi;
      }
    }
  }
  fp.assigned.reserve(group.size());
  for (PointId j : group) fp.assigned.push_back(d(j, fp.c2) > d(j, fp.c1) ? fp.c2 : fp.c1);
  return fp;
}

enum class SolveMode { standard, pseudo_pof };

/// Assignment for the isolated-covered points. Per group, either one center
/// serving the whole group fairly (standard mode only; found by scanning
/// candidates in ascending index order) or the farthest pair of the group.
struct IsolatedAssignment {
  std::vector<PointId> centers;                        // S'_I, ascending
  std::vector<PointId> phi;                            // size n, kNoPoint outside C_I
  std::vector<std::vector<PointId>> opened_per_group;  // aligned with iteration order below
  std::vector<PointId> group_centers;                  // the isolated centers, ascending
};

namespace detail {

/// True when assigning every member of `group` to `target` satisfies the
/// variant's constraint for each member, evaluated over similarity members
/// inside the group (they all lie there when the guess is at least R_m).
inline bool single_center_serves_group(const Instance& inst, const std::vector<PointId>& group,
                                       PointId target) {
  std::vector<bool> in_group(inst.size(), false);
  for (PointId j : group) in_group[j] = true;
  std::vector<double> similar_dists;
  for (PointId j : group) {
    similar_dists.clear();
    for (PointId m : inst.sim.sets[j])
      if (in_group[m]) similar_dists.push_back(inst.d(m, target));
    if (!fairness_constraint_holds(inst.variant, inst.alpha, inst.d(j, target), similar_dists))
      return false;
  }
  return true;
}

}  // namespace detail

inline IsolatedAssignment assign_isolated(const Instance& inst, const CenterSelection& sel,
                                          SolveMode mode) {
  const auto split = split_isolation(sel);
  IsolatedAssignment out;
  out.phi.assign(inst.size(), kNoPoint);
  out.group_centers = split.isolated;

  for (PointId c : split.isolated) {
    const std::size_t ci =
        std::find(sel.centers.begin(), sel.centers.end(), c) - sel.centers.begin();
    const auto& group = sel.groups[ci];
    std::vector<PointId> opened;

    bool handled = false;
    if (mode == SolveMode::standard) {
      for (PointId candidate : group) {
        if (detail::single_center_serves_group(inst, group, candidate)) {
          opened.push_back(candidate);
          for (PointId j : group) out.phi[j] = candidate;
          handled = true;
          break;
        }
      }
    } else if (group.size() == 1) {
      opened.push_back(c);
      out.phi[c] = c;
      handled = true;
    }

    if (!handled) {
      const auto fp = farthest_pair_assignment(inst.d, group);
      opened = {fp.c1, fp.c2};
      for (std::size_t gi = 0; gi < group.size(); ++gi) out.phi[group[gi]] = fp.assigned[gi];
    }
    for (PointId o : opened) out.centers.push_back(o);
    out.opened_per_group.push_back(std::move(opened));
  }
  std::sort(out.centers.begin(), out.centers.end());
  return out;
}

/// Type-1 points have a (necessarily unique) non-isolated center within R;
/// type-2 points do not, and anchor to their covering center instead.
struct TypeClassification {
  std::vector<PointId> type1, type2;  // ascending
  std::vector<PointId> anchor;        // pi(j), size n, valid on C_N
};

inline TypeClassification classify_types(const DistanceMatrix& d, const IsolationSplit& split,
                                         double guess) {
  TypeClassification cls;
  cls.anchor.assign(d.size(), kNoPoint);
  for (PointId j : split.covered_non) {
    PointId within = kNoPoint;
    for (PointId c : split.non_isolated) {
      if (d(j, c) <= guess) {
        within = c;
        break;  // unique: centers are pairwise further than 2R apart
      }
    }
    if (within != kNoPoint) {
      cls.type1.push_back(j);
      cls.anchor[j] = within;
    } else {
      cls.type2.push_back(j);
      cls.anchor[j] = split.covered_by[j];
    }
  }
  return cls;
}

/// Assignment for the non-isolated-covered points (Algorithm 3). The anchor
/// pi(j) is excluded in cases (A) and (C); case (B) takes the farthest center
/// within 2R, anchor included.
struct NonIsolatedAssignment {
  enum class Case : unsigned char { none, a, b, c };
  std::vector<PointId> phi;        // size n, valid on C_N
  std::vector<Case> assigned_case; // size n
};

inline NonIsolatedAssignment assign_nonisolated(const DistanceMatrix& d,
                                                const IsolationSplit& split,
                                                const TypeClassification& cls, double guess) {
  NonIsolatedAssignment out;
  out.phi.assign(d.size(), kNoPoint);
  out.assigned_case.assign(d.size(), NonIsolatedAssignment::Case::none);

  auto nearest_excluding = [&](PointId j, PointId excluded) {
    PointId best = kNoPoint;
    for (PointId c : split.non_isolated) {
      if (c == excluded) continue;
      if (best == kNoPoint || d(j, c) < d(j, best)) best = c;
    }
    return best;
  };

  for (PointId j : cls.type1) {
    out.phi[j] = nearest_excluding(j, cls.anchor[j]);
    out.assigned_case[j] = NonIsolatedAssignment::Case::a;
  }
  for (PointId j : cls.type2) {
    const PointId rho = cls.anchor[j];
    bool case_b = false;
    for (PointId c : split.non_isolated)
      if (c != rho && d(j, c) <= 2.0 * guess) case_b = true;
    if (case_b) {
      PointId best = kNoPoint;
      for (PointId c : split.non_isolated) {
        if (d(j, c) > 2.0 * guess) continue;
        if (best == kNoPoint || d(j, c) > d(j, best)) best = c;
      }
      out.phi[j] = best;
      out.assigned_case[j] = NonIsolatedAssignment::Case::b;
    } else {
      out.phi[j] = nearest_excluding(j, rho);
      out.assigned_case[j] = NonIsolatedAssignment::Case::c;
    }
  }
  return out;
}

/// Result of one guess: either a solution of value at most 5R, or an
/// infeasibility verdict certifying that the guess is below the optimum.
struct GuessOutcome {
  std::optional<Solution> solution;
  std::size_t centers_needed = 0;  // the quantity compared against k

  bool feasible() const { return solution.has_value(); }
};

namespace detail {

inline void require_solver_preconditions(const Instance& inst) {
  if (inst.alpha < 2.0)
    throw std::invalid_argument("solver requires alpha >= 2 (instances below are ill-posed)");
  if (inst.k < 2) throw std::invalid_argument("solver requires k >= 2");
}

}  // namespace detail

/// Runs the full pipeline for one radius guess. Standard mode checks the
/// budget |S'_I| + |S_N| <= k; pseudo-PoF mode checks |S_I| + |S_N| <= k and
/// may open up to 2k centers in total.
inline GuessOutcome solve_for_guess(const Instance& inst, double guess, SolveMode mode) {
  detail::require_solver_preconditions(inst);
  if (guess < inst.sim.r_max)
    throw std::invalid_argument("guess below R_m");

  const auto sel = select_centers(inst.d, guess);
  const auto split = split_isolation(sel);
  const auto iso = assign_isolated(inst, sel, mode);

  GuessOutcome outcome;
  if (mode == SolveMode::standard) {
    outcome.centers_needed = iso.centers.size() + split.non_isolated.size();
  } else {
    outcome.centers_needed = split.isolated.size() + split.non_isolated.size();
  }
  if (outcome.centers_needed > inst.k) return outcome;

  const auto cls = classify_types(inst.d, split, guess);
  const auto non = assign_nonisolated(inst.d, split, cls, guess);

  std::vector<PointId> centers = iso.centers;
  centers.insert(centers.end(), split.non_isolated.begin(), split.non_isolated.end());
  std::vector<PointId> phi(inst.size());
  for (PointId j = 0; j < inst.size(); ++j) {
    phi[j] = split.point_isolated[j] ? iso.phi[j] : non.phi[j];
    assert(phi[j] != kNoPoint);
  }
  outcome.solution = make_solution(inst.d, std::move(centers), std::move(phi));
  assert(outcome.solution->value <= 5.0 * guess + 1e-9);
  return outcome;
}

enum class GuessSearch { linear, binary };

struct SolveResult {
  Solution solution;
  double guess = 0.0;  // the accepted radius guess
};

/// Guess-and-verify outer loop over the candidate radii (pairwise distances
/// at least R_m, with R_m prepended). Linear mode scans ascending and stops
/// at the first feasible guess; binary mode bisects for it, relying on
/// feasibility being monotone in the guess.
inline SolveResult solve(const Instance& inst, SolveMode mode = SolveMode::standard,
                         GuessSearch search = GuessSearch::linear) {
  detail::require_solver_preconditions(inst);
  const auto candidates = pairwise_distance_candidates(inst.d, inst.sim.r_max);

  if (search == GuessSearch::linear) {
    for (double guess : candidates) {
      auto outcome = solve_for_guess(inst, guess, mode);
      if (outcome.feasible()) return {std::move(*outcome.solution), guess};
    }
  } else {
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (solve_for_guess(inst, candidates[mid], mode).feasible())
        hi = mid;
      else
        lo = mid + 1;
    }
    auto outcome = solve_for_guess(inst, candidates[lo], mode);
    if (outcome.feasible()) return {std::move(*outcome.solution), candidates[lo]};
  }
  // Unreachable for alpha >= 2, k >= 2: the top guess covers everything with
  // one group and opens at most two centers.
  throw std::logic_error("no feasible guess found; this indicates a bug");
}

}  // namespace eqcenter
