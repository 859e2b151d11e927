#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqcenter/core.hpp"
#include "eqcenter/metric.hpp"

namespace eqcenter {

/// PP compares a point's assignment distance against the best (minimum)
/// assignment distance in its similarity set; AG against the average.
enum class FairnessVariant { PP, AG };

inline std::string to_string(FairnessVariant v) { return v == FairnessVariant::PP ? "pp" : "ag"; }

inline FairnessVariant variant_from_string(const std::string& s) {
  if (s == "pp") return FairnessVariant::PP;
  if (s == "ag") return FairnessVariant::AG;
  throw std::invalid_argument("unknown fairness variant: " + s);
}

/// Relative slack applied to the AG comparison only, absorbing rounding
/// accumulated while averaging. PP comparisons are exact.
inline constexpr double kAgRelativeSlack = 1e-12;

/// The core fairness predicate shared by check_fairness, the solver's
/// single-center scan, and the iterative assignment repair. `similar_dists`
/// holds d(j', phi(j')) for the members of the point's similarity set; an
/// empty span is vacuously satisfied.
inline bool fairness_constraint_holds(FairnessVariant variant, double alpha, double dist,
                                      std::span<const double> similar_dists) {
  if (similar_dists.empty()) return true;
  if (variant == FairnessVariant::PP) {
    double best = similar_dists[0];
    for (double v : similar_dists) best = std::min(best, v);
    return dist <= alpha * best;
  }
  double sum = 0.0;
  for (double v : similar_dists) sum += v;
  const double mean = sum / static_cast<double>(similar_dists.size());
  return dist <= alpha * mean * (1.0 + kAgRelativeSlack);
}

/// The per-point bound the predicate above compares against (alpha * min or
/// alpha * mean, with the AG slack applied).
inline double fairness_bound(FairnessVariant variant, double alpha,
                             std::span<const double> similar_dists) {
  if (variant == FairnessVariant::PP) {
    double best = similar_dists[0];
    for (double v : similar_dists) best = std::min(best, v);
    return alpha * best;
  }
  double sum = 0.0;
  for (double v : similar_dists) sum += v;
  return alpha * (sum / static_cast<double>(similar_dists.size())) * (1.0 + kAgRelativeSlack);
}

/// Similarity sets S_j together with the radii R_j = max_{j' in S_j} d(j,j')
/// (0 when empty) and R_m = max_j R_j. Sets are stored sorted, deduplicated,
/// and with self-references stripped.
struct SimilarityFamily {
  std::vector<std::vector<PointId>> sets;
  std::vector<double> radii;
  double r_max = 0.0;

  static SimilarityFamily from_sets(std::vector<std::vector<PointId>> raw, const DistanceMatrix& d) {
    const std::size_t n = d.size();
    if (raw.size() != n) throw std::invalid_argument("similarity family size differs from point count");
    SimilarityFamily fam;
    fam.sets.resize(n);
    fam.radii.assign(n, 0.0);
    for (PointId j = 0; j < n; ++j) {
      auto& set = raw[j];
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      std::vector<PointId> kept;
      kept.reserve(set.size());
      for (PointId m : set) {
        if (m >= n) throw std::invalid_argument("similarity member out of range");
        if (m == j) continue;  // self-references stripped at construction
        kept.push_back(m);
        fam.radii[j] = std::max(fam.radii[j], d(j, m));
      }
      fam.sets[j] = std::move(kept);
      fam.r_max = std::max(fam.r_max, fam.radii[j]);
    }
    return fam;
  }
};

/// Full problem input: metric, similarity family, center budget k, fairness
/// factor alpha and the constraint variant.
struct Instance {
  DistanceMatrix d;
  SimilarityFamily sim;
  std::size_t k = 1;
  double alpha = 2.0;
  FairnessVariant variant = FairnessVariant::PP;

  std::size_t size() const { return d.size(); }

  static Instance make(DistanceMatrix d, SimilarityFamily sim, std::size_t k, double alpha,
                       FairnessVariant variant) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (alpha < 1.0) throw std::invalid_argument("alpha must be at least 1");
    if (sim.sets.size() != d.size())
      throw std::invalid_argument("similarity family size differs from point count");
    return Instance{std::move(d), std::move(sim), k, alpha, variant};
  }
};

/// A clustering solution: chosen centers S, assignment phi and the objective
/// value max_j d(j, phi(j)).
struct Solution {
  std::vector<PointId> centers;     // sorted ascending
  std::vector<PointId> assignment;  // size n, values in centers
  double value = 0.0;
};

inline Solution make_solution(const DistanceMatrix& d, std::vector<PointId> centers,
                              std::vector<PointId> assignment) {
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  double value = 0.0;
  for (PointId j = 0; j < assignment.size(); ++j) value = std::max(value, d(j, assignment[j]));
  return Solution{std::move(centers), std::move(assignment), value};
}

/// Per-point fairness verdicts for a solution. Points with empty similarity
/// sets are vacuously satisfied.
struct FairnessReport {
  struct Violation {
    PointId point;
    double dist;
    double bound;
  };
  std::vector<bool> satisfied;  // size n
  std::vector<Violation> violations;

  bool all_satisfied() const { return violations.empty(); }
};

inline FairnessReport check_fairness(const Instance& inst, const Solution& sol) {
  const std::size_t n = inst.size();
  if (sol.assignment.size() != n) throw std::invalid_argument("assignment is not total");
  for (PointId j = 0; j < n; ++j) {
    const PointId c = sol.assignment[j];
    if (c >= n || !std::binary_search(sol.centers.begin(), sol.centers.end(), c))
      throw std::invalid_argument("assignment maps point " + std::to_string(j) +
                                  " to a non-center");
  }

  FairnessReport report;
  report.satisfied.assign(n, true);
  std::vector<double> similar_dists;
  for (PointId j = 0; j < n; ++j) {
    const auto& set = inst.sim.sets[j];
    if (set.empty()) continue;
    similar_dists.clear();
    for (PointId m : set) similar_dists.push_back(inst.d(m, sol.assignment[m]));
    const double dist = inst.d(j, sol.assignment[j]);
    if (!fairness_constraint_holds(inst.variant, inst.alpha, dist, similar_dists)) {
      report.satisfied[j] = false;
      report.violations.push_back({j, dist, fairness_bound(inst.variant, inst.alpha, similar_dists)});
    }
  }
  return report;
}

/// Draws R_j ~ Uniform[0, 2*r_f) independently per point in index order and
/// sets S_j = {j' != j : d(j,j') <= R_j}. Deterministic given the seed.
inline SimilarityFamily construct_similarity_sets(const DistanceMatrix& d, double r_f,
                                                  std::uint64_t seed) {
  if (r_f < 0.0) throw std::invalid_argument("r_f must be nonnegative");
  const std::size_t n = d.size();
  Rng rng(seed);
  std::vector<std::vector<PointId>> sets(n);
  for (PointId j = 0; j < n; ++j) {
    const double radius = rng.uniform(2.0 * r_f);
    for (PointId m = 0; m < n; ++m)
      if (m != j && d(j, m) <= radius) sets[j].push_back(m);
  }
  return SimilarityFamily::from_sets(std::move(sets), d);
}

/// Record of one similarity request removed while enforcing the distance
/// ceiling psi * r_f; the planner can explain each rejection to the agent.
struct EnforcementReport {
  struct Removal {
    PointId point;
    PointId member;
    double distance;
    bool self_reference;
  };
  std::vector<Removal> removed;
};

/// Removes every similarity member further than psi * r_f (and every
/// self-reference) from the raw sets, reporting each removal.
inline std::pair<SimilarityFamily, EnforcementReport> enforce_assumption(
    const std::vector<std::vector<PointId>>& raw_sets, double psi, double r_f,
    const DistanceMatrix& d) {
  if (psi <= 0.0) throw std::invalid_argument("psi must be positive");
  if (r_f < 0.0) throw std::invalid_argument("r_f must be nonnegative");
  const double ceiling = psi * r_f;
  EnforcementReport report;
  std::vector<std::vector<PointId>> kept(raw_sets.size());
  for (PointId j = 0; j < raw_sets.size(); ++j) {
    for (PointId m : raw_sets[j]) {
      if (m >= d.size()) throw std::invalid_argument("similarity member out of range");
      if (m == j) {
        report.removed.push_back({j, m, 0.0, true});
      } else if (d(j, m) > ceiling) {
        report.removed.push_back({j, m, d(j, m), false});
      } else {
        kept[j].push_back(m);
      }
    }
  }
  return {SimilarityFamily::from_sets(std::move(kept), d), std::move(report)};
}

/// Hard instance on a 2m-point cycle with unit adjacent distances and the
/// shortest-path metric. Odd-indexed points (1-based) are paired at distance
/// m, even-indexed ones at distance m/2; S_j = {pi(j)} and k = 2. Requires m
/// even with m/2 even.
inline Instance generate_cycle_instance(std::size_t m, double alpha = 2.0,
                                        FairnessVariant variant = FairnessVariant::PP) {
  if (m < 4 || m % 2 != 0 || (m / 2) % 2 != 0)
    throw std::invalid_argument("cycle instance requires m >= 4, m even and m/2 even");
  const std::size_t n = 2 * m;
  std::vector<double> flat(n * n, 0.0);
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      flat[i * n + j] = static_cast<double>(std::min(gap, n - gap));
    }
  }
  auto d = DistanceMatrix::from_flat(n, std::move(flat));

  // 1-based pairing from the construction, shifted to 0-based indices.
  std::vector<PointId> pi(n, kNoPoint);
  for (std::size_t i = 1; i <= m; i += 2) {  // odd i: pi(j_i) = j_{i+m}
    pi[i - 1] = i + m - 1;
    pi[i + m - 1] = i - 1;
  }
  for (std::size_t i = 2; i <= n; i += 2) {  // even i, in increasing order
    if (pi[i - 1] != kNoPoint) continue;
    pi[i - 1] = i + m / 2 - 1;
    pi[i + m / 2 - 1] = i - 1;
  }
  std::vector<std::vector<PointId>> sets(n);
  for (PointId j = 0; j < n; ++j) sets[j] = {pi[j]};
  auto sim = SimilarityFamily::from_sets(std::move(sets), d);
  return Instance::make(std::move(d), std::move(sim), 2, alpha, variant);
}

/// Four-point instance with two distant cliques: within-pair distance r,
/// all cross distances big_d, mutual similarity inside each pair, k = 2.
/// Its price of fairness is big_d / r.
inline Instance generate_pof_instance(double r, double big_d, double alpha = 2.0,
                                      FairnessVariant variant = FairnessVariant::PP) {
  if (!(r > 0.0) || !(r <= big_d))
    throw std::invalid_argument("pof instance requires 0 < r <= big_d");
  std::vector<std::vector<double>> rows = {
      {0.0, r, big_d, big_d},
      {r, 0.0, big_d, big_d},
      {big_d, big_d, 0.0, r},
      {big_d, big_d, r, 0.0},
  };
  auto d = DistanceMatrix::from_rows(rows);
  auto sim = SimilarityFamily::from_sets({{1}, {0}, {3}, {2}}, d);
  return Instance::make(std::move(d), std::move(sim), 2, alpha, variant);
}

}  // namespace eqcenter
