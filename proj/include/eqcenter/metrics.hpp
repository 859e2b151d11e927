#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "eqcenter/instance.hpp"

namespace eqcenter {

/// Evaluation quantities for one solution. f values are absent (not zero)
/// for points with empty similarity sets and may be +infinity; the strict
/// maxima include infinities, the lenient ones exclude them. A point counts
/// as violating when its f exceeds alpha.
struct MetricsReport {
  double max_distance = 0.0;
  std::vector<std::optional<double>> f_pp, f_ag;  // per point
  std::optional<double> max_f_pp_strict, max_f_pp_lenient;
  std::optional<double> max_f_ag_strict, max_f_ag_lenient;
  double violation_fraction_pp = 0.0, violation_fraction_ag = 0.0;
  double center_ratio = 0.0;  // |S| / k
};

namespace detail {

/// Ratio with the report's conventions: 0 numerator gives 0 even over a 0
/// denominator; positive numerator over 0 gives +infinity.
inline double fairness_ratio(double numerator, double denominator) {
  if (numerator == 0.0) return 0.0;
  if (denominator == 0.0) return std::numeric_limits<double>::infinity();
  return numerator / denominator;
}

struct MaxAccumulator {
  std::optional<double> strict, lenient;
  void add(double f) {
    if (!strict || f > *strict) strict = f;
    if (std::isfinite(f) && (!lenient || f > *lenient)) lenient = f;
  }
};

}  // namespace detail

inline MetricsReport evaluate(const Instance& inst, const Solution& sol) {
  const std::size_t n = inst.size();
  MetricsReport report;
  report.f_pp.assign(n, std::nullopt);
  report.f_ag.assign(n, std::nullopt);
  report.center_ratio =
      static_cast<double>(sol.centers.size()) / static_cast<double>(inst.k);

  detail::MaxAccumulator pp, ag;
  std::size_t violations_pp = 0, violations_ag = 0;
  for (PointId j = 0; j < n; ++j) {
    const double dist = inst.d(j, sol.assignment[j]);
    report.max_distance = std::max(report.max_distance, dist);
    const auto& set = inst.sim.sets[j];
    if (set.empty()) continue;

    double worst_pp = 0.0;
    double sum = 0.0;
    for (PointId m : set) {
      const double md = inst.d(m, sol.assignment[m]);
      worst_pp = std::max(worst_pp, detail::fairness_ratio(dist, md));
      sum += md;
    }
    const double f_ag = detail::fairness_ratio(static_cast<double>(set.size()) * dist, sum);
    report.f_pp[j] = worst_pp;
    report.f_ag[j] = f_ag;
    pp.add(worst_pp);
    ag.add(f_ag);
    if (worst_pp > inst.alpha) ++violations_pp;
    if (f_ag > inst.alpha) ++violations_ag;
  }
  report.max_f_pp_strict = pp.strict;
  report.max_f_pp_lenient = pp.lenient;
  report.max_f_ag_strict = ag.strict;
  report.max_f_ag_lenient = ag.lenient;
  report.violation_fraction_pp = static_cast<double>(violations_pp) / static_cast<double>(n);
  report.violation_fraction_ag = static_cast<double>(violations_ag) / static_cast<double>(n);
  return report;
}

}  // namespace eqcenter
