#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqcenter/core.hpp"
#include "eqcenter/dataset.hpp"

namespace eqcenter {

/// Absolute tolerance used only by validate_metric. Algorithmic comparisons
/// elsewhere use raw stored values, so equality tests against matrix entries
/// stay exact.
inline constexpr double kMetricEps = 1e-9;

/// Symmetric nonnegative distance matrix over points 0..n-1, immutable after
/// construction.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  static DistanceMatrix from_flat(std::size_t n, std::vector<double> values) {
    if (values.size() != n * n) throw std::invalid_argument("flat distance data is not n*n");
    for (double v : values)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite distance entry");
    DistanceMatrix m;
    m.n_ = n;
    m.d_ = std::move(values);
    return m;
  }

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw std::invalid_argument("distance matrix is not square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_flat(n, std::move(flat));
  }

  std::size_t size() const { return n_; }
  double operator()(PointId i, PointId j) const { return d_[i * n_ + j]; }
  const std::vector<double>& flat() const { return d_; }

  double max_distance() const {
    double m = 0.0;
    for (double v : d_) m = std::max(m, v);
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Outcome of validate_metric. On failure, (i, j, k) identifies the first
/// violation in lexicographic order; for triangle failures it reads
/// d(i,j) > d(i,k) + d(k,j).
struct MetricValidation {
  enum class Kind { ok, negative_entry, nonzero_diagonal, asymmetry, triangle };
  Kind kind = Kind::ok;
  PointId i = 0, j = 0, k = 0;

  bool pass() const { return kind == Kind::ok; }
};

/// Checks the three metric invariants (zero diagonal, symmetry, triangle
/// inequality) within kMetricEps. Structural problems (non-square or
/// non-finite input) throw instead of reporting.
inline MetricValidation validate_metric(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("distance matrix is not square");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite distance entry");
  }
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = 0; j < n; ++j) {
      if (rows[i][j] < -kMetricEps) return {MetricValidation::Kind::negative_entry, i, j, j};
      if (i == j && std::abs(rows[i][j]) > kMetricEps)
        return {MetricValidation::Kind::nonzero_diagonal, i, i, i};
      if (std::abs(rows[i][j] - rows[j][i]) > kMetricEps)
        return {MetricValidation::Kind::asymmetry, i, j, j};
      for (PointId k = 0; k < n; ++k)
        if (rows[i][j] > rows[i][k] + rows[k][j] + kMetricEps)
          return {MetricValidation::Kind::triangle, i, j, k};
    }
  }
  return {};
}

inline MetricValidation validate_metric(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (PointId i = 0; i < n; ++i)
    for (PointId j = 0; j < n; ++j) rows[i][j] = d(i, j);
  return validate_metric(rows);
}

struct EuclideanOptions {
  bool standardize = true;
  bool normalize = true;
  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 0;
};

/// Distance pipeline over a raw dataset, in fixed order: drop non-numeric
/// columns, subsample (seeded, without replacement), z-score columns
/// (zero-variance columns become all-zero), pairwise Euclidean distances,
/// divide by the maximum distance so entries lie in [0, 1].
inline DistanceMatrix build_euclidean(const RawDataset& ds, const EuclideanOptions& opt = {}) {
  if (ds.row_count() == 0) throw std::invalid_argument("empty dataset");
  if (ds.numeric_columns.empty()) throw std::invalid_argument("dataset has no numeric columns");

  std::vector<std::size_t> row_ids(ds.row_count());
  for (std::size_t i = 0; i < row_ids.size(); ++i) row_ids[i] = i;
  if (opt.sample_size) {
    const std::size_t want = *opt.sample_size;
    if (want > ds.row_count()) throw std::invalid_argument("sample_size exceeds row count");
    Rng rng(opt.seed);
    // Partial Fisher-Yates, then restore original row order.
    for (std::size_t i = 0; i < want; ++i) {
      std::size_t pick = i + static_cast<std::size_t>(rng.below(row_ids.size() - i));
      std::swap(row_ids[i], row_ids[pick]);
    }
    row_ids.resize(want);
    std::sort(row_ids.begin(), row_ids.end());
  }

  const std::size_t n = row_ids.size();
  const std::size_t dims = ds.numeric_columns.size();
  std::vector<std::vector<double>> feats(n, std::vector<double>(dims));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dims; ++c) {
      double v;
      if (!detail::parse_finite_double(ds.rows[row_ids[i]][ds.numeric_columns[c]], v))
        throw std::invalid_argument("non-numeric cell in a numeric column");
      feats[i][c] = v;
    }
  }

  if (opt.standardize) {
    for (std::size_t c = 0; c < dims; ++c) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += feats[i][c];
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dv = feats[i][c] - mean;
        var += dv * dv;
      }
      var /= static_cast<double>(n);
      const double sd = std::sqrt(var);
      for (std::size_t i = 0; i < n; ++i)
        feats[i][c] = sd > 0.0 ? (feats[i][c] - mean) / sd : 0.0;
    }
  }

  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < dims; ++c) {
        const double dv = feats[i][c] - feats[j][c];
        sq += dv * dv;
      }
      const double dist = std::sqrt(sq);
      flat[i * n + j] = dist;
      flat[j * n + i] = dist;
    }
  }

  if (opt.normalize) {
    double maxd = 0.0;
    for (double v : flat) maxd = std::max(maxd, v);
    if (maxd > 0.0)
      for (double& v : flat) v /= maxd;
  }
  return DistanceMatrix::from_flat(n, std::move(flat));
}

/// Ascending sorted unique pairwise distances >= floor, with the floor itself
/// prepended when not already present. This is the guess candidate list for
/// the outer search.
inline std::vector<double> pairwise_distance_candidates(const DistanceMatrix& d, double floor) {
  std::vector<double> out;
  const std::size_t n = d.size();
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j)
      if (d(i, j) >= floor) out.push_back(d(i, j));
  out.push_back(floor);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace eqcenter
