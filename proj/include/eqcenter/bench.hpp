#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqcenter/baseline.hpp"
#include "eqcenter/core.hpp"
#include "eqcenter/dataset.hpp"
#include "eqcenter/eqsolver.hpp"
#include "eqcenter/instance.hpp"
#include "eqcenter/io.hpp"
#include "eqcenter/metric.hpp"
#include "eqcenter/metrics.hpp"

namespace eqcenter {

inline const std::vector<std::string> kAllAlgorithms = {"alg-pp", "alg-ag", "pseudo-pof",
                                                        "gonzalez", "hs"};

/// Experiment description: one dataset (CSV path or built-in generator), a
/// sweep over k, and the set of algorithms to score against shared
/// similarity sets.
struct ExperimentConfig {
  std::string dataset;    // CSV path; empty when generator-backed
  std::string generator;  // "pof" | "cycle" | "random" | empty
  double pof_r = 1.0;
  double pof_d = 10.0;
  std::size_t cycle_m = 8;
  std::size_t random_n = 64;

  std::vector<std::size_t> k_values = {2, 4, 8, 16, 32, 64, 128};
  double alpha = 2.0;
  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 0;
  std::vector<std::string> algorithms = kAllAlgorithms;
  double psi = 2.0;
  GuessSearch search = GuessSearch::binary;
  bool timing = false;  // off by default so outputs are byte-reproducible
  bool cap_sample_to_rows = false;  // desk defaults: skip sampling of small files
  std::string output;   // path; empty prints to stdout
  std::string format = "csv";
};

struct ResultRow {
  std::size_t k = 0;
  std::string algorithm;
  double max_distance = 0.0;
  std::optional<double> max_f_pp_strict, max_f_pp_lenient;
  std::optional<double> max_f_ag_strict, max_f_ag_lenient;
  double violation_fraction_pp = 0.0, violation_fraction_ag = 0.0;
  double center_ratio = 0.0;
  double wall_time_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  double distance_build_ms = 0.0;  // reported separately from solve time
  std::vector<std::string> warnings;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct PreparedData {
  DistanceMatrix d;
  std::optional<SimilarityFamily> intrinsic_sets;  // pof/cycle keep their own
};

inline PreparedData prepare_data(const ExperimentConfig& cfg, ExperimentResult& result) {
  const auto start = std::chrono::steady_clock::now();
  PreparedData data;
  if (!cfg.dataset.empty()) {
    auto ds = load_csv(cfg.dataset);
    EuclideanOptions opt;
    opt.sample_size = cfg.sample_size;
    if (cfg.cap_sample_to_rows && opt.sample_size && *opt.sample_size >= ds.row_count())
      opt.sample_size.reset();
    opt.seed = cfg.seed;
    data.d = build_euclidean(ds, opt);
  } else if (cfg.generator == "pof") {
    auto inst = generate_pof_instance(cfg.pof_r, cfg.pof_d, std::max(cfg.alpha, 2.0));
    data.d = inst.d;
    data.intrinsic_sets = inst.sim;
  } else if (cfg.generator == "cycle") {
    auto inst = generate_cycle_instance(cfg.cycle_m, std::max(cfg.alpha, 2.0));
    data.d = inst.d;
    data.intrinsic_sets = inst.sim;
  } else if (cfg.generator == "random") {
    Rng rng(mix_seed(cfg.seed, 0x7a11d0));
    std::vector<std::vector<double>> feats(cfg.random_n, std::vector<double>(2));
    for (auto& row : feats)
      for (double& v : row) v = rng.uniform01();
    data.d = build_euclidean(dataset_from_features(feats), {});
  } else {
    throw std::invalid_argument("config needs a dataset path or a generator name");
  }
  if (cfg.timing) {
    result.distance_build_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  }
  return data;
}

}  // namespace detail

/// Runs the full pipeline for every k: filter value R_f, shared similarity
/// sets, each selected algorithm, metrics. Fully deterministic given the
/// seed as long as timing is off.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  for (const auto& name : cfg.algorithms)
    if (std::find(kAllAlgorithms.begin(), kAllAlgorithms.end(), name) == kAllAlgorithms.end())
      throw std::invalid_argument("unknown algorithm: " + name);
  const bool wants_fair = std::any_of(cfg.algorithms.begin(), cfg.algorithms.end(),
                                      [](const std::string& a) { return a != "gonzalez" && a != "hs"; });
  if (wants_fair && cfg.alpha < 2.0)
    throw std::invalid_argument("fair algorithms require alpha >= 2");

  ExperimentResult result;
  const auto data = detail::prepare_data(cfg, result);
  const std::size_t n = data.d.size();

  for (std::size_t k : cfg.k_values) {
    if (k >= n) {
      result.warnings.push_back("skipping k=" + std::to_string(k) +
                                ": not below point count n=" + std::to_string(n));
      continue;
    }

    auto [hs_solution, filter] = hochbaum_shmoys(data.d, k);
    SimilarityFamily sim;
    if (data.intrinsic_sets) {
      sim = *data.intrinsic_sets;
    } else {
      auto drawn = construct_similarity_sets(data.d, filter.r_f, detail::mix_seed(cfg.seed, k));
      sim = enforce_assumption(drawn.sets, cfg.psi, filter.r_f, data.d).first;
    }

    for (const auto& name : cfg.algorithms) {
      // All algorithms at this k are scored against the identical similarity
      // family, otherwise the comparison is meaningless.
      FairnessVariant variant = name == "alg-ag" ? FairnessVariant::AG : FairnessVariant::PP;
      auto inst = Instance::make(data.d, sim, k, cfg.alpha, variant);

      const auto start = std::chrono::steady_clock::now();
      Solution sol;
      if (name == "alg-pp" || name == "alg-ag") {
        sol = solve(inst, SolveMode::standard, cfg.search).solution;
      } else if (name == "pseudo-pof") {
        sol = solve(inst, SolveMode::pseudo_pof, cfg.search).solution;
      } else if (name == "gonzalez") {
        sol = gonzalez(data.d, k);
      } else {
        sol = hs_solution;
      }
      const double elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();

      const auto metrics = evaluate(inst, sol);
      ResultRow row;
      row.k = k;
      row.algorithm = name;
      row.max_distance = metrics.max_distance;
      row.max_f_pp_strict = metrics.max_f_pp_strict;
      row.max_f_pp_lenient = metrics.max_f_pp_lenient;
      row.max_f_ag_strict = metrics.max_f_ag_strict;
      row.max_f_ag_lenient = metrics.max_f_ag_lenient;
      row.violation_fraction_pp = metrics.violation_fraction_pp;
      row.violation_fraction_ag = metrics.violation_fraction_ag;
      row.center_ratio = metrics.center_ratio;
      row.wall_time_ms = cfg.timing ? elapsed_ms : 0.0;
      result.rows.push_back(std::move(row));
    }
  }

  std::sort(result.rows.begin(), result.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return a.k != b.k ? a.k < b.k : a.algorithm < b.algorithm;
  });
  return result;
}

namespace detail {

inline std::string csv_field(const std::optional<double>& v) {
  return v ? format_double17(*v) : std::string();
}

}  // namespace detail

/// Tidy table keyed for direct plotting: UTF-8, header row, "inf" for
/// infinities, floats at 17 significant digits.
inline std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "k,algorithm,max_distance,max_f_pp_strict,max_f_pp_lenient,max_f_ag_strict,"
         "max_f_ag_lenient,violation_fraction_pp,violation_fraction_ag,center_ratio,"
         "wall_time_ms\n";
  for (const auto& row : result.rows) {
    out << row.k << ',' << row.algorithm << ',' << format_double17(row.max_distance) << ','
        << detail::csv_field(row.max_f_pp_strict) << ',' << detail::csv_field(row.max_f_pp_lenient)
        << ',' << detail::csv_field(row.max_f_ag_strict) << ','
        << detail::csv_field(row.max_f_ag_lenient) << ','
        << format_double17(row.violation_fraction_pp) << ','
        << format_double17(row.violation_fraction_ag) << ',' << format_double17(row.center_ratio)
        << ',' << format_double17(row.wall_time_ms) << '\n';
  }
  return out.str();
}

inline json result_to_json(const ExperimentResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    json obj;
    obj["k"] = row.k;
    obj["algorithm"] = row.algorithm;
    obj["max_distance"] = row.max_distance;
    obj["max_f_pp_strict"] = detail::extended_real(row.max_f_pp_strict);
    obj["max_f_pp_lenient"] = detail::extended_real(row.max_f_pp_lenient);
    obj["max_f_ag_strict"] = detail::extended_real(row.max_f_ag_strict);
    obj["max_f_ag_lenient"] = detail::extended_real(row.max_f_ag_lenient);
    obj["violation_fraction_pp"] = row.violation_fraction_pp;
    obj["violation_fraction_ag"] = row.violation_fraction_ag;
    obj["center_ratio"] = row.center_ratio;
    obj["wall_time_ms"] = row.wall_time_ms;
    rows.push_back(std::move(obj));
  }
  json obj;
  obj["distance_build_ms"] = result.distance_build_ms;
  obj["rows"] = std::move(rows);
  return obj;
}

inline ExperimentConfig config_from_json(const json& obj) {
  ExperimentConfig cfg;
  cfg.dataset = obj.value("dataset", cfg.dataset);
  cfg.generator = obj.value("generator", cfg.generator);
  cfg.pof_r = obj.value("r", cfg.pof_r);
  cfg.pof_d = obj.value("d", cfg.pof_d);
  cfg.cycle_m = obj.value("m", cfg.cycle_m);
  cfg.random_n = obj.value("n", cfg.random_n);
  if (obj.contains("k_values")) cfg.k_values = obj["k_values"].get<std::vector<std::size_t>>();
  cfg.alpha = obj.value("alpha", cfg.alpha);
  if (obj.contains("sample_size") && !obj["sample_size"].is_null())
    cfg.sample_size = obj["sample_size"].get<std::size_t>();
  cfg.seed = obj.value("seed", cfg.seed);
  if (obj.contains("algorithms")) cfg.algorithms = obj["algorithms"].get<std::vector<std::string>>();
  cfg.psi = obj.value("psi", cfg.psi);
  if (obj.contains("search"))
    cfg.search = obj["search"].get<std::string>() == "binary" ? GuessSearch::binary
                                                              : GuessSearch::linear;
  cfg.timing = obj.value("timing", cfg.timing);
  cfg.output = obj.value("output", cfg.output);
  cfg.format = obj.value("format", cfg.format);
  return cfg;
}

}  // namespace eqcenter
