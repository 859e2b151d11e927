#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqcenter/assignment.hpp"
#include "eqcenter/baseline.hpp"
#include "eqcenter/bench.hpp"
#include "eqcenter/eqsolver.hpp"
#include "eqcenter/io.hpp"
#include "eqcenter/oracle.hpp"

namespace eqcenter {

/// Exit codes: 0 success, 1 usage error, 2 infeasibility verdict.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

namespace detail {

inline void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(output_path);
    if (!file) throw std::runtime_error("cannot write file: " + output_path);
    file << text;
  }
}

inline std::vector<PointId> load_centers_file(const std::string& path) {
  const json obj = load_json_file(path);
  if (obj.is_array()) return obj.get<std::vector<PointId>>();
  return obj.at("centers").get<std::vector<PointId>>();
}

inline GuessSearch parse_search(const std::string& s) {
  if (s == "linear") return GuessSearch::linear;
  if (s == "binary") return GuessSearch::binary;
  throw CLI::ValidationError("--search must be linear or binary");
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Subcommands: solve,
/// bench, generate, assign, oracle, check.
inline int cli_main(std::vector<std::string> args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"alpha-equitable k-center solver and benchmark harness", "eqcenter"};
  app.require_subcommand(1);

  // --- solve ------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance file with one algorithm");
  std::string solve_instance, solve_algorithm = "alg-pp", solve_search = "linear";
  std::string solve_mode, solve_variant, solve_output;
  std::optional<std::size_t> solve_k;
  std::optional<double> solve_alpha;
  solve_cmd->add_option("--instance", solve_instance, "instance JSON path")->required();
  solve_cmd->add_option("--algorithm", solve_algorithm,
                        "alg-pp | alg-ag | pseudo-pof | gonzalez | hs");
  solve_cmd->add_option("--k", solve_k, "override the instance's k");
  solve_cmd->add_option("--alpha", solve_alpha, "override the instance's alpha");
  solve_cmd->add_option("--variant", solve_variant, "override the instance's variant (pp|ag)");
  solve_cmd->add_option("--mode", solve_mode, "standard | pseudo-pof");
  solve_cmd->add_option("--search", solve_search, "linear | binary");
  solve_cmd->add_option("--output", solve_output, "write the solution JSON here");

  // --- bench ------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "run the experiment pipeline");
  std::string bench_config, bench_dataset, bench_generator, bench_kvalues, bench_algorithms;
  std::string bench_search, bench_output, bench_format;
  std::optional<double> bench_alpha, bench_psi, bench_r, bench_d;
  std::optional<std::size_t> bench_sample, bench_m, bench_n;
  std::optional<std::uint64_t> bench_seed;
  bool bench_timing = false;
  bench_cmd->add_option("--config", bench_config, "JSON config file (flags override it)");
  bench_cmd->add_option("--dataset", bench_dataset, "CSV dataset path");
  bench_cmd->add_option("--generator", bench_generator, "pof | cycle | random");
  bench_cmd->add_option("--r", bench_r, "pof generator: within-pair distance");
  bench_cmd->add_option("--d", bench_d, "pof generator: cross-pair distance");
  bench_cmd->add_option("--m", bench_m, "cycle generator: half the point count");
  bench_cmd->add_option("--n", bench_n, "random generator: point count");
  bench_cmd->add_option("--k-values", bench_kvalues, "comma-separated k sweep");
  bench_cmd->add_option("--alpha", bench_alpha, "fairness factor");
  bench_cmd->add_option("--psi", bench_psi, "similarity ceiling factor");
  bench_cmd->add_option("--sample-size", bench_sample, "subsample size");
  bench_cmd->add_option("--seed", bench_seed, "RNG seed");
  bench_cmd->add_option("--algorithms", bench_algorithms, "comma-separated algorithm subset");
  bench_cmd->add_option("--search", bench_search, "linear | binary");
  bench_cmd->add_flag("--timing", bench_timing, "measure wall times (breaks byte-reproducibility)");
  bench_cmd->add_option("--output", bench_output, "write the table here");
  bench_cmd->add_option("--format", bench_format, "csv | json");

  // --- generate ----------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("generate", "emit an instance JSON");
  gen_cmd->require_subcommand(1);
  auto* gen_cycle = gen_cmd->add_subcommand("cycle", "cycle hard instance (2m points)");
  auto* gen_pof = gen_cmd->add_subcommand("pof", "four-point price-of-fairness instance");
  auto* gen_random = gen_cmd->add_subcommand("random", "random Euclidean instance");
  std::size_t gen_m = 8, gen_n = 16, gen_k = 2, gen_dim = 2;
  double gen_r = 1.0, gen_big_d = 10.0, gen_alpha = 2.0;
  std::optional<double> gen_rf;
  std::string gen_variant = "pp", gen_output;
  std::uint64_t gen_seed = 0;
  gen_cycle->add_option("--m", gen_m, "m (even, with m/2 even)")->required();
  gen_pof->add_option("--r", gen_r, "within-pair distance")->required();
  gen_pof->add_option("--d", gen_big_d, "cross-pair distance")->required();
  gen_random->add_option("--n", gen_n, "point count")->required();
  gen_random->add_option("--k", gen_k, "center budget");
  gen_random->add_option("--dim", gen_dim, "feature dimensions");
  gen_random->add_option("--seed", gen_seed, "RNG seed");
  gen_random->add_option("--r-f", gen_rf, "similarity radius scale (default: filter value at k)");
  for (auto* sub : {gen_cycle, gen_pof, gen_random}) {
    sub->add_option("--alpha", gen_alpha, "fairness factor");
    sub->add_option("--variant", gen_variant, "pp | ag");
    sub->add_option("--output", gen_output, "write the instance JSON here");
  }

  // --- assign -------------------------------------------------------------
  auto* assign_cmd = app.add_subcommand("assign", "optimal assignment for fixed centers");
  std::string assign_instance, assign_centers, assign_output;
  std::optional<double> assign_guess;
  assign_cmd->add_option("--instance", assign_instance, "instance JSON path")->required();
  assign_cmd->add_option("--centers", assign_centers, "centers JSON path")->required();
  assign_cmd->add_option("--guess", assign_guess, "value guess (default: search for the optimum)");
  assign_cmd->add_option("--output", assign_output, "write the solution JSON here");

  // --- oracle -------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force values for a small instance");
  std::string oracle_instance;
  std::size_t oracle_max_points = OracleBudget{}.max_points;
  std::size_t oracle_max_k = OracleBudget{}.max_k;
  oracle_cmd->add_option("--instance", oracle_instance, "instance JSON path")->required();
  oracle_cmd->add_option("--max-points", oracle_max_points, "budget: point cap");
  oracle_cmd->add_option("--max-k", oracle_max_k, "budget: k cap");

  // --- check ---------------------------------------------------------------
  auto* check_cmd = app.add_subcommand("check", "fairness check plus metrics for a solution");
  std::string check_instance, check_solution;
  std::string check_variant;
  std::optional<double> check_alpha;
  check_cmd->add_option("--instance", check_instance, "instance JSON path")->required();
  check_cmd->add_option("--solution", check_solution, "solution JSON path")->required();
  check_cmd->add_option("--variant", check_variant, "override the instance's variant (pp|ag)");
  check_cmd->add_option("--alpha", check_alpha, "override the instance's alpha");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*solve_cmd) {
      auto inst = instance_from_json(load_json_file(solve_instance));
      if (solve_k) inst.k = *solve_k;
      if (solve_alpha) inst.alpha = *solve_alpha;
      if (!solve_variant.empty()) inst.variant = variant_from_string(solve_variant);

      Solution sol;
      if (solve_algorithm == "gonzalez") {
        sol = gonzalez(inst.d, inst.k);
      } else if (solve_algorithm == "hs") {
        sol = hochbaum_shmoys(inst.d, inst.k).first;
      } else {
        if (solve_algorithm == "alg-pp")
          inst.variant = FairnessVariant::PP;
        else if (solve_algorithm == "alg-ag")
          inst.variant = FairnessVariant::AG;
        else if (solve_algorithm != "pseudo-pof")
          throw std::invalid_argument("unknown algorithm: " + solve_algorithm);
        if (!solve_mode.empty() && solve_mode != "standard" && solve_mode != "pseudo-pof")
          throw std::invalid_argument("--mode must be standard or pseudo-pof");
        const SolveMode mode = (solve_algorithm == "pseudo-pof" || solve_mode == "pseudo-pof")
                                   ? SolveMode::pseudo_pof
                                   : SolveMode::standard;
        sol = solve(inst, mode, detail::parse_search(solve_search)).solution;
      }
      detail::emit(solution_to_json(sol).dump(2) + "\n", solve_output, out);
      return kExitOk;
    }

    if (*bench_cmd) {
      ExperimentConfig cfg;
      if (!bench_config.empty()) cfg = config_from_json(load_json_file(bench_config));
      if (!bench_dataset.empty()) cfg.dataset = bench_dataset;
      if (!bench_generator.empty()) cfg.generator = bench_generator;
      if (bench_r) cfg.pof_r = *bench_r;
      if (bench_d) cfg.pof_d = *bench_d;
      if (bench_m) cfg.cycle_m = *bench_m;
      if (bench_n) cfg.random_n = *bench_n;
      if (!bench_kvalues.empty()) {
        cfg.k_values.clear();
        std::stringstream ss(bench_kvalues);
        for (std::string tok; std::getline(ss, tok, ',');)
          cfg.k_values.push_back(std::stoull(tok));
      }
      if (bench_alpha) cfg.alpha = *bench_alpha;
      if (bench_psi) cfg.psi = *bench_psi;
      if (bench_sample) cfg.sample_size = *bench_sample;
      if (bench_seed) cfg.seed = *bench_seed;
      if (!bench_algorithms.empty()) {
        cfg.algorithms.clear();
        std::stringstream ss(bench_algorithms);
        for (std::string tok; std::getline(ss, tok, ',');) cfg.algorithms.push_back(tok);
      }
      if (!bench_search.empty()) cfg.search = detail::parse_search(bench_search);
      if (bench_timing) cfg.timing = true;
      if (!bench_output.empty()) cfg.output = bench_output;
      if (!bench_format.empty()) cfg.format = bench_format;
      if (cfg.dataset.empty() && cfg.generator.empty())
        throw CLI::ValidationError("bench needs --dataset or --generator (or a config file)");

      // Desk-scale defaults for flag-driven dataset runs: a 500-point
      // subsample (capped at the row count) and k in {2,4,8,16,32}. A config
      // file or explicit flags get the values as given.
      if (bench_config.empty() && !cfg.dataset.empty()) {
        if (!bench_sample) {
          cfg.sample_size = 500;
          cfg.cap_sample_to_rows = true;
        }
        if (bench_kvalues.empty()) cfg.k_values = {2, 4, 8, 16, 32};
      }

      auto result = run_experiment(cfg);
      for (const auto& w : result.warnings) err << "warning: " << w << "\n";
      if (cfg.timing) err << "distance_build_ms: " << result.distance_build_ms << "\n";
      const std::string text = cfg.format == "json" ? result_to_json(result).dump(2) + "\n"
                                                    : to_csv(result);
      detail::emit(text, cfg.output, out);
      return kExitOk;
    }

    if (*gen_cmd) {
      Instance inst;
      const auto variant = variant_from_string(gen_variant);
      if (*gen_cycle) {
        inst = generate_cycle_instance(gen_m, gen_alpha, variant);
      } else if (*gen_pof) {
        inst = generate_pof_instance(gen_r, gen_big_d, gen_alpha, variant);
      } else {
        Rng rng(gen_seed);
        std::vector<std::vector<double>> feats(gen_n, std::vector<double>(gen_dim));
        for (auto& row : feats)
          for (double& v : row) v = rng.uniform01();
        auto d = build_euclidean(dataset_from_features(feats), {});
        const double r_f = gen_rf ? *gen_rf : hochbaum_shmoys(d, gen_k).second.r_f;
        auto sim = construct_similarity_sets(d, r_f, detail::mix_seed(gen_seed, 1));
        inst = Instance::make(std::move(d), std::move(sim), gen_k, gen_alpha, variant);
      }
      detail::emit(instance_to_json(inst).dump(2) + "\n", gen_output, out);
      return kExitOk;
    }

    if (*assign_cmd) {
      const auto inst = instance_from_json(load_json_file(assign_instance));
      const auto centers = detail::load_centers_file(assign_centers);
      if (assign_guess) {
        auto outcome = optimal_assignment(inst, centers, *assign_guess);
        if (!outcome.feasible()) {
          err << "infeasible: no assignment of value <= " << format_double17(*assign_guess)
              << " satisfies the constraints\n";
          return kExitInfeasible;
        }
        detail::emit(solution_to_json(*outcome.solution).dump(2) + "\n", assign_output, out);
        return kExitOk;
      }
      auto best = optimal_value_for_centers(inst, centers);
      if (!best) {
        err << "infeasible: no assignment satisfies the constraints at any value\n";
        return kExitInfeasible;
      }
      detail::emit(solution_to_json(best->solution).dump(2) + "\n", assign_output, out);
      return kExitOk;
    }

    if (*oracle_cmd) {
      const auto inst = instance_from_json(load_json_file(oracle_instance));
      OracleBudget budget;
      budget.max_points = oracle_max_points;
      budget.max_k = oracle_max_k;

      json obj;
      obj["unfair"] = brute_unfair_optimum(inst.d, inst.k, budget);
      auto pp_inst = inst;
      pp_inst.variant = FairnessVariant::PP;
      auto ag_inst = inst;
      ag_inst.variant = FairnessVariant::AG;
      const auto fair_pp = brute_fair_optimum(pp_inst, budget);
      const auto fair_ag = brute_fair_optimum(ag_inst, budget);
      obj["fair_pp"] = fair_pp ? json(*fair_pp) : json("infeasible");
      obj["fair_ag"] = fair_ag ? json(*fair_ag) : json("infeasible");
      out << obj.dump(2) << "\n";
      return (fair_pp && fair_ag) ? kExitOk : kExitInfeasible;
    }

    if (*check_cmd) {
      auto inst = instance_from_json(load_json_file(check_instance));
      if (!check_variant.empty()) inst.variant = variant_from_string(check_variant);
      if (check_alpha) inst.alpha = *check_alpha;
      const auto sol = solution_from_json(load_json_file(check_solution));
      const auto report = check_fairness(inst, sol);
      const auto metrics = evaluate(inst, sol);

      json violations = json::array();
      for (const auto& v : report.violations)
        violations.push_back({{"point", v.point}, {"dist", v.dist}, {"bound", v.bound}});
      json result;
      result["satisfied"] = report.all_satisfied();
      result["violations"] = violations;
      result["metrics"] = metrics_to_json(metrics);
      out << result.dump(2) << "\n";
      return report.all_satisfied() ? kExitOk : kExitInfeasible;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace eqcenter
