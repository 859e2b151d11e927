#pragma once

#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "eqcenter/instance.hpp"
#include "eqcenter/metrics.hpp"

namespace eqcenter {

using nlohmann::json;

/// Instance wire format: {n, distances (row-major), sets, k, alpha, variant}.
/// Doubles are printed with 17 significant digits, so round-trips are
/// loss-free.
inline json instance_to_json(const Instance& inst) {
  json obj;
  obj["n"] = inst.size();
  obj["distances"] = inst.d.flat();
  obj["sets"] = inst.sim.sets;
  obj["k"] = inst.k;
  obj["alpha"] = inst.alpha;
  obj["variant"] = to_string(inst.variant);
  return obj;
}

inline Instance instance_from_json(const json& obj) {
  const std::size_t n = obj.at("n").get<std::size_t>();
  auto d = DistanceMatrix::from_flat(n, obj.at("distances").get<std::vector<double>>());
  auto sim = SimilarityFamily::from_sets(obj.at("sets").get<std::vector<std::vector<PointId>>>(), d);
  return Instance::make(std::move(d), std::move(sim), obj.at("k").get<std::size_t>(),
                        obj.at("alpha").get<double>(),
                        variant_from_string(obj.at("variant").get<std::string>()));
}

inline json solution_to_json(const Solution& sol) {
  json obj;
  obj["centers"] = sol.centers;
  obj["assignment"] = sol.assignment;
  obj["value"] = sol.value;
  return obj;
}

inline Solution solution_from_json(const json& obj) {
  Solution sol;
  sol.centers = obj.at("centers").get<std::vector<PointId>>();
  sol.assignment = obj.at("assignment").get<std::vector<PointId>>();
  sol.value = obj.value("value", 0.0);
  return sol;
}

namespace detail {

inline json extended_real(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (*v == std::numeric_limits<double>::infinity()) return "inf";
  return *v;
}

}  // namespace detail

/// Flat report object; +infinity encodes as the string "inf", absent maxima
/// as null.
inline json metrics_to_json(const MetricsReport& report) {
  json obj;
  obj["max_distance"] = report.max_distance;
  obj["max_f_pp_strict"] = detail::extended_real(report.max_f_pp_strict);
  obj["max_f_pp_lenient"] = detail::extended_real(report.max_f_pp_lenient);
  obj["max_f_ag_strict"] = detail::extended_real(report.max_f_ag_strict);
  obj["max_f_ag_lenient"] = detail::extended_real(report.max_f_ag_lenient);
  obj["violation_fraction_pp"] = report.violation_fraction_pp;
  obj["violation_fraction_ag"] = report.violation_fraction_ag;
  obj["center_ratio"] = report.center_ratio;
  return obj;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json obj;
  in >> obj;
  return obj;
}

inline void save_json_file(const std::string& path, const json& obj) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << obj.dump(2) << "\n";
}

}  // namespace eqcenter
