#pragma once

// JSON report documents and CSV tables.
//
// Trial CSV columns (fixed):
//   seed,method,lambda,initial_cost,final_cost,coverage_cost,connectivity_cost,
//   iterations,grad_norm,elapsed_seconds,termination

#include "bbnet/harness.hpp"
#include "bbnet/instance_io.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace bbnet {

using json = nlohmann::ordered_json;

namespace detail {

// JSON has no inf/nan; those are written as strings.
inline json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline double real_from_json(const json& node, const char* field) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) {
    const auto s = node.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError(std::string(field) + ": expected a number");
}

inline const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw ParseError(std::string(name) + ": missing field");
  return doc.at(name);
}

inline std::string csv_real(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  return nlohmann::json(v).dump();
}

}  // namespace detail

inline json to_json(const CostBreakdown& c) {
  return {{"coverage", detail::real_to_json(c.coverage)},
          {"connectivity", detail::real_to_json(c.connectivity)},
          {"total", detail::real_to_json(c.total)}};
}

inline CostBreakdown cost_from_json(const json& doc) {
  return {detail::real_from_json(detail::field(doc, "coverage"), "coverage"),
          detail::real_from_json(detail::field(doc, "connectivity"), "connectivity"),
          detail::real_from_json(detail::field(doc, "total"), "total")};
}

inline json to_json(const SolverConfig& cfg) {
  json j = {{"method", std::string(to_string(cfg.method))}};
  if (cfg.fixed_step) j["fixed_step"] = *cfg.fixed_step;
  j["max_iters"] = cfg.max_iters;
  j["grad_tol"] = cfg.grad_tol;
  j["cost_tol"] = cfg.cost_tol;
  j["reassign_each_iteration"] = cfg.reassign_each_iteration;
  return j;
}

inline SolverConfig solver_config_from_json(const json& doc) {
  SolverConfig cfg;
  cfg.method = parse_method(detail::field(doc, "method").get<std::string>());
  if (doc.contains("fixed_step")) cfg.fixed_step = doc.at("fixed_step").get<double>();
  cfg.max_iters = detail::field(doc, "max_iters").get<int>();
  cfg.grad_tol = detail::field(doc, "grad_tol").get<double>();
  cfg.cost_tol = detail::field(doc, "cost_tol").get<double>();
  cfg.reassign_each_iteration = detail::field(doc, "reassign_each_iteration").get<bool>();
  return cfg;
}

inline json to_json(const GeneratorConfig& cfg) {
  return {{"n_hosts", cfg.n_hosts},
          {"m_backbones", cfg.m_backbones},
          {"plane", {cfg.plane.width, cfg.plane.height}},
          {"cluster_prob", cfg.cluster_prob},
          {"cluster_range", cfg.cluster_range},
          {"seed", cfg.seed}};
}

inline json to_json(const SolverReport& r) {
  json traj = json::array();
  for (double v : r.trajectory) traj.push_back(detail::real_to_json(v));
  return {{"method", std::string(to_string(r.method))},
          {"initial_cost", to_json(r.initial_cost)},
          {"final_cost", to_json(r.final_cost)},
          {"iterations", r.iterations},
          {"final_grad_norm", detail::real_to_json(r.final_grad_norm)},
          {"elapsed_seconds", r.elapsed_seconds},
          {"termination", std::string(to_string(r.termination))},
          {"regularized_steps", r.regularized_steps},
          {"trajectory", std::move(traj)}};
}

inline SolverReport report_from_json(const json& doc) {
  try {
    SolverReport r;
    r.method = parse_method(detail::field(doc, "method").get<std::string>());
    r.initial_cost = cost_from_json(detail::field(doc, "initial_cost"));
    r.final_cost = cost_from_json(detail::field(doc, "final_cost"));
    r.iterations = detail::field(doc, "iterations").get<int>();
    r.final_grad_norm = detail::real_from_json(detail::field(doc, "final_grad_norm"), "final_grad_norm");
    r.elapsed_seconds = detail::field(doc, "elapsed_seconds").get<double>();
    r.termination = parse_termination(detail::field(doc, "termination").get<std::string>());
    r.regularized_steps = detail::field(doc, "regularized_steps").get<int>();
    for (const auto& v : detail::field(doc, "trajectory")) r.trajectory.push_back(detail::real_from_json(v, "trajectory"));
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

/// Single-run report: the solver report plus the configuration that produced it.
inline json optimize_document(const SolverReport& r, const SolverConfig& cfg, const NetworkInstance& start,
                              const NetworkInstance& final_instance) {
  json backbones = json::array();
  for (const auto& p : final_instance.backbones) backbones.push_back({p.x, p.y});
  return {{"report", to_json(r)},
          {"config", to_json(cfg)},
          {"lambda", start.lambda},
          {"hosts", start.host_count()},
          {"backbones", start.backbone_count()},
          {"final_backbones", std::move(backbones)}};
}

inline json to_json(const BatchSummary& s) {
  json methods = json::array();
  for (const auto& m : s.methods) methods.push_back(to_json(m));
  json per_method = json::array();
  for (const auto& m : s.per_method) {
    per_method.push_back({{"method", std::string(to_string(m.method))},
                          {"mean_initial_cost", m.mean_initial_cost},
                          {"mean_final_cost", m.mean_final_cost},
                          {"mean_iterations", m.mean_iterations},
                          {"mean_elapsed_seconds", m.mean_elapsed_seconds}});
  }
  json trials = json::array();
  for (const auto& t : s.per_trial) {
    json r = to_json(t.report);
    r.erase("trajectory");
    trials.push_back({{"seed", t.seed}, {"report", std::move(r)}});
  }
  return {{"config", {{"generator", to_json(s.generator)}, {"lambda", s.lambda}, {"trials", s.trials},
                      {"methods", std::move(methods)}}},
          {"per_method", std::move(per_method)},
          {"per_trial", std::move(trials)}};
}

inline constexpr const char* kTrialCsvHeader =
    "seed,method,lambda,initial_cost,final_cost,coverage_cost,connectivity_cost,iterations,grad_norm,"
    "elapsed_seconds,termination";

inline std::string trials_csv(const BatchSummary& s) {
  using detail::csv_real;
  std::ostringstream out;
  out << kTrialCsvHeader << '\n';
  for (const auto& t : s.per_trial) {
    const auto& r = t.report;
    out << t.seed << ',' << to_string(r.method) << ',' << csv_real(s.lambda) << ',' << csv_real(r.initial_cost.total)
        << ',' << csv_real(r.final_cost.total) << ',' << csv_real(r.final_cost.coverage) << ','
        << csv_real(r.final_cost.connectivity) << ',' << r.iterations << ',' << csv_real(r.final_grad_norm) << ','
        << csv_real(r.elapsed_seconds) << ',' << to_string(r.termination) << '\n';
  }
  return out.str();
}

inline constexpr const char* kLambdaSweepCsvHeader =
    "lambda,method,mean_initial_cost,mean_final_cost,mean_iterations,mean_elapsed_seconds,"
    "mean_backbone_pair_distance,mean_host_cover_distance";

inline std::string lambda_sweep_csv(const std::vector<LambdaSweepRow>& rows) {
  using detail::csv_real;
  std::ostringstream out;
  out << kLambdaSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& m = row.batch.per_method.front();
    out << csv_real(row.lambda) << ',' << to_string(m.method) << ',' << csv_real(m.mean_initial_cost) << ','
        << csv_real(m.mean_final_cost) << ',' << csv_real(m.mean_iterations) << ','
        << csv_real(m.mean_elapsed_seconds) << ',' << csv_real(row.mean_backbone_pair_distance) << ','
        << csv_real(row.mean_host_cover_distance) << '\n';
  }
  return out.str();
}

inline constexpr const char* kStepSweepCsvHeader = "step,termination,final_cost,iterations,within_stable_interval";

inline std::string step_sweep_csv(const std::vector<StepSweepRow>& rows, const StepInterval& interval) {
  using detail::csv_real;
  std::ostringstream out;
  out << kStepSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    out << csv_real(row.step) << ',' << to_string(row.termination) << ',' << csv_real(row.final_cost) << ','
        << row.iterations << ',' << (interval.contains(row.step) ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace bbnet
