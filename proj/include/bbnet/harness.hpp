#pragma once

// Multi-trial solver comparison, lambda and step sweeps, and an independent
// alternating-minimisation reference optimizer.

#include "bbnet/generator.hpp"
#include "bbnet/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bbnet {

struct MethodSummary {
  Method method = Method::SdExact;
  double mean_initial_cost = 0.0;
  double mean_final_cost = 0.0;
  double mean_iterations = 0.0;
  double mean_elapsed_seconds = 0.0;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t method_index = 0;
  SolverReport report;
  NetworkInstance final_instance;
};

struct BatchSummary {
  std::vector<MethodSummary> per_method;  // same order as the requested methods
  std::vector<TrialRecord> per_trial;     // trial-major, then method order
  GeneratorConfig generator;
  double lambda = 1.0;
  std::vector<SolverConfig> methods;
  std::size_t trials = 0;
};

/// A solver failure inside a batch, tagged with the offending trial.
class BatchError : public SolverError {
 public:
  BatchError(std::uint64_t seed, Method method, const std::string& what)
      : SolverError("seed " + std::to_string(seed) + ", method " + std::string(to_string(method)) + ": " + what),
        seed_(seed),
        method_(method) {}

  std::uint64_t seed() const { return seed_; }
  Method method() const { return method_; }

 private:
  std::uint64_t seed_;
  Method method_;
};

struct BatchOptions {
  // 0 picks the hardware concurrency.
  unsigned threads = 1;
};

namespace detail {

/// Runs `task(i)` for i in [0, count) on up to `threads` workers.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_index = count;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (i < failed_index) {
            failed_index = i;
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Trial t uses seed gen_cfg.seed + t; every method starts from that trial's instance.
inline BatchSummary run_batch(const GeneratorConfig& gen_cfg, double lambda, const std::vector<SolverConfig>& methods,
                              std::size_t trials, const BatchOptions& opts = {}) {
  if (trials == 0) throw ConfigError("trials must be positive");
  if (methods.empty()) throw ConfigError("at least one method is required");
  gen_cfg.validate();
  for (const auto& m : methods) m.validate();

  BatchSummary out;
  out.generator = gen_cfg;
  out.lambda = lambda;
  out.methods = methods;
  out.trials = trials;
  out.per_trial.resize(trials * methods.size());

  detail::parallel_for(trials, opts.threads, [&](std::size_t t) {
    GeneratorConfig cfg = gen_cfg;
    cfg.seed = gen_cfg.seed + t;
    const NetworkInstance inst = generate_instance(cfg, lambda);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      OptimizeResult res;
      try {
        res = optimize(inst, methods[mi]);
      } catch (const std::exception& e) {
        throw BatchError(cfg.seed, methods[mi].method, e.what());
      }
      out.per_trial[t * methods.size() + mi] = {cfg.seed, mi, std::move(res.report), std::move(res.instance)};
    }
  });

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    MethodSummary s;
    s.method = methods[mi].method;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& r = out.per_trial[t * methods.size() + mi].report;
      s.mean_initial_cost += r.initial_cost.total;
      s.mean_final_cost += r.final_cost.total;
      s.mean_iterations += r.iterations;
      s.mean_elapsed_seconds += r.elapsed_seconds;
    }
    const double n = static_cast<double>(trials);
    s.mean_initial_cost /= n;
    s.mean_final_cost /= n;
    s.mean_iterations /= n;
    s.mean_elapsed_seconds /= n;
    out.per_method.push_back(s);
  }
  return out;
}

/// Mean Euclidean length over backbone links; 0 without links.
inline double mean_connected_pair_distance(const NetworkInstance& inst) {
  if (inst.edges.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : inst.edges) sum += distance(inst.backbones[e.a], inst.backbones[e.b]);
  return sum / static_cast<double>(inst.edges.size());
}

/// Mean distance from each host to its nearest backbone; 0 without hosts.
inline double mean_host_cover_distance(const NetworkInstance& inst) {
  if (inst.hosts.empty()) return 0.0;
  const auto asg = nearest_assignment(inst);
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.host_count(); ++i) sum += distance(inst.hosts[i], inst.backbones[asg[i]]);
  return sum / static_cast<double>(inst.host_count());
}

struct LambdaSweepRow {
  double lambda = 0.0;
  BatchSummary batch;
  double mean_backbone_pair_distance = 0.0;
  double mean_host_cover_distance = 0.0;
};

inline std::vector<LambdaSweepRow> lambda_sweep(const GeneratorConfig& gen_cfg, const std::vector<double>& lambdas,
                                                const SolverConfig& cfg, std::size_t trials,
                                                const BatchOptions& opts = {}) {
  if (lambdas.empty()) throw ConfigError("lambda sweep needs at least one value");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw ConfigError("lambda sweep values must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw ConfigError("lambda sweep values must be ascending");
  }
  std::vector<LambdaSweepRow> rows;
  for (double lambda : lambdas) {
    LambdaSweepRow row;
    row.lambda = lambda;
    row.batch = run_batch(gen_cfg, lambda, {cfg}, trials, opts);
    for (const auto& rec : row.batch.per_trial) {
      row.mean_backbone_pair_distance += mean_connected_pair_distance(rec.final_instance);
      row.mean_host_cover_distance += mean_host_cover_distance(rec.final_instance);
    }
    row.mean_backbone_pair_distance /= static_cast<double>(row.batch.per_trial.size());
    row.mean_host_cover_distance /= static_cast<double>(row.batch.per_trial.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

struct StepSweepRow {
  double step = 0.0;
  Termination termination = Termination::MaxIters;
  double final_cost = 0.0;
  int iterations = 0;
};

/// One sd-fixed run per step from the same placement. `reassign` selects the
/// piecewise objective; the default keeps the initial assignment so the run
/// is governed by stable_step_interval of that piece.
inline std::vector<StepSweepRow> step_sweep(const NetworkInstance& inst, const std::vector<double>& steps,
                                            int max_iters, bool reassign = false) {
  if (steps.empty()) throw ConfigError("step sweep needs at least one value");
  std::vector<StepSweepRow> rows;
  for (double step : steps) {
    SolverConfig cfg = sd_fixed_config(step, max_iters);
    cfg.reassign_each_iteration = reassign;
    cfg.record_trajectory = false;
    const auto res = optimize(inst, cfg);
    rows.push_back({step, res.report.termination, res.report.final_cost.total, res.report.iterations});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Reference optimizer. It assembles the per-axis normal equations
//
//   (2 n_j + 4 lambda deg_j) X_j - 4 lambda sum_k C_jk X_k = 2 sum_{i->j} x_i
//
// directly from the instance and solves them with its own Cholesky
// factorisation, so it shares nothing with the solver loop except the
// nearest-assignment rule.

struct OracleResult {
  NetworkInstance instance;
  CostBreakdown cost;
  Assignment assignment;
  int alternations = 0;
  std::vector<double> cost_history;
  bool regularized = false;
};

namespace detail {

/// In-place dense Cholesky; false if a pivot is not positive.
inline bool cholesky_factor(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
  }
  return true;
}

inline std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * n + k] * b[k];
    b[i] /= l[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) b[ii] -= l[k * n + ii] * b[k];
    b[ii] /= l[ii * n + ii];
  }
  return b;
}

}  // namespace detail

/// Exact minimiser of the quadratic piece with assignment `asg`.
/// Sets `regularized` when the system needed a diagonal shift.
inline std::vector<Point2> solve_fixed_assignment(const NetworkInstance& inst, const Assignment& asg,
                                                  bool* regularized = nullptr) {
  const std::size_t m = inst.backbone_count();
  std::vector<double> a(m * m, 0.0);
  std::vector<double> bx(m, 0.0), by(m, 0.0);
  for (std::size_t i = 0; i < inst.host_count(); ++i) {
    const std::size_t j = asg.covering[i];
    a[j * m + j] += 2.0;
    bx[j] += 2.0 * inst.hosts[i].x;
    by[j] += 2.0 * inst.hosts[i].y;
  }
  const double w = 4.0 * inst.lambda;
  for (const auto& e : inst.edges) {
    a[e.a * m + e.a] += w;
    a[e.b * m + e.b] += w;
    a[e.a * m + e.b] -= w;
    a[e.b * m + e.a] -= w;
  }

  std::vector<double> l = a;
  bool shifted = false;
  if (!detail::cholesky_factor(l, m)) {
    // Gershgorin bound on the largest eigenvalue.
    double top = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      double row = 0.0;
      for (std::size_t c = 0; c < m; ++c) row += std::abs(a[r * m + c]);
      top = std::max(top, row);
    }
    const double mu = 1e-8 * std::max(1.0, top);
    l = a;
    for (std::size_t r = 0; r < m; ++r) l[r * m + r] += mu;
    if (!detail::cholesky_factor(l, m)) throw SolverError("oracle: normal equations are not factorable");
    shifted = true;
  }
  if (regularized) *regularized = shifted;

  const auto xs = detail::cholesky_solve(l, m, bx);
  const auto ys = detail::cholesky_solve(l, m, by);
  std::vector<Point2> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    // Keep a host-less, link-less backbone where it is.
    const bool isolated = a[j * m + j] == 0.0;
    out[j] = isolated ? inst.backbones[j] : Point2{xs[j], ys[j]};
  }
  return out;
}

inline constexpr int kOracleMaxAlternations = 1000;

inline OracleResult oracle_optimize(const NetworkInstance& inst) {
  validate(inst);
  OracleResult res;
  res.instance = inst;
  res.assignment = nearest_assignment(res.instance);
  res.cost_history.push_back(total_cost(res.instance, res.assignment).total);
  for (int it = 0; it < kOracleMaxAlternations; ++it) {
    bool shifted = false;
    res.instance.backbones = solve_fixed_assignment(res.instance, res.assignment, &shifted);
    res.regularized = res.regularized || shifted;
    ++res.alternations;
    const Assignment next = nearest_assignment(res.instance);
    res.cost_history.push_back(total_cost(res.instance, next).total);
    if (next == res.assignment) {
      res.cost = total_cost(res.instance, res.assignment);
      return res;
    }
    res.assignment = next;
  }
  throw SolverError("oracle: assignment still changing after " + std::to_string(kOracleMaxAlternations) +
                    " alternations");
}

}  // namespace bbnet
