#pragma once

// Iterative backbone-placement optimizers sharing one loop:
//
//   sd-exact  x <- x - delta g,  delta = <g,g> / <g,Hg>
//   sd-fixed  x <- x - step g
//   newton    x <- x + d,        H d = -g
//   cg        x <- x + delta d,  delta = -<g,d> / <d,Hd>,
//             d' = -g' + beta d, beta = <g',Hd> / <d,Hd>
//
// Each iteration optionally re-derives the nearest assignment first, so the
// solvers minimise the piecewise quadratic objective rather than one piece.

#include "bbnet/cost.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bbnet {

enum class Method { SdExact, SdFixed, Newton, Cg };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::SdExact: return "sd-exact";
    case Method::SdFixed: return "sd-fixed";
    case Method::Newton: return "newton";
    case Method::Cg: return "cg";
  }
  return "unknown";
}

inline Method parse_method(std::string_view tag) {
  if (tag == "sd-exact") return Method::SdExact;
  if (tag == "sd-fixed") return Method::SdFixed;
  if (tag == "newton") return Method::Newton;
  if (tag == "cg") return Method::Cg;
  throw ConfigError("unknown solver '" + std::string(tag) + "' (expected sd-exact, sd-fixed, newton or cg)");
}

struct SolverConfig {
  Method method = Method::SdExact;
  std::optional<double> fixed_step;
  int max_iters = 10000;
  double grad_tol = 1e-6;
  double cost_tol = 0.0;
  bool reassign_each_iteration = true;
  bool record_trajectory = true;

  void validate() const {
    if (method == Method::SdFixed) {
      if (!fixed_step) throw ConfigError("sd-fixed requires a fixed step");
      if (!(*fixed_step > 0.0) || !std::isfinite(*fixed_step)) throw ConfigError("fixed step must be positive");
    } else if (fixed_step) {
      throw ConfigError("a fixed step is only valid for sd-fixed");
    }
    if (max_iters <= 0) throw ConfigError("max_iters must be positive");
    if (!(grad_tol > 0.0)) throw ConfigError("grad_tol must be positive");
    if (!(cost_tol >= 0.0)) throw ConfigError("cost_tol must be non-negative");
  }
};

inline SolverConfig sd_fixed_config(double step, int max_iters = 10000) {
  SolverConfig cfg;
  cfg.method = Method::SdFixed;
  cfg.fixed_step = step;
  cfg.max_iters = max_iters;
  return cfg;
}

enum class Termination { Converged, MaxIters, Diverged };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIters: return "max_iters";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

inline Termination parse_termination(std::string_view tag) {
  if (tag == "converged") return Termination::Converged;
  if (tag == "max_iters") return Termination::MaxIters;
  if (tag == "diverged") return Termination::Diverged;
  throw ParseError("termination: unknown value '" + std::string(tag) + "'");
}

struct SolverReport {
  Method method = Method::SdExact;
  CostBreakdown initial_cost;
  CostBreakdown final_cost;
  int iterations = 0;
  double final_grad_norm = 0.0;
  double elapsed_seconds = 0.0;
  Termination termination = Termination::MaxIters;
  std::vector<double> trajectory;
  // Newton steps that needed the diagonal shift.
  int regularized_steps = 0;

  friend bool operator==(const SolverReport&, const SolverReport&) = default;
};

struct OptimizeResult {
  NetworkInstance instance;
  SolverReport report;
};

// Cost above this multiple of the initial cost counts as divergence.
inline constexpr double kDivergenceFactor = 1e3;

/// Exact line-search step along -g for the quadratic with Hessian H.
/// Empty when <g, Hg> <= 0.
inline std::optional<double> sd_exact_step(const PlacementVector& g, const HessianMatrix& h) {
  const double curvature = g.dot(h * g);
  if (!(curvature > 0.0)) return std::nullopt;
  return g.squaredNorm() / curvature;
}

struct NewtonStep {
  PlacementVector direction;
  bool regularized = false;
};

/// Solves H d = -g; shifts H by 1e-8 * max(1, lambda_max) when H is not positive definite.
inline NewtonStep newton_step(const PlacementVector& g, const HessianMatrix& h) {
  NewtonStep step;
  HessianMatrix system = h;
  if (!is_positive_definite(h)) {
    const double mu = 1e-8 * std::max(1.0, max_eigenvalue(h));
    system.diagonal().array() += mu;
    step.regularized = true;
  }
  Eigen::LDLT<HessianMatrix> ldlt(system);
  if (ldlt.info() != Eigen::Success) throw SolverError("symmetric factorization failed");
  step.direction = ldlt.solve(-g);
  if (!step.direction.allFinite()) throw SolverError("newton step is not finite");
  return step;
}

namespace detail {

inline double inf_norm(const PlacementVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline bool finite(const CostBreakdown& c) {
  return std::isfinite(c.total) && std::isfinite(c.coverage) && std::isfinite(c.connectivity);
}

}  // namespace detail

inline OptimizeResult optimize(const NetworkInstance& start, const SolverConfig& cfg) {
  cfg.validate();
  validate(start);
  const auto t0 = std::chrono::steady_clock::now();

  NetworkInstance cur = start;
  SolverReport rep;
  rep.method = cfg.method;

  Assignment asg = nearest_assignment(cur);
  HessianMatrix h = hessian(cur, asg);
  rep.initial_cost = total_cost(cur, asg);
  rep.final_cost = rep.initial_cost;
  if (cfg.record_trajectory) rep.trajectory.push_back(rep.initial_cost.total);

  const std::size_t m = cur.backbone_count();
  const double blowup = kDivergenceFactor * std::abs(rep.initial_cost.total);
  double prev_total = rep.initial_cost.total;
  bool assignment_changed = false;

  // Conjugate-gradient state.
  PlacementVector cg_dir;
  PlacementVector cg_hdir;
  double cg_curv = 0.0;
  std::size_t since_restart = 0;

  PlacementVector x = to_placement(cur.backbones);
  for (int k = 0;; ++k) {
    const PlacementVector g = gradient(cur, asg);
    rep.final_grad_norm = detail::inf_norm(g);
    rep.iterations = k;

    if (!std::isfinite(rep.final_grad_norm)) {
      rep.termination = Termination::Diverged;
      break;
    }
    if (rep.final_grad_norm <= cfg.grad_tol) {
      rep.termination = Termination::Converged;
      break;
    }
    if (cfg.cost_tol > 0.0 && k > 0) {
      const double scale = std::max(std::abs(prev_total), std::numeric_limits<double>::min());
      if (std::abs(prev_total - rep.final_cost.total) / scale <= cfg.cost_tol) {
        rep.termination = Termination::Converged;
        break;
      }
    }
    if (k >= cfg.max_iters) {
      rep.termination = Termination::MaxIters;
      break;
    }

    PlacementVector d;
    double delta = 1.0;
    auto steepest_exact = [&] {
      d = -g;
      const auto s = sd_exact_step(g, h);
      delta = s ? *s : 1.0 / max_eigenvalue(h);
    };

    switch (cfg.method) {
      case Method::SdExact:
        steepest_exact();
        break;
      case Method::SdFixed:
        d = -g;
        delta = *cfg.fixed_step;
        break;
      case Method::Newton: {
        auto step = newton_step(g, h);
        d = std::move(step.direction);
        if (step.regularized) ++rep.regularized_steps;
        delta = 1.0;
        if (!(g.dot(d) < 0.0)) steepest_exact();
        break;
      }
      case Method::Cg: {
        const bool restart = k == 0 || assignment_changed || since_restart >= 2 * m;
        if (restart) {
          d = -g;
          since_restart = 0;
        } else {
          const double beta = g.dot(cg_hdir) / cg_curv;
          d = -g + beta * cg_dir;
          if (!(g.dot(d) < 0.0)) {
            d = -g;
            since_restart = 0;
          }
        }
        PlacementVector hd = h * d;
        double curv = d.dot(hd);
        if (!(curv > 0.0) && since_restart != 0) {
          d = -g;
          since_restart = 0;
          hd = h * d;
          curv = d.dot(hd);
        }
        delta = curv > 0.0 ? -g.dot(d) / curv : 1.0 / max_eigenvalue(h);
        cg_dir = d;
        cg_hdir = std::move(hd);
        cg_curv = curv;
        ++since_restart;
        break;
      }
    }

    x += delta * d;
    cur.backbones = from_placement(x);
    prev_total = rep.final_cost.total;

    if (cfg.reassign_each_iteration) {
      Assignment next = nearest_assignment(cur);
      assignment_changed = next != asg;
      if (assignment_changed) {
        asg = std::move(next);
        h = hessian(cur, asg);
      }
    }
    rep.final_cost = total_cost(cur, asg);
    if (cfg.record_trajectory) rep.trajectory.push_back(rep.final_cost.total);

    if (!detail::finite(rep.final_cost) || rep.final_cost.total > blowup) {
      rep.iterations = k + 1;
      rep.final_grad_norm = detail::inf_norm(gradient(cur, asg));
      rep.termination = Termination::Diverged;
      break;
    }
  }

  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(cur), std::move(rep)};
}

/// Conjugate-gradient run; `cfg.method` is overridden.
inline OptimizeResult cg_run(const NetworkInstance& inst, SolverConfig cfg) {
  cfg.method = Method::Cg;
  cfg.fixed_step.reset();
  return optimize(inst, cfg);
}

}  // namespace bbnet
