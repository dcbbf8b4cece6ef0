#pragma once

// Coverage/connectivity cost of a backbone placement and its derivatives.
//
//   coverage      f1 = sum_i |h_i - B_a(i)|^2
//   connectivity  f2 = sum_j sum_k |B_j - B_k|^2 C_jk   (ordered pairs, each link twice)
//   total         f  = f1 + lambda * f2
//
// With the assignment a(.) held fixed, f is a convex quadratic in the stacked
// backbone coordinates. Its Hessian 2 diag(n_j) (x) I2 + 4 lambda (D - C) (x) I2
// does not depend on the placement.

#include "bbnet/core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace bbnet {

struct CostBreakdown {
  double coverage = 0.0;
  double connectivity = 0.0;
  double total = 0.0;

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// Nearest backbone per host; ties go to the lowest backbone index.
inline Assignment nearest_assignment(const NetworkInstance& inst) {
  Assignment asg;
  asg.covering.resize(inst.host_count());
  for (std::size_t i = 0; i < inst.host_count(); ++i) {
    std::size_t best = 0;
    double best_d2 = squared_distance(inst.hosts[i], inst.backbones[0]);
    for (std::size_t j = 1; j < inst.backbone_count(); ++j) {
      const double d2 = squared_distance(inst.hosts[i], inst.backbones[j]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    asg.covering[i] = best;
  }
  return asg;
}

inline double coverage_cost(const NetworkInstance& inst, const Assignment& asg) {
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.host_count(); ++i) {
    sum += squared_distance(inst.hosts[i], inst.backbones[asg[i]]);
  }
  return sum;
}

inline double connectivity_cost(const NetworkInstance& inst) {
  double sum = 0.0;
  for (const auto& e : inst.edges) sum += squared_distance(inst.backbones[e.a], inst.backbones[e.b]);
  return 2.0 * sum;
}

inline CostBreakdown total_cost(const NetworkInstance& inst, const Assignment& asg) {
  CostBreakdown c;
  c.coverage = coverage_cost(inst, asg);
  c.connectivity = connectivity_cost(inst);
  c.total = c.coverage + inst.lambda * c.connectivity;
  return c;
}

/// Cost under the nearest assignment, i.e. the piecewise-quadratic objective.
inline CostBreakdown total_cost(const NetworkInstance& inst) {
  return total_cost(inst, nearest_assignment(inst));
}

/// Gradient of the total cost with respect to the stacked backbone coordinates.
inline PlacementVector gradient(const NetworkInstance& inst, const Assignment& asg) {
  PlacementVector g = PlacementVector::Zero(2 * static_cast<Eigen::Index>(inst.backbone_count()));
  for (std::size_t i = 0; i < inst.host_count(); ++i) {
    const std::size_t j = asg[i];
    g[2 * j] += 2.0 * (inst.backbones[j].x - inst.hosts[i].x);
    g[2 * j + 1] += 2.0 * (inst.backbones[j].y - inst.hosts[i].y);
  }
  const double w = 4.0 * inst.lambda;
  for (const auto& e : inst.edges) {
    const double dx = inst.backbones[e.a].x - inst.backbones[e.b].x;
    const double dy = inst.backbones[e.a].y - inst.backbones[e.b].y;
    g[2 * e.a] += w * dx;
    g[2 * e.a + 1] += w * dy;
    g[2 * e.b] -= w * dx;
    g[2 * e.b + 1] -= w * dy;
  }
  return g;
}

/// Hosts covered by each backbone.
inline std::vector<std::size_t> assigned_counts(const NetworkInstance& inst, const Assignment& asg) {
  std::vector<std::size_t> n(inst.backbone_count(), 0);
  for (auto j : asg.covering) ++n[j];
  return n;
}

inline HessianMatrix hessian(const NetworkInstance& inst, const Assignment& asg) {
  const auto m = inst.backbone_count();
  const auto n = assigned_counts(inst, asg);
  const auto deg = degrees(inst);
  const double w = 4.0 * inst.lambda;
  HessianMatrix h = HessianMatrix::Zero(2 * static_cast<Eigen::Index>(m), 2 * static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const double d = 2.0 * static_cast<double>(n[j]) + w * static_cast<double>(deg[j]);
    h(2 * j, 2 * j) = d;
    h(2 * j + 1, 2 * j + 1) = d;
  }
  for (const auto& e : inst.edges) {
    for (std::size_t c = 0; c < 2; ++c) {
      h(2 * e.a + c, 2 * e.b + c) = -w;
      h(2 * e.b + c, 2 * e.a + c) = -w;
    }
  }
  return h;
}

inline Eigen::VectorXd eigenvalues(const HessianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<HessianMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("eigenvalue extraction failed");
  return es.eigenvalues();
}

inline double max_eigenvalue(const HessianMatrix& h) { return eigenvalues(h).maxCoeff(); }

/// True iff lambda_min > 1e-10 * lambda_max.
inline bool is_positive_definite(const HessianMatrix& h) {
  if (h.size() == 0) return false;
  const auto ev = eigenvalues(h);
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  return hi > 0.0 && lo > 1e-10 * hi;
}

/// Open interval of fixed steps for which x <- x - step * grad converges.
struct StepInterval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double step) const { return step > lower && step < upper; }
};

inline StepInterval stable_step_interval(const HessianMatrix& h) {
  const double top = h.size() == 0 ? 0.0 : max_eigenvalue(h);
  if (!(top > 0.0)) throw SolverError("degenerate objective");
  return {0.0, 2.0 / top};
}

}  // namespace bbnet
