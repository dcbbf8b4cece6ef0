#pragma once

// Shared domain types for two-tier backbone networks: host and backbone
// positions, backbone links, the coverage assignment, and the stacked
// placement vector used by the cost engine and solvers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bbnet {

/// Malformed instance or report document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double squared_distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point2& a, const Point2& b) {
  return std::sqrt(squared_distance(a, b));
}

struct Plane {
  double width = 100.0;
  double height = 100.0;

  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Undirected backbone link. Canonical form has `a < b`.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  Edge canonical() const { return a <= b ? Edge{a, b} : Edge{b, a}; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorts endpoints within each edge and the edge list lexicographically.
inline std::vector<Edge> canonical_edges(std::vector<Edge> edges) {
  for (auto& e : edges) e = e.canonical();
  std::sort(edges.begin(), edges.end());
  return edges;
}

struct NetworkInstance {
  Plane plane;
  std::vector<Point2> hosts;
  std::vector<Point2> backbones;
  std::vector<Edge> edges;
  double lambda = 1.0;

  std::size_t host_count() const { return hosts.size(); }
  std::size_t backbone_count() const { return backbones.size(); }

  /// Edge sets compare as sets; everything else compares exactly.
  friend bool operator==(const NetworkInstance& lhs, const NetworkInstance& rhs) {
    return lhs.plane == rhs.plane && lhs.lambda == rhs.lambda && lhs.hosts == rhs.hosts &&
           lhs.backbones == rhs.backbones &&
           canonical_edges(lhs.edges) == canonical_edges(rhs.edges);
  }
};

/// Throws ValidationError naming the first violated invariant.
inline void validate(const NetworkInstance& inst) {
  if (!(inst.plane.width > 0.0) || !(inst.plane.height > 0.0) || !std::isfinite(inst.plane.width) ||
      !std::isfinite(inst.plane.height)) {
    throw ValidationError("plane: width and height must be positive and finite");
  }
  if (!std::isfinite(inst.lambda) || inst.lambda < 0.0) {
    throw ValidationError("lambda: must be finite and non-negative");
  }
  if (inst.backbones.empty()) {
    throw ValidationError("backbones: at least one backbone node is required");
  }
  auto finite = [](const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  for (std::size_t i = 0; i < inst.hosts.size(); ++i) {
    if (!finite(inst.hosts[i])) {
      throw ValidationError("hosts[" + std::to_string(i) + "]: non-finite coordinate");
    }
  }
  for (std::size_t j = 0; j < inst.backbones.size(); ++j) {
    if (!finite(inst.backbones[j])) {
      throw ValidationError("backbones[" + std::to_string(j) + "]: non-finite coordinate");
    }
  }
  const std::size_t m = inst.backbones.size();
  for (const auto& e : inst.edges) {
    if (e.a == e.b) {
      throw ValidationError("edges: self-loop at backbone " + std::to_string(e.a));
    }
    if (e.a >= m || e.b >= m) {
      throw ValidationError("edges: index out of range [" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + "] with " + std::to_string(m) + " backbones");
    }
  }
  const auto sorted = canonical_edges(inst.edges);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("edges: duplicate edge");
  }
}

/// Covering backbone index for each host.
struct Assignment {
  std::vector<std::size_t> covering;

  std::size_t size() const { return covering.size(); }
  std::size_t operator[](std::size_t host) const { return covering[host]; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline void validate(const Assignment& asg, const NetworkInstance& inst) {
  if (asg.size() != inst.host_count()) {
    throw ValidationError("assignment: length differs from host count");
  }
  for (auto j : asg.covering) {
    if (j >= inst.backbone_count()) throw ValidationError("assignment: backbone index out of range");
  }
}

/// Backbone j occupies slots (2j, 2j+1).
using PlacementVector = Eigen::VectorXd;

/// Dense symmetric 2M x 2M matrix over placement coordinates.
using HessianMatrix = Eigen::MatrixXd;

inline PlacementVector to_placement(const std::vector<Point2>& backbones) {
  PlacementVector x(2 * static_cast<Eigen::Index>(backbones.size()));
  for (std::size_t j = 0; j < backbones.size(); ++j) {
    x[2 * j] = backbones[j].x;
    x[2 * j + 1] = backbones[j].y;
  }
  return x;
}

inline std::vector<Point2> from_placement(const PlacementVector& x) {
  if (x.size() % 2 != 0) throw ValidationError("placement: odd coordinate count");
  std::vector<Point2> out(static_cast<std::size_t>(x.size() / 2));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = {x[2 * j], x[2 * j + 1]};
  return out;
}

inline NetworkInstance with_placement(NetworkInstance inst, const PlacementVector& x) {
  if (x.size() != 2 * static_cast<Eigen::Index>(inst.backbone_count())) {
    throw ValidationError("placement: length must be twice the backbone count");
  }
  inst.backbones = from_placement(x);
  return inst;
}

/// Dense symmetric 0/1 matrix C with zero diagonal.
inline Eigen::MatrixXd adjacency_matrix(const NetworkInstance& inst) {
  const auto m = static_cast<Eigen::Index>(inst.backbone_count());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : inst.edges) {
    c(static_cast<Eigen::Index>(e.a), static_cast<Eigen::Index>(e.b)) = 1.0;
    c(static_cast<Eigen::Index>(e.b), static_cast<Eigen::Index>(e.a)) = 1.0;
  }
  return c;
}

inline std::vector<std::size_t> degrees(const NetworkInstance& inst) {
  std::vector<std::size_t> deg(inst.backbone_count(), 0);
  for (const auto& e : inst.edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

}  // namespace bbnet
