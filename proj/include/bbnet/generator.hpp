#pragma once

// Random network instances: clustered hosts, uniform backbones, ring links.
//
// Random stream: std::mt19937_64 seeded with `seed`. Every uniform real is
// built from the top 53 bits of one engine output, so the sequence is the
// same on every platform. Draw order:
//   host 0                      x, y
//   host i > 0                  choice, x, y
//   backbone j                  x, y
// Hosts are drawn before backbones. Changing any of this changes every
// generated instance.

#include "bbnet/core.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace bbnet {

struct GeneratorConfig {
  std::size_t n_hosts = 20;
  std::size_t m_backbones = 10;
  Plane plane{100.0, 100.0};
  double cluster_prob = 0.7;
  double cluster_range = 10.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (n_hosts == 0) throw ConfigError("n_hosts must be positive");
    if (m_backbones == 0) throw ConfigError("m_backbones must be positive");
    if (!(plane.width > 0.0) || !(plane.height > 0.0)) throw ConfigError("plane must have positive size");
    if (!(cluster_prob >= 0.0 && cluster_prob <= 1.0)) throw ConfigError("cluster_prob must lie in [0, 1]");
    if (!(cluster_range > 0.0)) throw ConfigError("cluster_range must be positive");
  }
};

/// Platform-independent uniform reals over a 64-bit Mersenne Twister.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<Point2> generate_hosts(const GeneratorConfig& cfg, RandomStream& rng) {
  std::vector<Point2> hosts;
  hosts.reserve(cfg.n_hosts);
  const double w = cfg.plane.width;
  const double h = cfg.plane.height;
  for (std::size_t i = 0; i < cfg.n_hosts; ++i) {
    if (i == 0) {
      const double x = rng.uniform(0.0, w);
      const double y = rng.uniform(0.0, h);
      hosts.push_back({x, y});
      continue;
    }
    const bool clustered = rng.unit() < cfg.cluster_prob;
    if (clustered) {
      const Point2 prev = hosts.back();
      const double r = cfg.cluster_range;
      const double x = rng.uniform(prev.x - r, prev.x + r);
      const double y = rng.uniform(prev.y - r, prev.y + r);
      hosts.push_back({std::clamp(x, 0.0, w), std::clamp(y, 0.0, h)});
    } else {
      const double x = rng.uniform(0.0, w);
      const double y = rng.uniform(0.0, h);
      hosts.push_back({x, y});
    }
  }
  return hosts;
}

inline std::vector<Point2> generate_backbones(const GeneratorConfig& cfg, RandomStream& rng) {
  std::vector<Point2> out;
  out.reserve(cfg.m_backbones);
  for (std::size_t j = 0; j < cfg.m_backbones; ++j) {
    const double x = rng.uniform(0.0, cfg.plane.width);
    const double y = rng.uniform(0.0, cfg.plane.height);
    out.push_back({x, y});
  }
  return out;
}

/// Cycle 0-1-...-(m-1)-0 in index order. m = 2 gives a single edge, m = 1 none.
inline std::vector<Edge> ring_topology(std::size_t m) {
  std::vector<Edge> edges;
  if (m < 2) return edges;
  for (std::size_t i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
  if (m > 2) edges.push_back({0, m - 1});
  return canonical_edges(std::move(edges));
}

inline NetworkInstance generate_instance(const GeneratorConfig& cfg, double lambda) {
  cfg.validate();
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  RandomStream rng(cfg.seed);
  NetworkInstance inst;
  inst.plane = cfg.plane;
  inst.lambda = lambda;
  inst.hosts = generate_hosts(cfg, rng);
  inst.backbones = generate_backbones(cfg, rng);
  inst.edges = ring_topology(cfg.m_backbones);
  return inst;
}

}  // namespace bbnet
