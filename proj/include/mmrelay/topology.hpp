#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmrelay/channel.hpp"
#include "mmrelay/rng.hpp"

namespace mmrelay {

enum class NodeRole { source, destination, relay };

struct Node {
  int id = 0;
  NodeRole role = NodeRole::relay;
  int pair = -1;  // owning pair for sources/destinations, -1 for relays
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Node&) const = default;
};

struct Area {
  double width = 0.0;
  double height = 0.0;

  bool operator==(const Area&) const = default;
};

// Blockage model: a link of length d is LOS with probability e^(-beta * d).
inline double los_probability(double d, double beta) {
  if (d < 0.0) throw std::invalid_argument("los_probability: negative distance");
  if (!(beta > 0.0)) throw std::invalid_argument("los_probability: beta must be positive");
  return std::exp(-beta * d);
}

// Immutable scenario. Node ids are dense: sources [0, m), destinations
// [m, 2m) (pair i is nodes i and m+i), relays [2m, 2m+n). The LOS matrix is
// symmetric and the direct link of every pair is NLOS.
struct Instance {
  std::uint64_t seed = 0;
  int m = 0;
  int n = 0;
  Area area;
  double beta = 0.0;
  ChannelParams params;
  std::vector<double> file_sizes;        // bits, one per pair
  std::vector<Node> nodes;               // size 2m+n, id == index
  std::vector<std::uint8_t> los_matrix;  // flattened node_count x node_count

  int node_count() const { return 2 * m + n; }
  int source(int pair) const { return pair; }
  int destination(int pair) const { return m + pair; }
  int relay_node(int slot) const { return 2 * m + slot; }
  bool is_relay(int id) const { return id >= 2 * m; }

  bool los(int a, int b) const {
    return los_matrix[static_cast<std::size_t>(a) * node_count() + b] != 0;
  }

  bool operator==(const Instance&) const = default;
};

// Euclidean distance clamped below by 1 m. The two nodes must be distinct.
inline double distance(const Instance& inst, int a, int b) {
  if (a == b) throw std::domain_error("distance: identical nodes");
  const Node& na = inst.nodes[a];
  const Node& nb = inst.nodes[b];
  return std::max(std::hypot(na.x - nb.x, na.y - nb.y), kMinDistanceM);
}

// Seeded instance generation. Draw order is fixed so a seed reproduces the
// same instance everywhere: per node in id order, x then y; then one LOS
// draw per unordered link in lexicographic (a, b) order. Direct
// source-destination links are forced NLOS and consume no draw.
inline Instance generate_instance(std::uint64_t seed, int m, int n, Area area,
                                  const ChannelParams& params,
                                  std::vector<double> file_sizes, double beta) {
  if (m < 1) throw std::invalid_argument("generate_instance: m must be >= 1");
  if (n < 0) throw std::invalid_argument("generate_instance: n must be >= 0");
  if (!(area.width > 0.0) || !(area.height > 0.0)) {
    throw std::invalid_argument("generate_instance: area dimensions must be positive");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("generate_instance: beta must be positive");
  validate(params);
  if (file_sizes.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("generate_instance: need one file size per pair");
  }
  for (double bits : file_sizes) {
    if (bits < 0.0) throw std::invalid_argument("generate_instance: negative file size");
  }

  Instance inst;
  inst.seed = seed;
  inst.m = m;
  inst.n = n;
  inst.area = area;
  inst.beta = beta;
  inst.params = params;
  inst.file_sizes = std::move(file_sizes);

  Rng rng(seed);
  const int count = inst.node_count();
  inst.nodes.reserve(count);
  for (int id = 0; id < count; ++id) {
    Node node;
    node.id = id;
    node.role = id < m ? NodeRole::source
              : id < 2 * m ? NodeRole::destination
                           : NodeRole::relay;
    node.pair = id < 2 * m ? id % m : -1;
    node.x = uniform01(rng) * area.width;
    node.y = uniform01(rng) * area.height;
    inst.nodes.push_back(node);
  }

  inst.los_matrix.assign(static_cast<std::size_t>(count) * count, 0);
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      const bool direct_pair = a < m && b == m + a;
      bool los = false;
      if (!direct_pair) {
        los = uniform01(rng) < los_probability(distance(inst, a, b), beta);
      }
      inst.los_matrix[static_cast<std::size_t>(a) * count + b] = los ? 1 : 0;
      inst.los_matrix[static_cast<std::size_t>(b) * count + a] = los ? 1 : 0;
    }
  }
  return inst;
}

}  // namespace mmrelay
