#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mmrelay/topology.hpp"

namespace mmrelay {

// Ordered node sequence source, relays..., destination for one pair.
// Operations return new values; a Path is never mutated in place.
struct Path {
  int pair = 0;
  std::vector<int> nodes;

  int relay_count() const { return static_cast<int>(nodes.size()) - 2; }
  bool contains(int id) const {
    return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
  }

  bool operator==(const Path&) const = default;
};

inline Path direct_path(int pair, const Instance& inst) {
  return Path{pair, {inst.source(pair), inst.destination(pair)}};
}

inline double link_inverse_rate(const Instance& inst, int a, int b) {
  return 1.0 / link_rate(distance(inst, a, b), inst.los(a, b), inst.params);
}

// Store-and-forward file transfer: each hop carries the whole file, so the
// path delay is B * sum over edges of 1/rate.
inline double path_delay(const Path& path, const Instance& inst) {
  double inverse_sum = 0.0;
  for (std::size_t j = 0; j + 1 < path.nodes.size(); ++j) {
    inverse_sum += link_inverse_rate(inst, path.nodes[j], path.nodes[j + 1]);
  }
  return inst.file_sizes[path.pair] * inverse_sum;
}

inline double direct_delay(int pair, const Instance& inst) {
  return path_delay(direct_path(pair, inst), inst);
}

// New path with r between the nodes at positions j and j+1 of the current
// sequence, 0 <= j <= relay_count().
inline Path insert_relay(const Path& path, int r, int position) {
  if (path.contains(r)) {
    throw std::invalid_argument("insert_relay: node already on path");
  }
  if (position < 0 || position > path.relay_count()) {
    throw std::invalid_argument("insert_relay: position out of range");
  }
  Path out = path;
  out.nodes.insert(out.nodes.begin() + position + 1, r);
  return out;
}

// New path with interior node r spliced out; its former neighbors become one
// direct edge with that edge's own stored LOS state.
inline Path remove_relay(const Path& path, int r) {
  const auto begin = path.nodes.begin() + 1;
  const auto end = path.nodes.end() - 1;
  const auto it = std::find(begin, end, r);
  if (path.nodes.size() < 3 || it == end) {
    throw std::invalid_argument("remove_relay: node is not an interior node of the path");
  }
  Path out = path;
  out.nodes.erase(out.nodes.begin() + (it - path.nodes.begin()));
  return out;
}

struct Insertion {
  int position = 0;
  double delay = 0.0;
};

// Minimum-delay slot for r, ties broken toward the smallest position. Every
// slot is evaluated with a full path recomputation, so the returned delay is
// bit-identical to what a caller caches after performing the insert.
inline Insertion best_insertion(const Path& path, int r, const Instance& inst) {
  Insertion best;
  for (int j = 0; j <= path.relay_count(); ++j) {
    const double d = path_delay(insert_relay(path, r, j), inst);
    if (j == 0 || d < best.delay) best = {j, d};
  }
  return best;
}

}  // namespace mmrelay
