#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mmrelay/config.hpp"
#include "mmrelay/game.hpp"

namespace mmrelay {

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Variance with the 1/N normalization (the dispersion of the M per-pair
// delays of one run, not a sample estimate).
inline double population_variance(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return sum / static_cast<double>(xs.size());
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

// One Monte Carlo run: direct transmission plus both dynamics on the same
// instance.
struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<double> direct_delays;
  std::vector<double> pf_delays;
  std::vector<double> md_delays;
  double direct_sum = 0.0, pf_sum = 0.0, md_sum = 0.0;
  double direct_variance = 0.0, pf_variance = 0.0, md_variance = 0.0;
  int pf_rounds = 0, md_rounds = 0;
  bool pf_converged = false, md_converged = false;
  std::vector<Path> pf_paths;
  std::vector<Path> md_paths;
};

struct BatchStats {
  int runs = 0;
  double mean_direct_sum = 0.0, mean_pf_sum = 0.0, mean_md_sum = 0.0;
  double mean_direct_variance = 0.0, mean_pf_variance = 0.0, mean_md_variance = 0.0;
  double pf_convergence_rate = 0.0, md_convergence_rate = 0.0;
  double wall_clock_per_run_s = 0.0;  // diagnostic; not part of reproducible output
};

struct BatchResult {
  BatchStats stats;
  std::vector<RunRecord> records;
};

inline Instance make_instance(const SimConfig& config, std::uint64_t seed) {
  return generate_instance(seed, config.m, config.n, config.area, config.channel,
                           resolved_file_sizes(config), config.beta);
}

// Full per-run artifacts for callers that need more than the record (path
// maps, trajectory traces).
struct RunArtifacts {
  Instance instance;
  DynamicsResult pf;
  DynamicsResult md;
};

// Per-strategy dynamics get independent streams derived from the run seed,
// so mutation draws in one strategy cannot perturb the other.
inline RunRecord run_single(std::uint64_t seed, const SimConfig& config,
                            RunArtifacts* artifacts = nullptr, bool record_trace = false) {
  const Instance inst = make_instance(config, seed);

  RunRecord rec;
  rec.seed = seed;
  for (int i = 0; i < inst.m; ++i) rec.direct_delays.push_back(direct_delay(i, inst));

  DynamicsResult pf = run_dynamics(inst, Strategy::proportional_fair, config.epsilon,
                                   derive_seed(seed, 1), config.max_rounds, record_trace);
  DynamicsResult md = run_dynamics(inst, Strategy::minimum_delay, config.epsilon,
                                   derive_seed(seed, 2), config.max_rounds, record_trace);

  rec.pf_delays = pf.state.delays;
  rec.md_delays = md.state.delays;
  rec.pf_paths = pf.state.paths;
  rec.md_paths = md.state.paths;
  rec.pf_rounds = pf.rounds;
  rec.md_rounds = md.rounds;
  rec.pf_converged = pf.converged;
  rec.md_converged = md.converged;
  for (int i = 0; i < inst.m; ++i) {
    rec.direct_sum += rec.direct_delays[i];
    rec.pf_sum += rec.pf_delays[i];
    rec.md_sum += rec.md_delays[i];
  }
  rec.direct_variance = population_variance(rec.direct_delays);
  rec.pf_variance = population_variance(rec.pf_delays);
  rec.md_variance = population_variance(rec.md_delays);

  if (artifacts) {
    artifacts->instance = inst;
    artifacts->pf = std::move(pf);
    artifacts->md = std::move(md);
  }
  return rec;
}

// Monte Carlo batch. Run i uses seed master_seed + i; records are merged in
// run order, so the jobs count never changes the result.
inline BatchResult run_batch(const SimConfig& config) {
  validate(config);
  BatchResult result;
  result.records.resize(static_cast<std::size_t>(config.runs));

  const auto started = std::chrono::steady_clock::now();
  const auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      result.records[static_cast<std::size_t>(i)] =
          run_single(config.master_seed + static_cast<std::uint64_t>(i), config);
    }
  };
  const int jobs = std::min(config.jobs, config.runs);
  if (jobs <= 1) {
    worker(0, config.runs);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (config.runs + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      const int begin = j * chunk;
      const int end = std::min(config.runs, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

  BatchStats& s = result.stats;
  s.runs = config.runs;
  for (const RunRecord& r : result.records) {
    s.mean_direct_sum += r.direct_sum;
    s.mean_pf_sum += r.pf_sum;
    s.mean_md_sum += r.md_sum;
    s.mean_direct_variance += r.direct_variance;
    s.mean_pf_variance += r.pf_variance;
    s.mean_md_variance += r.md_variance;
    s.pf_convergence_rate += r.pf_converged ? 1.0 : 0.0;
    s.md_convergence_rate += r.md_converged ? 1.0 : 0.0;
  }
  const auto count = static_cast<double>(config.runs);
  s.mean_direct_sum /= count;
  s.mean_pf_sum /= count;
  s.mean_md_sum /= count;
  s.mean_direct_variance /= count;
  s.mean_pf_variance /= count;
  s.mean_md_variance /= count;
  s.pf_convergence_rate /= count;
  s.md_convergence_rate /= count;
  s.wall_clock_per_run_s = elapsed.count() / count;
  return result;
}

// One row per run, method and pair. Direct rows have one hop, zero rounds
// and count as converged. Floats are shortest round-trip decimals, so equal
// configs produce byte-identical output.
inline void write_csv(const std::vector<RunRecord>& records, std::ostream& os) {
  os << "run,seed,method,pair,delay_s,hops,converged,rounds\n";
  for (std::size_t run = 0; run < records.size(); ++run) {
    const RunRecord& r = records[run];
    const int m = static_cast<int>(r.direct_delays.size());
    for (int i = 0; i < m; ++i) {
      os << run << ',' << r.seed << ",direct," << i << ',' << format_double(r.direct_delays[i])
         << ",1,1,0\n";
    }
    for (int i = 0; i < m; ++i) {
      os << run << ',' << r.seed << ",pf," << i << ',' << format_double(r.pf_delays[i]) << ','
         << r.pf_paths[i].nodes.size() - 1 << ',' << (r.pf_converged ? 1 : 0) << ','
         << r.pf_rounds << '\n';
    }
    for (int i = 0; i < m; ++i) {
      os << run << ',' << r.seed << ",md," << i << ',' << format_double(r.md_delays[i]) << ','
         << r.md_paths[i].nodes.size() - 1 << ',' << (r.md_converged ? 1 : 0) << ','
         << r.md_rounds << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Brute-force oracle for small instances.

struct OptimumResult {
  double potential = 0.0;
  std::vector<Action> assignment;  // per relay slot
  std::vector<Path> paths;
  std::uint64_t configurations = 0;  // configurations examined
};

namespace detail {

inline double enumeration_size(int m, int n) {
  // sum over assignments of the product of per-coalition orderings:
  // sum_{u=0..n} n!/u! * C(n-u+m-1, m-1), with u the number of unused relays.
  double total = 0.0;
  for (int u = 0; u <= n; ++u) {
    double falling = 1.0;  // n! / u! = n * (n-1) * ... * (u+1)
    for (int v = u + 1; v <= n; ++v) falling *= v;
    double combos = 1.0;  // C(n-u+m-1, m-1)
    for (int j = 1; j <= m - 1; ++j) combos *= static_cast<double>(n - u + j) / j;
    total += falling * combos;
  }
  return total;
}

}  // namespace detail

// Global maximum of the potential over every relay assignment and every
// ordering of each coalition along its pair's path. Guarded: instances whose
// configuration count exceeds the cap are refused.
inline OptimumResult enumerate_optimum(const Instance& inst,
                                       double max_configurations = 1e7) {
  const double size = detail::enumeration_size(inst.m, inst.n);
  if (size > max_configurations) {
    throw SizeGuardError("enumerate_optimum: " + format_double(size) +
                         " configurations exceed the guard of " +
                         format_double(max_configurations));
  }

  OptimumResult best;
  best.configurations = static_cast<std::uint64_t>(size);
  bool have_best = false;

  std::vector<int> assign(static_cast<std::size_t>(inst.n), -1);  // -1 unused, else pair
  while (true) {
    double potential = 0.0;
    std::vector<Path> paths;
    paths.reserve(inst.m);
    for (int i = 0; i < inst.m; ++i) {
      std::vector<int> coalition;
      for (int slot = 0; slot < inst.n; ++slot) {
        if (assign[static_cast<std::size_t>(slot)] == i) {
          coalition.push_back(inst.relay_node(slot));
        }
      }
      std::sort(coalition.begin(), coalition.end());
      Path pair_best;
      double pair_delay = 0.0;
      bool have_pair = false;
      do {
        Path p{i, {}};
        p.nodes.reserve(coalition.size() + 2);
        p.nodes.push_back(inst.source(i));
        p.nodes.insert(p.nodes.end(), coalition.begin(), coalition.end());
        p.nodes.push_back(inst.destination(i));
        const double d = path_delay(p, inst);
        if (!have_pair || d < pair_delay) {
          pair_best = std::move(p);
          pair_delay = d;
          have_pair = true;
        }
      } while (std::next_permutation(coalition.begin(), coalition.end()));
      potential += coalition_value(pair_delay);
      paths.push_back(std::move(pair_best));
    }
    if (!have_best || potential > best.potential) {
      best.potential = potential;
      best.paths = paths;
      best.assignment.clear();
      for (int slot = 0; slot < inst.n; ++slot) {
        const int a = assign[static_cast<std::size_t>(slot)];
        best.assignment.push_back(a < 0 ? Action::none() : Action::assist(a));
      }
      have_best = true;
    }

    // odometer over {-1, 0, .., m-1}^n
    int pos = 0;
    for (; pos < inst.n; ++pos) {
      if (++assign[static_cast<std::size_t>(pos)] < inst.m) break;
      assign[static_cast<std::size_t>(pos)] = -1;
    }
    if (pos == inst.n) break;
  }
  return best;
}

struct Deviation {
  int relay_id = 0;
  Action action;
  double gain = 0.0;
};

// Independent single-move neighborhood scan: does any relay have any
// detach/reinsert (at any slot, not just the best one) or detach-only move
// that raises the potential? Recomputes every delay from the paths.
inline std::optional<Deviation> find_improving_deviation(const GameState& state,
                                                         const Instance& inst,
                                                         double tol = kImprovementTol) {
  const std::vector<double> current = recompute_delays(state, inst);
  const double phi_current = potential_of(current);

  for (std::size_t slot = 0; slot < state.assignment.size(); ++slot) {
    const int relay_id = inst.relay_node(static_cast<int>(slot));
    std::vector<Path> base_paths = state.paths;
    const Action current_action = state.assignment[slot];
    if (!current_action.unused()) {
      base_paths[current_action.target] =
          remove_relay(base_paths[current_action.target], relay_id);
    }
    std::vector<double> base_delays;
    base_delays.reserve(base_paths.size());
    for (const Path& p : base_paths) base_delays.push_back(path_delay(p, inst));
    const double phi_base = potential_of(base_delays);

    if (phi_base - phi_current > tol) {
      return Deviation{relay_id, Action::none(), phi_base - phi_current};
    }
    for (int k = 0; k < inst.m; ++k) {
      for (int j = 0; j <= base_paths[k].relay_count(); ++j) {
        const double with_r = path_delay(insert_relay(base_paths[k], relay_id, j), inst);
        const double phi_alt =
            phi_base - coalition_value(base_delays[k]) + coalition_value(with_r);
        if (phi_alt - phi_current > tol) {
          return Deviation{relay_id, Action::assist(k), phi_alt - phi_current};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace mmrelay
