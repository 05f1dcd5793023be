#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmrelay/routing.hpp"

namespace mmrelay {

// Strict-improvement threshold. Utility comparisons (natural-log scale) use
// it absolutely; delay comparisons use it relative to the delay being
// improved. Keeps floating-point ties from cycling the dynamics.
inline constexpr double kImprovementTol = 1e-12;

// A relay either assists one pair or stays unused.
struct Action {
  int target = -1;  // pair index, -1 = unused

  bool unused() const { return target < 0; }
  static Action none() { return {}; }
  static Action assist(int pair) { return Action{pair}; }

  bool operator==(const Action&) const = default;
};

enum class Strategy { proportional_fair, minimum_delay };

// -ln of a pair delay: the value each coalition of relays produces for its
// pair, and the per-pair term of the potential.
inline double coalition_value(double delay_s) {
  if (!(delay_s > 0.0)) {
    throw std::domain_error("coalition_value: delay must be positive");
  }
  return -std::log(delay_s);
}

struct GameState {
  std::vector<Action> assignment;  // one per relay, slot k = node id 2m+k
  std::vector<Path> paths;         // one per pair
  std::vector<double> delays;      // cached path delays, seconds
  double potential = 0.0;          // sum over pairs of -ln(delay)

  bool operator==(const GameState&) const = default;
};

inline double potential_of(const std::vector<double>& delays) {
  double sum = 0.0;
  for (double d : delays) sum += coalition_value(d);
  return sum;
}

// All relays unused, every pair on its direct path.
inline GameState initial_state(const Instance& inst) {
  GameState s;
  s.assignment.assign(inst.n, Action::none());
  s.paths.reserve(inst.m);
  s.delays.reserve(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    s.paths.push_back(direct_path(i, inst));
    s.delays.push_back(path_delay(s.paths.back(), inst));
  }
  s.potential = potential_of(s.delays);
  return s;
}

inline int relay_slot(const Instance& inst, int relay_id) {
  if (!inst.is_relay(relay_id)) {
    throw std::invalid_argument("relay_slot: node is not a relay");
  }
  return relay_id - 2 * inst.m;
}

// State with r off every path; identity when r is already unused.
inline GameState detached(const GameState& state, int relay_id, const Instance& inst) {
  GameState out = state;
  Action& current = out.assignment[relay_slot(inst, relay_id)];
  if (current.unused()) return out;
  Path& path = out.paths[current.target];
  path = remove_relay(path, relay_id);
  out.delays[current.target] = path_delay(path, inst);
  current = Action::none();
  out.potential = potential_of(out.delays);
  return out;
}

// Potential contributed by r's current placement:
// Phi(state) - Phi(state with r detached). Zero for an unused relay.
inline double placement_gain(const GameState& state, int relay_id, const Instance& inst) {
  return state.potential - detached(state, relay_id, inst).potential;
}

// Outcome of moving r onto one pair, measured from the baseline where r sits
// on no path: the pair's delay without r and with r at its best insertion.
struct CandidateMove {
  double delay_before = 0.0;
  double delay_after = 0.0;
};

inline std::vector<CandidateMove> candidate_moves(const GameState& state, int relay_id,
                                                  const Instance& inst) {
  const GameState base = detached(state, relay_id, inst);
  std::vector<CandidateMove> moves;
  moves.reserve(base.paths.size());
  for (std::size_t k = 0; k < base.paths.size(); ++k) {
    const Insertion ins = best_insertion(base.paths[k], relay_id, inst);
    moves.push_back({base.delays[k], ins.delay});
  }
  return moves;
}

// Log-delay change r would cause the target pair, from the detached
// baseline. A relay's own pair is evaluated as a detach-and-reinsert. The
// unused action is worth exactly zero.
inline double repercussion_utility(const GameState& state, int relay_id, Action target,
                                   const Instance& inst) {
  if (target.unused()) return 0.0;
  const GameState base = detached(state, relay_id, inst);
  const Insertion ins = best_insertion(base.paths[target.target], relay_id, inst);
  return std::log(base.delays[target.target]) - std::log(ins.delay);
}

// Proportional fairness: the pair with the largest log-delay reduction, or
// unused when no pair gains more than the threshold. Ties go to the smallest
// pair index.
inline Action select_proportional_fair(const std::vector<CandidateMove>& moves) {
  int best = -1;
  double best_utility = kImprovementTol;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const double u = std::log(moves[k].delay_before) - std::log(moves[k].delay_after);
    if (u > best_utility) {
      best = static_cast<int>(k);
      best_utility = u;
    }
  }
  return best < 0 ? Action::none() : Action::assist(best);
}

// Minimum delay: among the pairs r strictly improves, the one whose
// resulting delay is smallest. Ties go to the smallest pair index.
inline Action select_minimum_delay(const std::vector<CandidateMove>& moves) {
  int best = -1;
  double best_delay = 0.0;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const bool improves =
        moves[k].delay_before - moves[k].delay_after > kImprovementTol * moves[k].delay_before;
    if (improves && (best < 0 || moves[k].delay_after < best_delay)) {
      best = static_cast<int>(k);
      best_delay = moves[k].delay_after;
    }
  }
  return best < 0 ? Action::none() : Action::assist(best);
}

inline Action choose_action(const GameState& state, int relay_id, Strategy strategy,
                            const Instance& inst) {
  const auto moves = candidate_moves(state, relay_id, inst);
  return strategy == Strategy::proportional_fair ? select_proportional_fair(moves)
                                                 : select_minimum_delay(moves);
}

// Detach r, then insert it on the target pair at its best insertion (or
// leave it unused). Returns a new state; caches and potential are rebuilt
// from the modified path.
inline GameState apply_action(const GameState& state, int relay_id, Action action,
                              const Instance& inst) {
  const int slot = relay_slot(inst, relay_id);
  if (!action.unused() && (action.target < 0 || action.target >= inst.m)) {
    throw std::invalid_argument("apply_action: pair index out of range");
  }
  GameState out = detached(state, relay_id, inst);
  if (!action.unused()) {
    Path& path = out.paths[action.target];
    path = insert_relay(path, relay_id, best_insertion(path, relay_id, inst).position);
    out.delays[action.target] = path_delay(path, inst);
    out.assignment[slot] = action;
    out.potential = potential_of(out.delays);
  }
  return out;
}

// Mutation-free fixed-point probe: every relay's greedy action matches its
// assignment, and re-applying it would leave the state put. The second
// clause catches relays left at a stale slot of their own path after later
// joins reshaped it.
inline bool greedy_stable(const GameState& state, Strategy strategy, const Instance& inst) {
  for (std::size_t slot = 0; slot < state.assignment.size(); ++slot) {
    const int relay_id = inst.relay_node(static_cast<int>(slot));
    const auto moves = candidate_moves(state, relay_id, inst);
    const Action greedy = strategy == Strategy::proportional_fair
                              ? select_proportional_fair(moves)
                              : select_minimum_delay(moves);
    if (!(greedy == state.assignment[slot])) return false;
    if (greedy.unused()) continue;
    const double current = state.delays[greedy.target];
    const double reinserted = moves[greedy.target].delay_after;
    if (strategy == Strategy::proportional_fair) {
      if (std::log(current) - std::log(reinserted) > kImprovementTol) return false;
    } else {
      if (current - reinserted > kImprovementTol * current) return false;
    }
  }
  return true;
}

// No relay can raise the potential by any unilateral move: for every relay,
// every action's repercussion utility from the detached baseline is no
// better than what its current placement already contributes.
inline bool is_nash_equilibrium(const GameState& state, const Instance& inst) {
  for (std::size_t slot = 0; slot < state.assignment.size(); ++slot) {
    const int relay_id = inst.relay_node(static_cast<int>(slot));
    const GameState base = detached(state, relay_id, inst);
    const double gain = state.potential - base.potential;
    if (gain < -kImprovementTol) return false;  // detaching alone would help
    for (int k = 0; k < inst.m; ++k) {
      const Insertion ins = best_insertion(base.paths[k], relay_id, inst);
      const double utility = std::log(base.delays[k]) - std::log(ins.delay);
      if (utility > gain + kImprovementTol) return false;
    }
  }
  return true;
}

// Product over pairs of 1/delay; equals exp(potential). Diagnostic only, the
// dynamics work on the log form.
inline double nash_product(const GameState& state) {
  double product = 1.0;
  for (double d : state.delays) {
    if (!(d > 0.0)) throw std::domain_error("nash_product: delay must be positive");
    product *= 1.0 / d;
  }
  return product;
}

inline std::vector<double> recompute_delays(const GameState& state, const Instance& inst) {
  std::vector<double> out;
  out.reserve(state.paths.size());
  for (const Path& p : state.paths) out.push_back(path_delay(p, inst));
  return out;
}

// Cross-checks the redundant fields of a state: assignment vs path
// membership, caches vs recomputation, potential vs its definition.
inline bool state_invariants_hold(const GameState& state, const Instance& inst) {
  std::vector<int> membership(inst.node_count(), -1);
  for (int i = 0; i < inst.m; ++i) {
    const Path& p = state.paths[i];
    if (p.pair != i || p.nodes.size() < 2) return false;
    if (p.nodes.front() != inst.source(i) || p.nodes.back() != inst.destination(i)) return false;
    for (std::size_t j = 1; j + 1 < p.nodes.size(); ++j) {
      const int id = p.nodes[j];
      if (!inst.is_relay(id)) return false;
      if (membership[id] != -1) return false;  // relay on two paths
      membership[id] = i;
    }
  }
  for (std::size_t slot = 0; slot < state.assignment.size(); ++slot) {
    const int id = inst.relay_node(static_cast<int>(slot));
    const Action a = state.assignment[slot];
    if (a.unused() ? membership[id] != -1 : membership[id] != a.target) return false;
  }
  const auto fresh = recompute_delays(state, inst);
  for (int i = 0; i < inst.m; ++i) {
    if (std::abs(state.delays[i] - fresh[i]) > 1e-12 * std::max(1.0, std::abs(fresh[i]))) {
      return false;
    }
  }
  const double phi = potential_of(fresh);
  return std::abs(state.potential - phi) <= 1e-12 * std::max(1.0, std::abs(phi));
}

struct TraceRecord {
  int round = 0;
  int relay = 0;
  Action greedy;
  Action taken;
  bool mutated = false;
  double potential_delta = 0.0;
};

struct DynamicsResult {
  GameState state;
  int rounds = 0;
  bool converged = false;
  std::vector<TraceRecord> trace;  // filled only when requested
};

// Round-robin best response with mutation. From the all-direct initial
// state, each relay in node order takes its greedy action, except that with
// probability epsilon it connects to a uniformly random pair other than the
// greedy choice (mutation never selects the unused action; when no other
// pair exists the greedy action stands). A pass after which no greedy move
// would change anything ends the run.
inline DynamicsResult run_dynamics(const Instance& inst, Strategy strategy, double epsilon,
                                   std::uint64_t seed, int max_rounds,
                                   bool record_trace = false) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("run_dynamics: epsilon must be in [0, 1)");
  }
  if (max_rounds < 1) {
    throw std::invalid_argument("run_dynamics: max_rounds must be >= 1");
  }

  DynamicsResult result;
  result.state = initial_state(inst);
  Rng rng(seed);

  for (int round = 1; round <= max_rounds; ++round) {
    for (int slot = 0; slot < inst.n; ++slot) {
      const int relay_id = inst.relay_node(slot);
      const Action greedy = choose_action(result.state, relay_id, strategy, inst);
      Action taken = greedy;
      bool mutated = false;
      if (epsilon > 0.0 && uniform01(rng) < epsilon) {
        const int excluded = greedy.unused() ? -1 : greedy.target;
        const int candidates = excluded < 0 ? inst.m : inst.m - 1;
        if (candidates > 0) {
          int pick = static_cast<int>(uniform_index(rng, candidates));
          if (excluded >= 0 && pick >= excluded) ++pick;
          taken = Action::assist(pick);
          mutated = true;
        }
      }
      const double before = result.state.potential;
      result.state = apply_action(result.state, relay_id, taken, inst);
      if (record_trace) {
        result.trace.push_back(
            {round, relay_id, greedy, taken, mutated, result.state.potential - before});
      }
    }
    result.rounds = round;
    if (greedy_stable(result.state, strategy, inst)) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace mmrelay
