#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iqpc/errors.hpp"
#include "iqpc/instance.hpp"
#include "iqpc/synth.hpp"
#include "iqpc/topology.hpp"

namespace iqpc {

// Greedy ASAP layering: every gate lands in the earliest layer after the last
// gate sharing one of its operands. Gates within a layer act on disjoint
// qubits by construction.
struct Schedule {
  std::vector<std::vector<std::size_t>> layers;  // gate indices per layer
  int depth() const { return static_cast<int>(layers.size()); }
};

inline Schedule schedule_depth(const Circuit& c) {
  Schedule s;
  std::vector<int> last(static_cast<std::size_t>(c.qubit_count), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    validate_gate(g, c.qubit_count);
    int layer = last[g.q0] + 1;
    if (g.arity() == 2) layer = std::max(layer, last[g.q1] + 1);
    if (static_cast<int>(s.layers.size()) < layer) s.layers.resize(layer);
    s.layers[layer - 1].push_back(i);
    last[g.q0] = layer;
    if (g.arity() == 2) last[g.q1] = layer;
  }
  return s;
}

// Depth of the two-qubit skeleton alone. One-qubit gates are skipped; the
// qubit-wise dependencies they mediate between two-qubit gates survive.
inline int two_qubit_depth(const Circuit& c) {
  std::vector<int> last(static_cast<std::size_t>(c.qubit_count), 0);
  int depth = 0;
  for (const Gate& g : c.gates) {
    if (!g.is_two_qubit()) continue;
    const int layer = std::max(last[g.q0], last[g.q1]) + 1;
    last[g.q0] = layer;
    last[g.q1] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

enum class PlacementStrategy { Identity, BfsMatch };

inline PlacementStrategy parse_placement(const std::string& s) {
  if (s == "identity") return PlacementStrategy::Identity;
  if (s == "bfs_match") return PlacementStrategy::BfsMatch;
  throw ParameterError("unknown placement strategy \"" + s + "\" (expected identity or bfs_match)");
}

namespace detail {

struct PlacementOutcome {
  std::vector<int> mapping;
  std::string description;
};

// BFS ordering of the interaction graph: seeded at a maximum-degree vertex
// (smallest index on ties), neighbors visited in ascending order, restarting
// the same way for further components.
inline std::vector<int> ig_bfs_order(const InteractionGraph& ig,
                                     const std::vector<std::vector<int>>& adj) {
  std::vector<char> visited(static_cast<std::size_t>(ig.n), 0);
  std::vector<int> order;
  order.reserve(ig.n);
  auto best_unvisited = [&]() {
    int best = -1;
    for (int v = 0; v < ig.n; ++v) {
      if (visited[v]) continue;
      if (best < 0 || adj[v].size() > adj[best].size()) best = v;
    }
    return best;
  };
  while (static_cast<int>(order.size()) < ig.n) {
    const int root = best_unvisited();
    visited[root] = 1;
    std::size_t head = order.size();
    order.push_back(root);
    while (head < order.size()) {
      const int u = order[head++];
      for (int v : adj[u]) {
        if (!visited[v]) {
          visited[v] = 1;
          order.push_back(v);
        }
      }
    }
  }
  return order;
}

// Tries to embed the interaction graph with every interacting pair adjacent,
// walking the BFS order depth-first with backtracking. Candidate qubits are
// those adjacent to all already-placed neighbors, in ascending index order.
// Returns nothing if no perfect embedding is found within the node budget.
inline std::optional<std::vector<int>> adjacency_embedding(
    const InteractionGraph& ig, const HardwareGraph& h, const std::vector<int>& order,
    const std::vector<std::vector<int>>& adj) {
  const int n = ig.n;
  std::vector<int> pos_of(static_cast<std::size_t>(n), -1);  // vertex -> order position
  for (int i = 0; i < n; ++i) pos_of[order[i]] = i;
  std::vector<std::vector<int>> placed_nbrs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int v : adj[order[i]]) {
      if (pos_of[v] < i) placed_nbrs[i].push_back(v);
    }
  }

  std::vector<int> mapping(static_cast<std::size_t>(n), -1);  // logical -> physical
  std::vector<char> used(static_cast<std::size_t>(h.qubit_count), 0);
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(n));
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);
  long budget = 200000;

  auto fill_candidates = [&](int i) {
    auto& cand = candidates[i];
    cand.clear();
    const auto& nbrs = placed_nbrs[i];
    if (nbrs.empty()) {
      for (int u = 0; u < h.qubit_count; ++u)
        if (!used[u]) cand.push_back(u);
      return;
    }
    for (int u : h.adj[mapping[nbrs[0]]]) {
      if (used[u]) continue;
      bool ok = true;
      for (std::size_t j = 1; j < nbrs.size() && ok; ++j)
        ok = h.dist(u, mapping[nbrs[j]]) == 1;
      if (ok) cand.push_back(u);
    }
  };

  int i = 0;
  fill_candidates(0);
  while (i >= 0) {
    if (i == n) return mapping;
    if (cursor[i] >= candidates[i].size() || budget <= 0) {
      cursor[i] = 0;
      --i;
      if (i >= 0) {
        const int v = order[i];
        used[mapping[v]] = 0;
        mapping[v] = -1;
      }
      if (budget <= 0) return std::nullopt;
      continue;
    }
    const int u = candidates[i][cursor[i]++];
    --budget;
    mapping[order[i]] = u;
    used[u] = 1;
    ++i;
    if (i < n) {
      fill_candidates(i);
      cursor[i] = 0;
    }
  }
  return std::nullopt;
}

// Fallback: place each vertex (in BFS order) on the free qubit minimizing the
// summed distance to its already-placed neighbors, smallest index on ties.
inline std::vector<int> greedy_placement(const InteractionGraph& ig, const HardwareGraph& h,
                                         const std::vector<int>& order,
                                         const std::vector<std::vector<int>>& adj) {
  const int n = ig.n;
  std::vector<int> pos_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) pos_of[order[i]] = i;
  std::vector<int> mapping(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(h.qubit_count), 0);
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    long best_cost = LONG_MAX;
    int best = -1;
    for (int u = 0; u < h.qubit_count; ++u) {
      if (used[u]) continue;
      long cost = 0;
      for (int w : adj[v])
        if (pos_of[w] < i) cost += h.dist(u, mapping[w]);
      if (cost < best_cost) {
        best_cost = cost;
        best = u;
      }
    }
    mapping[v] = best;
    used[best] = 1;
  }
  return mapping;
}

inline PlacementOutcome place(const InteractionGraph& ig, const HardwareGraph& h,
                              PlacementStrategy strategy) {
  if (ig.n > h.qubit_count)
    throw CapacityError("instance needs " + std::to_string(ig.n) + " qubits but " + h.name +
                        " has " + std::to_string(h.qubit_count));
  if (strategy == PlacementStrategy::Identity) {
    std::vector<int> mapping(static_cast<std::size_t>(ig.n));
    for (int i = 0; i < ig.n; ++i) mapping[i] = i;
    return {std::move(mapping), "identity"};
  }
  const auto adj = ig.simple_adjacency();
  const auto order = ig_bfs_order(ig, adj);
  if (auto embedded = adjacency_embedding(ig, h, order, adj))
    return {std::move(*embedded), "bfs_match/adjacency"};
  return {greedy_placement(ig, h, order, adj), "bfs_match/greedy"};
}

}  // namespace detail

inline std::vector<int> place_initial(const InteractionGraph& ig, const HardwareGraph& h,
                                      PlacementStrategy strategy) {
  return detail::place(ig, h, strategy).mapping;
}

struct RouteOptions {
  bool lookahead = false;     // compare both movable endpoints against the next 2q gate
  std::uint64_t seed = 0;     // recorded for provenance; the router is deterministic
};

struct RouteResult {
  Circuit circuit;
  long swap_count = 0;
};

// Per-gate shortest-path routing: before each two-qubit gate whose operands
// are not adjacent, SWAPs walk the first operand toward the second along a
// shortest path (ties broken by smaller intermediate vertex index), updating
// the mapping after every SWAP.
inline RouteResult route(const Circuit& c, const HardwareGraph& h, const std::vector<int>& mapping,
                         const RouteOptions& opts = {}) {
  if (c.frame != Frame::Logical) throw ParameterError("route expects a logical-frame circuit");
  if (static_cast<int>(mapping.size()) != c.qubit_count)
    throw ParameterError("mapping covers " + std::to_string(mapping.size()) + " qubits, circuit has " +
                         std::to_string(c.qubit_count));
  std::vector<int> owner(static_cast<std::size_t>(h.qubit_count), -1);
  for (int l = 0; l < c.qubit_count; ++l) {
    const int p = mapping[l];
    if (p < 0 || p >= h.qubit_count || owner[p] >= 0)
      throw ParameterError("mapping is not injective into " + h.name);
    owner[p] = l;
  }
  std::vector<int> pos = mapping;

  RouteResult rr;
  rr.circuit.qubit_count = h.qubit_count;
  rr.circuit.frame = Frame::Physical;
  rr.circuit.initial_mapping = mapping;
  rr.circuit.gates.reserve(c.gates.size());

  auto next_step = [&](int from, int to) {
    // h.adj is ascending, so the first strictly-improving neighbor is the
    // smallest-index one.
    int best = -1, best_d = INT_MAX;
    for (int v : h.adj[from]) {
      const int d = h.dist(v, to);
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    return best;
  };

  auto emit_swap = [&](int a, int b) {
    rr.circuit.gates.push_back(Gate::swap(a, b));
    ++rr.swap_count;
    const int la = owner[a], lb = owner[b];
    owner[a] = lb;
    owner[b] = la;
    if (la >= 0) pos[la] = b;
    if (lb >= 0) pos[lb] = a;
  };

  // Walks `mover` adjacent to `target` on scratch state; used to score
  // lookahead alternatives without committing.
  auto simulated_cost = [&](int mover, int target, const Gate& next2q) {
    std::vector<int> pos2 = pos;
    std::vector<int> owner2 = owner;
    int cur = pos2[mover];
    const int goal_logical = target;
    while (h.dist(cur, pos2[goal_logical]) > 1) {
      const int v = next_step(cur, pos2[goal_logical]);
      const int la = owner2[cur], lb = owner2[v];
      owner2[cur] = lb;
      owner2[v] = la;
      if (la >= 0) pos2[la] = v;
      if (lb >= 0) pos2[lb] = cur;
      cur = v;
    }
    return h.dist(pos2[next2q.q0], pos2[next2q.q1]);
  };

  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    validate_gate(g, c.qubit_count);
    if (g.arity() == 1) {
      Gate out = g;
      out.q0 = pos[g.q0];
      rr.circuit.gates.push_back(out);
      continue;
    }
    if (h.dist(pos[g.q0], pos[g.q1]) >= h.unreachable())
      throw RoutingError("gate " + std::to_string(gi) + " cannot be routed: qubits " +
                         std::to_string(g.q0) + " and " + std::to_string(g.q1) +
                         " map to disconnected components of " + h.name);
    int mover = g.q0, target = g.q1;
    if (opts.lookahead && h.dist(pos[g.q0], pos[g.q1]) > 1) {
      const Gate* next2q = nullptr;
      for (std::size_t j = gi + 1; j < c.gates.size(); ++j) {
        if (c.gates[j].is_two_qubit()) {
          next2q = &c.gates[j];
          break;
        }
      }
      if (next2q != nullptr &&
          simulated_cost(g.q1, g.q0, *next2q) < simulated_cost(g.q0, g.q1, *next2q)) {
        mover = g.q1;
        target = g.q0;
      }
    }
    while (h.dist(pos[mover], pos[target]) > 1) {
      const int v = next_step(pos[mover], pos[target]);
      emit_swap(pos[mover], v);
    }
    Gate out = g;
    out.q0 = pos[g.q0];
    out.q1 = pos[g.q1];
    rr.circuit.gates.push_back(out);
  }
  rr.circuit.final_mapping = pos;
  return rr;
}

// Rewrites each SWAP as the standard three-CX network.
inline Circuit expand_swaps(const Circuit& c) {
  Circuit out = c;
  out.gates.clear();
  out.gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Swap) {
      out.gates.push_back(Gate::cx(g.q0, g.q1));
      out.gates.push_back(Gate::cx(g.q1, g.q0));
      out.gates.push_back(Gate::cx(g.q0, g.q1));
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

struct CompileOptions {
  PlacementStrategy placement = PlacementStrategy::BfsMatch;
  bool simplify_circuit = false;
  bool lookahead = false;
  // SWAP cost accounting; unset means the gate set's convention (3 CX for CX
  // gatesets, one native slot for ZZPhase gatesets).
  std::optional<bool> expand_swaps_for_depth;
};

struct CompilationReport {
  std::string instance;
  std::string pattern;
  int n = 0;
  std::string hardware;
  std::string gateset;
  std::uint64_t seed = 0;
  int d_fc = 0;
  int d_h = 0;
  int delta_d = 0;
  double eta = 1.0;
  long swap_count = 0;
  long twoq_fc = 0;
  long twoq_h = 0;
  int d2q_fc = 0;  // two-qubit-only depths, reported as extras
  int d2q_h = 0;
  std::string placement;
  bool simplified = false;
  std::string swap_cost;  // "3cx" or "native"
};

struct CompilationArtifacts {
  CompilationReport report;
  Circuit logical;
  RouteResult routed;
};

inline CompilationArtifacts compile_full(const IqpInstance& inst, const HardwareGraph& h,
                                         const GateSet& gs, const CompileOptions& opts = {}) {
  CompilationArtifacts art;
  art.logical = build_logical_circuit(inst, gs);
  if (opts.simplify_circuit) art.logical = simplify(art.logical);

  const auto placement = detail::place(interaction_graph(inst), h, opts.placement);
  art.routed = route(art.logical, h, placement.mapping, RouteOptions{opts.lookahead, inst.seed});

  const bool expand = opts.expand_swaps_for_depth.value_or(gs.expand_swaps);
  Circuit expanded_storage;
  if (expand) expanded_storage = expand_swaps(art.routed.circuit);
  const Circuit& accounted = expand ? expanded_storage : art.routed.circuit;

  CompilationReport& r = art.report;
  r.instance = instance_id(inst);
  r.pattern = inst.label.empty() ? "custom" : inst.label;
  r.n = inst.n;
  r.hardware = h.name;
  r.gateset = gs.id;
  r.seed = inst.seed;
  r.d_fc = schedule_depth(art.logical).depth();
  r.d_h = schedule_depth(accounted).depth();
  r.delta_d = r.d_h - r.d_fc;
  r.eta = static_cast<double>(r.d_fc) / static_cast<double>(r.d_h);
  r.swap_count = art.routed.swap_count;
  r.twoq_fc = two_qubit_count(art.logical);
  r.twoq_h = two_qubit_count(accounted);
  r.d2q_fc = two_qubit_depth(art.logical);
  r.d2q_h = two_qubit_depth(accounted);
  r.placement = placement.description;
  r.simplified = opts.simplify_circuit;
  r.swap_cost = expand ? "3cx" : "native";
  return art;
}

inline CompilationReport compile(const IqpInstance& inst, const HardwareGraph& h, const GateSet& gs,
                                 const CompileOptions& opts = {}) {
  return compile_full(inst, h, gs, opts).report;
}

inline CompilationReport compile(const IqpInstance& inst, const DeviceModel& dev,
                                 const CompileOptions& opts = {}) {
  const auto gs = find_gate_set(dev.gateset_id);
  if (!gs) throw ParameterError("device " + dev.graph.name + " names unknown gateset \"" +
                                dev.gateset_id + "\"");
  return compile(inst, dev.graph, *gs, opts);
}

inline nlohmann::json report_to_json(const CompilationReport& r) {
  return nlohmann::json{
      {"instance", r.instance},   {"pattern", r.pattern},
      {"n", r.n},                 {"hardware", r.hardware},
      {"gateset", r.gateset},     {"seed", r.seed},
      {"d_fc", r.d_fc},           {"d_h", r.d_h},
      {"delta_d", r.delta_d},     {"eta", r.eta},
      {"swaps", r.swap_count},    {"twoq_fc", r.twoq_fc},
      {"twoq_h", r.twoq_h},       {"d2q_fc", r.d2q_fc},
      {"d2q_h", r.d2q_h},         {"placement", r.placement},
      {"simplified", r.simplified}, {"swap_cost", r.swap_cost},
  };
}

inline constexpr const char* kCompileCsvHeader =
    "pattern,n,hardware,gateset,seed,D_FC,D_H,delta_D,eta,swaps,twoq_fc,twoq_h";

inline std::string report_csv_row(const CompilationReport& r) {
  char eta[48];
  std::snprintf(eta, sizeof eta, "%.10g", r.eta);
  return r.pattern + "," + std::to_string(r.n) + "," + r.hardware + "," + r.gateset + "," +
         std::to_string(r.seed) + "," + std::to_string(r.d_fc) + "," + std::to_string(r.d_h) +
         "," + std::to_string(r.delta_d) + "," + eta + "," + std::to_string(r.swap_count) + "," +
         std::to_string(r.twoq_fc) + "," + std::to_string(r.twoq_h);
}

}  // namespace iqpc
