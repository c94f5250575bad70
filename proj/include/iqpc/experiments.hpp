#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "iqpc/errors.hpp"
#include "iqpc/instance.hpp"
#include "iqpc/percolation.hpp"
#include "iqpc/phase.hpp"
#include "iqpc/router.hpp"
#include "iqpc/sampler.hpp"
#include "iqpc/topology.hpp"

namespace iqpc {

namespace detail {

inline int worker_count() {
  if (const char* env = std::getenv("IQPC_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(0..count-1) on a small worker pool. The first exception wins and
// is rethrown on the calling thread after all workers drain.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers < 2) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto drain = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

inline double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / xs.size();
}

// Population standard deviation; zero for a single sample.
inline double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / xs.size());
}

inline std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Routed-circuit verification against the brute-force oracle.

struct VerifyOutcome {
  bool pass = false;
  double max_dev = 0.0;
  std::string message;
};

// Checks a routed physical circuit against the instance it claims to
// implement. The simulation runs in the n-qubit logical space while tracking
// which physical site holds which logical qubit: a SWAP is an exact
// relabeling, every other gate is translated through the current ownership.
// Along the way each two-qubit gate is checked against the hardware edge set
// and each operand against occupancy, so a corrupted SWAP or a misrouted
// gate fails with its gate index rather than as a silent distribution shift.
inline VerifyOutcome verify_circuit_against_instance(const IqpInstance& inst, const Circuit& c,
                                                     const HardwareGraph& g, double tol = 1e-9) {
  VerifyOutcome out;
  validate_instance(inst);
  if (inst.n > 8) throw ResourceError("verification is limited to 8 logical qubits");
  if (c.frame != Frame::Physical) {
    out.message = "circuit is not in the physical frame";
    return out;
  }
  if (c.qubit_count != g.qubit_count) {
    out.message = "circuit has " + std::to_string(c.qubit_count) + " qubits, hardware " +
                  g.name + " has " + std::to_string(g.qubit_count);
    return out;
  }
  if (static_cast<int>(c.initial_mapping.size()) != inst.n) {
    out.message = "initial mapping covers " + std::to_string(c.initial_mapping.size()) +
                  " qubits, instance has " + std::to_string(inst.n);
    return out;
  }
  std::vector<int> owner(static_cast<std::size_t>(g.qubit_count), -1);
  for (int q = 0; q < inst.n; ++q) {
    const int site = c.initial_mapping[q];
    if (site < 0 || site >= g.qubit_count || owner[site] != -1) {
      out.message = "initial mapping is not injective into the hardware graph";
      return out;
    }
    owner[site] = q;
  }

  StateVector state(std::size_t{1} << inst.n, 0.0);
  state[0] = 1.0;
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& gate = c.gates[gi];
    if (gate.is_two_qubit() && g.dist(gate.q0, gate.q1) != 1) {
      out.message = "gate " + std::to_string(gi) + " acts on non-adjacent qubits " +
                    std::to_string(gate.q0) + "," + std::to_string(gate.q1) + " of " + g.name;
      return out;
    }
    if (gate.kind == GateKind::Swap) {
      std::swap(owner[gate.q0], owner[gate.q1]);
      continue;
    }
    Gate logical = gate;
    logical.q0 = owner[gate.q0];
    if (gate.is_two_qubit()) logical.q1 = owner[gate.q1];
    if (logical.q0 == -1 || (gate.is_two_qubit() && logical.q1 == -1)) {
      out.message = "gate " + std::to_string(gi) + " acts on an unoccupied physical qubit";
      return out;
    }
    apply_gate(state, logical);
  }

  if (static_cast<int>(c.final_mapping.size()) != inst.n) {
    out.message = "final mapping covers " + std::to_string(c.final_mapping.size()) +
                  " qubits, instance has " + std::to_string(inst.n);
    return out;
  }
  for (int q = 0; q < inst.n; ++q) {
    const int site = c.final_mapping[q];
    if (site < 0 || site >= g.qubit_count || owner[site] != q) {
      out.message = "recorded final mapping disagrees with tracked ownership for qubit " +
                    std::to_string(q);
      return out;
    }
  }

  const OutputDistribution routed = probs_from_statevector(state);
  const OutputDistribution ideal = brute_force_probs(inst);
  out.max_dev = max_abs_deviation(routed, ideal);
  if (out.max_dev > tol) {
    out.message = "distribution deviates from the oracle by " + detail::fmt_g(out.max_dev);
    return out;
  }
  out.pass = true;
  return out;
}

// Compiles the instance onto the hardware and verifies the routed circuit.
inline VerifyOutcome verify_routed_equivalence(const IqpInstance& inst, const HardwareGraph& g,
                                               const GateSet& gs, const CompileOptions& opts = {},
                                               double tol = 1e-9) {
  CompileOptions local = opts;
  local.expand_swaps_for_depth = false;  // verify the SWAP-carrying circuit
  const CompilationArtifacts art = compile_full(inst, g, gs, local);
  return verify_circuit_against_instance(inst, art.routed.circuit, g, tol);
}

// ---------------------------------------------------------------------------
// Phase-diagram sweep: operating points of devices under compiled depths.

struct PhaseDiagramConfig {
  std::vector<DeviceModel> devices;
  std::vector<std::string> patterns;
  int n = 16;
  int seeds = 20;
  PhaseParams params;
  std::uint64_t seed = 1;
  CompileOptions compile_opts;
};

struct PhaseRow {
  MarginReport margin;  // point label is "device/pattern"
  std::string pattern;
  int n = 0;
  std::string hardware;
  std::string gateset;
  int seeds = 0;
  double d_fc_mean = 0.0;
  double d_fc_std = 0.0;
  double d_h_std = 0.0;
  double eta_mean = 0.0;
};

struct PhaseDiagramResult {
  std::vector<PhaseRow> rows;
  std::vector<std::string> notes;  // capacity skips and similar
};

inline PhaseDiagramResult run_phase_diagram(const PhaseDiagramConfig& cfg) {
  if (cfg.seeds < 1) throw ParameterError("seed count must be >= 1");
  if (cfg.devices.empty()) throw ParameterError("phase diagram needs at least one device");
  if (cfg.patterns.empty()) throw ParameterError("phase diagram needs at least one pattern");
  validate_phase_params(cfg.params);

  struct Cell {
    const DeviceModel* dev = nullptr;
    PatternSpec spec;
    int required_n = 0;
    std::optional<PhaseRow> row;
  };
  std::vector<Cell> cells;
  PhaseDiagramResult result;
  for (const DeviceModel& dev : cfg.devices) {
    for (const std::string& pattern : cfg.patterns) {
      Cell cell;
      cell.dev = &dev;
      cell.spec = parse_pattern_spec(pattern);
      // RHG instances carry their own size; everything else sizes to cfg.n.
      cell.required_n = gen_pattern(cell.spec, cfg.n, 0).n;
      if (cell.required_n > dev.graph.qubit_count) {
        result.notes.push_back("device " + dev.graph.name + " (" +
                               std::to_string(dev.graph.qubit_count) + " qubits) skipped for " +
                               pattern + " (needs " + std::to_string(cell.required_n) + ")");
        continue;
      }
      cells.push_back(std::move(cell));
    }
  }

  detail::parallel_for(static_cast<int>(cells.size()), [&](int idx) {
    Cell& cell = cells[idx];
    const DeviceModel& dev = *cell.dev;
    const auto gs = find_gate_set(dev.gateset_id);
    if (!gs)
      throw ParameterError("device " + dev.graph.name + " names unknown gateset \"" +
                           dev.gateset_id + "\"");
    std::vector<double> d_fc, d_h, eta;
    for (int i = 0; i < cfg.seeds; ++i) {
      const IqpInstance inst = gen_pattern(cell.spec, cfg.n, cfg.seed + i);
      const CompilationReport rep = compile(inst, dev.graph, *gs, cfg.compile_opts);
      d_fc.push_back(rep.d_fc);
      d_h.push_back(rep.d_h);
      eta.push_back(rep.eta);
    }
    PhaseRow row;
    row.pattern = gen_pattern(cell.spec, cfg.n, 0).label;
    row.n = cell.required_n;
    row.hardware = dev.graph.name;
    row.gateset = dev.gateset_id;
    row.seeds = cfg.seeds;
    row.d_fc_mean = detail::mean_of(d_fc);
    row.d_fc_std = detail::stddev_of(d_fc);
    row.d_h_std = detail::stddev_of(d_h);
    row.eta_mean = detail::mean_of(eta);
    OperatingPoint pt;
    pt.label = dev.graph.name + "/" + row.pattern;
    pt.p_eff = dev.two_qubit_error_rate;
    pt.depth = detail::mean_of(d_h);
    pt.k = cfg.params.k;
    row.margin = margin(pt, cfg.params);
    cell.row = std::move(row);
  });

  for (Cell& cell : cells)
    if (cell.row) result.rows.push_back(std::move(*cell.row));
  return result;
}

inline constexpr const char* kPhaseDiagramCsvHeader =
    "label,p_eff,D_H,d_star,margin,regime,pattern,n,hardware,gateset,seeds,"
    "d_fc_mean,d_fc_std,d_h_std,eta_mean";

inline std::string phase_diagram_csv(const PhaseDiagramResult& res) {
  std::string out = std::string(kPhaseDiagramCsvHeader) + "\n";
  for (const PhaseRow& r : res.rows) {
    const MarginReport& m = r.margin;
    out += m.point.label + "," + detail::fmt_g(m.point.p_eff) + "," +
           detail::fmt_g(m.point.depth) + "," + detail::fmt_g(m.d_star) + "," +
           detail::fmt_g(m.margin) + "," + regime_name(m.regime) + "," + r.pattern + "," +
           std::to_string(r.n) + "," + r.hardware + "," + r.gateset + "," +
           std::to_string(r.seeds) + "," + detail::fmt_g(r.d_fc_mean) + "," +
           detail::fmt_g(r.d_fc_std) + "," + detail::fmt_g(r.d_h_std) + "," +
           detail::fmt_g(r.eta_mean) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overhead-scaling sweep over reference topology families.

struct ScalingConfig {
  std::vector<std::string> patterns = {"dense", "sparse_2n", "local_chain"};
  std::vector<int> n_list = {4, 8, 12, 16, 20, 24, 28, 32};
  std::vector<std::string> topologies = {"complete", "line", "ring", "ladder", "grid"};
  int seeds = 10;
  std::string gateset = "cx";
  std::uint64_t seed = 1;
  CompileOptions compile_opts;
};

struct ScalingRow {
  std::string pattern;
  int n = 0;
  std::string topology;
  std::string gateset;
  int seeds = 0;
  double eta_mean = 0.0;
  double eta_std = 0.0;
  double d_fc_mean = 0.0;
  double d_h_mean = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  std::vector<std::string> notes;
};

namespace detail {

// Sizes one of the reference families to hold n qubits, biasing toward the
// smallest member that fits.
inline HardwareGraph family_member(const std::string& family, int n, std::vector<std::string>* notes) {
  if (family == "complete") return build_complete(n);
  if (family == "line") return build_line(n);
  if (family == "ring") return build_ring(std::max(n, 3));
  if (family == "ladder") {
    const int even = n % 2 == 0 ? n : n + 1;
    if (even != n && notes)
      notes->push_back("ladder sized to " + std::to_string(even) + " rungs for n=" +
                       std::to_string(n));
    return build_ladder(std::max(even, 2));
  }
  if (family == "grid") {
    int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    r = std::max(r, 1);
    const int c = (n + r - 1) / r;
    return build_grid(r, c);
  }
  // Fall back to the shared "kind:arg" syntax for explicit members.
  return build_topology(family);
}

// The sparse_2n token tracks instance size: 2n interactions, clamped to the
// complete-graph count when n is too small to host that many pairs.
inline PatternSpec scaling_pattern(const std::string& token, int n,
                                   std::vector<std::string>* notes) {
  if (token == "sparse_2n") {
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    long long m = 2LL * n;
    if (m > pairs) {
      if (notes)
        notes->push_back("sparse_2n clamped to " + std::to_string(pairs) + " pairs at n=" +
                         std::to_string(n));
      m = pairs;
    }
    PatternSpec spec;
    spec.pattern = Pattern::SparseCount;
    spec.m = static_cast<int>(m);
    spec.canonical = "sparse_count:" + std::to_string(m);
    return spec;
  }
  return parse_pattern_spec(token);
}

}  // namespace detail

inline ScalingResult run_scaling(const ScalingConfig& cfg) {
  if (cfg.seeds < 1) throw ParameterError("seed count must be >= 1");
  const auto gs = find_gate_set(cfg.gateset);
  if (!gs) throw ParameterError("unknown gateset \"" + cfg.gateset + "\"");

  struct Cell {
    PatternSpec spec;
    std::string pattern_token;
    int n = 0;
    HardwareGraph graph;
  };
  ScalingResult result;
  std::vector<Cell> cells;
  for (const std::string& pattern : cfg.patterns) {
    for (int n : cfg.n_list) {
      if (n < 2) throw ParameterError("scaling needs n >= 2");
      const PatternSpec spec = detail::scaling_pattern(pattern, n, &result.notes);
      for (const std::string& family : cfg.topologies) {
        Cell cell;
        cell.spec = spec;
        cell.pattern_token = pattern;
        cell.n = n;
        cell.graph = detail::family_member(family, n, &result.notes);
        if (cell.graph.qubit_count < n) {
          result.notes.push_back("topology " + cell.graph.name + " skipped for n=" +
                                 std::to_string(n) + " (too small)");
          continue;
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  // Sizing notes repeat across patterns and families; keep the first of each.
  std::vector<std::string> unique_notes;
  for (const std::string& note : result.notes) {
    if (std::find(unique_notes.begin(), unique_notes.end(), note) == unique_notes.end())
      unique_notes.push_back(note);
  }
  result.notes = std::move(unique_notes);

  std::vector<ScalingRow> rows(cells.size());
  detail::parallel_for(static_cast<int>(cells.size()), [&](int idx) {
    const Cell& cell = cells[idx];
    std::vector<double> eta, d_fc, d_h;
    for (int i = 0; i < cfg.seeds; ++i) {
      const IqpInstance inst = gen_pattern(cell.spec, cell.n, cfg.seed + i);
      const CompilationReport rep = compile(inst, cell.graph, *gs, cfg.compile_opts);
      eta.push_back(rep.eta);
      d_fc.push_back(rep.d_fc);
      d_h.push_back(rep.d_h);
    }
    ScalingRow& row = rows[idx];
    row.pattern = cell.pattern_token;
    row.n = cell.n;
    row.topology = cell.graph.name;
    row.gateset = cfg.gateset;
    row.seeds = cfg.seeds;
    row.eta_mean = detail::mean_of(eta);
    row.eta_std = detail::stddev_of(eta);
    row.d_fc_mean = detail::mean_of(d_fc);
    row.d_h_mean = detail::mean_of(d_h);
  });
  result.rows = std::move(rows);
  return result;
}

inline constexpr const char* kScalingCsvHeader =
    "pattern,n,topology,gateset,seeds,eta_mean,eta_std,d_fc_mean,d_h_mean";

inline std::string scaling_csv(const ScalingResult& res) {
  std::string out = std::string(kScalingCsvHeader) + "\n";
  for (const ScalingRow& r : res.rows) {
    out += r.pattern + "," + std::to_string(r.n) + "," + r.topology + "," + r.gateset + "," +
           std::to_string(r.seeds) + "," + detail::fmt_g(r.eta_mean) + "," +
           detail::fmt_g(r.eta_std) + "," + detail::fmt_g(r.d_fc_mean) + "," +
           detail::fmt_g(r.d_h_mean) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Percolation sweep over pattern interaction graphs.

struct PercolationConfig {
  std::vector<std::string> patterns = {"dense", "local_chain", "rhg:2x2x2"};
  int n = 16;
  std::vector<double> q_list = {0.0, 0.25, 0.5};
  int trials = 100;
  double threshold_coeff = 2.0;
  DeletionMode mode = DeletionMode::Vertex;
  std::uint64_t seed = 1;
};

struct PercolationRow {
  std::string graph_label;
  int n = 0;
  FragmentationStats stats;
};

inline std::vector<PercolationRow> run_percolation(const PercolationConfig& cfg) {
  std::vector<PercolationRow> rows;
  // Decorrelate the fragmentation draws from the instance generation streams.
  const std::uint64_t frag_seed = cfg.seed ^ 0x517cc1b727220a95ULL;
  for (const std::string& pattern : cfg.patterns) {
    const IqpInstance inst = gen_pattern(pattern, cfg.n, cfg.seed);
    const InteractionGraph ig = interaction_graph(inst);
    for (const FragmentationStats& st :
         run_fragmentation(ig, cfg.q_list, cfg.trials, cfg.threshold_coeff, frag_seed, cfg.mode)) {
      PercolationRow row;
      row.graph_label = inst.label;
      row.n = inst.n;
      row.stats = st;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string percolation_csv(const std::vector<PercolationRow>& rows) {
  std::string out = std::string(kFragmentationCsvHeader) + "\n";
  for (const PercolationRow& r : rows)
    out += fragmentation_csv_row(r.graph_label, r.n, r.stats) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Verification sweep.

struct VerifyConfig {
  std::vector<DeviceModel> devices;
  std::vector<std::string> patterns = {"dense", "sparse_density:0.4", "local_chain"};
  int n = 6;
  int seeds = 5;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  CompileOptions compile_opts;
};

struct VerifyResult {
  bool all_pass = true;
  double max_dev = 0.0;
  std::vector<std::string> lines;
};

inline VerifyResult run_verify(const VerifyConfig& cfg) {
  if (cfg.n > 8) throw ParameterError("verification is limited to n <= 8");
  if (cfg.seeds < 1) throw ParameterError("seed count must be >= 1");
  VerifyResult result;
  for (const DeviceModel& dev : cfg.devices) {
    const auto gs = find_gate_set(dev.gateset_id);
    if (!gs)
      throw ParameterError("device " + dev.graph.name + " names unknown gateset \"" +
                           dev.gateset_id + "\"");
    for (const std::string& pattern : cfg.patterns) {
      for (int i = 0; i < cfg.seeds; ++i) {
        const IqpInstance inst = gen_pattern(pattern, cfg.n, cfg.seed + i);
        if (inst.n > dev.graph.qubit_count) {
          result.lines.push_back("SKIP " + instance_id(inst) + " on " + dev.graph.name +
                                 " (capacity)");
          continue;
        }
        const VerifyOutcome out =
            verify_routed_equivalence(inst, dev.graph, *gs, cfg.compile_opts, cfg.tol);
        result.max_dev = std::max(result.max_dev, out.max_dev);
        if (out.pass) {
          result.lines.push_back("PASS " + instance_id(inst) + " on " + dev.graph.name +
                                 " (max dev " + detail::fmt_g(out.max_dev) + ")");
        } else {
          result.all_pass = false;
          result.lines.push_back("FAIL " + instance_id(inst) + " on " + dev.graph.name + ": " +
                                 out.message);
        }
      }
    }
  }
  return result;
}

}  // namespace iqpc
