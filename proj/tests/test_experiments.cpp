#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "iqpc/experiments.hpp"

using namespace iqpc;

namespace {

const GateSet& cx_gates() {
  static const GateSet gs = *find_gate_set("cx");
  return gs;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

bool any_note_contains(const std::vector<std::string>& notes, const std::string& needle) {
  return std::any_of(notes.begin(), notes.end(), [&](const std::string& n) {
    return n.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("routed circuits reproduce the ideal distribution") {
  const std::vector<HardwareGraph> graphs = {build_line(6), build_ring(6), build_grid(2, 3)};
  for (const std::string pattern : {"dense", "sparse_density:0.4", "local_chain"}) {
    for (const HardwareGraph& g : graphs) {
      const IqpInstance inst = gen_pattern(pattern, 6, 3);
      const VerifyOutcome out = verify_routed_equivalence(inst, g, cx_gates());
      INFO(pattern << " on " << g.name << ": " << out.message);
      REQUIRE(out.pass);
      REQUIRE(out.max_dev <= 1e-9);
      REQUIRE(out.message.empty());
    }
  }
}

TEST_CASE("verification rejects tampered routed circuits") {
  const IqpInstance inst = gen_dense(6, 4);
  const HardwareGraph line = build_line(6);
  CompileOptions opts;
  opts.expand_swaps_for_depth = false;
  const CompilationArtifacts art = compile_full(inst, line, cx_gates(), opts);
  REQUIRE(verify_circuit_against_instance(inst, art.routed.circuit, line).pass);

  SECTION("a deleted SWAP breaks the recorded mapping") {
    Circuit broken = art.routed.circuit;
    const auto it = std::find_if(broken.gates.begin(), broken.gates.end(),
                                 [](const Gate& g) { return g.kind == GateKind::Swap; });
    REQUIRE(it != broken.gates.end());
    broken.gates.erase(it);
    const VerifyOutcome out = verify_circuit_against_instance(inst, broken, line);
    REQUIRE_FALSE(out.pass);
    REQUIRE_FALSE(out.message.empty());
  }

  SECTION("a skewed rotation angle shifts the distribution") {
    Circuit skewed = art.routed.circuit;
    const auto it = std::find_if(skewed.gates.begin(), skewed.gates.end(),
                                 [](const Gate& g) { return g.kind == GateKind::RZ; });
    REQUIRE(it != skewed.gates.end());
    it->angle += 0.3;
    const VerifyOutcome out = verify_circuit_against_instance(inst, skewed, line);
    REQUIRE_FALSE(out.pass);
    REQUIRE(out.message.find("deviates") != std::string::npos);
  }

  SECTION("a gate moved off the hardware edge set is reported by index") {
    Circuit hopped = art.routed.circuit;
    const auto it = std::find_if(hopped.gates.begin(), hopped.gates.end(),
                                 [](const Gate& g) { return g.kind == GateKind::CX; });
    REQUIRE(it != hopped.gates.end());
    it->q0 = 0;
    it->q1 = 5;
    const VerifyOutcome out = verify_circuit_against_instance(inst, hopped, line);
    REQUIRE_FALSE(out.pass);
    REQUIRE(out.message.find("non-adjacent") != std::string::npos);
  }

  SECTION("the logical circuit is rejected for being in the wrong frame") {
    const VerifyOutcome out = verify_circuit_against_instance(inst, art.logical, line);
    REQUIRE_FALSE(out.pass);
    REQUIRE(out.message.find("physical frame") != std::string::npos);
  }

  SECTION("a hardware graph of the wrong size is rejected") {
    const VerifyOutcome out = verify_circuit_against_instance(inst, art.routed.circuit, build_line(7));
    REQUIRE_FALSE(out.pass);
    REQUIRE_FALSE(out.message.empty());
  }

  SECTION("instances beyond the oracle limit are refused outright") {
    REQUIRE_THROWS_AS(verify_circuit_against_instance(gen_dense(9, 1), art.routed.circuit, line),
                      ResourceError);
  }
}

TEST_CASE("verification sweep passes on real device models") {
  VerifyConfig cfg;
  cfg.devices = {find_device("SC_5"), find_device("FC_2")};
  cfg.n = 6;
  cfg.seeds = 2;
  const VerifyResult res = run_verify(cfg);
  REQUIRE(res.all_pass);
  REQUIRE(res.max_dev <= 1e-9);
  REQUIRE(res.lines.size() == 12);  // 2 devices x 3 default patterns x 2 seeds
  for (const std::string& line : res.lines) {
    INFO(line);
    REQUIRE(starts_with(line, "PASS "));
  }
}

TEST_CASE("verification sweep skips devices that are too small") {
  DeviceModel tiny;
  tiny.graph = build_line(4);
  tiny.two_qubit_error_rate = 0.01;
  tiny.gateset_id = "cx";
  VerifyConfig cfg;
  cfg.devices = {tiny};
  cfg.n = 6;
  cfg.seeds = 1;
  const VerifyResult res = run_verify(cfg);
  REQUIRE(res.all_pass);
  REQUIRE(res.lines.size() == 3);
  for (const std::string& line : res.lines) {
    REQUIRE(starts_with(line, "SKIP "));
    REQUIRE(line.find("(capacity)") != std::string::npos);
  }

  cfg.n = 9;
  REQUIRE_THROWS_AS(run_verify(cfg), ParameterError);
  cfg.n = 6;
  cfg.seeds = 0;
  REQUIRE_THROWS_AS(run_verify(cfg), ParameterError);
}

TEST_CASE("phase diagram sweep fills rows and notes capacity skips") {
  PhaseDiagramConfig cfg;
  cfg.devices = {find_device("FC_2"), find_device("SC_5")};
  cfg.patterns = {"dense", "rhg:2x2x2"};
  cfg.n = 12;
  cfg.seeds = 3;
  const PhaseDiagramResult res = run_phase_diagram(cfg);

  REQUIRE(res.rows.size() == 2);  // dense fits both devices, the lattice fits neither
  REQUIRE(res.notes.size() == 2);
  for (const std::string& note : res.notes) {
    REQUIRE(note.find("skipped for rhg:2x2x2") != std::string::npos);
    REQUIRE(note.find("needs 90") != std::string::npos);
  }

  REQUIRE(res.rows[0].hardware == "FC_2");
  REQUIRE(res.rows[0].gateset == "zzphase");
  REQUIRE(res.rows[1].hardware == "SC_5");
  REQUIRE(res.rows[1].gateset == "cx");
  for (const PhaseRow& row : res.rows) {
    REQUIRE(row.pattern == "dense");
    REQUIRE(row.n == 12);
    REQUIRE(row.seeds == 3);
    REQUIRE(row.d_fc_mean > 0.0);
    REQUIRE(row.eta_mean > 0.0);
    REQUIRE(row.eta_mean <= 1.0);
    REQUIRE(row.margin.point.label == row.hardware + "/dense");
    REQUIRE(row.margin.point.depth > 0.0);
    REQUIRE(row.margin.d_star > 0.0);
    REQUIRE_THAT(row.margin.margin,
                 Catch::Matchers::WithinAbs(row.margin.d_star - row.margin.point.depth, 1e-12));
  }
  REQUIRE(res.rows[0].margin.point.p_eff == find_device("FC_2").two_qubit_error_rate);

  const std::string csv = phase_diagram_csv(res);
  REQUIRE(starts_with(csv, std::string(kPhaseDiagramCsvHeader) + "\n"));
  REQUIRE(csv.find("FC_2/dense,") != std::string::npos);
  REQUIRE(csv == phase_diagram_csv(run_phase_diagram(cfg)));
}

TEST_CASE("phase diagram sweep rejects empty configurations") {
  PhaseDiagramConfig cfg;
  cfg.devices = {find_device("SC_5")};
  cfg.patterns = {"dense"};
  cfg.seeds = 0;
  REQUIRE_THROWS_AS(run_phase_diagram(cfg), ParameterError);
  cfg.seeds = 1;
  cfg.devices.clear();
  REQUIRE_THROWS_AS(run_phase_diagram(cfg), ParameterError);
  cfg.devices = {find_device("SC_5")};
  cfg.patterns.clear();
  REQUIRE_THROWS_AS(run_phase_diagram(cfg), ParameterError);
}

TEST_CASE("scaling sweep reports perfect efficiency where routing is free") {
  ScalingConfig cfg;
  cfg.patterns = {"local_chain"};
  cfg.n_list = {6, 8};
  cfg.topologies = {"complete", "line"};
  cfg.seeds = 2;
  const ScalingResult res = run_scaling(cfg);

  REQUIRE(res.rows.size() == 4);
  REQUIRE(res.rows[0].topology == "complete:6");
  REQUIRE(res.rows[1].topology == "line:6");
  REQUIRE(res.rows[2].topology == "complete:8");
  REQUIRE(res.rows[3].topology == "line:8");
  for (const ScalingRow& row : res.rows) {
    REQUIRE(row.pattern == "local_chain");
    REQUIRE(row.gateset == "cx");
    REQUIRE(row.seeds == 2);
    REQUIRE_THAT(row.eta_mean, Catch::Matchers::WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(row.eta_std, Catch::Matchers::WithinAbs(0.0, 1e-12));
    REQUIRE(row.d_h_mean == row.d_fc_mean);
  }

  const std::string csv = scaling_csv(res);
  REQUIRE(starts_with(csv, std::string(kScalingCsvHeader) + "\n"));
  REQUIRE(csv.find("local_chain,6,complete:6,cx,2,1,0,8,8\n") != std::string::npos);
}

TEST_CASE("scaling sweep notes sizing adjustments") {
  SECTION("sparse pair budget clamps on small instances") {
    ScalingConfig cfg;
    cfg.patterns = {"sparse_2n"};
    cfg.n_list = {4};
    cfg.topologies = {"complete"};
    cfg.seeds = 1;
    const ScalingResult res = run_scaling(cfg);
    REQUIRE(res.rows.size() == 1);
    REQUIRE(res.rows[0].pattern == "sparse_2n");
    REQUIRE(any_note_contains(res.notes, "sparse_2n clamped to 6 pairs at n=4"));
  }

  SECTION("odd sizes round up on the ladder family") {
    ScalingConfig cfg;
    cfg.patterns = {"local_chain"};
    cfg.n_list = {5};
    cfg.topologies = {"ladder"};
    cfg.seeds = 1;
    const ScalingResult res = run_scaling(cfg);
    REQUIRE(res.rows.size() == 1);
    REQUIRE(res.rows[0].topology == "ladder:6");
    REQUIRE(any_note_contains(res.notes, "ladder sized to 6 rungs for n=5"));
  }

  SECTION("explicit members too small for n are skipped") {
    ScalingConfig cfg;
    cfg.patterns = {"local_chain"};
    cfg.n_list = {6};
    cfg.topologies = {"line:4"};
    cfg.seeds = 1;
    const ScalingResult res = run_scaling(cfg);
    REQUIRE(res.rows.empty());
    REQUIRE(any_note_contains(res.notes, "topology line:4 skipped for n=6 (too small)"));
  }
}

TEST_CASE("scaling sweep validates its configuration") {
  ScalingConfig cfg;
  cfg.patterns = {"local_chain"};
  cfg.n_list = {6};
  cfg.topologies = {"line"};
  cfg.seeds = 0;
  REQUIRE_THROWS_AS(run_scaling(cfg), ParameterError);
  cfg.seeds = 1;
  cfg.gateset = "nope";
  REQUIRE_THROWS_AS(run_scaling(cfg), ParameterError);
  cfg.gateset = "cx";
  cfg.n_list = {1};
  REQUIRE_THROWS_AS(run_scaling(cfg), ParameterError);
}

TEST_CASE("percolation sweep spans patterns and deletion rates") {
  PercolationConfig cfg;
  cfg.patterns = {"dense", "local_chain"};
  cfg.n = 10;
  cfg.q_list = {0.0, 0.5};
  cfg.trials = 50;
  cfg.seed = 7;
  const std::vector<PercolationRow> rows = run_percolation(cfg);

  REQUIRE(rows.size() == 4);
  REQUIRE(rows[0].graph_label == "dense");
  REQUIRE(rows[2].graph_label == "local_chain");
  for (const PercolationRow& row : rows) REQUIRE(row.n == 10);

  // Both interaction graphs are connected, so q=0 keeps everything intact.
  for (std::size_t i : {std::size_t{0}, std::size_t{2}}) {
    REQUIRE(rows[i].stats.q == 0.0);
    REQUIRE(rows[i].stats.trials == 50);
    REQUIRE(rows[i].stats.largest_mean == 10.0);
    REQUIRE(rows[i].stats.largest_max == 10);
    REQUIRE(rows[i].stats.largest_min == 10);
    REQUIRE(rows[i].stats.frac_below_threshold == 0.0);
    REQUIRE(rows[i].stats.threshold == 5);  // ceil(2 ln 10)
  }
  REQUIRE(rows[1].stats.q == 0.5);
  REQUIRE(rows[1].stats.largest_mean < 10.0);
  // The dense graph keeps all survivors in one component, the chain fragments.
  REQUIRE(rows[1].stats.largest_mean > rows[3].stats.largest_mean);

  const std::string csv = percolation_csv(rows);
  REQUIRE(starts_with(csv, std::string(kFragmentationCsvHeader) + "\n"));
  REQUIRE(csv.find(fragmentation_csv_row("dense", 10, rows[0].stats) + "\n") != std::string::npos);
  REQUIRE(csv == percolation_csv(run_percolation(cfg)));
}
