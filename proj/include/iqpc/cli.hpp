#pragma once

#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iqpc/errors.hpp"
#include "iqpc/experiments.hpp"
#include "iqpc/instance.hpp"
#include "iqpc/percolation.hpp"
#include "iqpc/phase.hpp"
#include "iqpc/router.hpp"
#include "iqpc/svg.hpp"
#include "iqpc/synth.hpp"
#include "iqpc/topology.hpp"

namespace iqpc {

namespace detail {

inline void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file " + path);
  out << content;
  if (!out) throw IoError("failed while writing " + path);
}

inline std::vector<DeviceModel> resolve_devices(const std::vector<std::string>& names) {
  std::vector<DeviceModel> devices;
  devices.reserve(names.size());
  for (const std::string& name : names) devices.push_back(find_device(name));
  return devices;
}

inline nlohmann::json margin_to_json(const MarginReport& m) {
  return {{"label", m.point.label}, {"p_eff", m.point.p_eff},  {"D_H", m.point.depth},
          {"d_star", m.d_star},     {"margin", m.margin},      {"regime", regime_name(m.regime)}};
}

}  // namespace detail

inline const std::vector<std::string> kDefaultDeviceNames = {"FC_1", "FC_2", "SC_1", "SC_2",
                                                             "SC_3", "SC_4", "SC_5"};

// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
inline int run_cli(int argc, char** argv) {
  CLI::App app{"IQP circuit compilation and critical-depth analysis toolkit"};
  app.set_version_flag("--version", "iqpc 1.0.0");
  app.require_subcommand(1);
  std::function<int()> action;

  // --- gen -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("gen", "Generate an interaction pattern instance as JSON");
    auto pattern = std::make_shared<std::string>();
    auto n = std::make_shared<int>(16);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    cmd->add_option("--pattern", *pattern,
                    "dense | sparse_density:R | sparse_count:M | local_chain | rhg:AxBxC")
        ->required();
    cmd->add_option("--n", *n, "qubit count (ignored by rhg patterns)");
    cmd->add_option("--seed", *seed, "instance seed");
    cmd->add_option("--out", *out, "output path (stdout when omitted)");
    cmd->add_option("--format", *format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=, &action] {
      action = [=] {
        if (*format != "json")
          throw ParameterError("instances are JSON documents; --format csv is not available here");
        const IqpInstance inst = gen_pattern(*pattern, *n, *seed);
        detail::write_output(*out, instance_to_json(inst).dump(2) + "\n");
        return 0;
      };
    });
  }

  // --- compile ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("compile", "Compile one instance onto a device or topology");
    auto pattern = std::make_shared<std::string>();
    auto n = std::make_shared<int>(16);
    auto instance_path = std::make_shared<std::string>();
    auto device = std::make_shared<std::string>();
    auto topology = std::make_shared<std::string>();
    auto gateset = std::make_shared<std::string>();
    auto placement = std::make_shared<std::string>("bfs_match");
    auto simplify_flag = std::make_shared<bool>(false);
    auto lookahead = std::make_shared<bool>(false);
    auto swap_cost = std::make_shared<std::string>("auto");
    auto seed = std::make_shared<std::uint64_t>(1);
    auto format = std::make_shared<std::string>("json");
    auto out = std::make_shared<std::string>();
    auto circuit_out = std::make_shared<std::string>();
    auto* pattern_opt = cmd->add_option("--pattern", *pattern, "instance pattern to generate");
    cmd->add_option("--n", *n, "qubit count for --pattern");
    auto* instance_opt =
        cmd->add_option("--instance", *instance_path, "instance JSON file")->excludes(pattern_opt);
    auto* device_opt = cmd->add_option("--device", *device, "device name or JSON path");
    cmd->add_option("--topology", *topology, "bare topology, e.g. grid:4x4 or heavy_hex:3")
        ->excludes(device_opt);
    cmd->add_option("--gateset", *gateset, "override the two-qubit gate set (cx | zzphase)");
    cmd->add_option("--placement", *placement, "initial placement strategy")
        ->check(CLI::IsMember({"identity", "bfs_match"}));
    cmd->add_flag("--simplify", *simplify_flag, "run gate cancellation before routing");
    cmd->add_flag("--lookahead", *lookahead, "enable one-gate routing lookahead");
    cmd->add_option("--swap-cost", *swap_cost, "SWAP depth accounting")
        ->check(CLI::IsMember({"auto", "native", "3cx"}));
    cmd->add_option("--seed", *seed, "instance seed for --pattern");
    cmd->add_option("--format", *format, "report format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", *out, "report path (stdout when omitted)");
    cmd->add_option("--circuit-out", *circuit_out, "also write the routed circuit text");
    cmd->callback([=, &action] {
      const bool has_pattern = pattern_opt->count() > 0;
      const bool has_instance = instance_opt->count() > 0;
      const bool has_device = device_opt->count() > 0;
      action = [=] {
        if (has_pattern == has_instance)
          throw ParameterError("pick an instance source: either --pattern or --instance");
        if (!has_device && topology->empty())
          throw ParameterError("pick a target: either --device or --topology");
        const IqpInstance inst =
            has_instance ? load_instance(*instance_path) : gen_pattern(*pattern, *n, *seed);

        HardwareGraph graph;
        std::string gateset_id = "cx";
        if (has_device) {
          DeviceModel dev = find_device(*device);
          graph = std::move(dev.graph);
          gateset_id = dev.gateset_id;
        } else {
          graph = build_topology(*topology);
        }
        if (!gateset->empty()) gateset_id = *gateset;
        const auto gs = find_gate_set(gateset_id);
        if (!gs) throw ParameterError("unknown gateset \"" + gateset_id + "\"");

        CompileOptions opts;
        opts.placement = parse_placement(*placement);
        opts.simplify_circuit = *simplify_flag;
        opts.lookahead = *lookahead;
        if (*swap_cost == "native") opts.expand_swaps_for_depth = false;
        else if (*swap_cost == "3cx") opts.expand_swaps_for_depth = true;

        const CompilationArtifacts art = compile_full(inst, graph, *gs, opts);
        if (!circuit_out->empty())
          detail::write_output(*circuit_out, circuit_to_text(art.routed.circuit));
        if (*format == "csv")
          detail::write_output(*out, std::string(kCompileCsvHeader) + "\n" +
                                         report_csv_row(art.report) + "\n");
        else
          detail::write_output(*out, report_to_json(art.report).dump(2) + "\n");
        return 0;
      };
    });
  }

  // --- phase-diagram ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "phase-diagram", "Place compiled devices against the critical-depth boundary");
    auto devices = std::make_shared<std::vector<std::string>>(kDefaultDeviceNames);
    auto patterns = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"dense", "sparse_density:0.4", "local_chain", "rhg:2x2x2"});
    auto n = std::make_shared<int>(16);
    auto seeds = std::make_shared<int>(20);
    auto c = std::make_shared<double>(1.0);
    auto k = std::make_shared<int>(2);
    auto svg_path = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(1);
    auto format = std::make_shared<std::string>("csv");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--devices", *devices, "device names or JSON paths")->delimiter(',');
    cmd->add_option("--patterns", *patterns, "instance patterns")->delimiter(',');
    cmd->add_option("--n", *n, "qubit count (rhg patterns keep their own size)");
    cmd->add_option("--seeds", *seeds, "instances per (device, pattern) cell");
    cmd->add_option("--c", *c, "boundary constant");
    cmd->add_option("--k", *k, "interaction locality of the boundary");
    cmd->add_option("--svg", *svg_path, "also render the diagram to this SVG file");
    cmd->add_option("--seed", *seed, "base instance seed");
    cmd->add_option("--format", *format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", *out, "output path (stdout when omitted)");
    cmd->callback([=, &action] {
      action = [=] {
        PhaseDiagramConfig cfg;
        cfg.devices = detail::resolve_devices(*devices);
        cfg.patterns = *patterns;
        cfg.n = *n;
        cfg.seeds = *seeds;
        cfg.params.c = *c;
        cfg.params.k = *k;
        cfg.seed = *seed;
        const PhaseDiagramResult res = run_phase_diagram(cfg);
        for (const std::string& note : res.notes) std::fprintf(stderr, "note: %s\n", note.c_str());
        if (!svg_path->empty()) {
          std::vector<MarginReport> margins;
          for (const PhaseRow& row : res.rows) margins.push_back(row.margin);
          detail::write_output(*svg_path, phase_diagram_svg(margins, cfg.params));
        }
        if (*format == "json") {
          auto rows = nlohmann::json::array();
          for (const PhaseRow& r : res.rows) {
            nlohmann::json j = detail::margin_to_json(r.margin);
            j["pattern"] = r.pattern;
            j["n"] = r.n;
            j["hardware"] = r.hardware;
            j["gateset"] = r.gateset;
            j["seeds"] = r.seeds;
            j["d_fc_mean"] = r.d_fc_mean;
            j["d_fc_std"] = r.d_fc_std;
            j["d_h_std"] = r.d_h_std;
            j["eta_mean"] = r.eta_mean;
            rows.push_back(std::move(j));
          }
          nlohmann::json doc = {{"rows", std::move(rows)}, {"notes", res.notes}};
          detail::write_output(*out, doc.dump(2) + "\n");
        } else {
          detail::write_output(*out, phase_diagram_csv(res));
        }
        return 0;
      };
    });
  }

  // --- scaling -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("scaling", "Compilation efficiency across sizes and families");
    auto cfg0 = ScalingConfig{};
    auto patterns = std::make_shared<std::vector<std::string>>(cfg0.patterns);
    auto n_list = std::make_shared<std::vector<int>>(cfg0.n_list);
    auto topologies = std::make_shared<std::vector<std::string>>(cfg0.topologies);
    auto seeds = std::make_shared<int>(cfg0.seeds);
    auto gateset = std::make_shared<std::string>(cfg0.gateset);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto format = std::make_shared<std::string>("csv");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--patterns", *patterns, "patterns; sparse_2n tracks 2n interactions")
        ->delimiter(',');
    cmd->add_option("--n-list", *n_list, "qubit counts")->delimiter(',');
    cmd->add_option("--topologies", *topologies,
                    "families (complete,line,ring,ladder,grid) or explicit kind:arg members")
        ->delimiter(',');
    cmd->add_option("--seeds", *seeds, "instances per configuration");
    cmd->add_option("--gateset", *gateset, "two-qubit gate set (cx | zzphase)");
    cmd->add_option("--seed", *seed, "base instance seed");
    cmd->add_option("--format", *format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", *out, "output path (stdout when omitted)");
    cmd->callback([=, &action] {
      action = [=] {
        ScalingConfig cfg;
        cfg.patterns = *patterns;
        cfg.n_list = *n_list;
        cfg.topologies = *topologies;
        cfg.seeds = *seeds;
        cfg.gateset = *gateset;
        cfg.seed = *seed;
        const ScalingResult res = run_scaling(cfg);
        for (const std::string& note : res.notes) std::fprintf(stderr, "note: %s\n", note.c_str());
        if (*format == "json") {
          auto rows = nlohmann::json::array();
          for (const ScalingRow& r : res.rows) {
            rows.push_back({{"pattern", r.pattern},
                            {"n", r.n},
                            {"topology", r.topology},
                            {"gateset", r.gateset},
                            {"seeds", r.seeds},
                            {"eta_mean", r.eta_mean},
                            {"eta_std", r.eta_std},
                            {"d_fc_mean", r.d_fc_mean},
                            {"d_h_mean", r.d_h_mean}});
          }
          nlohmann::json doc = {{"rows", std::move(rows)}, {"notes", res.notes}};
          detail::write_output(*out, doc.dump(2) + "\n");
        } else {
          detail::write_output(*out, scaling_csv(res));
        }
        return 0;
      };
    });
  }

  // --- percolation --------------------------------------------------------------
  {
    auto* cmd =
        app.add_subcommand("percolation", "Fragmentation statistics under qubit deletion");
    auto cfg0 = PercolationConfig{};
    auto patterns = std::make_shared<std::vector<std::string>>(cfg0.patterns);
    auto n = std::make_shared<int>(cfg0.n);
    auto q_list = std::make_shared<std::vector<double>>(cfg0.q_list);
    auto trials = std::make_shared<int>(cfg0.trials);
    auto coeff = std::make_shared<double>(cfg0.threshold_coeff);
    auto mode = std::make_shared<std::string>("vertex");
    auto seed = std::make_shared<std::uint64_t>(1);
    auto format = std::make_shared<std::string>("csv");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--patterns", *patterns, "instance patterns")->delimiter(',');
    cmd->add_option("--n", *n, "qubit count (rhg patterns keep their own size)");
    cmd->add_option("--q", *q_list, "deletion probabilities")->delimiter(',');
    cmd->add_option("--trials", *trials, "Monte Carlo trials per q");
    cmd->add_option("--threshold-coeff", *coeff, "threshold = ceil(coeff * ln n)");
    cmd->add_option("--mode", *mode, "what the coin flips delete")
        ->check(CLI::IsMember({"vertex", "edge"}));
    cmd->add_option("--seed", *seed, "sweep seed");
    cmd->add_option("--format", *format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", *out, "output path (stdout when omitted)");
    cmd->callback([=, &action] {
      action = [=] {
        PercolationConfig cfg;
        cfg.patterns = *patterns;
        cfg.n = *n;
        cfg.q_list = *q_list;
        cfg.trials = *trials;
        cfg.threshold_coeff = *coeff;
        cfg.mode = *mode == "edge" ? DeletionMode::Edge : DeletionMode::Vertex;
        cfg.seed = *seed;
        const std::vector<PercolationRow> rows = run_percolation(cfg);
        if (*format == "json") {
          auto arr = nlohmann::json::array();
          for (const PercolationRow& r : rows) {
            arr.push_back({{"graph_label", r.graph_label},
                           {"n", r.n},
                           {"q", r.stats.q},
                           {"trials", r.stats.trials},
                           {"largest_mean", r.stats.largest_mean},
                           {"largest_max", r.stats.largest_max},
                           {"largest_min", r.stats.largest_min},
                           {"frac_below_threshold", r.stats.frac_below_threshold},
                           {"threshold", r.stats.threshold}});
          }
          detail::write_output(*out, nlohmann::json{{"rows", std::move(arr)}}.dump(2) + "\n");
        } else {
          detail::write_output(*out, percolation_csv(rows));
        }
        return 0;
      };
    });
  }

  // --- verify -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "verify", "Check routed circuits against the brute-force oracle (n <= 8)");
    auto cfg0 = VerifyConfig{};
    auto devices = std::make_shared<std::vector<std::string>>(kDefaultDeviceNames);
    auto patterns = std::make_shared<std::vector<std::string>>(cfg0.patterns);
    auto n = std::make_shared<int>(cfg0.n);
    auto seeds = std::make_shared<int>(cfg0.seeds);
    auto tol = std::make_shared<double>(cfg0.tol);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto format = std::make_shared<std::string>("csv");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--devices", *devices, "device names or JSON paths")->delimiter(',');
    cmd->add_option("--patterns", *patterns, "instance patterns")->delimiter(',');
    cmd->add_option("--n", *n, "qubit count, at most 8");
    cmd->add_option("--seeds", *seeds, "instances per (device, pattern) cell");
    cmd->add_option("--tol", *tol, "max allowed distribution deviation");
    cmd->add_option("--seed", *seed, "base instance seed");
    cmd->add_option("--format", *format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", *out, "output path (stdout when omitted)");
    cmd->callback([=, &action] {
      action = [=] {
        VerifyConfig cfg;
        cfg.devices = detail::resolve_devices(*devices);
        cfg.patterns = *patterns;
        cfg.n = *n;
        cfg.seeds = *seeds;
        cfg.tol = *tol;
        cfg.seed = *seed;
        const VerifyResult res = run_verify(cfg);
        if (*format == "json") {
          nlohmann::json doc = {
              {"all_pass", res.all_pass}, {"max_dev", res.max_dev}, {"lines", res.lines}};
          detail::write_output(*out, doc.dump(2) + "\n");
        } else {
          std::string text;
          for (const std::string& line : res.lines) text += line + "\n";
          detail::write_output(*out, text);
        }
        std::fprintf(stderr, "verify: %zu combinations, %s (max dev %s)\n", res.lines.size(),
                     res.all_pass ? "all passed" : "FAILURES", detail::fmt_g(res.max_dev).c_str());
        return res.all_pass ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace iqpc
