#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iqpc/errors.hpp"
#include "iqpc/gateset.hpp"

namespace iqpc {

enum class TopologyKind { Complete, Line, Ring, Ladder, Grid, HeavyHex, Custom };

inline const char* topology_kind_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::Complete: return "complete";
    case TopologyKind::Line: return "line";
    case TopologyKind::Ring: return "ring";
    case TopologyKind::Ladder: return "ladder";
    case TopologyKind::Grid: return "grid";
    case TopologyKind::HeavyHex: return "heavy_hex";
    case TopologyKind::Custom: return "custom";
  }
  return "custom";
}

// Undirected hardware connectivity graph with a precomputed all-pairs hop
// distance table. Unreachable pairs report qubit_count, which exceeds any
// realizable hop count and so acts as an infinity sentinel.
struct HardwareGraph {
  std::string name;
  TopologyKind kind = TopologyKind::Custom;
  int qubit_count = 0;
  int rows = 0;  // Grid only
  int cols = 0;  // Grid only
  std::vector<std::pair<int, int>> edges;  // u < v, lexicographic, unique
  std::vector<std::vector<int>> adj;       // ascending neighbor lists

  int dist(int u, int v) const { return dist_[static_cast<std::size_t>(u) * qubit_count + v]; }

  int unreachable() const { return qubit_count; }

  bool connected() const {
    for (int v = 1; v < qubit_count; ++v) {
      if (dist(0, v) >= qubit_count) return false;
    }
    return qubit_count > 0;
  }

  double mean_pair_distance() const {
    if (qubit_count < 2) return 0.0;
    double sum = 0.0;
    for (int u = 0; u < qubit_count; ++u)
      for (int v = u + 1; v < qubit_count; ++v) sum += dist(u, v);
    return sum / (0.5 * qubit_count * (qubit_count - 1));
  }

  static HardwareGraph make(std::string name, TopologyKind kind, int n,
                            std::vector<std::pair<int, int>> edge_list) {
    if (n < 1) throw ParameterError("hardware graph needs at least one qubit");
    if (n > 4096) throw ParameterError("hardware graph too large for a dense distance table");
    HardwareGraph g;
    g.name = std::move(name);
    g.kind = kind;
    g.qubit_count = n;
    for (auto& [u, v] : edge_list) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ParameterError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of range for " + std::to_string(n) + " qubits");
      if (u == v)
        throw ParameterError("self-loop on qubit " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    auto dup = std::adjacent_find(edge_list.begin(), edge_list.end());
    if (dup != edge_list.end())
      throw ParameterError("duplicate edge (" + std::to_string(dup->first) + "," +
                           std::to_string(dup->second) + ")");
    g.edges = std::move(edge_list);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
      g.adj[u].push_back(v);
      g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    g.compute_distances();
    return g;
  }

 private:
  std::vector<int> dist_;

  void compute_distances() {
    const int n = qubit_count;
    dist_.assign(static_cast<std::size_t>(n) * n, n);
    std::vector<int> frontier;
    for (int s = 0; s < n; ++s) {
      int* d = dist_.data() + static_cast<std::size_t>(s) * n;
      d[s] = 0;
      frontier.assign(1, s);
      int level = 0;
      while (!frontier.empty()) {
        ++level;
        std::vector<int> next;
        for (int u : frontier) {
          for (int v : adj[u]) {
            if (d[v] == n && v != s) {
              d[v] = level;
              next.push_back(v);
            }
          }
        }
        frontier = std::move(next);
      }
    }
  }
};

// Largest hop distance between any two qubits of the subset.
inline int subset_diameter(const HardwareGraph& g, const std::vector<int>& qubits) {
  if (qubits.empty()) throw ParameterError("subset_diameter of an empty subset");
  for (int q : qubits) {
    if (q < 0 || q >= g.qubit_count)
      throw ParameterError("subset_diameter: qubit " + std::to_string(q) + " out of range");
  }
  int best = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i)
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      best = std::max(best, g.dist(qubits[i], qubits[j]));
  return best;
}

inline HardwareGraph build_complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return HardwareGraph::make("complete:" + std::to_string(n), TopologyKind::Complete, n,
                             std::move(e));
}

inline HardwareGraph build_line(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return HardwareGraph::make("line:" + std::to_string(n), TopologyKind::Line, n, std::move(e));
}

inline HardwareGraph build_ring(int n) {
  if (n < 3) throw ParameterError("ring needs at least 3 qubits");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return HardwareGraph::make("ring:" + std::to_string(n), TopologyKind::Ring, n, std::move(e));
}

// Two rails of n/2 qubits: rail qubits i and h+i are rung partners.
inline HardwareGraph build_ladder(int n) {
  if (n < 2 || n % 2 != 0) throw ParameterError("ladder needs an even qubit count >= 2");
  const int h = n / 2;
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < h; ++i) {
    e.emplace_back(i, i + 1);
    e.emplace_back(h + i, h + i + 1);
  }
  for (int i = 0; i < h; ++i) e.emplace_back(i, h + i);
  return HardwareGraph::make("ladder:" + std::to_string(n), TopologyKind::Ladder, n, std::move(e));
}

inline HardwareGraph build_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ParameterError("grid dimensions must be positive");
  std::vector<std::pair<int, int>> e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  auto g = HardwareGraph::make("grid:" + std::to_string(rows) + "x" + std::to_string(cols),
                               TopologyKind::Grid, rows * cols, std::move(e));
  g.rows = rows;
  g.cols = cols;
  return g;
}

// Heavy-hexagon lattice parameterized by an odd distance d >= 3. The layout
// has d rows of data/flag qubits joined by d-1 sparse bridge layers; the two
// outer rows drop one site each. d=7 reproduces the 127-qubit, 144-coupler
// device layout; d=5 gives the 65-qubit one.
inline HardwareGraph build_heavy_hex(int d) {
  if (d < 3 || d % 2 == 0) throw ParameterError("heavy_hex needs an odd distance d >= 3");
  const int m = (d + 1) / 2;
  const int width = 4 * m - 1;

  auto col_min = [&](int r) { return r == d - 1 ? 1 : 0; };
  auto col_max = [&](int r) { return r == 0 ? width - 2 : width - 1; };

  std::vector<int> row_offset(d + 1, 0);
  for (int r = 0; r < d; ++r) row_offset[r + 1] = row_offset[r] + (col_max(r) - col_min(r) + 1);
  const int row_total = row_offset[d];
  auto row_qubit = [&](int r, int c) { return row_offset[r] + (c - col_min(r)); };

  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < d; ++r)
    for (int c = col_min(r); c < col_max(r); ++c)
      e.emplace_back(row_qubit(r, c), row_qubit(r, c + 1));

  int bridge = row_total;
  for (int layer = 0; layer + 1 < d; ++layer) {
    const int start = layer % 2 == 0 ? 0 : 2;
    for (int j = 0; j < m; ++j) {
      const int c = start + 4 * j;
      e.emplace_back(row_qubit(layer, c), bridge);
      e.emplace_back(bridge, row_qubit(layer + 1, c));
      ++bridge;
    }
  }
  return HardwareGraph::make("heavy_hex:" + std::to_string(d), TopologyKind::HeavyHex, bridge,
                             std::move(e));
}

// Parses specs of the form "grid:4x5", "complete:16", "heavy_hex:7", ...
inline HardwareGraph build_topology(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos || colon + 1 >= spec.size())
    throw ParameterError("topology spec \"" + spec + "\" is not of the form kind:size");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParameterError("topology spec \"" + spec + "\": \"" + s + "\" is not an integer");
    }
  };
  if (kind == "grid") {
    auto x = arg.find('x');
    if (x == std::string::npos)
      throw ParameterError("grid spec must look like grid:RxC, got \"" + spec + "\"");
    return build_grid(to_int(arg.substr(0, x)), to_int(arg.substr(x + 1)));
  }
  if (kind == "complete") return build_complete(to_int(arg));
  if (kind == "line") return build_line(to_int(arg));
  if (kind == "ring") return build_ring(to_int(arg));
  if (kind == "ladder") return build_ladder(to_int(arg));
  if (kind == "heavy_hex") return build_heavy_hex(to_int(arg));
  throw ParameterError("unknown topology kind \"" + kind + "\"");
}

// A hardware graph plus calibration-level metadata.
struct DeviceModel {
  HardwareGraph graph;
  double two_qubit_error_rate = 0.0;
  std::string gateset_id;
};

inline DeviceModel parse_device(const nlohmann::json& j, const std::string& origin) {
  auto fail = [&](const std::string& what) { throw ParseError(origin + ": " + what); };
  if (!j.is_object()) fail("top level is not a JSON object");
  for (const char* field : {"name", "qubit_count", "edges", "two_qubit_error_rate", "gateset"}) {
    if (!j.contains(field)) fail(std::string("missing field \"") + field + "\"");
  }
  if (!j["name"].is_string()) fail("field \"name\" must be a string");
  if (!j["qubit_count"].is_number_integer()) fail("field \"qubit_count\" must be an integer");
  if (!j["edges"].is_array()) fail("field \"edges\" must be an array of [u,v] pairs");
  if (!j["two_qubit_error_rate"].is_number()) fail("field \"two_qubit_error_rate\" must be a number");
  if (!j["gateset"].is_string()) fail("field \"gateset\" must be a string");

  const int n = j["qubit_count"].get<int>();
  if (n < 1) fail("qubit_count must be positive");
  std::vector<std::pair<int, int>> edges;
  std::size_t idx = 0;
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      fail("edges[" + std::to_string(idx) + "] is not an [u,v] integer pair");
    const int u = item[0].get<int>();
    const int v = item[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail("edges[" + std::to_string(idx) + "] = [" + std::to_string(u) + "," +
           std::to_string(v) + "] references a qubit outside [0," + std::to_string(n) + ")");
    if (u == v) fail("edges[" + std::to_string(idx) + "] is a self-loop on qubit " +
                     std::to_string(u));
    edges.emplace_back(u, v);
    ++idx;
  }
  const double rate = j["two_qubit_error_rate"].get<double>();
  if (!(rate > 0.0 && rate < 1.0)) fail("two_qubit_error_rate must lie in (0,1)");
  const std::string gateset = j["gateset"].get<std::string>();
  if (!find_gate_set(gateset)) fail("unknown gateset \"" + gateset + "\"");

  DeviceModel dev;
  try {
    dev.graph = HardwareGraph::make(j["name"].get<std::string>(), TopologyKind::Custom, n,
                                    std::move(edges));
  } catch (const ParameterError& e) {
    fail(e.what());
  }
  dev.two_qubit_error_rate = rate;
  dev.gateset_id = gateset;
  return dev;
}

inline DeviceModel load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open device file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("device file " + path + ": " + e.what());
  }
  return parse_device(j, "device file " + path);
}

inline nlohmann::json device_to_json(const DeviceModel& dev) {
  nlohmann::json j;
  j["name"] = dev.graph.name;
  j["qubit_count"] = dev.graph.qubit_count;
  auto edges = nlohmann::json::array();
  for (auto [u, v] : dev.graph.edges) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["two_qubit_error_rate"] = dev.two_qubit_error_rate;
  j["gateset"] = dev.gateset_id;
  return j;
}

// Device lookup used by the command line tools: a name resolves to
// <dir>/<name>.json where dir comes from IQPC_DEVICE_DIR (default ./devices);
// anything containing a path separator or a .json suffix is used verbatim.
inline std::string device_search_dir() {
  if (const char* env = std::getenv("IQPC_DEVICE_DIR")) return env;
  return "devices";
}

inline DeviceModel find_device(const std::string& name_or_path) {
  const bool is_path = name_or_path.find('/') != std::string::npos ||
                       (name_or_path.size() > 5 &&
                        name_or_path.substr(name_or_path.size() - 5) == ".json");
  if (is_path) return load_device(name_or_path);
  return load_device(device_search_dir() + "/" + name_or_path + ".json");
}

}  // namespace iqpc
