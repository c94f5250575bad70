// Regenerates the shipped device data files. Usage: make_devices [out_dir]
//
// The sparse-connectivity layouts are hand-built approximations of published
// device diagrams: a tapered triangular lattice (SC_1), a staggered
// nearest-neighbor lattice (SC_2), heavy-hex (SC_3), a defected rectangular
// grid (SC_4), and a sparse near-planar 32-qubit proxy (SC_5).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iqpc/topology.hpp"

namespace {

using iqpc::DeviceModel;
using iqpc::HardwareGraph;
using iqpc::TopologyKind;

// Row-major lattice with removable cells; indices are assigned over the
// surviving cells in row-major order.
class LatticePlan {
 public:
  LatticePlan(int rows, int cols) : rows_(rows), cols_(cols), hole_(rows * cols, 0) {}

  void remove(int r, int c) { hole_[r * cols_ + c] = 1; }

  void finalize() {
    index_.assign(hole_.size(), -1);
    count_ = 0;
    for (std::size_t i = 0; i < hole_.size(); ++i)
      if (!hole_[i]) index_[i] = count_++;
  }

  bool present(int r, int c) const {
    return r >= 0 && r < rows_ && c >= 0 && c < cols_ && !hole_[r * cols_ + c];
  }

  int index(int r, int c) const { return index_[r * cols_ + c]; }
  int count() const { return count_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void link(std::vector<std::pair<int, int>>& edges, int r1, int c1, int r2, int c2) const {
    if (present(r1, c1) && present(r2, c2)) edges.emplace_back(index(r1, c1), index(r2, c2));
  }

 private:
  int rows_, cols_, count_ = 0;
  std::vector<char> hole_;
  std::vector<int> index_;
};

// 11x10 triangular lattice (right, down, and down-right couplings) with the
// four corners and one edge cell removed: 105 qubits.
HardwareGraph tapered_triangular() {
  LatticePlan plan(11, 10);
  plan.remove(0, 0);
  plan.remove(0, 9);
  plan.remove(10, 0);
  plan.remove(10, 9);
  plan.remove(5, 9);
  plan.finalize();
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      plan.link(edges, r, c, r, c + 1);
      plan.link(edges, r, c, r + 1, c);
      plan.link(edges, r, c, r + 1, c + 1);
    }
  }
  return HardwareGraph::make("SC_1", TopologyKind::Custom, plan.count(), std::move(edges));
}

// 6x9 lattice with all vertical couplings plus diagonals that alternate
// direction by row parity, minus one corner cell: 53 qubits.
HardwareGraph staggered_lattice() {
  LatticePlan plan(6, 9);
  plan.remove(5, 8);
  plan.finalize();
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      plan.link(edges, r, c, r + 1, c);
      if (r % 2 == 0) plan.link(edges, r, c, r + 1, c + 1);
      else plan.link(edges, r, c, r + 1, c - 1);
    }
  }
  return HardwareGraph::make("SC_2", TopologyKind::Custom, plan.count(), std::move(edges));
}

// 12x7 rectangular grid with two dead cells: 82 qubits.
HardwareGraph defected_grid() {
  LatticePlan plan(12, 7);
  plan.remove(0, 0);
  plan.remove(11, 6);
  plan.finalize();
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      plan.link(edges, r, c, r, c + 1);
      plan.link(edges, r, c, r + 1, c);
    }
  }
  return HardwareGraph::make("SC_4", TopologyKind::Custom, plan.count(), std::move(edges));
}

// 8x4 grid with three couplers disabled: a near-planar 32-qubit proxy.
HardwareGraph near_planar_proxy() {
  LatticePlan plan(8, 4);
  plan.finalize();
  const std::set<std::pair<int, int>> dead = {
      {plan.index(1, 1), plan.index(1, 2)},
      {plan.index(4, 2), plan.index(5, 2)},
      {plan.index(6, 0), plan.index(7, 0)},
  };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      plan.link(edges, r, c, r, c + 1);
      plan.link(edges, r, c, r + 1, c);
    }
  }
  std::vector<std::pair<int, int>> kept;
  for (auto [u, v] : edges) {
    if (dead.count({std::min(u, v), std::max(u, v)})) continue;
    kept.emplace_back(u, v);
  }
  return HardwareGraph::make("SC_5", TopologyKind::Custom, plan.count(), std::move(kept));
}

DeviceModel device(HardwareGraph graph, double error_rate, std::string gateset) {
  DeviceModel dev;
  dev.graph = std::move(graph);
  dev.two_qubit_error_rate = error_rate;
  dev.gateset_id = std::move(gateset);
  return dev;
}

HardwareGraph renamed(HardwareGraph g, const std::string& name) {
  g.name = name;
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_dir = argc > 1 ? argv[1] : "devices";
  std::filesystem::create_directories(out_dir);

  const std::vector<DeviceModel> devices = {
      device(renamed(iqpc::build_complete(98), "FC_1"), 7.9e-4, "zzphase"),
      device(renamed(iqpc::build_complete(36), "FC_2"), 4.0e-3, "zzphase"),
      device(tapered_triangular(), 3.3e-3, "cx"),
      device(staggered_lattice(), 6.0e-3, "cx"),
      device(renamed(iqpc::build_heavy_hex(7), "SC_3"), 1.146e-2, "cx"),
      device(defected_grid(), 1.94e-2, "cx"),
      device(near_planar_proxy(), 4.6e-2, "cx"),
  };

  for (const DeviceModel& dev : devices) {
    if (!dev.graph.connected()) {
      std::fprintf(stderr, "device %s is not connected\n", dev.graph.name.c_str());
      return 1;
    }
    const std::string path = out_dir + "/" + dev.graph.name + ".json";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", path.c_str());
      return 1;
    }
    out << iqpc::device_to_json(dev).dump(2) << "\n";
    std::printf("%s: %d qubits, %zu edges, error %.4g, %s\n", path.c_str(),
                dev.graph.qubit_count, dev.graph.edges.size(), dev.two_qubit_error_rate,
                dev.gateset_id.c_str());
  }
  return 0;
}
