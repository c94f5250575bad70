#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "iqpc/errors.hpp"
#include "iqpc/instance.hpp"
#include "iqpc/rng.hpp"

namespace iqpc {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];  // path halving
      v = parent_[v];
    }
    return v;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  int component_size(int v) { return size_[find(v)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

enum class DeletionMode { Vertex, Edge };

// One fragmentation draw: deletes vertices (or edges, behind the flag) with
// probability q and returns surviving component sizes in descending order.
//
// Vertex mode draws one uniform per vertex in vertex order and keeps the
// vertex iff u >= q. Reusing a seed across different q values therefore
// couples the draws: the survivor set at larger q is a subset of the one at
// smaller q, making the largest component exactly monotone per trial.
inline std::vector<int> fragment(const InteractionGraph& ig, double q, std::uint64_t seed,
                                 DeletionMode mode = DeletionMode::Vertex) {
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("deletion probability must lie in [0,1]");
  Rng rng(seed);
  UnionFind uf(ig.n);
  std::vector<char> alive(static_cast<std::size_t>(ig.n), 1);
  if (mode == DeletionMode::Vertex) {
    for (int v = 0; v < ig.n; ++v) alive[v] = rng.uniform() >= q ? 1 : 0;
    for (auto [u, v] : ig.edges)
      if (alive[u] && alive[v]) uf.unite(u, v);
  } else {
    std::vector<std::pair<int, int>> simple = ig.edges;
    std::sort(simple.begin(), simple.end());
    simple.erase(std::unique(simple.begin(), simple.end()), simple.end());
    for (auto [u, v] : simple)
      if (rng.uniform() >= q) uf.unite(u, v);
  }
  std::vector<int> root_size(static_cast<std::size_t>(ig.n), 0);
  for (int v = 0; v < ig.n; ++v)
    if (alive[v]) ++root_size[uf.find(v)];
  std::vector<int> sizes;
  for (int s : root_size)
    if (s > 0) sizes.push_back(s);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

struct FragmentationStats {
  double q = 0.0;
  int trials = 0;
  double largest_mean = 0.0;
  int largest_max = 0;
  int largest_min = 0;
  double frac_below_threshold = 0.0;  // trials with largest component <= threshold
  int threshold = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo sweep over deletion probabilities. Trial t always uses the
// sub-seed mix_seed(seed, t) regardless of q, so the q values within a run
// are coupled (see fragment) and any single trial can be replayed.
inline std::vector<FragmentationStats> run_fragmentation(const InteractionGraph& ig,
                                                         const std::vector<double>& q_list,
                                                         int trials, double threshold_coeff,
                                                         std::uint64_t seed,
                                                         DeletionMode mode = DeletionMode::Vertex) {
  if (trials < 1) throw ParameterError("trial count must be >= 1");
  if (!(threshold_coeff >= 0.0)) throw ParameterError("threshold coefficient must be >= 0");
  const int threshold =
      ig.n > 1 ? static_cast<int>(std::ceil(threshold_coeff * std::log(ig.n))) : 0;
  std::vector<FragmentationStats> out;
  out.reserve(q_list.size());
  for (double q : q_list) {
    FragmentationStats st;
    st.q = q;
    st.trials = trials;
    st.threshold = threshold;
    st.seed = seed;
    st.largest_min = ig.n;
    long long sum = 0;
    int below = 0;
    for (int t = 0; t < trials; ++t) {
      const std::vector<int> sizes = fragment(ig, q, mix_seed(seed, static_cast<std::uint64_t>(t)), mode);
      const int largest = sizes.empty() ? 0 : sizes.front();
      sum += largest;
      st.largest_max = std::max(st.largest_max, largest);
      st.largest_min = std::min(st.largest_min, largest);
      if (largest <= threshold) ++below;
    }
    st.largest_mean = static_cast<double>(sum) / trials;
    st.frac_below_threshold = static_cast<double>(below) / trials;
    out.push_back(st);
  }
  return out;
}

// Probability a qubit is hit at least once across d noise layers that each
// strike with probability p.
inline double depth_to_deletion(double p, int d) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("per-layer probability must lie in [0,1]");
  if (d < 0) throw ParameterError("layer count must be >= 0");
  return 1.0 - std::pow(1.0 - p, d);
}

inline constexpr const char* kFragmentationCsvHeader =
    "graph_label,n,q,trials,largest_mean,largest_max,frac_below_threshold,threshold";

inline std::string fragmentation_csv_row(const std::string& graph_label, int n,
                                         const FragmentationStats& st) {
  char buf[192];
  std::snprintf(buf, sizeof buf, ",%d,%.10g,%d,%.10g,%d,%.10g,%d", n, st.q, st.trials,
                st.largest_mean, st.largest_max, st.frac_below_threshold, st.threshold);
  return graph_label + buf;
}

}  // namespace iqpc
