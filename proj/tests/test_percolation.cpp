#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "iqpc/instance.hpp"
#include "iqpc/percolation.hpp"

using namespace iqpc;

namespace {

// BFS oracle: component sizes of the induced subgraph on alive vertices,
// descending.
std::vector<int> bfs_component_sizes(const InteractionGraph& ig, const std::vector<char>& alive) {
  const auto adj = ig.simple_adjacency();
  std::vector<char> seen(static_cast<std::size_t>(ig.n), 0);
  std::vector<int> sizes;
  for (int s = 0; s < ig.n; ++s) {
    if (!alive[s] || seen[s]) continue;
    int size = 0;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      ++size;
      for (int v : adj[u]) {
        if (alive[v] && !seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

}  // namespace

TEST_CASE("union-find tracks merged component sizes") {
  UnionFind uf(5);
  REQUIRE(uf.find(0) != uf.find(1));
  REQUIRE(uf.component_size(0) == 1);
  uf.unite(0, 1);
  uf.unite(3, 4);
  REQUIRE(uf.find(0) == uf.find(1));
  REQUIRE(uf.component_size(1) == 2);
  uf.unite(1, 3);
  REQUIRE(uf.component_size(4) == 4);
  REQUIRE(uf.find(2) != uf.find(0));
  uf.unite(0, 1);  // no-op
  REQUIRE(uf.component_size(0) == 4);
}

TEST_CASE("no deletion keeps the whole interaction graph") {
  const InteractionGraph dense = interaction_graph(gen_dense(16, 1));
  REQUIRE(fragment(dense, 0.0, 1) == std::vector<int>{16});

  const InteractionGraph chain = interaction_graph(gen_local_chain(9, 1));
  REQUIRE(fragment(chain, 0.0, 7) == std::vector<int>{9});

  IqpInstance split;
  split.n = 5;
  split.k = 2;
  split.terms = {Term{{0, 1}, 0.1}, Term{{3, 4}, 0.2}};
  REQUIRE(fragment(interaction_graph(split), 0.0, 3) == std::vector<int>{2, 2, 1});
}

TEST_CASE("full deletion leaves nothing") {
  const InteractionGraph ig = interaction_graph(gen_dense(8, 1));
  for (std::uint64_t seed : {1u, 2u, 3u}) REQUIRE(fragment(ig, 1.0, seed).empty());
  REQUIRE_THROWS_AS(fragment(ig, -0.1, 1), ParameterError);
  REQUIRE_THROWS_AS(fragment(ig, 1.1, 1), ParameterError);
}

TEST_CASE("edge deletion keeps every vertex alive") {
  const InteractionGraph ring = interaction_graph(gen_local_chain(10, 1));
  const auto all_deleted = fragment(ring, 1.0, 5, DeletionMode::Edge);
  REQUIRE(all_deleted == std::vector<int>(10, 1));
  REQUIRE(fragment(ring, 0.0, 5, DeletionMode::Edge) == std::vector<int>{10});
  for (double q : {0.3, 0.6}) {
    const auto sizes = fragment(ring, q, 11, DeletionMode::Edge);
    REQUIRE(std::accumulate(sizes.begin(), sizes.end(), 0) == 10);
  }
}

TEST_CASE("vertex deletion sizes sum to the survivor count") {
  const InteractionGraph ig = interaction_graph(gen_dense(12, 2));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sizes = fragment(ig, 0.4, seed);
    const int survivors = std::accumulate(sizes.begin(), sizes.end(), 0);
    REQUIRE(survivors <= 12);
    REQUIRE(std::is_sorted(sizes.begin(), sizes.end(), std::greater<>()));
  }
}

TEST_CASE("fragment agrees with a BFS oracle on random graphs") {
  std::mt19937 meta(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(meta() % 18);
    IqpInstance inst;
    inst.n = n;
    inst.k = 2;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (meta() % 4 == 0) inst.terms.push_back(Term{{u, v}, 0.1});
    const InteractionGraph ig = interaction_graph(inst);
    const double q = (meta() % 100) / 100.0;
    const std::uint64_t seed = meta();

    // Replicate the documented draw: one uniform per vertex in vertex order.
    Rng rng(seed);
    std::vector<char> alive(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) alive[v] = rng.uniform() >= q ? 1 : 0;

    REQUIRE(fragment(ig, q, seed) == bfs_component_sizes(ig, alive));
  }
}

TEST_CASE("coupled draws make the largest component monotone in q") {
  const InteractionGraph dense = interaction_graph(gen_dense(16, 1));
  const InteractionGraph rhg = interaction_graph(gen_rhg(2, 2, 2, 1));
  for (const InteractionGraph* ig : {&dense, &rhg}) {
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
      int prev = ig->n + 1;
      for (double q : {0.0, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95, 1.0}) {
        const auto sizes = fragment(*ig, q, trial);
        const int largest = sizes.empty() ? 0 : sizes.front();
        REQUIRE(largest <= prev);
        prev = largest;
      }
    }
  }
}

TEST_CASE("complete-graph fragmentation matches the binomial oracle") {
  const InteractionGraph ig = interaction_graph(gen_dense(16, 1));
  const auto stats = run_fragmentation(ig, {0.5}, 1000, 2.0, 99);
  REQUIRE(stats.size() == 1);
  const FragmentationStats& st = stats[0];
  REQUIRE(st.trials == 1000);
  // Survivors of K16 form one component, so the largest size is Bin(16, 1/2).
  REQUIRE(st.largest_mean >= 7.0);
  REQUIRE(st.largest_mean <= 9.0);
  REQUIRE(st.largest_max <= 16);
  REQUIRE(st.threshold == 6);  // ceil(2 * ln 16)
  // P(Bin(16,1/2) <= 6) = 14893/65536, four sigma at 1000 trials.
  REQUIRE(st.frac_below_threshold > 0.17);
  REQUIRE(st.frac_below_threshold < 0.29);
}

TEST_CASE("fragmentation sweeps are reproducible and trial-addressable") {
  const InteractionGraph ig = interaction_graph(gen_sparse_density(14, 0.5, 4));
  const auto a = run_fragmentation(ig, {0.2, 0.6}, 50, 1.0, 7);
  const auto b = run_fragmentation(ig, {0.2, 0.6}, 50, 1.0, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].largest_mean == b[i].largest_mean);
    REQUIRE(a[i].largest_max == b[i].largest_max);
    REQUIRE(a[i].largest_min == b[i].largest_min);
    REQUIRE(a[i].frac_below_threshold == b[i].frac_below_threshold);
  }

  // Trial t of any sweep is fragment() under sub-seed mix_seed(seed, t).
  double sum = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto sizes = fragment(ig, 0.2, mix_seed(7, static_cast<std::uint64_t>(t)));
    sum += sizes.empty() ? 0 : sizes.front();
  }
  REQUIRE_THAT(a[0].largest_mean, Catch::Matchers::WithinAbs(sum / 50.0, 1e-12));

  REQUIRE_THROWS_AS(run_fragmentation(ig, {0.5}, 0, 1.0, 7), ParameterError);
  REQUIRE_THROWS_AS(run_fragmentation(ig, {0.5}, 10, -1.0, 7), ParameterError);
}

TEST_CASE("per-layer strike probability compounds across depth") {
  REQUIRE(depth_to_deletion(0.1, 0) == 0.0);
  REQUIRE(depth_to_deletion(0.0, 50) == 0.0);
  REQUIRE(depth_to_deletion(1.0, 1) == 1.0);
  REQUIRE_THAT(depth_to_deletion(0.1, 10),
               Catch::Matchers::WithinAbs(0.6513215599, 1e-10));
  REQUIRE_THROWS_AS(depth_to_deletion(-0.1, 5), ParameterError);
  REQUIRE_THROWS_AS(depth_to_deletion(1.5, 5), ParameterError);
  REQUIRE_THROWS_AS(depth_to_deletion(0.5, -1), ParameterError);
}

TEST_CASE("fragmentation CSV rows carry the sweep fields") {
  FragmentationStats st;
  st.q = 0.25;
  st.trials = 10;
  st.largest_mean = 5.5;
  st.largest_max = 8;
  st.largest_min = 3;
  st.frac_below_threshold = 0.3;
  st.threshold = 4;
  const std::string row = fragmentation_csv_row("dense", 16, st);
  REQUIRE(row == "dense,16,0.25,10,5.5,8,0.3,4");
  const std::string header(kFragmentationCsvHeader);
  REQUIRE(std::count(header.begin(), header.end(), ',') ==
          std::count(row.begin(), row.end(), ','));
}
