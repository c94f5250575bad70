#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iqpc/errors.hpp"
#include "iqpc/rng.hpp"

namespace iqpc {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Wraps an angle into [0, 2*pi).
inline double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;  // fmod rounding can land exactly on 2*pi
  return t;
}

// One commuting generator exp(i * theta * Z_s) acting on the subset `qubits`.
struct Term {
  std::vector<int> qubits;  // sorted ascending, distinct
  double theta = 0.0;       // radians in [0, 2*pi)
};

struct IqpInstance {
  int n = 0;
  int k = 2;
  std::uint64_t seed = 0;
  std::string label;  // pattern spec this instance was generated from, if any
  std::vector<Term> terms;
};

inline void validate_instance(const IqpInstance& inst) {
  if (inst.n < 1) throw ParameterError("instance qubit count must be positive");
  if (inst.k < 1) throw ParameterError("instance locality k must be positive");
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    const Term& t = inst.terms[i];
    const std::string where = "term " + std::to_string(i);
    if (t.qubits.empty() || static_cast<int>(t.qubits.size()) > inst.k)
      throw ParameterError(where + ": subset size must lie in [1," + std::to_string(inst.k) + "]");
    if (!std::is_sorted(t.qubits.begin(), t.qubits.end()))
      throw ParameterError(where + ": qubits must be sorted ascending");
    for (std::size_t j = 0; j < t.qubits.size(); ++j) {
      if (t.qubits[j] < 0 || t.qubits[j] >= inst.n)
        throw ParameterError(where + ": qubit " + std::to_string(t.qubits[j]) + " out of range");
      if (j > 0 && t.qubits[j] == t.qubits[j - 1])
        throw ParameterError(where + ": repeated qubit " + std::to_string(t.qubits[j]));
    }
    if (!std::isfinite(t.theta) || t.theta < 0.0 || t.theta >= kTwoPi)
      throw ParameterError(where + ": angle must be finite and in [0, 2*pi)");
    if (!seen.insert(t.qubits).second)
      throw ParameterError(where + ": duplicate subset (merge angles before constructing)");
  }
}

inline std::string instance_id(const IqpInstance& inst) {
  std::string label = inst.label.empty() ? "custom" : inst.label;
  return label + " n=" + std::to_string(inst.n) + " seed=" + std::to_string(inst.seed);
}

namespace detail {

// Structure and angles are drawn from separate sub-streams so that, e.g., the
// number of sampled pairs does not shift the angle sequence.
inline Rng structure_rng(std::uint64_t seed) { return Rng(mix_seed(seed, 1)); }
inline Rng angle_rng(std::uint64_t seed) { return Rng(mix_seed(seed, 2)); }

inline void draw_angles(IqpInstance& inst) {
  Rng rng = angle_rng(inst.seed);
  for (Term& t : inst.terms) t.theta = rng.uniform() * kTwoPi;
}

inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

// All C(n,2) pairs ordered as a token dance on a canonical near-square
// row-major grid. Tokens start at their own index; every emitted pair replays
// the per-gate routing walk (first operand steps toward the second along a
// shortest path, smallest-index tie-break), so the generator always knows
// where each token sits. Rounds greedily take remaining pairs by current
// token distance (ties: most remaining partners, then lexicographic), keep
// the walks within a round vertex-disjoint so they can run in parallel, and
// defer pairs more than three steps apart while closer work exists. The pair
// set is exactly all_pairs(n); only the order differs.
inline std::vector<std::pair<int, int>> grid_round_pairs(int n) {
  int rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (rows > 1 && rows * rows > n) --rows;
  while ((rows + 1) * (rows + 1) <= n) ++rows;
  if (rows < 1) rows = 1;
  const int cols = (n + rows - 1) / rows;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int c = v % cols;
    if (v - cols >= 0) adj[v].push_back(v - cols);
    if (c > 0) adj[v].push_back(v - 1);
    if (c + 1 < cols && v + 1 < n) adj[v].push_back(v + 1);
    if (v + cols < n) adj[v].push_back(v + cols);
  }
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> bfs;
    bfs.push(s);
    dist[s][s] = 0;
    while (!bfs.empty()) {
      const int u = bfs.front();
      bfs.pop();
      for (int v : adj[u])
        if (dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          bfs.push(v);
        }
    }
  }

  std::vector<int> pos(static_cast<std::size_t>(n));  // token -> vertex
  std::vector<int> at(static_cast<std::size_t>(n));   // vertex -> token
  std::iota(pos.begin(), pos.end(), 0);
  std::iota(at.begin(), at.end(), 0);

  auto walk_path = [&](int u, int v) {
    std::vector<int> path{pos[u]};
    int from = pos[u];
    const int tgt = pos[v];
    while (dist[from][tgt] > 1) {
      int best = -1, best_d = n + 1;
      for (int w : adj[from]) {
        if (dist[w][tgt] < best_d) {
          best_d = dist[w][tgt];
          best = w;
        }
      }
      from = best;
      path.push_back(from);
    }
    return path;
  };

  std::vector<std::pair<int, int>> remaining = all_pairs(n);
  std::vector<std::pair<int, int>> out;
  out.reserve(remaining.size());
  std::vector<int> partners(static_cast<std::size_t>(n), n - 1);
  std::vector<char> claimed(static_cast<std::size_t>(n), 0);
  constexpr int kDeferBeyond = 3;
  while (!remaining.empty()) {
    std::vector<std::size_t> order(remaining.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const int da = dist[pos[remaining[a].first]][pos[remaining[a].second]];
      const int db = dist[pos[remaining[b].first]][pos[remaining[b].second]];
      if (da != db) return da < db;
      const int la = partners[remaining[a].first] + partners[remaining[a].second];
      const int lb = partners[remaining[b].first] + partners[remaining[b].second];
      if (la != lb) return la > lb;
      return remaining[a] < remaining[b];
    });
    std::fill(claimed.begin(), claimed.end(), 0);
    std::vector<char> taken(remaining.size(), 0);
    bool round_started = false;
    for (std::size_t idx : order) {
      auto [u, v] = remaining[idx];
      if (round_started && dist[pos[u]][pos[v]] > kDeferBeyond) continue;
      const auto path = walk_path(u, v);
      bool free = !claimed[pos[v]];
      for (int x : path)
        if (claimed[x]) free = false;
      if (!free) continue;
      claimed[pos[v]] = 1;
      for (int x : path) claimed[x] = 1;
      for (std::size_t s = 1; s < path.size(); ++s) {
        const int p = path[s - 1], q = path[s];
        const int other = at[q];
        at[p] = other;
        at[q] = u;
        pos[u] = q;
        pos[other] = p;
      }
      out.emplace_back(u, v);
      taken[idx] = 1;
      --partners[u];
      --partners[v];
      round_started = true;
    }
    std::vector<std::pair<int, int>> rest;
    rest.reserve(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (!taken[i]) rest.push_back(remaining[i]);
    remaining = std::move(rest);
  }
  return out;
}

// Reorders a pair set into greedy matching layers: repeatedly scan the
// remaining pairs in their current order and take every pair whose endpoints
// are still free within the layer. The set is unchanged, only the order.
inline std::vector<std::pair<int, int>> matching_layers(std::vector<std::pair<int, int>> pairs) {
  std::vector<std::pair<int, int>> out;
  out.reserve(pairs.size());
  std::vector<char> busy;
  while (!pairs.empty()) {
    busy.assign(busy.size(), 0);
    std::vector<std::pair<int, int>> rest;
    for (auto [u, v] : pairs) {
      const std::size_t need = static_cast<std::size_t>(std::max(u, v)) + 1;
      if (busy.size() < need) busy.resize(need, 0);
      if (busy[u] || busy[v]) {
        rest.emplace_back(u, v);
      } else {
        busy[u] = busy[v] = 1;
        out.emplace_back(u, v);
      }
    }
    pairs = std::move(rest);
  }
  return out;
}

inline IqpInstance from_pairs(int n, std::uint64_t seed, std::string label,
                              std::vector<std::pair<int, int>> pairs) {
  IqpInstance inst;
  inst.n = n;
  inst.k = 2;
  inst.seed = seed;
  inst.label = std::move(label);
  inst.terms.reserve(pairs.size());
  for (auto [u, v] : pairs) inst.terms.push_back(Term{{u, v}, 0.0});
  draw_angles(inst);
  return inst;
}

}  // namespace detail

// All C(n,2) pairwise terms, ordered in routing-friendly rounds.
inline IqpInstance gen_dense(int n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("dense pattern needs n >= 2");
  return detail::from_pairs(n, seed, "dense", detail::grid_round_pairs(n));
}

// Exactly m distinct pairs sampled uniformly without replacement.
inline IqpInstance gen_sparse_count(int n, long long m, std::uint64_t seed) {
  if (n < 2) throw ParameterError("sparse pattern needs n >= 2");
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0) throw ParameterError("sparse pair count must be non-negative");
  if (m > total)
    throw ParameterError("requested " + std::to_string(m) + " pairs but only " +
                         std::to_string(total) + " exist for n=" + std::to_string(n));
  auto pairs = detail::all_pairs(n);
  Rng rng = detail::structure_rng(seed);
  for (long long i = 0; i < m; ++i) {
    const long long j = i + static_cast<long long>(rng.below(static_cast<std::uint64_t>(total - i)));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(static_cast<std::size_t>(m));
  std::sort(pairs.begin(), pairs.end());
  pairs = detail::matching_layers(std::move(pairs));
  return detail::from_pairs(n, seed, "sparse_count:" + std::to_string(m), std::move(pairs));
}

// Pair count fixed to round(rho * C(n,2)).
inline IqpInstance gen_sparse_density(int n, double rho, std::uint64_t seed) {
  if (n < 2) throw ParameterError("sparse pattern needs n >= 2");
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("density must lie in (0,1]");
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  const long long m = std::llround(rho * static_cast<double>(total));
  IqpInstance inst = gen_sparse_count(n, std::min(m, total), seed);
  char buf[48];
  std::snprintf(buf, sizeof buf, "sparse_density:%g", rho);
  inst.label = buf;
  return inst;
}

// Nearest-neighbor pairs (i, i+1), n-1 terms, brickwork order (even offsets
// first, then odd), so the two-qubit layers number two rather than n-1.
inline IqpInstance gen_local_chain(int n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("local_chain needs n >= 2");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; i += 2) pairs.emplace_back(i, i + 1);
  for (int i = 1; i + 1 < n; i += 2) pairs.emplace_back(i, i + 1);
  return detail::from_pairs(n, seed, "local_chain", std::move(pairs));
}

// Qubits sit on the faces and edges of an L1 x L2 x L3 cubic cell complex;
// one 2-body term per (face, bounding edge) incidence, four per face. Faces
// are indexed before edges, each group by orientation then lexicographic
// position, so instances are reproducible.
inline IqpInstance gen_rhg(int l1, int l2, int l3, std::uint64_t seed) {
  if (l1 < 1 || l2 < 1 || l3 < 1) throw ParameterError("rhg cell counts must be positive");
  const int nx = l1 + 1, ny = l2 + 1, nz = l3 + 1;

  // Edge indexing: orientation x, then y, then z; within each, (x,y,z) with z
  // fastest. An x-edge at (x,y,z) spans x..x+1 at fixed (y,z), and so on.
  const int edge_x_count = l1 * ny * nz;
  const int edge_y_count = nx * l2 * nz;
  const int edge_z_count = nx * ny * l3;
  // Face indexing: orientation xy, then xz, then yz, same nesting.
  const int face_xy_count = l1 * l2 * nz;
  const int face_xz_count = l1 * ny * l3;
  const int face_yz_count = nx * l2 * l3;
  const int face_total = face_xy_count + face_xz_count + face_yz_count;

  auto edge_x = [&](int x, int y, int z) { return (x * ny + y) * nz + z; };
  auto edge_y = [&](int x, int y, int z) { return edge_x_count + (x * l2 + y) * nz + z; };
  auto edge_z = [&](int x, int y, int z) {
    return edge_x_count + edge_y_count + (x * ny + y) * l3 + z;
  };

  IqpInstance inst;
  inst.n = face_total + edge_x_count + edge_y_count + edge_z_count;
  inst.k = 2;
  inst.seed = seed;
  char buf[64];
  std::snprintf(buf, sizeof buf, "rhg:%dx%dx%d", l1, l2, l3);
  inst.label = buf;

  int face = 0;
  std::vector<std::pair<int, int>> incidences;
  incidences.reserve(static_cast<std::size_t>(face_total) * 4);
  auto add_face = [&](std::initializer_list<int> bounding_edges) {
    for (int e : bounding_edges) incidences.emplace_back(face, face_total + e);
    ++face;
  };
  for (int x = 0; x < l1; ++x)
    for (int y = 0; y < l2; ++y)
      for (int z = 0; z < nz; ++z)
        add_face({edge_x(x, y, z), edge_x(x, y + 1, z), edge_y(x, y, z), edge_y(x + 1, y, z)});
  for (int x = 0; x < l1; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < l3; ++z)
        add_face({edge_x(x, y, z), edge_x(x, y, z + 1), edge_z(x, y, z), edge_z(x + 1, y, z)});
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < l2; ++y)
      for (int z = 0; z < l3; ++z)
        add_face({edge_y(x, y, z), edge_y(x, y, z + 1), edge_z(x, y, z), edge_z(x, y + 1, z)});

  incidences = detail::matching_layers(std::move(incidences));
  inst.terms.reserve(incidences.size());
  for (auto [f, e] : incidences) inst.terms.push_back(Term{{f, e}, 0.0});
  detail::draw_angles(inst);
  return inst;
}

enum class Pattern { Dense, SparseDensity, SparseCount, LocalChain, Rhg };

// Parsed form of a pattern spec string such as "dense", "sparse_density:0.4",
// "sparse_count:32", "local_chain", or "rhg:2x2x2".
struct PatternSpec {
  Pattern pattern = Pattern::Dense;
  double rho = 0.4;
  long long m = 0;
  int l1 = 2, l2 = 2, l3 = 2;
  std::string canonical;
};

inline PatternSpec parse_pattern_spec(const std::string& spec) {
  auto bad = [&](const std::string& why) {
    throw ParameterError("pattern spec \"" + spec + "\": " + why);
  };
  PatternSpec ps;
  std::string head = spec, arg;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    head = spec.substr(0, colon);
    arg = spec.substr(colon + 1);
  }
  if (head == "dense") {
    if (!arg.empty()) bad("dense takes no argument");
    ps.pattern = Pattern::Dense;
    ps.canonical = "dense";
  } else if (head == "sparse_density" || head == "sparse") {
    ps.pattern = Pattern::SparseDensity;
    if (!arg.empty()) {
      try {
        std::size_t used = 0;
        ps.rho = std::stod(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
      } catch (const std::exception&) {
        bad("\"" + arg + "\" is not a density");
      }
    }
    if (!(ps.rho > 0.0 && ps.rho <= 1.0)) bad("density must lie in (0,1]");
    char buf[48];
    std::snprintf(buf, sizeof buf, "sparse_density:%g", ps.rho);
    ps.canonical = buf;
  } else if (head == "sparse_count") {
    ps.pattern = Pattern::SparseCount;
    if (arg.empty()) bad("sparse_count needs a pair count, e.g. sparse_count:32");
    try {
      std::size_t used = 0;
      ps.m = std::stoll(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      bad("\"" + arg + "\" is not a pair count");
    }
    if (ps.m < 0) bad("pair count must be non-negative");
    ps.canonical = "sparse_count:" + std::to_string(ps.m);
  } else if (head == "local_chain" || head == "local") {
    if (!arg.empty()) bad("local_chain takes no argument");
    ps.pattern = Pattern::LocalChain;
    ps.canonical = "local_chain";
  } else if (head == "rhg") {
    ps.pattern = Pattern::Rhg;
    if (!arg.empty()) {
      int dims[3];
      std::size_t pos = 0;
      for (int i = 0; i < 3; ++i) {
        auto stop = i < 2 ? arg.find('x', pos) : arg.size();
        if (stop == std::string::npos) bad("rhg needs three cell counts, e.g. rhg:2x2x2");
        try {
          std::size_t used = 0;
          dims[i] = std::stoi(arg.substr(pos, stop - pos), &used);
          if (used != stop - pos) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
          bad("\"" + arg + "\" is not of the form L1xL2xL3");
        }
        pos = stop + 1;
      }
      ps.l1 = dims[0];
      ps.l2 = dims[1];
      ps.l3 = dims[2];
    }
    if (ps.l1 < 1 || ps.l2 < 1 || ps.l3 < 1) bad("cell counts must be positive");
    ps.canonical = "rhg:" + std::to_string(ps.l1) + "x" + std::to_string(ps.l2) + "x" +
                   std::to_string(ps.l3);
  } else {
    bad("unknown pattern (expected dense, sparse_density:RHO, sparse_count:M, local_chain, or rhg:L1xL2xL3)");
  }
  return ps;
}

// Note: the RHG pattern derives its qubit count from the cell dimensions and
// ignores n.
inline IqpInstance gen_pattern(const PatternSpec& ps, int n, std::uint64_t seed) {
  switch (ps.pattern) {
    case Pattern::Dense: return gen_dense(n, seed);
    case Pattern::SparseDensity: return gen_sparse_density(n, ps.rho, seed);
    case Pattern::SparseCount: return gen_sparse_count(n, ps.m, seed);
    case Pattern::LocalChain: return gen_local_chain(n, seed);
    case Pattern::Rhg: return gen_rhg(ps.l1, ps.l2, ps.l3, seed);
  }
  throw ParameterError("unhandled pattern");
}

inline IqpInstance gen_pattern(const std::string& spec, int n, std::uint64_t seed) {
  return gen_pattern(parse_pattern_spec(spec), n, seed);
}

// Vertices are qubits; every term of size >= 2 contributes its pairwise
// clique edges to the edge multiset. Hyperedges keep the raw supports.
struct InteractionGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;      // multiset, u < v, in term order
  std::vector<std::vector<int>> hyperedges;    // one entry per term

  // Deduplicated adjacency lists of the underlying simple graph.
  std::vector<std::vector<int>> simple_adjacency() const {
    std::vector<std::set<int>> nb(n);
    for (auto [u, v] : edges) {
      nb[u].insert(v);
      nb[v].insert(u);
    }
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) adj[v].assign(nb[v].begin(), nb[v].end());
    return adj;
  }
};

inline InteractionGraph interaction_graph(const IqpInstance& inst) {
  InteractionGraph ig;
  ig.n = inst.n;
  ig.hyperedges.reserve(inst.terms.size());
  for (const Term& t : inst.terms) {
    ig.hyperedges.push_back(t.qubits);
    for (std::size_t i = 0; i < t.qubits.size(); ++i)
      for (std::size_t j = i + 1; j < t.qubits.size(); ++j)
        ig.edges.emplace_back(t.qubits[i], t.qubits[j]);
  }
  return ig;
}

inline nlohmann::json instance_to_json(const IqpInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["seed"] = inst.seed;
  if (!inst.label.empty()) j["label"] = inst.label;
  auto terms = nlohmann::json::array();
  for (const Term& t : inst.terms) terms.push_back({{"qubits", t.qubits}, {"theta", t.theta}});
  j["terms"] = std::move(terms);
  return j;
}

// Accepts the serialized schema; duplicate subsets are merged by summing
// angles mod 2*pi at the first occurrence. Angles outside [0,2*pi) are
// wrapped.
inline IqpInstance instance_from_json(const nlohmann::json& j, const std::string& origin) {
  auto fail = [&](const std::string& what) { throw ParseError(origin + ": " + what); };
  if (!j.is_object()) fail("top level is not a JSON object");
  for (const char* field : {"n", "k", "seed", "terms"}) {
    if (!j.contains(field)) fail(std::string("missing field \"") + field + "\"");
  }
  if (!j["n"].is_number_integer() || !j["k"].is_number_integer())
    fail("fields \"n\" and \"k\" must be integers");
  if (!j["seed"].is_number()) fail("field \"seed\" must be a number");
  if (!j["terms"].is_array()) fail("field \"terms\" must be an array");

  IqpInstance inst;
  inst.n = j["n"].get<int>();
  inst.k = j["k"].get<int>();
  inst.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("label") && j["label"].is_string()) inst.label = j["label"].get<std::string>();
  if (inst.n < 1) fail("n must be positive");
  if (inst.k < 1) fail("k must be positive");

  std::map<std::vector<int>, std::size_t> index_of;
  std::size_t ti = 0;
  for (const auto& item : j["terms"]) {
    const std::string where = "terms[" + std::to_string(ti) + "]";
    if (!item.is_object() || !item.contains("qubits") || !item.contains("theta"))
      fail(where + " must be an object with \"qubits\" and \"theta\"");
    if (!item["qubits"].is_array() || !item["theta"].is_number())
      fail(where + ": \"qubits\" must be an integer array and \"theta\" a number");
    std::vector<int> qubits;
    for (const auto& q : item["qubits"]) {
      if (!q.is_number_integer()) fail(where + ": non-integer qubit index");
      qubits.push_back(q.get<int>());
    }
    std::sort(qubits.begin(), qubits.end());
    if (qubits.empty() || static_cast<int>(qubits.size()) > inst.k)
      fail(where + ": subset size must lie in [1," + std::to_string(inst.k) + "]");
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
      fail(where + ": repeated qubit index");
    if (qubits.front() < 0 || qubits.back() >= inst.n)
      fail(where + ": qubit index outside [0," + std::to_string(inst.n) + ")");
    const double theta = item["theta"].get<double>();
    if (!std::isfinite(theta)) fail(where + ": non-finite angle");
    auto [it, inserted] = index_of.try_emplace(qubits, inst.terms.size());
    if (inserted) {
      inst.terms.push_back(Term{std::move(qubits), normalize_angle(theta)});
    } else {
      Term& existing = inst.terms[it->second];
      existing.theta = normalize_angle(existing.theta + theta);
    }
    ++ti;
  }
  return inst;
}

inline IqpInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("instance file " + path + ": " + e.what());
  }
  return instance_from_json(j, "instance file " + path);
}

}  // namespace iqpc
