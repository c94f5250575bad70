#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "iqpc/errors.hpp"
#include "iqpc/instance.hpp"
#include "iqpc/phase.hpp"
#include "iqpc/rng.hpp"
#include "iqpc/router.hpp"
#include "iqpc/synth.hpp"

namespace iqpc {

inline constexpr int kBruteForceQubitGuard = 22;
inline constexpr int kStatevectorQubitGuard = 14;
inline constexpr int kTrajectoryQubitGuard = 12;

// Measurement distribution over computational basis strings. Basis index bit
// j (value 1<<j) carries the outcome of qubit j.
struct OutputDistribution {
  int n = 0;
  std::vector<double> probs;
};

inline void check_distribution(const OutputDistribution& d, double tol = 1e-10) {
  if (d.probs.size() != (std::size_t{1} << d.n))
    throw ParameterError("distribution length does not match qubit count");
  double sum = 0.0;
  for (double p : d.probs) {
    if (!(p >= -tol)) throw ParameterError("distribution has a negative probability");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > tol)
    throw ParameterError("distribution does not sum to 1");
}

// In-place Walsh-Hadamard transform without normalization: out[x] =
// sum_y (-1)^{x.y} in[y].
inline void fwht_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::complex<double> x = a[j];
        const std::complex<double> y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

// Exact output distribution of the instance's circuit. The sandwiched
// diagonal phase theta(y) = sum_s theta_s * (-1)^{|s cap y|} turns the
// amplitude into a Walsh-Hadamard transform of e^{i theta(y)}:
// prob(x) = |2^{-n} sum_y (-1)^{x.y} e^{i theta(y)}|^2.
inline OutputDistribution brute_force_probs(const IqpInstance& inst) {
  validate_instance(inst);
  if (inst.n > kBruteForceQubitGuard)
    throw ResourceError("brute force supports at most " +
                        std::to_string(kBruteForceQubitGuard) + " qubits, got " +
                        std::to_string(inst.n));
  const std::size_t dim = std::size_t{1} << inst.n;
  std::vector<double> theta(dim, 0.0);
  for (const Term& t : inst.terms) {
    std::uint32_t mask = 0;
    for (int q : t.qubits) mask |= std::uint32_t{1} << q;
    for (std::size_t y = 0; y < dim; ++y) {
      const bool odd = std::popcount(static_cast<std::uint32_t>(y) & mask) & 1;
      theta[y] += odd ? -t.theta : t.theta;
    }
  }
  std::vector<std::complex<double>> amp(dim);
  for (std::size_t y = 0; y < dim; ++y)
    amp[y] = std::complex<double>(std::cos(theta[y]), std::sin(theta[y]));
  fwht_inplace(amp);
  OutputDistribution out;
  out.n = inst.n;
  out.probs.resize(dim);
  const double scale = std::ldexp(1.0, -2 * inst.n);  // 4^{-n}
  for (std::size_t x = 0; x < dim; ++x) out.probs[x] = std::norm(amp[x]) * scale;
  return out;
}

// ---------------------------------------------------------------------------
// Dense statevector backend.

using StateVector = std::vector<std::complex<double>>;

inline void apply_gate(StateVector& state, const Gate& g) {
  const std::size_t dim = state.size();
  const std::size_t b0 = std::size_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::H: {
      const double inv_sqrt2 = 0.70710678118654752440;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & b0) continue;
        const std::complex<double> a = state[i];
        const std::complex<double> b = state[i | b0];
        state[i] = (a + b) * inv_sqrt2;
        state[i | b0] = (a - b) * inv_sqrt2;
      }
      return;
    }
    case GateKind::RZ: {
      const std::complex<double> lo(std::cos(g.angle / 2), -std::sin(g.angle / 2));
      const std::complex<double> hi(std::cos(g.angle / 2), std::sin(g.angle / 2));
      for (std::size_t i = 0; i < dim; ++i) state[i] *= (i & b0) ? hi : lo;
      return;
    }
    case GateKind::CX: {
      const std::size_t b1 = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & b0) && !(i & b1)) std::swap(state[i], state[i | b1]);
      }
      return;
    }
    case GateKind::ZZPhase: {
      const std::size_t b1 = std::size_t{1} << g.q1;
      const std::complex<double> even(std::cos(g.angle / 2), -std::sin(g.angle / 2));
      const std::complex<double> odd(std::cos(g.angle / 2), std::sin(g.angle / 2));
      for (std::size_t i = 0; i < dim; ++i) {
        const bool parity = ((i & b0) != 0) != ((i & b1) != 0);
        state[i] *= parity ? odd : even;
      }
      return;
    }
    case GateKind::Swap: {
      const std::size_t b1 = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & b0) && !(i & b1)) std::swap(state[i], state[(i & ~b0) | b1]);
      }
      return;
    }
  }
  throw ParameterError("unknown gate kind");
}

inline void apply_pauli_x(StateVector& state, int q) {
  const std::size_t b = std::size_t{1} << q;
  for (std::size_t i = 0; i < state.size(); ++i)
    if (!(i & b)) std::swap(state[i], state[i | b]);
}

inline void apply_pauli_y(StateVector& state, int q) {
  const std::size_t b = std::size_t{1} << q;
  const std::complex<double> plus_i(0.0, 1.0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & b) continue;
    const std::complex<double> a = state[i];
    state[i] = -plus_i * state[i | b];
    state[i | b] = plus_i * a;
  }
}

inline void apply_pauli_z(StateVector& state, int q) {
  const std::size_t b = std::size_t{1} << q;
  for (std::size_t i = 0; i < state.size(); ++i)
    if (i & b) state[i] = -state[i];
}

inline StateVector simulate_circuit_statevector(const Circuit& c) {
  if (c.qubit_count > kStatevectorQubitGuard)
    throw ResourceError("statevector simulation supports at most " +
                        std::to_string(kStatevectorQubitGuard) + " qubits, got " +
                        std::to_string(c.qubit_count));
  StateVector state(std::size_t{1} << c.qubit_count, 0.0);
  state[0] = 1.0;
  for (const Gate& g : c.gates) {
    validate_gate(g, c.qubit_count);
    apply_gate(state, g);
  }
  return state;
}

inline OutputDistribution probs_from_statevector(const StateVector& state) {
  OutputDistribution d;
  std::size_t dim = state.size();
  while ((std::size_t{1} << d.n) < dim) ++d.n;
  if ((std::size_t{1} << d.n) != dim)
    throw ParameterError("statevector length is not a power of two");
  d.probs.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) d.probs[i] = std::norm(state[i]);
  return d;
}

inline double max_abs_deviation(const OutputDistribution& a, const OutputDistribution& b) {
  if (a.n != b.n) throw ParameterError("distributions have different qubit counts");
  double m = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i)
    m = std::max(m, std::fabs(a.probs[i] - b.probs[i]));
  return m;
}

inline double tv_distance(const OutputDistribution& a, const OutputDistribution& b) {
  if (a.n != b.n) throw ParameterError("distributions have different qubit counts");
  double s = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) s += std::fabs(a.probs[i] - b.probs[i]);
  return 0.5 * s;
}

// ---------------------------------------------------------------------------
// Component-decomposed sampling.

struct ComponentDistributions {
  std::vector<std::vector<int>> components;  // each sorted ascending
  std::vector<OutputDistribution> dists;     // parallel to components
  std::vector<int> survivors;                // sorted union of the components
};

// Restricts the instance to each surviving component and solves the pieces
// independently. Terms touching any deleted qubit are dropped; a term whose
// qubits all survive must sit inside one component or the partition is
// inconsistent with the interaction structure.
inline ComponentDistributions component_probs(const IqpInstance& inst,
                                              const std::vector<std::vector<int>>& surviving_components) {
  validate_instance(inst);
  ComponentDistributions out;
  out.components.reserve(surviving_components.size());
  std::vector<int> comp_of(static_cast<std::size_t>(inst.n), -1);
  for (std::size_t ci = 0; ci < surviving_components.size(); ++ci) {
    std::vector<int> comp = surviving_components[ci];
    std::sort(comp.begin(), comp.end());
    if (comp.empty()) throw ParameterError("empty component in partition");
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const int q = comp[i];
      if (q < 0 || q >= inst.n)
        throw ParameterError("component qubit " + std::to_string(q) + " out of range");
      if (i > 0 && comp[i] == comp[i - 1])
        throw ParameterError("duplicate qubit " + std::to_string(q) + " in partition");
      if (comp_of[q] != -1)
        throw PartitionError("qubit " + std::to_string(q) + " appears in two components");
      comp_of[q] = static_cast<int>(ci);
    }
    if (static_cast<int>(comp.size()) > kBruteForceQubitGuard)
      throw ResourceError("component of size " + std::to_string(comp.size()) +
                          " exceeds the brute-force guard");
    out.survivors.insert(out.survivors.end(), comp.begin(), comp.end());
    out.components.push_back(std::move(comp));
  }
  std::sort(out.survivors.begin(), out.survivors.end());

  // Distribute terms: drop any term with a deleted qubit, otherwise all of
  // its qubits must share one component.
  std::vector<std::vector<Term>> comp_terms(out.components.size());
  for (std::size_t ti = 0; ti < inst.terms.size(); ++ti) {
    const Term& t = inst.terms[ti];
    bool touches_deleted = false;
    for (int q : t.qubits) touches_deleted |= comp_of[q] == -1;
    if (touches_deleted) continue;
    const int home = comp_of[t.qubits.front()];
    for (int q : t.qubits) {
      if (comp_of[q] != home)
        throw PartitionError("term " + std::to_string(ti) +
                             " straddles two components with all qubits surviving");
    }
    comp_terms[home].push_back(t);
  }

  for (std::size_t ci = 0; ci < out.components.size(); ++ci) {
    const std::vector<int>& comp = out.components[ci];
    std::map<int, int> local;
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
    IqpInstance piece;
    piece.n = static_cast<int>(comp.size());
    piece.k = inst.k;
    piece.seed = inst.seed;
    piece.label = inst.label + "/component" + std::to_string(ci);
    for (const Term& t : comp_terms[ci]) {
      Term r;
      r.theta = t.theta;
      for (int q : t.qubits) r.qubits.push_back(local.at(q));
      std::sort(r.qubits.begin(), r.qubits.end());
      piece.terms.push_back(std::move(r));
    }
    out.dists.push_back(brute_force_probs(piece));
  }
  return out;
}

// Joint distribution over the sorted survivor set: bit i of the joint index
// is the outcome of survivor i.
inline OutputDistribution product_distribution(const ComponentDistributions& cd) {
  const int n = static_cast<int>(cd.survivors.size());
  if (n > kBruteForceQubitGuard)
    throw ResourceError("joint distribution over " + std::to_string(n) +
                        " qubits exceeds the brute-force guard");
  std::map<int, int> joint_pos;
  for (int i = 0; i < n; ++i) joint_pos[cd.survivors[i]] = i;
  OutputDistribution out;
  out.n = n;
  out.probs.assign(std::size_t{1} << n, 1.0);
  for (std::size_t x = 0; x < out.probs.size(); ++x) {
    for (std::size_t ci = 0; ci < cd.components.size(); ++ci) {
      std::size_t local = 0;
      const std::vector<int>& comp = cd.components[ci];
      for (std::size_t i = 0; i < comp.size(); ++i) {
        if (x >> joint_pos.at(comp[i]) & 1) local |= std::size_t{1} << i;
      }
      out.probs[x] *= cd.dists[ci].probs[local];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trajectory sampling under a per-layer Pauli channel.

struct EmpiricalDistribution {
  int n = 0;
  long long shots = 0;
  std::vector<long long> counts;

  OutputDistribution to_distribution() const {
    if (shots == 0) throw ParameterError("empty histogram has no distribution");
    OutputDistribution d;
    d.n = n;
    d.probs.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
      d.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    return d;
  }
};

// One stochastic unraveling per shot: after every schedule layer (including
// the last) each qubit suffers an independent Pauli drawn from the channel.
// Shot s uses its own generator derived from (seed, s), so any shot range
// can be reproduced or distributed without replaying predecessors.
inline EmpiricalDistribution noisy_trajectory_sample(const Circuit& c, const NoiseChannel& ch,
                                                     long long shots, std::uint64_t seed) {
  if (c.qubit_count > kTrajectoryQubitGuard)
    throw ResourceError("trajectory simulation supports at most " +
                        std::to_string(kTrajectoryQubitGuard) + " qubits, got " +
                        std::to_string(c.qubit_count));
  if (shots < 0) throw ParameterError("shot count must be non-negative");
  validate_channel(ch);
  for (const Gate& g : c.gates) validate_gate(g, c.qubit_count);
  const Schedule sched = schedule_depth(c);

  EmpiricalDistribution hist;
  hist.n = c.qubit_count;
  hist.shots = shots;
  hist.counts.assign(std::size_t{1} << c.qubit_count, 0);

  const double cum_x = ch.p_i + ch.p_x;
  const double cum_y = cum_x + ch.p_y;
  const double cum_z = cum_y + ch.p_z;

  StateVector state;
  for (long long shot = 0; shot < shots; ++shot) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(shot)));
    state.assign(std::size_t{1} << c.qubit_count, 0.0);
    state[0] = 1.0;
    for (const std::vector<std::size_t>& layer : sched.layers) {
      for (std::size_t gi : layer) apply_gate(state, c.gates[gi]);
      for (int q = 0; q < c.qubit_count; ++q) {
        const double u = rng.uniform();
        if (u < ch.p_i) continue;
        if (u < cum_x) apply_pauli_x(state, q);
        else if (u < cum_y) apply_pauli_y(state, q);
        else if (u < cum_z) apply_pauli_z(state, q);
      }
    }
    // Inverse-CDF draw of one measurement outcome.
    const double r = rng.uniform();
    double acc = 0.0;
    std::size_t outcome = state.size() - 1;
    for (std::size_t i = 0; i < state.size(); ++i) {
      acc += std::norm(state[i]);
      if (r < acc) {
        outcome = i;
        break;
      }
    }
    ++hist.counts[outcome];
  }
  return hist;
}

// Histogram export with qubit 0 as the leftmost character of the bitstring.
inline std::string histogram_csv(const EmpiricalDistribution& hist) {
  std::string out = "bitstring,count,probability\n";
  char buf[64];
  for (std::size_t x = 0; x < hist.counts.size(); ++x) {
    std::string bits(static_cast<std::size_t>(hist.n), '0');
    for (int q = 0; q < hist.n; ++q)
      if (x >> q & 1) bits[q] = '1';
    const double p = hist.shots == 0
                         ? 0.0
                         : static_cast<double>(hist.counts[x]) / static_cast<double>(hist.shots);
    std::snprintf(buf, sizeof buf, ",%lld,%.10g\n", hist.counts[x], p);
    out += bits + buf;
  }
  return out;
}

}  // namespace iqpc
