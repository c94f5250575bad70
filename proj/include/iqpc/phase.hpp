#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "iqpc/errors.hpp"
#include "iqpc/instance.hpp"
#include "iqpc/topology.hpp"

namespace iqpc {

inline constexpr double kEuler = 2.7182818284590452353602874713527;

// Boundary parameters of the critical-depth curve c/(p*ln(k/p)).
struct PhaseParams {
  int k = 2;
  double c = 1.0;
};

inline void validate_phase_params(const PhaseParams& params) {
  if (params.k < 1) throw ParameterError("locality k must be >= 1");
  if (!(params.c > 0.0)) throw ParameterError("boundary constant c must be positive");
}

// Single-qubit Pauli channel acting after each depth layer.
struct NoiseChannel {
  double p_i = 1.0;
  double p_x = 0.0;
  double p_y = 0.0;
  double p_z = 0.0;
};

inline void validate_channel(const NoiseChannel& ch) {
  for (double p : {ch.p_i, ch.p_x, ch.p_y, ch.p_z}) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ParameterError("Pauli channel probabilities must lie in [0,1]");
  }
  const double sum = ch.p_i + ch.p_x + ch.p_y + ch.p_z;
  if (std::fabs(sum - 1.0) > 1e-12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", sum);
    throw ParameterError(std::string("Pauli channel probabilities must sum to 1, got ") + buf);
  }
}

inline double effective_p(const NoiseChannel& ch) {
  validate_channel(ch);
  return ch.p_z + std::min(ch.p_x, ch.p_y);
}

inline double boundary_domain_limit(const PhaseParams& params) { return params.k / kEuler; }

// Critical depth D_*(p,k) = c/(p*ln(k/p)), natural log, on the monotone
// decreasing branch 0 < p < k/e.
inline double critical_depth(double p, const PhaseParams& params = {}) {
  validate_phase_params(params);
  const double limit = boundary_domain_limit(params);
  if (!(p > 0.0 && p < limit)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "noise parameter p=%.10g outside the boundary domain (0, k/e) = (0, %.10g)",
                  p, limit);
    throw DomainError(buf);
  }
  return params.c / (p * std::log(params.k / p));
}

struct OperatingPoint {
  std::string label;
  double p_eff = 0.0;
  double depth = 1.0;  // layers; real-valued so seed means are representable
  int k = 2;
};

enum class Regime { Simulatable, PotentiallyHard, Boundary };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Simulatable: return "simulatable";
    case Regime::PotentiallyHard: return "potentially_hard";
    case Regime::Boundary: return "boundary";
  }
  return "boundary";
}

inline constexpr double kBoundaryEpsilon = 0.5;  // layers

struct MarginReport {
  OperatingPoint point;
  double d_star = 0.0;
  double margin = 0.0;  // d_star - depth; negative inside the simulatable regime
  Regime regime = Regime::Boundary;
};

inline MarginReport margin(const OperatingPoint& point, const PhaseParams& params = {}) {
  if (point.k != params.k)
    throw ParameterError("operating point locality k=" + std::to_string(point.k) +
                         " disagrees with boundary params k=" + std::to_string(params.k));
  if (!(point.depth >= 1.0)) throw ParameterError("operating point depth must be >= 1");
  MarginReport r;
  r.point = point;
  r.d_star = critical_depth(point.p_eff, params);
  r.margin = r.d_star - point.depth;
  if (std::fabs(r.margin) < kBoundaryEpsilon) r.regime = Regime::Boundary;
  else r.regime = r.margin < 0.0 ? Regime::Simulatable : Regime::PotentiallyHard;
  return r;
}

// Largest p whose critical depth still reaches `depth`: inverts the boundary
// on its decreasing branch by bisection in log(p). The curve's infimum over
// the branch is c*e/k, so depths at or below that have no solution.
inline double p_required(double depth, const PhaseParams& params = {}) {
  validate_phase_params(params);
  const double limit = boundary_domain_limit(params);
  const double depth_floor = params.c * kEuler / params.k;
  if (!(depth > depth_floor)) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "no noise level in (0, k/e) has critical depth %.10g; the boundary only covers depths above c*e/k = %.10g",
                  depth, depth_floor);
    throw DomainError(buf);
  }
  // g(x) = c - depth * e^x * (ln(k) - x) with x = ln p; g > 0 left of the
  // solution, g < 0 at x = ln(k/e).
  auto g = [&](double x) { return params.c - depth * std::exp(x) * (std::log(params.k) - x); };
  double hi = std::log(limit);
  double lo = hi - 60.0;
  for (int guard = 0; guard < 16 && !(g(lo) > 0.0); ++guard) lo -= 60.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

struct NoiseBudget {
  double exact = 1.0;     // p_required(D_S) / p_required(D_FC)
  double estimate = 1.0;  // first-order D_FC / D_S
};

inline NoiseBudget noise_budget_ratio(double d_fc, double d_s, const PhaseParams& params = {}) {
  if (!(d_fc >= 1.0) || !(d_s >= d_fc))
    throw ParameterError("noise budget needs D_S >= D_FC >= 1");
  NoiseBudget nb;
  nb.exact = p_required(d_s, params) / p_required(d_fc, params);
  nb.estimate = d_fc / d_s;
  return nb;
}

struct GridDepthBounds {
  long long lower_dist = 0;  // D_FC plus amortized SWAP demand
  long long lower_diam = 0;  // summed per-layer max term diameter
  long long upper = 0;       // ceil(sqrt(n)) * D_FC
};

// Order-wise depth bounds for a mapped instance on a 2D grid; all unit
// constants are fixed to 1 and the results are diagnostics, not guarantees.
// lower_diam layers the terms themselves (ASAP over term supports), since the
// per-layer diameter argument applies to whole interactions.
inline GridDepthBounds grid_depth_bounds(const IqpInstance& inst, const HardwareGraph& g,
                                         const std::vector<int>& mapping, int lambda, int d_fc) {
  if (g.kind != TopologyKind::Grid)
    throw ParameterError("depth bounds require a grid topology, got " + g.name);
  if (lambda < 1) throw ParameterError("lambda must be >= 1");
  if (d_fc < 1) throw ParameterError("d_fc must be >= 1");
  validate_instance(inst);
  if (static_cast<int>(mapping.size()) != inst.n)
    throw ParameterError("mapping covers " + std::to_string(mapping.size()) +
                         " qubits, instance has " + std::to_string(inst.n));
  std::vector<char> used(static_cast<std::size_t>(g.qubit_count), 0);
  for (int p : mapping) {
    if (p < 0 || p >= g.qubit_count || used[p])
      throw ParameterError("mapping is not injective into " + g.name);
    used[p] = 1;
  }

  GridDepthBounds b;
  long long excess = 0;
  const InteractionGraph ig = interaction_graph(inst);
  for (auto [u, v] : ig.edges) excess += g.dist(mapping[u], mapping[v]) - 1;
  b.lower_dist = d_fc + (excess + lambda - 1) / lambda;

  std::vector<int> last(static_cast<std::size_t>(inst.n), 0);
  std::vector<int> layer_diam;
  for (const Term& t : inst.terms) {
    int layer = 0;
    for (int q : t.qubits) layer = std::max(layer, last[q]);
    ++layer;
    for (int q : t.qubits) last[q] = layer;
    if (static_cast<int>(layer_diam.size()) < layer) layer_diam.resize(layer, 0);
    std::vector<int> support;
    support.reserve(t.qubits.size());
    for (int q : t.qubits) support.push_back(mapping[q]);
    layer_diam[layer - 1] = std::max(layer_diam[layer - 1], subset_diameter(g, support));
  }
  for (int d : layer_diam) b.lower_diam += d;

  long long root = 1;
  while (root * root < inst.n) ++root;
  b.upper = root * static_cast<long long>(d_fc);
  return b;
}

// The canonical operating-point export: one row per margin report.
inline std::string operating_points_csv(const std::vector<MarginReport>& reports) {
  std::string out = "label,p_eff,D_H,d_star,margin,regime\n";
  char buf[256];
  for (const MarginReport& r : reports) {
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%.10g,%.10g,", r.point.p_eff, r.point.depth,
                  r.d_star, r.margin);
    out += r.point.label + buf + regime_name(r.regime) + "\n";
  }
  return out;
}

}  // namespace iqpc
