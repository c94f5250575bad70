#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iqpc {

enum class TwoQubitPrimitive { CX, ZZPhase };

// A named target gate set plus its SWAP cost convention. Gate sets whose
// native two-qubit gate is CX realize an inserted SWAP as three CX gates;
// gate sets with a native ZZ interaction keep SWAP as a single slot.
struct GateSet {
  std::string id;
  TwoQubitPrimitive two_qubit_primitive;
  bool expand_swaps;  // default SWAP accounting: true -> count as 3 CX
  std::string notes;
};

inline const std::vector<GateSet>& gate_set_registry() {
  static const std::vector<GateSet> registry = {
      {"cx", TwoQubitPrimitive::CX, true, "CX native; SWAP costs 3 CX"},
      {"zzphase", TwoQubitPrimitive::ZZPhase, false,
       "ZZ interaction native; SWAP costs 1 slot"},
  };
  return registry;
}

inline std::optional<GateSet> find_gate_set(std::string_view id) {
  for (const auto& gs : gate_set_registry()) {
    if (gs.id == id) return gs;
  }
  return std::nullopt;
}

}  // namespace iqpc
