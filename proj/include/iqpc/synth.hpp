#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iqpc/errors.hpp"
#include "iqpc/gateset.hpp"
#include "iqpc/instance.hpp"

namespace iqpc {

enum class GateKind { H, RZ, CX, ZZPhase, Swap };

// Phase conventions used throughout:
//   RZ(lambda)      = exp(-i*lambda/2 * Z)   = diag(e^{-i lambda/2}, e^{+i lambda/2})
//   ZZPhase(lambda) = exp(-i*lambda/2 * Z(x)Z)
// so exp(i*theta*Z_s) is realized with lambda = -2*theta, with no global
// phase left over.
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = -1;
  int q1 = -1;          // -1 for one-qubit gates
  double angle = 0.0;   // RZ / ZZPhase only

  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate rz(double angle, int q) { return {GateKind::RZ, q, -1, angle}; }
  static Gate cx(int control, int target) { return {GateKind::CX, control, target, 0.0}; }
  static Gate zz(double angle, int a, int b) { return {GateKind::ZZPhase, a, b, angle}; }
  static Gate swap(int a, int b) { return {GateKind::Swap, a, b, 0.0}; }

  int arity() const { return q1 < 0 ? 1 : 2; }
  bool is_two_qubit() const { return arity() == 2; }

  bool operator==(const Gate& o) const {
    return kind == o.kind && q0 == o.q0 && q1 == o.q1 && angle == o.angle;
  }
};

enum class Frame { Logical, Physical };

struct Circuit {
  int qubit_count = 0;
  Frame frame = Frame::Logical;
  std::vector<Gate> gates;
  // Physical frame only: logical -> physical maps before and after routing.
  std::vector<int> initial_mapping;
  std::vector<int> final_mapping;
};

inline void validate_gate(const Gate& g, int n) {
  if (g.q0 < 0 || g.q0 >= n) throw ParameterError("gate operand out of range");
  if (g.arity() == 2) {
    if (g.q1 < 0 || g.q1 >= n) throw ParameterError("gate operand out of range");
    if (g.q0 == g.q1) throw ParameterError("two-qubit gate with repeated operand");
  }
  if (!std::isfinite(g.angle)) throw ParameterError("gate angle must be finite");
}

inline long two_qubit_count(const Circuit& c) {
  long count = 0;
  for (const Gate& g : c.gates) count += g.is_two_qubit() ? 1 : 0;
  return count;
}

// Parity synthesis of exp(i*theta*Z_s): a CNOT chain in ascending index order
// accumulates the parity of s onto its highest-index qubit, an RZ(-2*theta)
// applies the phase, and the mirrored chain uncomputes. 2(|s|-1) CX total.
inline std::vector<Gate> decompose_term(const Term& t, const GateSet& gs) {
  const auto& s = t.qubits;
  if (s.empty()) throw ParameterError("cannot decompose a term with empty support");
  const double lambda = -2.0 * t.theta;
  if (s.size() == 1) return {Gate::rz(lambda, s[0])};
  if (gs.two_qubit_primitive == TwoQubitPrimitive::ZZPhase) {
    if (s.size() > 2)
      throw ParameterError("gate set \"" + gs.id + "\" has no decomposition for a " +
                           std::to_string(s.size()) + "-local term");
    return {Gate::zz(lambda, s[0], s[1])};
  }
  std::vector<Gate> gates;
  gates.reserve(2 * (s.size() - 1) + 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) gates.push_back(Gate::cx(s[i], s[i + 1]));
  gates.push_back(Gate::rz(lambda, s.back()));
  for (std::size_t i = s.size() - 1; i-- > 0;) gates.push_back(Gate::cx(s[i], s[i + 1]));
  return gates;
}

// H on every qubit, the term decompositions in generator order, H again.
inline Circuit build_logical_circuit(const IqpInstance& inst, const GateSet& gs) {
  validate_instance(inst);
  Circuit c;
  c.qubit_count = inst.n;
  c.frame = Frame::Logical;
  for (int q = 0; q < inst.n; ++q) c.gates.push_back(Gate::h(q));
  for (const Term& t : inst.terms) {
    auto gates = decompose_term(t, gs);
    c.gates.insert(c.gates.end(), gates.begin(), gates.end());
  }
  for (int q = 0; q < inst.n; ++q) c.gates.push_back(Gate::h(q));
  return c;
}

// Peephole cleanup: cancels an identical CX pair when no gate touches either
// operand in between, and fuses an RZ into the previous RZ on the same qubit
// under the same condition. Iterates to a fixpoint.
inline Circuit simplify(const Circuit& c) {
  std::vector<Gate> gates = c.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> out;
    out.reserve(gates.size());
    std::vector<long> last(static_cast<std::size_t>(c.qubit_count), -1);
    for (const Gate& g : gates) {
      if (g.kind == GateKind::CX && last[g.q0] >= 0 && last[g.q0] == last[g.q1] &&
          out[last[g.q0]] == g) {
        const long cancel = last[g.q0];
        out.erase(out.begin() + cancel);
        for (auto& l : last) {
          if (l == cancel) l = -1;
          else if (l > cancel) --l;
        }
        changed = true;
        continue;
      }
      if (g.kind == GateKind::RZ && last[g.q0] >= 0 && out[last[g.q0]].kind == GateKind::RZ) {
        out[last[g.q0]].angle += g.angle;
        changed = true;
        continue;
      }
      out.push_back(g);
      last[g.q0] = static_cast<long>(out.size()) - 1;
      if (g.arity() == 2) last[g.q1] = static_cast<long>(out.size()) - 1;
    }
    gates = std::move(out);
  }
  Circuit result = c;
  result.gates = std::move(gates);
  return result;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_mapping(const char* tag, const std::vector<int>& mapping) {
  std::string line = std::string("# ") + tag;
  for (int v : mapping) line += " " + std::to_string(v);
  return line + "\n";
}

}  // namespace detail

// Line-oriented text form: header "qubits N; frame logical|physical", one
// gate per line. Physical circuits carry their mappings as comment lines so
// the format round-trips.
inline std::string circuit_to_text(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.qubit_count) + "; frame " +
                    (c.frame == Frame::Logical ? "logical" : "physical") + "\n";
  if (c.frame == Frame::Physical) {
    out += detail::format_mapping("initial_mapping", c.initial_mapping);
    out += detail::format_mapping("final_mapping", c.final_mapping);
  }
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        out += "H " + std::to_string(g.q0) + "\n";
        break;
      case GateKind::RZ:
        out += "RZ " + detail::format_double(g.angle) + " " + std::to_string(g.q0) + "\n";
        break;
      case GateKind::CX:
        out += "CX " + std::to_string(g.q0) + " " + std::to_string(g.q1) + "\n";
        break;
      case GateKind::ZZPhase:
        out += "ZZ " + detail::format_double(g.angle) + " " + std::to_string(g.q0) + " " +
               std::to_string(g.q1) + "\n";
        break;
      case GateKind::Swap:
        out += "SWAP " + std::to_string(g.q0) + " " + std::to_string(g.q1) + "\n";
        break;
    }
  }
  return out;
}

inline Circuit circuit_from_text(const std::string& text, const std::string& origin) {
  auto fail = [&](std::size_t lineno, const std::string& what) {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + what);
  };
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Circuit c;
  bool header_seen = false;

  auto parse_int = [&](const std::string& tok, std::size_t ln) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(ln, "\"" + tok + "\" is not an integer");
      return 0;
    }
  };
  auto parse_angle = [&](const std::string& tok, std::size_t ln) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
      fail(ln, "\"" + tok + "\" is not a finite angle");
    return v;
  };
  auto parse_mapping = [&](std::istringstream& rest) {
    std::vector<int> mapping;
    std::string tok;
    while (rest >> tok) mapping.push_back(parse_int(tok, lineno));
    return mapping;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream rest(line.substr(1));
      std::string tag;
      rest >> tag;
      if (tag == "initial_mapping") c.initial_mapping = parse_mapping(rest);
      else if (tag == "final_mapping") c.final_mapping = parse_mapping(rest);
      continue;
    }
    if (!header_seen) {
      std::istringstream hs(line);
      std::string kw, count_tok, frame_kw, frame_val;
      hs >> kw >> count_tok;
      if (kw != "qubits" || count_tok.empty() || count_tok.back() != ';')
        fail(lineno, "expected header \"qubits N; frame logical|physical\"");
      count_tok.pop_back();
      c.qubit_count = parse_int(count_tok, lineno);
      if (c.qubit_count < 1) fail(lineno, "qubit count must be positive");
      hs >> frame_kw >> frame_val;
      if (frame_kw != "frame" || (frame_val != "logical" && frame_val != "physical"))
        fail(lineno, "expected header \"qubits N; frame logical|physical\"");
      c.frame = frame_val == "logical" ? Frame::Logical : Frame::Physical;
      header_seen = true;
      continue;
    }
    std::istringstream gs(line);
    std::string op;
    gs >> op;
    std::vector<std::string> toks;
    std::string tok;
    while (gs >> tok) toks.push_back(tok);
    Gate g;
    if (op == "H" && toks.size() == 1) {
      g = Gate::h(parse_int(toks[0], lineno));
    } else if (op == "RZ" && toks.size() == 2) {
      g = Gate::rz(parse_angle(toks[0], lineno), parse_int(toks[1], lineno));
    } else if (op == "CX" && toks.size() == 2) {
      g = Gate::cx(parse_int(toks[0], lineno), parse_int(toks[1], lineno));
    } else if (op == "ZZ" && toks.size() == 3) {
      g = Gate::zz(parse_angle(toks[0], lineno), parse_int(toks[1], lineno),
                   parse_int(toks[2], lineno));
    } else if (op == "SWAP" && toks.size() == 2) {
      g = Gate::swap(parse_int(toks[0], lineno), parse_int(toks[1], lineno));
    } else {
      fail(lineno, "unrecognized gate line \"" + line + "\"");
    }
    try {
      validate_gate(g, c.qubit_count);
    } catch (const ParameterError& e) {
      fail(lineno, e.what());
    }
    c.gates.push_back(g);
  }
  if (!header_seen) fail(lineno, "missing header line");
  if (c.frame == Frame::Physical) {
    auto check_mapping = [&](const std::vector<int>& m, const char* tag) {
      std::vector<char> used(static_cast<std::size_t>(c.qubit_count), 0);
      for (int p : m) {
        if (p < 0 || p >= c.qubit_count || used[p])
          throw ParseError(origin + ": " + tag + " is not injective into [0," +
                           std::to_string(c.qubit_count) + ")");
        used[p] = 1;
      }
    };
    check_mapping(c.initial_mapping, "initial_mapping");
    check_mapping(c.final_mapping, "final_mapping");
    if (c.initial_mapping.size() != c.final_mapping.size())
      throw ParseError(origin + ": initial and final mappings differ in length");
  }
  return c;
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open circuit file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return circuit_from_text(ss.str(), path);
}

}  // namespace iqpc
