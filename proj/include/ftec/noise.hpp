#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ftec/circuit.hpp"
#include "ftec/pauli.hpp"
#include "ftec/state_sim.hpp"

namespace ftec {

enum class FaultTiming { before, after };

struct FaultLocation {
  std::size_t gate_index = 0;
  FaultTiming timing = FaultTiming::before;
  std::string qubit;
  char kind = 'X';  // X, Y or Z

  bool operator==(const FaultLocation&) const = default;
};

// Fault specification string used by the CLI.
inline std::string format_fault(const FaultLocation& f) {
  return "@" + std::to_string(f.gate_index) + ":" +
         (f.timing == FaultTiming::before ? "before" : "after") + ":" + f.qubit + ":" +
         std::string(1, f.kind);
}

inline FaultLocation parse_fault(const std::string& spec) {
  if (spec.empty() || spec[0] != '@') throw ParseError("fault spec must start with '@'");
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 1; i < spec.size(); ++i) {
    if (spec[i] == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += spec[i];
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw ParseError("fault spec '" + spec + "': expected 4 fields");
  FaultLocation f;
  f.gate_index = std::stoul(parts[0]);
  if (parts[1] == "before")
    f.timing = FaultTiming::before;
  else if (parts[1] == "after")
    f.timing = FaultTiming::after;
  else
    throw ParseError("fault spec '" + spec + "': timing must be before|after");
  f.qubit = parts[2];
  if (parts[3].size() != 1 || (parts[3][0] != 'X' && parts[3][0] != 'Y' && parts[3][0] != 'Z'))
    throw ParseError("fault spec '" + spec + "': kind must be X, Y or Z");
  f.kind = parts[3][0];
  return f;
}

// Every (gate, before/after, touched qubit, Pauli kind) slot, deduplicated:
// "after gate i" on a qubit is kept only when no later gate touches that
// qubit, since it otherwise coincides with "before" the next gate. Locations
// before a preparation are skipped (the qubit is born there, and cat
// preparation is taken as pre-verified).
inline std::vector<FaultLocation> enumerate_fault_locations(const Circuit& circuit) {
  std::vector<FaultLocation> out;
  auto touched_later = [&](const std::string& q, std::size_t i) {
    for (std::size_t j = i + 1; j < circuit.gates.size(); ++j)
      for (const auto& r : circuit.gates[j].qubits)
        if (r == q) return true;
    return false;
  };
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    const bool is_prep = g.kind == GateKind::PrepZero || g.kind == GateKind::PrepCat;
    for (const auto& q : g.qubits) {
      for (char kind : {'X', 'Y', 'Z'}) {
        if (!is_prep) out.push_back({i, FaultTiming::before, q, kind});
        if (!touched_later(q, i)) out.push_back({i, FaultTiming::after, q, kind});
      }
    }
  }
  return out;
}

// Splices a single Pauli gate into the circuit at the fault location; stage
// boundaries shift accordingly.
inline Circuit inject(const Circuit& circuit, const FaultLocation& fault) {
  if (fault.gate_index >= circuit.gates.size())
    throw std::out_of_range("inject: gate index out of range");
  const std::size_t pos =
      fault.timing == FaultTiming::before ? fault.gate_index : fault.gate_index + 1;
  GateKind kind;
  switch (fault.kind) {
    case 'X': kind = GateKind::PauliX; break;
    case 'Y': kind = GateKind::PauliY; break;
    case 'Z': kind = GateKind::PauliZ; break;
    default: throw std::invalid_argument("inject: kind must be X, Y or Z");
  }
  Circuit out = circuit;
  out.gates.insert(out.gates.begin() + static_cast<std::ptrdiff_t>(pos),
                   Gate::one_qubit(kind, fault.qubit));
  // The spliced gate belongs to the stage containing the anchor gate.
  for (auto& st : out.stages) {
    if (fault.gate_index < st.begin) ++st.begin;
    if (fault.gate_index < st.end) ++st.end;
  }
  return out;
}

// Splices several faults in one pass; later positions first so earlier
// indices stay valid.
inline Circuit inject_all(const Circuit& circuit, std::vector<FaultLocation> faults) {
  std::stable_sort(faults.begin(), faults.end(), [](const auto& a, const auto& b) {
    return a.gate_index > b.gate_index;
  });
  Circuit out = circuit;
  for (const auto& f : faults) out = inject(out, f);
  return out;
}

// Stochastic demo model: each enumerated location fires independently with
// probability p.
inline std::vector<FaultLocation> sample_faults(const Circuit& circuit, double p, Rng& rng) {
  std::vector<FaultLocation> out;
  for (const auto& loc : enumerate_fault_locations(circuit))
    if (uniform01(rng) < p) out.push_back(loc);
  return out;
}

// Names the error process at the code level; delegates to the simulator.
inline void apply_error_process(StateVector& state, const PauliOperator& p) {
  state.apply_pauli(p);
}

}  // namespace ftec
