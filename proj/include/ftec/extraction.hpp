#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftec/circuit.hpp"
#include "ftec/pauli.hpp"
#include "ftec/stab_code.hpp"
#include "ftec/state_sim.hpp"

namespace ftec {

struct UnconfirmedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How the cat-state parity collection couples to the data. `conjugated`
// rotates each cat target into the conjugate basis before its XOR, so the
// stage measures only the collective parity. `naive` XORs into raw cat
// targets and measures them directly; it reads the right parity but leaks
// pairwise information and collapses code superpositions. It is kept as a
// negative fixture.
enum class CatStyle { conjugated, naive };

struct BasisChange {
  std::vector<Gate> forward;   // one-qubit gates taking the generator to Z-type
  std::vector<Gate> backward;  // inverse sequence, drawn from the same gate set
  PauliOperator conjugated;    // pure-Z operator with the original support
  bool sign_flip = false;      // conjugated operator carries a -1 (odd Y count)
};

// Per qubit: X-only factors take an R, Y factors take an R'; Z-only factors
// need nothing. R is its own inverse; R'^2 = iX, so undoing an R' takes
// R' followed by X (global phase dropped).
inline BasisChange basis_change(const PauliOperator& gen) {
  BasisChange bc;
  bc.conjugated = PauliOperator(gen.num_qubits());
  std::size_t y_count = 0;
  for (std::size_t i = 0; i < gen.num_qubits(); ++i) {
    const std::string q = std::to_string(i);
    if (gen.has_x(i) && gen.has_z(i)) {
      bc.forward.push_back(Gate::one_qubit(GateKind::Rprime, q));
      ++y_count;
    } else if (gen.has_x(i)) {
      bc.forward.push_back(Gate::one_qubit(GateKind::R, q));
    }
    bc.conjugated.set_z(i, gen.has_x(i) || gen.has_z(i));
  }
  for (auto it = bc.forward.rbegin(); it != bc.forward.rend(); ++it) {
    bc.backward.push_back(*it);
    if (it->kind == GateKind::Rprime)
      bc.backward.push_back(Gate::one_qubit(GateKind::PauliX, it->qubits[0]));
  }
  bc.sign_flip = (y_count % 2) != 0;
  return bc;
}

struct ResourceReport {
  std::size_t rotations = 0;  // R and R' gates
  std::size_t xors = 0;
  std::size_t ancillas = 0;
  std::size_t gate_bound = 0;     // 2n(n-k+1)
  std::size_t ancilla_bound = 0;  // n(n-k)
  std::size_t gate_count() const { return rotations + xors; }
  bool within_bounds() const {
    return gate_count() <= gate_bound && ancillas <= ancilla_bound;
  }
};

namespace detail {

inline void compile_stage(Circuit& c, const PauliOperator& gen, int sign, Mode mode,
                          CatStyle style, std::size_t stage_index,
                          std::size_t& next_ancilla, ResourceReport& report) {
  if (weight(gen) == 0)
    throw std::invalid_argument("compile_stage: weight-0 generator");
  const BasisChange bc = basis_change(gen);
  Stage st;
  st.generator = gen;
  st.sign = sign;
  st.parity_flip = bc.sign_flip != (sign < 0);
  st.begin = c.gates.size();

  auto count = [&](const Gate& g) {
    if (g.kind == GateKind::R || g.kind == GateKind::Rprime) ++report.rotations;
    if (g.kind == GateKind::Xor) ++report.xors;
  };
  auto push = [&](Gate g) {
    count(g);
    c.gates.push_back(std::move(g));
  };

  for (const auto& g : bc.forward) push(g);

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < gen.num_qubits(); ++i)
    if (bc.conjugated.has_z(i)) support.push_back(i);

  if (mode == Mode::bare) {
    const std::string anc = "a" + std::to_string(next_ancilla++);
    ++report.ancillas;
    st.ancillas.push_back(anc);
    push(Gate::prep_zero(anc));
    for (std::size_t i : support) push(Gate::xorgate(std::to_string(i), anc));
    const std::string cbit = "c" + std::to_string(stage_index);
    st.cbits.push_back(cbit);
    push(Gate::measure(anc, cbit));
  } else {
    std::vector<std::string> cat;
    for (std::size_t w = 0; w < support.size(); ++w) {
      cat.push_back("a" + std::to_string(next_ancilla++));
      ++report.ancillas;
    }
    st.ancillas = cat;
    push(Gate::prep_cat(cat));
    for (std::size_t w = 0; w < support.size(); ++w) {
      if (style == CatStyle::conjugated) push(Gate::one_qubit(GateKind::R, cat[w]));
      push(Gate::xorgate(std::to_string(support[w]), cat[w]));
    }
    for (std::size_t w = 0; w < support.size(); ++w) {
      const std::string cbit = "c" + std::to_string(stage_index) + "_" + std::to_string(w);
      st.cbits.push_back(cbit);
      push(Gate::measure(cat[w], cbit));
    }
  }

  for (const auto& g : bc.backward) push(g);
  st.end = c.gates.size();
  c.stages.push_back(std::move(st));
}

}  // namespace detail

struct CompiledExtraction {
  Circuit circuit;
  ResourceReport report;
};

// One stage per generator; the resource totals must sit inside the
// 2n(n-k+1) gate and n(n-k) ancilla bounds.
inline CompiledExtraction compile_full(const StabilizerCode& code, Mode mode,
                                       CatStyle style = CatStyle::conjugated) {
  CompiledExtraction out;
  out.circuit.mode = mode;
  out.circuit.n_data = code.n;
  out.report.gate_bound = 2 * code.n * (code.n - code.k() + 1);
  out.report.ancilla_bound = code.n * (code.n - code.k());
  std::size_t next_ancilla = 0;
  for (std::size_t j = 0; j < code.g(); ++j)
    detail::compile_stage(out.circuit, code.generators[j], code.signs[j], mode, style, j,
                          next_ancilla, out.report);
  if (!out.report.within_bounds())
    throw std::logic_error("compile_full: resource bounds violated");
  return out;
}

// The pair of qubits whose rotation moves the symmetric presentation into
// the presentation whose parity leaves out qubit j; {0,1} for j=3, the rest
// by cyclic symmetry.
inline std::pair<std::size_t, std::size_t> presentation_qubits(std::size_t j) {
  if (j > 4) throw std::out_of_range("presentation_qubits: j must be in 0..4");
  return {(j + 2) % 5, (j + 3) % 5};
}

// The five-qubit network built directly from the presentation walk through
// L3, L4, L0, L1: rotate the pair, collect the parity of the four qubits
// other than j, measure, rotate back. An independent construction of the
// same network the generic compiler produces.
inline Circuit compile_presentation_walk() {
  Circuit c;
  c.mode = Mode::bare;
  c.n_data = 5;
  const std::size_t order[4] = {3, 4, 0, 1};
  for (std::size_t s = 0; s < 4; ++s) {
    const std::size_t j = order[s];
    const auto [p, q] = presentation_qubits(j);
    Stage st;
    // In the L_j basis the measured observable is the Z-parity of the four
    // qubits other than j.
    st.generator = PauliOperator(5);
    for (std::size_t i = 0; i < 5; ++i)
      if (i != j) st.generator.set_z(i, true);
    st.begin = c.gates.size();
    c.gates.push_back(Gate::one_qubit(GateKind::R, std::to_string(p)));
    c.gates.push_back(Gate::one_qubit(GateKind::R, std::to_string(q)));
    const std::string anc = "a" + std::to_string(s);
    st.ancillas.push_back(anc);
    c.gates.push_back(Gate::prep_zero(anc));
    for (std::size_t i = 0; i < 5; ++i)
      if (i != j) c.gates.push_back(Gate::xorgate(std::to_string(i), anc));
    const std::string cbit = "c" + std::to_string(s);
    st.cbits.push_back(cbit);
    c.gates.push_back(Gate::measure(anc, cbit));
    c.gates.push_back(Gate::one_qubit(GateKind::R, std::to_string(p)));
    c.gates.push_back(Gate::one_qubit(GateKind::R, std::to_string(q)));
    st.end = c.gates.size();
    c.stages.push_back(std::move(st));
  }
  return c;
}

struct ExtractionOutcome {
  Syndrome syndrome;
  std::vector<std::vector<int>> raw_bits;  // per stage, per measurement
  std::size_t rounds_used = 1;
};

// Simulates one pass of the circuit on `state` (data qubits only); ancillas
// are attached at their preparation gates and discarded once nothing later
// references them. The syndrome bit of stage j is the parity of its
// measured bits, XOR the stage's parity flip.
inline ExtractionOutcome run_extraction(StateVector& state, const Circuit& circuit, Rng& rng) {
  // last gate index referencing each ancilla label
  std::map<std::string, std::size_t> last_touch;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i)
    for (const auto& q : circuit.gates[i].qubits)
      if (!q.empty() && q[0] == 'a') last_touch[q] = i;

  std::map<std::string, int> cbits;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    const auto outcome = apply_gate(state, g, rng);
    if (outcome) cbits[g.cbit] = *outcome;
    for (const auto& q : g.qubits)
      if (!q.empty() && q[0] == 'a' && last_touch[q] == i) state.discard_ancilla({q});
  }

  ExtractionOutcome out;
  out.syndrome = Syndrome(circuit.stages.size());
  for (std::size_t j = 0; j < circuit.stages.size(); ++j) {
    const Stage& st = circuit.stages[j];
    int parity = st.parity_flip ? 1 : 0;
    std::vector<int> raw;
    for (const auto& cb : st.cbits) {
      auto it = cbits.find(cb);
      if (it == cbits.end())
        throw std::logic_error("run_extraction: classical bit '" + cb + "' never written");
      raw.push_back(it->second);
      parity ^= it->second;
    }
    out.raw_bits.push_back(std::move(raw));
    out.syndrome.bits.set(j, parity != 0);
  }
  return out;
}

struct ConfirmedSyndrome {
  Syndrome syndrome;
  std::size_t rounds_used = 0;
};

// Runs extraction rounds until two consecutive rounds agree. `overrides`
// replaces the circuit for the leading rounds (typically a single faulty
// first round); later rounds use the clean circuit.
inline ConfirmedSyndrome repeat_until_confirmed(
    StateVector& state, const Circuit& circuit, Rng& rng, std::size_t max_rounds,
    const std::vector<Circuit>& overrides = {}) {
  if (max_rounds < 2)
    throw std::invalid_argument("repeat_until_confirmed: max_rounds must be >= 2");
  std::optional<Syndrome> previous;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    const Circuit& use = round <= overrides.size() ? overrides[round - 1] : circuit;
    const ExtractionOutcome outcome = run_extraction(state, use, rng);
    if (previous && *previous == outcome.syndrome)
      return {outcome.syndrome, round};
    previous = outcome.syndrome;
  }
  throw UnconfirmedError("no two consecutive rounds agreed within " +
                         std::to_string(max_rounds) + " rounds");
}

}  // namespace ftec
