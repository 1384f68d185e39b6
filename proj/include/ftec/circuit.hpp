#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ftec/pauli.hpp"
#include "ftec/state_sim.hpp"

namespace ftec {

enum class Mode { bare, cat };

inline std::string to_string(Mode m) { return m == Mode::bare ? "bare" : "cat"; }

inline Mode mode_from_string(const std::string& s) {
  if (s == "bare") return Mode::bare;
  if (s == "cat") return Mode::cat;
  throw ParseError("unknown mode '" + s + "'");
}

// One syndrome-extraction stage: basis change, parity collection, the
// measurement(s), inverse basis change, in that gate-index range.
struct Stage {
  PauliOperator generator;  // the stabilizer generator this stage measures
  int sign = +1;
  std::size_t begin = 0, end = 0;  // half-open gate range
  std::vector<std::string> ancillas;
  std::vector<std::string> cbits;
  // XORed into the measured parity to produce the syndrome bit; accounts for
  // a -1 generator sign and for Y factors whose conjugation lands on -Z.
  bool parity_flip = false;
};

struct Circuit {
  Mode mode = Mode::bare;
  std::size_t n_data = 0;
  std::vector<Gate> gates;
  std::vector<Stage> stages;
};

inline std::string emit_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::R: return "R " + g.qubits[0];
    case GateKind::Rprime: return "RP " + g.qubits[0];
    case GateKind::PauliX: return "X " + g.qubits[0];
    case GateKind::PauliY: return "Y " + g.qubits[0];
    case GateKind::PauliZ: return "Z " + g.qubits[0];
    case GateKind::Xor: return "XOR " + g.qubits[0] + " " + g.qubits[1];
    case GateKind::PrepZero: return "PREP " + g.qubits[0];
    case GateKind::PrepCat: {
      std::string s = "CAT";
      for (const auto& q : g.qubits) s += " " + q;
      return s;
    }
    case GateKind::Measure: return "M " + g.qubits[0] + " -> " + g.cbit;
  }
  throw std::logic_error("emit_gate: unreachable");
}

// Circuit text, one gate per line, stage boundaries as comments.
inline std::string emit_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "# mode " << to_string(c.mode) << "\n";
  for (std::size_t j = 0; j < c.stages.size(); ++j) {
    const Stage& st = c.stages[j];
    out << "# stage " << j << ": " << (st.sign < 0 ? "-" : "")
        << format_notation(st.generator) << "\n";
    for (std::size_t i = st.begin; i < st.end; ++i) out << emit_gate(c.gates[i]) << "\n";
  }
  return out.str();
}

inline Gate parse_gate(const std::string& line) {
  std::istringstream in(line);
  std::string op;
  in >> op;
  auto one = [&](GateKind k) {
    std::string q;
    if (!(in >> q)) throw ParseError("gate line '" + line + "': missing qubit");
    return Gate::one_qubit(k, q);
  };
  if (op == "R") return one(GateKind::R);
  if (op == "RP") return one(GateKind::Rprime);
  if (op == "X") return one(GateKind::PauliX);
  if (op == "Y") return one(GateKind::PauliY);
  if (op == "Z") return one(GateKind::PauliZ);
  if (op == "PREP") return one(GateKind::PrepZero);
  if (op == "CAT") {
    std::vector<std::string> qs;
    std::string q;
    while (in >> q) qs.push_back(q);
    if (qs.empty()) throw ParseError("gate line '" + line + "': CAT needs qubits");
    return Gate::prep_cat(qs);
  }
  if (op == "XOR") {
    std::string c, t;
    if (!(in >> c >> t)) throw ParseError("gate line '" + line + "': XOR needs control target");
    return Gate::xorgate(c, t);
  }
  if (op == "M") {
    std::string q, arrow, cbit;
    if (!(in >> q >> arrow >> cbit) || arrow != "->")
      throw ParseError("gate line '" + line + "': expected 'M <qubit> -> <cbit>'");
    return Gate::measure(q, cbit);
  }
  throw ParseError("gate line '" + line + "': unknown gate '" + op + "'");
}

inline bool default_parity_flip(const PauliOperator& gen, int sign) {
  std::size_t y = 0;
  for (std::size_t i = 0; i < gen.num_qubits(); ++i)
    if (gen.has_x(i) && gen.has_z(i)) ++y;
  return ((y % 2) != 0) != (sign < 0);
}

inline Circuit parse_circuit(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# mode ", 0) == 0) {
      c.mode = mode_from_string(line.substr(7));
      continue;
    }
    if (line.rfind("# stage ", 0) == 0) {
      const std::size_t colon = line.find(':');
      if (colon == std::string::npos) throw ParseError("bad stage comment '" + line + "'");
      std::string body = line.substr(colon + 1);
      while (!body.empty() && body.front() == ' ') body.erase(body.begin());
      Stage st;
      if (!body.empty() && body.front() == '-') {
        st.sign = -1;
        body.erase(body.begin());
      }
      st.generator = parse_notation(body);
      st.parity_flip = default_parity_flip(st.generator, st.sign);
      if (!c.stages.empty()) c.stages.back().end = c.gates.size();
      st.begin = c.gates.size();
      c.stages.push_back(std::move(st));
      c.n_data = c.stages.back().generator.num_qubits();
      continue;
    }
    if (line[0] == '#') continue;
    Gate g = parse_gate(line);
    if (c.stages.empty()) throw ParseError("gate before first stage comment: '" + line + "'");
    if (g.kind == GateKind::PrepZero || g.kind == GateKind::PrepCat)
      for (const auto& q : g.qubits) c.stages.back().ancillas.push_back(q);
    if (g.kind == GateKind::Measure) c.stages.back().cbits.push_back(g.cbit);
    c.gates.push_back(std::move(g));
  }
  if (!c.stages.empty()) c.stages.back().end = c.gates.size();
  return c;
}

}  // namespace ftec
