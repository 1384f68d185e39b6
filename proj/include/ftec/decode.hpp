#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ftec/pauli.hpp"
#include "ftec/stab_code.hpp"
#include "ftec/state_sim.hpp"

namespace ftec {

struct AmbiguousSyndromeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UncorrectableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Map from syndrome to a minimal-weight correction, keyed in generator
// order. Corrections are stored phase-free; recovery is judged by fidelity.
struct SyndromeTable {
  StabilizerCode code;
  std::map<std::uint64_t, PauliOperator> entries;

  const PauliOperator& correction(const Syndrome& s) const {
    auto it = entries.find(s.key());
    if (it == entries.end())
      throw UncorrectableError("no correction for syndrome " + s.str());
    return it->second;
  }

  bool has(const Syndrome& s) const { return entries.contains(s.key()); }
};

// Enumerates weight <= t errors in (weight, masks) order and keys them by
// their oracle syndrome. Colliding errors that differ by a stabilizer
// element keep the first (lexicographically least) representative; a
// collision between inequivalent errors means the code cannot correct t
// errors.
inline SyndromeTable build_table(const StabilizerCode& code, const std::string& kinds = "XYZ") {
  SyndromeTable table;
  table.code = code;
  for (const auto& err : enumerate_errors(code.n, code.t, kinds)) {
    const Syndrome s = syndrome_of_pauli(code, err);
    auto it = table.entries.find(s.key());
    if (it == table.entries.end()) {
      table.entries.emplace(s.key(), err.without_phase());
    } else if (!code.contains(multiply(it->second, err))) {
      throw AmbiguousSyndromeError("errors " + format_notation(it->second) + " and " +
                                   format_notation(err) + " share syndrome " + s.str());
    }
  }
  return table;
}

inline void decode_and_correct(StateVector& state, const SyndromeTable& table,
                               const Syndrome& syndrome) {
  if (syndrome.size() != table.code.g())
    throw DimensionError("decode_and_correct: syndrome length mismatch");
  const PauliOperator& u = table.correction(syndrome);
  if (!u.is_identity()) state.apply_pauli(u);
}

// "bits -> notation" per line, sorted by syndrome.
inline std::string dump_table(const SyndromeTable& table) {
  const std::size_t g = table.code.g();
  std::vector<std::string> lines;
  for (const auto& [key, u] : table.entries) {
    Syndrome s(g);
    for (std::size_t j = 0; j < g; ++j) s.bits.set(j, (key >> j) & 1);
    lines.push_back(s.str() + " -> " + format_notation(u));
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

// All sixteen reference rows for the five-qubit code, syndrome order
// (M3, M4, M0, M1).
inline const std::vector<std::pair<const char*, const char*>>& five_qubit_reference_rows() {
  static const std::vector<std::pair<const char*, const char*>> rows = {
      {"0000", "I"},  {"0001", "Z4"}, {"0010", "X1"}, {"0011", "Z3"},
      {"0100", "X3"}, {"0101", "X0"}, {"0110", "Z2"}, {"0111", "Y3"},
      {"1000", "Z0"}, {"1001", "X2"}, {"1010", "X4"}, {"1011", "Y4"},
      {"1100", "Z1"}, {"1101", "Y0"}, {"1110", "Y1"}, {"1111", "Y2"}};
  return rows;
}

inline PauliOperator pauli_from_name(const std::string& name, std::size_t n) {
  if (name == "I" || name == "none") return PauliOperator::identity(n);
  if (name.size() < 2 || (name[0] != 'X' && name[0] != 'Y' && name[0] != 'Z'))
    throw ParseError("bad error name '" + name + "' (expected e.g. Y2 or I)");
  const std::size_t q = std::stoul(name.substr(1));
  if (q >= n) throw ParseError("error name '" + name + "': qubit out of range");
  return PauliOperator::single(name[0], q, n);
}

struct Table1Report {
  bool pass = true;
  std::vector<std::string> mismatches;
};

// Compares a five-qubit table against the hard-coded reference rows.
inline Table1Report verify_table1(const SyndromeTable& table) {
  Table1Report report;
  if (table.code.n != 5 || table.code.g() != 4) {
    report.pass = false;
    report.mismatches.push_back("table is not for a [[5,1]] code");
    return report;
  }
  if (table.entries.size() != 16) {
    report.pass = false;
    report.mismatches.push_back("expected 16 entries, found " +
                                std::to_string(table.entries.size()));
  }
  for (const auto& [bits, name] : five_qubit_reference_rows()) {
    const Syndrome s = Syndrome::from_string(bits);
    const PauliOperator expected = pauli_from_name(name, 5);
    if (!table.has(s)) {
      report.pass = false;
      report.mismatches.push_back(std::string(bits) + ": missing");
      continue;
    }
    if (table.correction(s) != expected) {
      report.pass = false;
      report.mismatches.push_back(std::string(bits) + ": got " +
                                  format_notation(table.correction(s)) + ", expected " + name);
    }
  }
  return report;
}

}  // namespace ftec
