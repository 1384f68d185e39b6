#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ftec/pauli.hpp"

namespace ftec {

struct NonCommutingError : std::runtime_error {
  std::size_t i, j;
  NonCommutingError(std::size_t i_, std::size_t j_)
      : std::runtime_error("generators " + std::to_string(i_) + " and " +
                           std::to_string(j_) + " anticommute"),
        i(i_), j(j_) {}
};

struct DependentError : std::runtime_error {
  std::size_t i;
  explicit DependentError(std::size_t i_)
      : std::runtime_error("generator " + std::to_string(i_) +
                           " is a product of earlier generators"),
        i(i_) {}
};

// Syndrome bit vector, one bit per generator, in generator order.
struct Syndrome {
  BitVec bits;

  Syndrome() = default;
  explicit Syndrome(std::size_t g) : bits(g) {}

  std::size_t size() const { return bits.size(); }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < bits.size(); ++i) s += bits.get(i) ? '1' : '0';
    return s;
  }

  static Syndrome from_string(const std::string& s) {
    Syndrome y(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') throw ParseError("Syndrome: bad bit string '" + s + "'");
      y.bits.set(i, s[i] == '1');
    }
    return y;
  }

  std::uint64_t key() const { return bits.to_ullong(); }

  bool operator==(const Syndrome& o) const { return bits == o.bits; }
  bool operator!=(const Syndrome& o) const { return !(*this == o); }
};

namespace detail {

// Incremental GF(2) row reduction over concatenated (x|z) rows.
class Gf2Basis {
 public:
  // Returns false if the row is dependent on the rows already inserted.
  bool insert(BitVec x, BitVec z) {
    for (const auto& [px, pz] : rows_) {
      const std::size_t p = pivot(px, pz);
      if (get(x, z, p)) {
        x ^= px;
        z ^= pz;
      }
    }
    if (x.none() && z.none()) return false;
    rows_.emplace_back(std::move(x), std::move(z));
    normalize_last();
    return true;
  }

  // Phase-free membership: is (x|z) in the span of the inserted rows?
  bool contains(BitVec x, BitVec z) const {
    for (const auto& [px, pz] : rows_) {
      const std::size_t p = pivot(px, pz);
      if (get(x, z, p)) {
        x ^= px;
        z ^= pz;
      }
    }
    return x.none() && z.none();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  static bool get(const BitVec& x, const BitVec& z, std::size_t p) {
    return p < x.size() ? x.get(p) : z.get(p - x.size());
  }

  static std::size_t pivot(const BitVec& x, const BitVec& z) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x.get(i)) return i;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z.get(i)) return x.size() + i;
    return 2 * x.size();
  }

  void normalize_last() {
    // Keep earlier rows clear at the new pivot so pivots stay unique.
    auto& [nx, nz] = rows_.back();
    const std::size_t p = pivot(nx, nz);
    for (std::size_t r = 0; r + 1 < rows_.size(); ++r) {
      auto& [rx, rz] = rows_[r];
      if (get(rx, rz, p)) {
        rx ^= nx;
        rz ^= nz;
      }
    }
  }

  std::vector<std::pair<BitVec, BitVec>> rows_;
};

}  // namespace detail

// A stabilizer code: g independent, pairwise-commuting signed generators on
// n qubits; k = n - g logical qubits; t the claimed correctable weight.
struct StabilizerCode {
  std::size_t n = 0;
  std::vector<PauliOperator> generators;
  std::vector<int> signs;  // +1 or -1, one per generator
  std::size_t t = 0;

  std::size_t g() const { return generators.size(); }
  std::size_t k() const { return n - g(); }

  // Phase-free membership in the stabilizer group.
  bool contains(const PauliOperator& p) const {
    detail::Gf2Basis basis;
    for (const auto& gen : generators) basis.insert(gen.x_mask(), gen.z_mask());
    return basis.contains(p.x_mask(), p.z_mask());
  }
};

inline StabilizerCode validate(const std::vector<PauliOperator>& generators,
                               std::size_t n, std::size_t t = 1,
                               std::vector<int> signs = {}) {
  for (const auto& gen : generators)
    if (gen.num_qubits() != n) throw DimensionError("validate: generator length != n");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (symplectic_product(generators[i], generators[j]) != 0)
        throw NonCommutingError(i, j);
  detail::Gf2Basis basis;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (!basis.insert(generators[i].x_mask(), generators[i].z_mask()))
      throw DependentError(i);
  StabilizerCode code;
  code.n = n;
  code.generators = generators;
  code.signs = signs.empty() ? std::vector<int>(generators.size(), +1) : std::move(signs);
  code.t = t;
  return code;
}

// The five-qubit perfect code in the cyclic-symmetric presentation.
// Generators are X(11000)Z(00101) and its cyclic right-shifts by 1..3, in
// that order; with this ordering the four syndrome bits read out as
// (M_3, M_4, M_0, M_1) and match the reference correction table row for row
// (the ordering was fixed by an exhaustive search, kept as a test).
inline StabilizerCode five_qubit_code() {
  auto shift = [](const PauliOperator& p, std::size_t s) {
    PauliOperator r(p.num_qubits());
    const std::size_t n = p.num_qubits();
    for (std::size_t i = 0; i < n; ++i) {
      r.set_x((i + s) % n, p.has_x(i));
      r.set_z((i + s) % n, p.has_z(i));
    }
    return r;
  };
  const PauliOperator g0 = parse_notation("X(11000)Z(00101)");
  std::vector<PauliOperator> gens;
  for (std::size_t s = 0; s < 4; ++s) gens.push_back(shift(g0, s));
  return validate(gens, 5, 1);
}

// The Steane [[7,1,3]] code: three pure-Z and three pure-X generators built
// from the [7,4] Hamming parity-check rows, Z-type first.
inline StabilizerCode steane_code() {
  const char* rows[3] = {"1010101", "0110011", "0001111"};
  std::vector<PauliOperator> gens;
  for (int type = 0; type < 2; ++type) {
    for (const char* row : rows) {
      PauliOperator p(7);
      for (std::size_t i = 0; i < 7; ++i) {
        if (row[i] == '1') {
          if (type == 0)
            p.set_z(i, true);
          else
            p.set_x(i, true);
        }
      }
      gens.push_back(p);
    }
  }
  return validate(gens, 7, 1);
}

// Brute-force anticommutation syndrome; the oracle every circuit-extracted
// syndrome must reproduce.
inline Syndrome syndrome_of_pauli(const StabilizerCode& code, const PauliOperator& p) {
  if (p.num_qubits() != code.n) throw DimensionError("syndrome_of_pauli: length mismatch");
  Syndrome s(code.g());
  for (std::size_t j = 0; j < code.g(); ++j)
    s.bits.set(j, symplectic_product(p, code.generators[j]) != 0);
  return s;
}

// All phase-free Pauli errors of weight <= t built from the given factor
// kinds, identity first, in the deterministic (weight, masks) order.
inline std::vector<PauliOperator> enumerate_errors(std::size_t n, std::size_t t,
                                                   const std::string& kinds = "XYZ") {
  std::vector<PauliOperator> out;
  std::vector<std::size_t> support;
  const std::string kind_choices = kinds;
  auto emit = [&](auto&& self, std::size_t next) -> void {
    {
      // all kind assignments over the chosen support
      std::vector<char> kinds(support.size(), 'X');
      auto assign = [&](auto&& rec, std::size_t d) -> void {
        if (d == support.size()) {
          PauliOperator q(n);
          for (std::size_t i = 0; i < support.size(); ++i) {
            q.set_x(support[i], kinds[i] == 'X' || kinds[i] == 'Y');
            q.set_z(support[i], kinds[i] == 'Z' || kinds[i] == 'Y');
          }
          out.push_back(q);
          return;
        }
        for (char c : kind_choices) {
          kinds[d] = c;
          rec(rec, d + 1);
        }
      };
      if (!support.empty()) assign(assign, 0);
    }
    if (support.size() == t) return;
    for (std::size_t q = next; q < n; ++q) {
      support.push_back(q);
      self(self, q + 1);
      support.pop_back();
    }
  };
  out.push_back(PauliOperator::identity(n));
  emit(emit, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct SyndromeCollision {
  PauliOperator a, b;
  Syndrome syndrome;
  bool stabilizer_equivalent;  // a*b lies in the stabilizer group
};

struct DistinctSyndromeReport {
  std::size_t num_errors = 0;
  std::size_t num_distinct = 0;
  std::vector<SyndromeCollision> collisions;
  bool all_distinct() const { return collisions.empty(); }
  bool distinct_up_to_stabilizer() const {
    for (const auto& c : collisions)
      if (!c.stabilizer_equivalent) return false;
    return true;
  }
};

inline DistinctSyndromeReport distinct_syndrome_check(const StabilizerCode& code) {
  DistinctSyndromeReport report;
  std::map<std::uint64_t, PauliOperator> seen;
  for (const auto& err : enumerate_errors(code.n, code.t)) {
    ++report.num_errors;
    const Syndrome s = syndrome_of_pauli(code, err);
    auto [it, fresh] = seen.emplace(s.key(), err);
    if (fresh) {
      ++report.num_distinct;
    } else {
      const PauliOperator prod = multiply(it->second, err);
      report.collisions.push_back({it->second, err, s, code.contains(prod)});
    }
  }
  return report;
}

// Code file format: line 1 "n=<int> k=<int> t=<int>", then one generator per
// line in X(...)Z(...) notation with an optional leading '-' sign.
inline StabilizerCode parse_code_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("code file: missing header line");
  std::size_t n = 0, k = 0, t = 0;
  if (std::sscanf(line.c_str(), "n=%zu k=%zu t=%zu", &n, &k, &t) != 3)
    throw ParseError("code file: bad header '" + line + "'");
  std::vector<PauliOperator> gens;
  std::vector<int> signs;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    int sign = +1;
    std::string body = line;
    if (body[0] == '-') {
      sign = -1;
      body = body.substr(1);
    }
    gens.push_back(parse_notation(body));
    signs.push_back(sign);
  }
  StabilizerCode code = validate(gens, n, t, signs);
  if (code.k() != k)
    throw ParseError("code file: header claims k=" + std::to_string(k) +
                     " but generators give k=" + std::to_string(code.k()));
  return code;
}

inline std::string format_code_file(const StabilizerCode& code) {
  std::ostringstream out;
  out << "n=" << code.n << " k=" << code.k() << " t=" << code.t << "\n";
  for (std::size_t j = 0; j < code.g(); ++j) {
    if (code.signs[j] < 0) out << "-";
    out << format_notation(code.generators[j]) << "\n";
  }
  return out.str();
}

}  // namespace ftec
