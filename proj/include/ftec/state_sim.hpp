#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ftec/pauli.hpp"

namespace ftec {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

// Uniform in [0,1) from the raw engine; avoids distribution objects so the
// stream is identical across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct AncillaEntangledError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormUnderflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownQubitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDeterministicOutcomeTol = 1e-10;
inline constexpr double kPurityTol = 1e-10;

enum class GateKind { R, Rprime, PauliX, PauliY, PauliZ, Xor, PrepZero, PrepCat, Measure };

struct Gate {
  GateKind kind;
  std::vector<std::string> qubits;  // Xor: {control, target}
  std::string cbit;                 // Measure only

  static Gate one_qubit(GateKind k, std::string q) { return {k, {std::move(q)}, {}}; }
  static Gate xorgate(std::string control, std::string target) {
    return {GateKind::Xor, {std::move(control), std::move(target)}, {}};
  }
  static Gate prep_zero(std::string q) { return {GateKind::PrepZero, {std::move(q)}, {}}; }
  static Gate prep_cat(std::vector<std::string> qs) { return {GateKind::PrepCat, std::move(qs), {}}; }
  static Gate measure(std::string q, std::string cbit) {
    return {GateKind::Measure, {std::move(q)}, std::move(cbit)};
  }

  bool operator==(const Gate&) const = default;
};

inline const std::array<cplx, 4>& gate_matrix(GateKind k) {
  static const double s = 1.0 / std::sqrt(2.0);
  static const std::array<cplx, 4> R{s, s, s, -s};
  static const std::array<cplx, 4> RP{s, cplx(0, s), cplx(0, s), s};
  static const std::array<cplx, 4> X{0, 1, 1, 0};
  static const std::array<cplx, 4> Y{0, cplx(0, -1), cplx(0, 1), 0};
  static const std::array<cplx, 4> Z{1, 0, 0, -1};
  switch (k) {
    case GateKind::R: return R;
    case GateKind::Rprime: return RP;
    case GateKind::PauliX: return X;
    case GateKind::PauliY: return Y;
    case GateKind::PauliZ: return Z;
    default: throw std::invalid_argument("gate_matrix: not a one-qubit unitary");
  }
}

// Dense state vector over labeled qubits. The qubit at position i of
// `labels` maps to bit (m-1-i) of the amplitude index, so the first label is
// the leftmost bit of ket strings like |00010>.
class StateVector {
 public:
  std::vector<std::string> labels;
  std::vector<cplx> amps;

  StateVector() = default;

  // Basis state |bits> over data qubits labeled "0".."m-1".
  static StateVector basis(const std::string& bits) {
    StateVector s;
    for (std::size_t i = 0; i < bits.size(); ++i) s.labels.push_back(std::to_string(i));
    s.amps.assign(std::size_t{1} << bits.size(), cplx{});
    std::size_t idx = 0;
    for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
    s.amps[idx] = 1.0;
    return s;
  }

  std::size_t num_qubits() const { return labels.size(); }

  std::size_t position_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw UnknownQubitError("no qubit labeled '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }

  double norm_sq() const {
    double n = 0;
    for (const auto& a : amps) n += std::norm(a);
    return n;
  }

  void apply_one_qubit(const std::array<cplx, 4>& m, const std::string& label) {
    const std::size_t bit = labels.size() - 1 - position_of(label);
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        cplx& a0 = amps[base + off];
        cplx& a1 = amps[base + off + stride];
        const cplx t0 = m[0] * a0 + m[1] * a1;
        const cplx t1 = m[2] * a0 + m[3] * a1;
        a0 = t0;
        a1 = t1;
      }
    }
  }

  void apply_xor(const std::string& control, const std::string& target) {
    if (control == target) throw std::invalid_argument("XOR control equals target");
    const std::size_t cb = labels.size() - 1 - position_of(control);
    const std::size_t tb = labels.size() - 1 - position_of(target);
    const std::size_t cmask = std::size_t{1} << cb;
    const std::size_t tmask = std::size_t{1} << tb;
    for (std::size_t i = 0; i < amps.size(); ++i)
      if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
  }

  // Projective measurement in the computational basis. The outcome is forced
  // without consuming randomness when the alternative branch has probability
  // below the determinism threshold.
  int measure(const std::string& label, Rng& rng) {
    const std::size_t bit = labels.size() - 1 - position_of(label);
    const std::size_t mask = std::size_t{1} << bit;
    double p1 = 0;
    for (std::size_t i = 0; i < amps.size(); ++i)
      if (i & mask) p1 += std::norm(amps[i]);
    const double p0 = norm_sq() - p1;
    if (p0 < kDeterministicOutcomeTol && p1 < kDeterministicOutcomeTol)
      throw NormUnderflowError("measure: both outcome probabilities vanish");
    int outcome;
    if (p1 < kDeterministicOutcomeTol)
      outcome = 0;
    else if (p0 < kDeterministicOutcomeTol)
      outcome = 1;
    else
      outcome = uniform01(rng) < p1 ? 1 : 0;
    const double keep = outcome ? p1 : p0;
    const double scale = 1.0 / std::sqrt(keep);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (((i & mask) != 0) != (outcome == 1))
        amps[i] = 0;
      else
        amps[i] *= scale;
    }
    return outcome;
  }

  // Multiply by the dense operator of p, including its phase. Qubit i of p
  // acts on the label std::to_string(i).
  void apply_pauli(const PauliOperator& p) {
    static const cplx iphase[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
    for (std::size_t q = 0; q < p.num_qubits(); ++q) {
      if (p.has_x(q) && p.has_z(q))
        apply_one_qubit(gate_matrix(GateKind::PauliY), std::to_string(q));
      else if (p.has_x(q))
        apply_one_qubit(gate_matrix(GateKind::PauliX), std::to_string(q));
      else if (p.has_z(q))
        apply_one_qubit(gate_matrix(GateKind::PauliZ), std::to_string(q));
    }
    if (p.phase_power() != 0)
      for (auto& a : amps) a *= iphase[p.phase_power()];
  }

  // Tensor-extend with a fresh register in the given (normalized) state.
  void attach_ancilla(const std::vector<std::string>& new_labels, const std::vector<cplx>& init) {
    if (init.size() != std::size_t{1} << new_labels.size())
      throw DimensionError("attach_ancilla: init length mismatch");
    for (const auto& l : new_labels)
      if (std::find(labels.begin(), labels.end(), l) != labels.end())
        throw std::invalid_argument("attach_ancilla: duplicate label '" + l + "'");
    std::vector<cplx> out(amps.size() * init.size());
    for (std::size_t i = 0; i < amps.size(); ++i)
      for (std::size_t j = 0; j < init.size(); ++j) out[i * init.size() + j] = amps[i] * init[j];
    amps = std::move(out);
    labels.insert(labels.end(), new_labels.begin(), new_labels.end());
  }

  void attach_zero(const std::string& label) { attach_ancilla({label}, {1.0, 0.0}); }

  void attach_cat(const std::vector<std::string>& new_labels) {
    std::vector<cplx> init(std::size_t{1} << new_labels.size(), cplx{});
    const double s = 1.0 / std::sqrt(2.0);
    init.front() = s;
    init.back() = s;
    attach_ancilla(new_labels, init);
  }

  // Trace out a qubit that is in a product state with the rest (verified via
  // reduced-state purity); measured qubits always qualify.
  void discard_ancilla(const std::vector<std::string>& drop) {
    for (const auto& label : drop) {
      const std::size_t bit = labels.size() - 1 - position_of(label);
      const std::size_t mask = std::size_t{1} << bit;
      const std::size_t half = amps.size() / 2;
      std::vector<cplx> psi0(half), psi1(half);
      std::size_t w = 0;
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        psi0[w] = amps[i];
        psi1[w] = amps[i | mask];
        ++w;
      }
      double a = 0, d = 0;
      cplx b{};
      for (std::size_t i = 0; i < half; ++i) {
        a += std::norm(psi0[i]);
        d += std::norm(psi1[i]);
        b += std::conj(psi0[i]) * psi1[i];
      }
      const double purity = a * a + d * d + 2 * std::norm(b);
      if (purity < 1.0 - kPurityTol)
        throw AncillaEntangledError("discard_ancilla: qubit '" + label + "' is entangled");
      const std::vector<cplx>& keep = a >= d ? psi0 : psi1;
      const double scale = 1.0 / std::sqrt(std::max(a, d));
      amps.resize(half);
      for (std::size_t i = 0; i < half; ++i) amps[i] = keep[i] * scale;
      labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(labels.size() - 1 - bit));
    }
  }

  // One line per nonzero amplitude: "|bits> re im", sorted by basis label.
  std::string dump() const {
    std::ostringstream out;
    out.precision(15);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (std::abs(amps[i]) < 1e-12) continue;
      out << "|";
      for (std::size_t q = 0; q < labels.size(); ++q)
        out << ((i >> (labels.size() - 1 - q)) & 1);
      out << "> " << amps[i].real() << " " << amps[i].imag() << "\n";
    }
    return out.str();
  }
};

// Applies a gate; returns the measurement outcome for Measure gates.
inline std::optional<int> apply_gate(StateVector& state, const Gate& gate, Rng& rng) {
  switch (gate.kind) {
    case GateKind::R:
    case GateKind::Rprime:
    case GateKind::PauliX:
    case GateKind::PauliY:
    case GateKind::PauliZ:
      state.apply_one_qubit(gate_matrix(gate.kind), gate.qubits[0]);
      return std::nullopt;
    case GateKind::Xor:
      state.apply_xor(gate.qubits[0], gate.qubits[1]);
      return std::nullopt;
    case GateKind::PrepZero:
      state.attach_zero(gate.qubits[0]);
      return std::nullopt;
    case GateKind::PrepCat:
      state.attach_cat(gate.qubits);
      return std::nullopt;
    case GateKind::Measure:
      return state.measure(gate.qubits[0], rng);
  }
  throw std::logic_error("apply_gate: unreachable");
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.labels != b.labels) throw DimensionError("inner_product: qubit labels differ");
  cplx acc{};
  for (std::size_t i = 0; i < a.amps.size(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

enum class Presentation { C, S };

namespace detail {

// The sixteen signed basis strings of each five-qubit code word.
inline const std::vector<std::pair<const char*, int>>& codeword_terms(int which) {
  static const std::vector<std::pair<const char*, int>> c0 = {
      {"00000", +1},
      {"11000", +1}, {"01100", +1}, {"00110", +1}, {"00011", +1}, {"10001", +1},
      {"10100", -1}, {"01010", -1}, {"00101", -1}, {"10010", -1}, {"01001", -1},
      {"11110", -1}, {"01111", -1}, {"10111", -1}, {"11011", -1}, {"11101", -1}};
  static const std::vector<std::pair<const char*, int>> c1 = {
      {"11111", +1},
      {"00111", +1}, {"10011", +1}, {"11001", +1}, {"11100", +1}, {"01110", +1},
      {"01011", -1}, {"10101", -1}, {"11010", -1}, {"01101", -1}, {"10110", -1},
      {"00001", -1}, {"10000", -1}, {"01000", -1}, {"00100", -1}, {"00010", -1}};
  return which == 0 ? c0 : c1;
}

inline StateVector codeword(int which) {
  StateVector s = StateVector::basis("00000");
  s.amps.assign(32, cplx{});
  for (const auto& [bits, sign] : codeword_terms(which)) {
    std::size_t idx = 0;
    for (const char* p = bits; *p; ++p) idx = (idx << 1) | (*p == '1' ? 1 : 0);
    s.amps[idx] = sign * 0.25;
  }
  return s;
}

}  // namespace detail

// Encodes alpha|0> + beta|1> into the five-qubit code. Presentation C uses
// the code words directly; presentation S codes |0> as (|c0>+|c1>)/sqrt(2)
// and |1> as (|c0>-|c1>)/sqrt(2).
inline StateVector encode_logical(cplx alpha, cplx beta, Presentation pres) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10)
    throw std::invalid_argument("encode_logical: (alpha, beta) not normalized");
  const StateVector c0 = detail::codeword(0);
  const StateVector c1 = detail::codeword(1);
  StateVector out = c0;
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < 32; ++i) {
    if (pres == Presentation::C)
      out.amps[i] = alpha * c0.amps[i] + beta * c1.amps[i];
    else
      out.amps[i] = alpha * s * (c0.amps[i] + c1.amps[i]) + beta * s * (c0.amps[i] - c1.amps[i]);
  }
  return out;
}

}  // namespace ftec
