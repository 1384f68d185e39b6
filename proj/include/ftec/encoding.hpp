#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "ftec/pauli.hpp"
#include "ftec/stab_code.hpp"
#include "ftec/state_sim.hpp"

namespace ftec {

// Projects onto the joint +1 eigenspace of the signed generators and
// renormalizes; throws if the input has (numerically) no component there.
inline void project_code_space(StateVector& state, const StabilizerCode& code) {
  for (std::size_t j = 0; j < code.g(); ++j) {
    StateVector rotated = state;
    rotated.apply_pauli(code.generators[j]);
    const double sign = code.signs[j] > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < state.amps.size(); ++i)
      state.amps[i] = 0.5 * (state.amps[i] + sign * rotated.amps[i]);
  }
  const double n = state.norm_sq();
  if (n < 1e-12)
    throw NormUnderflowError("project_code_space: state orthogonal to the code space");
  const double s = 1.0 / std::sqrt(n);
  for (auto& a : state.amps) a *= s;
}

// Haar-random qubit amplitudes.
inline std::pair<cplx, cplx> haar_qubit(Rng& rng) {
  auto gauss = [&rng]() {
    const double u = std::max(uniform01(rng), 1e-300);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * cplx(std::cos(2 * M_PI * v), std::sin(2 * M_PI * v));
  };
  cplx a = gauss(), b = gauss();
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

inline bool is_five_qubit_code(const StabilizerCode& code) {
  return code.n == 5 && code.g() == 4 &&
         code.generators[0] == parse_notation("X(11000)Z(00101)");
}

inline bool is_steane_code(const StabilizerCode& code) {
  if (code.n != 7 || code.g() != 6) return false;
  for (const auto& g : code.generators)
    if (!g.x_mask().none() && !g.z_mask().none()) return false;
  return true;
}

// Encodes alpha|0> + beta|1> for the builtin codes. The five-qubit code uses
// its symmetric-presentation code words; the Steane code builds |0_L> by
// projecting |0000000> onto the code space (it is already a +1 eigenstate of
// every Z generator and of logical Z = Z^x7) and gets |1_L> via the
// transversal logical X = X^x7.
inline StateVector encode_on_code(const StabilizerCode& code, cplx alpha, cplx beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10)
    throw std::invalid_argument("encode_on_code: (alpha, beta) not normalized");
  if (is_five_qubit_code(code)) return encode_logical(alpha, beta, Presentation::S);
  if (is_steane_code(code)) {
    StateVector zero = StateVector::basis("0000000");
    project_code_space(zero, code);
    StateVector one = zero;
    PauliOperator logical_x(7);
    for (std::size_t i = 0; i < 7; ++i) logical_x.set_x(i, true);
    one.apply_pauli(logical_x);
    StateVector out = zero;
    for (std::size_t i = 0; i < out.amps.size(); ++i)
      out.amps[i] = alpha * zero.amps[i] + beta * one.amps[i];
    return out;
  }
  throw std::invalid_argument("encode_on_code: no logical basis known for this code");
}

// A Haar-ish random code-space state for arbitrary codes: random product
// state projected onto the code space.
inline StateVector random_code_state(const StabilizerCode& code, Rng& rng) {
  std::string zeros(code.n, '0');
  StateVector state = StateVector::basis(zeros);
  for (std::size_t i = 0; i < state.amps.size(); ++i) {
    const double u = std::max(uniform01(rng), 1e-300);
    const double v = uniform01(rng);
    state.amps[i] =
        std::sqrt(-2.0 * std::log(u)) * cplx(std::cos(2 * M_PI * v), std::sin(2 * M_PI * v));
  }
  const double s = 1.0 / std::sqrt(state.norm_sq());
  for (auto& a : state.amps) a *= s;
  project_code_space(state, code);
  return state;
}

}  // namespace ftec
