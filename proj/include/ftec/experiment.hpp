#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftec/decode.hpp"
#include "ftec/encoding.hpp"
#include "ftec/extraction.hpp"
#include "ftec/noise.hpp"

namespace ftec {

// rng stream for one sweep trial, decorrelated by location index
inline Rng trial_rng(std::uint64_t master_seed, std::size_t index) {
  return Rng(master_seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
}

struct TrialResult {
  std::optional<FaultLocation> location;
  Syndrome confirmed;
  std::size_t rounds_used = 0;
  double fidelity = 0.0;
  std::string failure;  // empty on clean protocol completion

  bool recovered(double threshold) const { return failure.empty() && fidelity >= threshold; }
};

// One protocol run: (optionally faulty) extraction with repetition, the
// confirmed correction, then one ideal fault-free correction round; reports
// the final fidelity against the pre-error encoded state.
inline TrialResult run_protocol_trial(const StabilizerCode& code, const Circuit& clean,
                                      const SyndromeTable& table, const StateVector& original,
                                      const std::vector<Circuit>& overrides,
                                      std::size_t max_rounds, Rng& rng) {
  TrialResult result;
  StateVector state = original;
  try {
    const ConfirmedSyndrome confirmed =
        repeat_until_confirmed(state, clean, rng, max_rounds, overrides);
    result.confirmed = confirmed.syndrome;
    result.rounds_used = confirmed.rounds_used;
    decode_and_correct(state, table, confirmed.syndrome);
    // ideal round: one more fault-free extraction plus correction
    const ExtractionOutcome ideal = run_extraction(state, clean, rng);
    decode_and_correct(state, table, ideal.syndrome);
    result.fidelity = fidelity(state, original);
  } catch (const UnconfirmedError& e) {
    result.failure = std::string("unconfirmed: ") + e.what();
  } catch (const UncorrectableError& e) {
    result.failure = std::string("uncorrectable: ") + e.what();
  }
  return result;
}

inline TrialResult run_protocol_trial(const StabilizerCode& code, const Circuit& clean,
                                      const SyndromeTable& table, const StateVector& original,
                                      const std::optional<FaultLocation>& fault,
                                      std::size_t max_rounds, Rng& rng) {
  std::vector<Circuit> overrides;
  if (fault) overrides.push_back(inject(clean, *fault));
  TrialResult result = run_protocol_trial(code, clean, table, original, overrides, max_rounds, rng);
  result.location = fault;
  return result;
}

struct SweepResult {
  std::size_t total = 0;
  std::size_t recovered = 0;
  std::vector<TrialResult> failures;
  double worst_fidelity = 1.0;
};

// Exhaustive single-fault sweep over every location x Pauli kind.
inline SweepResult run_exhaustive_sweep(const StabilizerCode& code, const Circuit& clean,
                                        const SyndromeTable& table, const StateVector& original,
                                        std::size_t max_rounds, std::uint64_t seed,
                                        double threshold = 1.0 - 1e-9) {
  SweepResult sweep;
  const auto locations = enumerate_fault_locations(clean);
  for (std::size_t i = 0; i < locations.size(); ++i) {
    Rng rng = trial_rng(seed, i);
    const TrialResult trial =
        run_protocol_trial(code, clean, table, original, locations[i], max_rounds, rng);
    ++sweep.total;
    if (trial.failure.empty()) sweep.worst_fidelity = std::min(sweep.worst_fidelity, trial.fidelity);
    if (trial.recovered(threshold))
      ++sweep.recovered;
    else
      sweep.failures.push_back(trial);
  }
  return sweep;
}

// The ancilla phase fault the bare network cannot survive: Z on the stage-0
// ancilla between its second and third XOR gates.
inline FaultLocation bare_counterexample_location(const Circuit& bare) {
  const Stage& st = bare.stages.at(0);
  std::size_t xor_count = 0;
  for (std::size_t i = st.begin; i < st.end; ++i) {
    if (bare.gates[i].kind == GateKind::Xor && ++xor_count == 3)
      return {i, FaultTiming::before, st.ancillas.at(0), 'Z'};
  }
  throw std::logic_error("bare_counterexample_location: stage 0 has fewer than 3 XORs");
}

}  // namespace ftec
