#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quditsim/bases.hpp"
#include "quditsim/states.hpp"
#include "quditsim/tensor.hpp"

// End-to-end teleportation: exact outcome enumeration, correction derivation,
// Born-rule sampling, fidelity scoring and transcripts.

namespace quditsim {

/// One measurement outcome of the joint (a, 1) measurement.
struct OutcomeRecord {
    int index = 0;    // position in basis order
    int class_m = 0;  // shift class of the measured vector
    int slot = 0;     // within-class position (phase label for Bell)
    double probability = 0.0;
    ComplexVec bob_conditional;  // normalized when probability > kDropTol
    bool designated = false;
};

/// Exact enumeration: project |psi>_a |Phi>_12 onto every basis vector over
/// sites (a, 1). Probabilities sum to 1. This is the brute-force oracle all
/// closed-form claims are checked against.
std::vector<OutcomeRecord> outcome_distribution(const UnknownQudit& input,
                                                const ResourceState& resource,
                                                const MeasurementBasis& basis);

/// Map from outcome index to a generalized Pauli correction; nullopt = FAIL.
struct CorrectionTable {
    int d = 0;
    std::vector<std::optional<PauliLabel>> entries;

    int corrected_count() const;
};

/// For each outcome, search all d^2 generalized Paulis and accept U when every
/// probe state comes back with fidelity >= 1 - 1e-9 after correction. Probes
/// are (probe_count - 2) Haar states plus |0> plus the uniform superposition.
/// Two distinct accepted Paulis signal a degenerate probe set; retried once
/// with fresh probes, then aborts.
CorrectionTable derive_correction_table(const ResourceState& resource,
                                        const MeasurementBasis& basis,
                                        int probe_count = 5, uint64_t seed = 1);

/// Classical message Alice sends: the outcome index, fitting ceil(2 log2 d) bits.
struct ClassicalMessage {
    int payload = 0;
    int width_bits = 0;
};

int message_width_bits(int d);

/// |<psi|phi>|^2; global-phase-insensitive. Both arguments normalized.
double fidelity(const ComplexVec& psi, const ComplexVec& phi);

/// One full protocol run.
struct Transcript {
    int d = 0;
    std::vector<double> lambdas;
    BasisKind basis_kind = BasisKind::bell;
    int outcome_index = 0;
    int outcome_m = 0;
    int outcome_slot = 0;
    bool designated = false;
    ClassicalMessage message;
    ComplexVec bob_final;  // corrected state, or the uncorrected conditional on FAIL
    double fidelity_value = 0.0;
    bool success = false;  // fidelity >= 1 - kEqTol and outcome designated
    uint64_t seed = 0;
    std::string rng;
};

/// Samples one outcome by the Born rule with the seeded generator, applies the
/// table's correction (FAIL leaves the conditional state uncorrected) and
/// scores fidelity against the input.
Transcript teleport(const UnknownQudit& input, const ResourceState& resource,
                    const MeasurementBasis& basis, const CorrectionTable& table,
                    uint64_t seed);

/// Input specification for repeated runs: a fixed state or a fresh Haar state
/// per trial.
struct InputSpec {
    bool haar = true;
    ComplexVec amplitudes;  // used when !haar

    static InputSpec random() { return {true, {}}; }
    static InputSpec fixed(ComplexVec a) { return {false, std::move(a)}; }
};

struct MonteCarloSummary {
    long trials = 0;
    long success_count = 0;
    double empirical_p = 0.0;
    double stderr_p = 0.0;  // sqrt(p(1-p)/trials)
    double mean_fidelity_on_success = 0.0;
};

/// Repeats teleport with per-trial seeds derived from the master seed.
/// Trials are independent; `workers` > 1 fans them out over threads with
/// results merged deterministically.
MonteCarloSummary run_monte_carlo(const InputSpec& input_spec, const ResourceState& resource,
                                  const MeasurementBasis& basis, const CorrectionTable& table,
                                  long trials, uint64_t seed, int workers = 1);

} // namespace quditsim
