#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "quditsim/tensor.hpp"

// Resource states, unknown input states, generalized Pauli operators and
// entanglement entropy.

namespace quditsim {

/// Raised when a protocol step needs a full-Schmidt-rank resource.
class rank_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The qudit to be teleported: |psi> = sum_k a_k |k>, normalized.
struct UnknownQudit {
    int d = 0;
    ComplexVec amplitudes;

    /// Validates the norm within kInputTol, then renormalizes exactly.
    static UnknownQudit from_amplitudes(ComplexVec a);
};

/// Haar-distributed pure state: d independent standard complex Gaussians,
/// normalized. Deterministic for a fixed seed.
UnknownQudit random_unknown_state(int d, uint64_t seed);

/// Bipartite entangled pair in Schmidt form:
///   |Phi> = D sum_j c_j |j>|j>,  D = 1/sqrt(sum |c_j|^2),  lambda_j = D^2 |c_j|^2.
struct ResourceState {
    int d = 0;
    ComplexVec coeffs;            // c_j, general complex
    double norm_const = 0.0;      // D
    std::vector<double> lambdas;  // Schmidt spectrum, sums to 1
    bool full_rank = false;       // min lambda > 1e-12

    /// The two-qudit ket D sum_j c_j |j>|j> (dimension d^2).
    ComplexVec ket() const;
};

ResourceState make_resource(int d, ComplexVec coeffs);

/// Canonical spectrum input: c_j = sqrt(lambda_j), D = 1.
/// The spectrum is normalized to sum 1; entries must be non-negative.
ResourceState resource_from_lambdas(std::vector<double> lambdas);

/// The qubit pair N (|00> + n |11>) as the d = 2 instance (1, n).
ResourceState resource_from_qubit_n(cx n);

/// Phase index n and shift index m of a generalized Pauli, both in 0..d-1.
struct PauliLabel {
    int n = 0;
    int m = 0;
    bool operator==(const PauliLabel&) const = default;
};

/// U_nm = sum_k exp(2 pi i n k / d) |k><k + m mod d|.
/// U_00 is the identity; Tr(U_nm^dag U_lp) = d delta_nl delta_mp.
ComplexMat generalized_pauli(PauliLabel label, int d);

/// Von Neumann entropy -sum lambda log2 lambda in bits, with 0 log 0 = 0.
/// The spectrum must be non-negative and sum to 1 within kInputTol.
double entanglement_entropy(std::span<const double> lambdas);

} // namespace quditsim
