#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quditsim/states.hpp"

// Closed-form success probabilities, entanglement accounting, repetition
// counts, and resource sweeps.

namespace quditsim {

/// Total heralded success probability P = d / sum_k (1/lambda_k).
/// Requires a full-rank resource; equals d times the per-outcome probability.
double success_probability_exact(const ResourceState& resource);

/// Qubit closed form 2|n|^2 / (1 + |n|^2)^2 for the resource N(|00> + n|11>).
/// Maximized at |n| = 1 with value 1/2; n = 0 is an unentangled resource and
/// rejected.
double success_probability_qubit(cx n);

/// Expected repetitions R = 1/P until a heralded success.
double repetitions(const ResourceState& resource);

struct EntanglementComparison {
    double resource_bits = 0.0;
    std::vector<double> designated_bits;  // one entry per class m
    bool matches = false;                 // all equal to resource_bits within kEqTol
};

/// Entropy of the shared resource vs the designated measurement vectors
/// (whose Schmidt spectrum is the normalized inverse spectrum). The two agree
/// for every qubit resource and generically differ for d >= 3.
EntanglementComparison entanglement_comparison(const ResourceState& resource,
                                               std::span<const int> l_choice = {});

enum class SweepFamily { qubit_n, dirichlet_random, two_level_qudit };

SweepFamily sweep_family_from_string(const std::string& name);
std::string to_string(SweepFamily family);

struct SweepRow {
    int d = 0;
    std::vector<double> lambdas;
    double entropy_bits = 0.0;
    double p_succ_exact = 0.0;
    double p_succ_mc = 0.0;
    double mc_stderr = 0.0;
    double repetitions_r = 0.0;
    double basis_entropy_bits = 0.0;
};

/// Deterministic resource grids with exact and Monte Carlo columns:
///   qubit_n          |n| log-spaced in [0.05, 1] (endpoint exactly 1)
///   two_level_qudit  lambda = (1-(d-1)eps, eps, ..., eps), eps gridded up to 1/d
///   dirichlet_random seeded flat-Dirichlet spectra (min lambda kept >= 1e-3)
std::vector<SweepRow> sweep(SweepFamily family, int d, int points, long trials,
                            uint64_t seed, int workers = 1);

} // namespace quditsim
