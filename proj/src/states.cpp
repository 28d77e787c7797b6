#include "quditsim/states.hpp"

#include <cmath>
#include <numbers>

#include "quditsim/rng.hpp"

namespace quditsim {

namespace {
constexpr double kRankTol = 1e-12;

cx phase_root(int numerator, int d) {
    // exp(2 pi i numerator / d)
    const double angle = 2.0 * std::numbers::pi * numerator / d;
    return std::polar(1.0, angle);
}
} // namespace

UnknownQudit UnknownQudit::from_amplitudes(ComplexVec a) {
    if (a.empty()) throw std::invalid_argument("UnknownQudit: empty amplitude list");
    const double n2 = sq_norm(a);
    if (std::abs(n2 - 1.0) > kInputTol)
        throw std::invalid_argument("UnknownQudit: amplitudes not normalized");
    const double n = std::sqrt(n2);
    for (cx& x : a) x /= n;
    return {static_cast<int>(a.size()), std::move(a)};
}

UnknownQudit random_unknown_state(int d, uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_unknown_state: d must be >= 2");
    Rng rng(seed);
    ComplexVec a(d);
    for (cx& x : a) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        x = {re, im};
    }
    return {d, normalized(std::move(a))};
}

ComplexVec ResourceState::ket() const {
    ComplexVec out(static_cast<size_t>(d) * d);
    for (int j = 0; j < d; ++j) out[static_cast<size_t>(j) * d + j] = norm_const * coeffs[j];
    return out;
}

ResourceState make_resource(int d, ComplexVec coeffs) {
    if (d < 2) throw std::invalid_argument("make_resource: d must be >= 2");
    if (static_cast<int>(coeffs.size()) != d)
        throw std::invalid_argument("make_resource: coefficient count must equal d");
    const double total = sq_norm(coeffs);
    if (total < kDropTol) throw std::invalid_argument("make_resource: all-zero coefficients");

    ResourceState r;
    r.d = d;
    r.coeffs = std::move(coeffs);
    r.norm_const = 1.0 / std::sqrt(total);
    r.lambdas.resize(d);
    double min_lambda = 1.0;
    for (int j = 0; j < d; ++j) {
        r.lambdas[j] = std::norm(r.coeffs[j]) / total;
        min_lambda = std::min(min_lambda, r.lambdas[j]);
    }
    r.full_rank = min_lambda > kRankTol;
    return r;
}

ResourceState resource_from_lambdas(std::vector<double> lambdas) {
    const int d = static_cast<int>(lambdas.size());
    if (d < 2) throw std::invalid_argument("resource_from_lambdas: need at least two entries");
    double total = 0.0;
    for (double l : lambdas) {
        if (l < 0.0) throw std::invalid_argument("resource_from_lambdas: negative entry");
        total += l;
    }
    if (total < kDropTol) throw std::invalid_argument("resource_from_lambdas: all-zero spectrum");
    ComplexVec coeffs(d);
    for (int j = 0; j < d; ++j) coeffs[j] = std::sqrt(lambdas[j] / total);
    return make_resource(d, std::move(coeffs));
}

ResourceState resource_from_qubit_n(cx n) {
    return make_resource(2, {cx{1.0, 0.0}, n});
}

ComplexMat generalized_pauli(PauliLabel label, int d) {
    if (d < 2) throw std::invalid_argument("generalized_pauli: d must be >= 2");
    if (label.n < 0 || label.n >= d || label.m < 0 || label.m >= d)
        throw std::invalid_argument("generalized_pauli: label out of range");
    ComplexMat u(d, d);
    for (int k = 0; k < d; ++k) u.at(k, (k + label.m) % d) = phase_root(label.n * k % d, d);
    return u;
}

double entanglement_entropy(std::span<const double> lambdas) {
    double total = 0.0;
    for (double l : lambdas) {
        if (l < -kInputTol) throw std::invalid_argument("entanglement_entropy: negative weight");
        total += l;
    }
    if (std::abs(total - 1.0) > kInputTol)
        throw std::invalid_argument("entanglement_entropy: spectrum does not sum to 1");
    double bits = 0.0;
    for (double l : lambdas)
        if (l > 0.0) bits -= l * std::log2(l);
    return std::max(bits, 0.0);
}

} // namespace quditsim
