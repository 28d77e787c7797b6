#include "quditsim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "quditsim/bases.hpp"
#include "quditsim/protocol.hpp"
#include "quditsim/rng.hpp"

namespace quditsim {

double success_probability_exact(const ResourceState& resource) {
    if (!resource.full_rank)
        throw rank_error("protocol requires full Schmidt rank");
    double inv_sum = 0.0;
    for (double l : resource.lambdas) inv_sum += 1.0 / l;
    return resource.d / inv_sum;
}

double success_probability_qubit(cx n) {
    const double n2 = std::norm(n);
    if (n2 < 1e-300)
        throw rank_error("unentangled resource: teleportation with unit fidelity is impossible");
    const double denom = 1.0 + n2;
    return 2.0 * n2 / (denom * denom);
}

double repetitions(const ResourceState& resource) {
    return 1.0 / success_probability_exact(resource);
}

EntanglementComparison entanglement_comparison(const ResourceState& resource,
                                               std::span<const int> l_choice) {
    if (!resource.full_rank)
        throw rank_error("protocol requires full Schmidt rank");
    const int d = resource.d;
    std::vector<int> choice(l_choice.begin(), l_choice.end());
    if (choice.empty()) choice.assign(d, 0);

    EntanglementComparison cmp;
    cmp.resource_bits = entanglement_entropy(resource.lambdas);
    cmp.matches = true;
    const auto designated = qudit_nme_designated(resource, choice);
    for (const BasisVector& v : designated) {
        // Schmidt spectrum of a designated vector is the normalized inverse
        // spectrum N^2 / |c_{j+m}|^2; read it off the ket directly.
        std::vector<double> spectrum;
        spectrum.reserve(d);
        for (const cx& a : v.ket)
            if (std::norm(a) > 0.0) spectrum.push_back(std::norm(a));
        const double bits = entanglement_entropy(spectrum);
        cmp.designated_bits.push_back(bits);
        if (std::abs(bits - cmp.resource_bits) > kEqTol) cmp.matches = false;
    }
    return cmp;
}

SweepFamily sweep_family_from_string(const std::string& name) {
    if (name == "qubit-n") return SweepFamily::qubit_n;
    if (name == "dirichlet-random") return SweepFamily::dirichlet_random;
    if (name == "two-level-qudit") return SweepFamily::two_level_qudit;
    throw std::invalid_argument("unknown sweep family: " + name);
}

std::string to_string(SweepFamily family) {
    switch (family) {
        case SweepFamily::qubit_n: return "qubit-n";
        case SweepFamily::dirichlet_random: return "dirichlet-random";
        case SweepFamily::two_level_qudit: return "two-level-qudit";
    }
    return "unknown";
}

namespace {

std::vector<ResourceState> sweep_grid(SweepFamily family, int d, int points, uint64_t seed) {
    std::vector<ResourceState> grid;
    grid.reserve(points);
    switch (family) {
        case SweepFamily::qubit_n: {
            // |n| log-spaced in [0.05, 1]; the last grid point is exactly 1.
            const double log_start = std::log(0.05);
            for (int i = 0; i < points; ++i) {
                const double t = points == 1 ? 1.0 : static_cast<double>(i) / (points - 1);
                const double n = std::exp(log_start * (1.0 - t));
                grid.push_back(resource_from_qubit_n(n));
            }
            break;
        }
        case SweepFamily::two_level_qudit: {
            // lambda = (1-(d-1)eps, eps, ..., eps), eps from 0.01 up to uniform 1/d
            const double eps_min = 0.01;
            const double eps_max = 1.0 / d;
            for (int i = 0; i < points; ++i) {
                const double t = points == 1 ? 1.0 : static_cast<double>(i) / (points - 1);
                const double eps = eps_min + (eps_max - eps_min) * t;
                std::vector<double> lambdas(d, eps);
                lambdas[0] = 1.0 - (d - 1) * eps;
                grid.push_back(resource_from_lambdas(std::move(lambdas)));
            }
            break;
        }
        case SweepFamily::dirichlet_random: {
            for (int i = 0; i < points; ++i) {
                Rng rng(derive_seed(seed, static_cast<uint64_t>(i)));
                std::vector<double> lambdas(d);
                while (true) {
                    double total = 0.0;
                    for (double& l : lambdas) {
                        l = -std::log(1.0 - rng.uniform01());  // Exp(1) => flat Dirichlet
                        total += l;
                    }
                    double min_l = 1.0;
                    for (double& l : lambdas) {
                        l /= total;
                        min_l = std::min(min_l, l);
                    }
                    if (min_l >= 1e-3) break;  // keep spectra comfortably full rank
                }
                grid.push_back(resource_from_lambdas(std::move(lambdas)));
            }
            break;
        }
    }
    return grid;
}

} // namespace

std::vector<SweepRow> sweep(SweepFamily family, int d, int points, long trials,
                            uint64_t seed, int workers) {
    if (points < 1) throw std::invalid_argument("sweep: points must be >= 1");
    if (family == SweepFamily::qubit_n) d = 2;
    if (d < 2) throw std::invalid_argument("sweep: d must be >= 2");

    const auto grid = sweep_grid(family, d, points, seed);
    std::vector<SweepRow> rows(grid.size());

    auto run_row = [&](size_t i) {
        const ResourceState& resource = grid[i];
        const MeasurementBasis basis = nme_basis(resource);
        const CorrectionTable table =
            derive_correction_table(resource, basis, 5, derive_seed(seed, 1000003 + i));
        const MonteCarloSummary mc =
            run_monte_carlo(InputSpec::random(), resource, basis, table, trials,
                            derive_seed(seed, 2000003 + i));
        SweepRow row;
        row.d = resource.d;
        row.lambdas = resource.lambdas;
        row.entropy_bits = entanglement_entropy(resource.lambdas);
        row.p_succ_exact = success_probability_exact(resource);
        row.p_succ_mc = mc.empirical_p;
        row.mc_stderr = mc.stderr_p;
        row.repetitions_r = repetitions(resource);
        row.basis_entropy_bits = entanglement_comparison(resource).designated_bits.front();
        rows[i] = std::move(row);
    };

    const int pool = static_cast<int>(std::clamp<size_t>(workers, 1, grid.size()));
    if (pool <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) run_row(i);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(pool);
        std::atomic<size_t> next{0};
        for (int w = 0; w < pool; ++w)
            threads.emplace_back([&, w]() {
                try {
                    for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                        run_row(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (std::thread& th : threads) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return rows;
}

} // namespace quditsim
