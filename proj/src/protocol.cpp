#include "quditsim/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <thread>

#include "quditsim/rng.hpp"

namespace quditsim {

namespace {
constexpr double kCorrectionFidelityTol = 1e-9;
} // namespace

std::vector<OutcomeRecord> outcome_distribution(const UnknownQudit& input,
                                                const ResourceState& resource,
                                                const MeasurementBasis& basis) {
    const int d = input.d;
    if (resource.d != d || basis.d != d)
        throw std::invalid_argument("outcome_distribution: dimension mismatch");

    // Joint state on (a, 1, 2): index layout t * d + r with t the flat (a, 1)
    // pair and r Bob's site.
    const ComplexVec joint = kron(input.amplitudes, resource.ket());
    const long pair_dim = static_cast<long>(d) * d;

    std::vector<OutcomeRecord> records;
    records.reserve(basis.vectors.size());
    std::vector<int> slot_of_class(d, 0);
    for (int index = 0; index < static_cast<int>(basis.vectors.size()); ++index) {
        const BasisVector& bv = basis.vectors[index];
        OutcomeRecord rec;
        rec.index = index;
        rec.class_m = bv.class_m;
        rec.slot = slot_of_class[bv.class_m]++;
        rec.designated = bv.designated;

        ComplexVec amp(d);
        for (long t = 0; t < pair_dim; ++t) {
            const cx w = std::conj(bv.ket[t]);
            if (w == cx{}) continue;
            const long base = t * d;
            for (int r = 0; r < d; ++r) amp[r] += w * joint[base + r];
        }
        rec.probability = sq_norm(amp);
        if (rec.probability > kDropTol) {
            const double n = std::sqrt(rec.probability);
            for (cx& a : amp) a /= n;
            rec.bob_conditional = std::move(amp);
        } else {
            rec.bob_conditional.assign(d, cx{});
        }
        records.push_back(std::move(rec));
    }
    return records;
}

int CorrectionTable::corrected_count() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](const auto& e) { return e.has_value(); }));
}

namespace {

CorrectionTable derive_once(const ResourceState& resource, const MeasurementBasis& basis,
                            int probe_count, uint64_t seed, bool& degenerate) {
    const int d = resource.d;
    std::vector<UnknownQudit> probes;
    probes.reserve(probe_count);
    for (int i = 0; i < probe_count - 2; ++i)
        probes.push_back(random_unknown_state(d, derive_seed(seed, i)));
    ComplexVec ground(d, cx{});
    ground[0] = 1.0;
    probes.push_back({d, std::move(ground)});
    ComplexVec uniform(d, cx{1.0 / std::sqrt(static_cast<double>(d)), 0.0});
    probes.push_back({d, std::move(uniform)});

    std::vector<std::vector<OutcomeRecord>> per_probe;
    per_probe.reserve(probes.size());
    for (const UnknownQudit& probe : probes)
        per_probe.push_back(outcome_distribution(probe, resource, basis));

    std::vector<ComplexMat> paulis;
    paulis.reserve(static_cast<size_t>(d) * d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) paulis.push_back(generalized_pauli({n, m}, d));

    CorrectionTable table;
    table.d = d;
    table.entries.assign(basis.vectors.size(), std::nullopt);
    degenerate = false;
    for (size_t outcome = 0; outcome < basis.vectors.size(); ++outcome) {
        int accepted = 0;
        for (int n = 0; n < d && accepted < 2; ++n)
            for (int m = 0; m < d && accepted < 2; ++m) {
                bool ok = true;
                for (size_t pi = 0; pi < probes.size() && ok; ++pi) {
                    const ComplexVec corrected =
                        paulis[static_cast<size_t>(n) * d + m].apply(
                            per_probe[pi][outcome].bob_conditional);
                    ok = fidelity(probes[pi].amplitudes, corrected) >= 1.0 - kCorrectionFidelityTol;
                }
                if (ok) {
                    ++accepted;
                    if (accepted == 1) table.entries[outcome] = PauliLabel{n, m};
                }
            }
        if (accepted > 1) {
            degenerate = true;
            return table;
        }
    }
    return table;
}

} // namespace

CorrectionTable derive_correction_table(const ResourceState& resource,
                                        const MeasurementBasis& basis,
                                        int probe_count, uint64_t seed) {
    if (probe_count < 3)
        throw std::invalid_argument("derive_correction_table: probe_count must be >= 3");
    if (resource.d != basis.d)
        throw std::invalid_argument("derive_correction_table: dimension mismatch");

    bool degenerate = false;
    CorrectionTable table = derive_once(resource, basis, probe_count, seed, degenerate);
    if (!degenerate) return table;
    table = derive_once(resource, basis, probe_count, splitmix64(~seed), degenerate);
    if (!degenerate) return table;
    throw std::runtime_error("derive_correction_table: degenerate probe set (two corrections fit)");
}

int message_width_bits(int d) {
    const unsigned outcomes = static_cast<unsigned>(d) * static_cast<unsigned>(d);
    return static_cast<int>(std::bit_width(outcomes - 1));
}

double fidelity(const ComplexVec& psi, const ComplexVec& phi) {
    if (psi.size() != phi.size()) throw std::invalid_argument("fidelity: dimension mismatch");
    return std::norm(inner(psi, phi));
}

Transcript teleport(const UnknownQudit& input, const ResourceState& resource,
                    const MeasurementBasis& basis, const CorrectionTable& table,
                    uint64_t seed) {
    if (table.entries.size() != basis.vectors.size())
        throw std::invalid_argument("teleport: correction table does not fit the basis");
    const auto records = outcome_distribution(input, resource, basis);

    Rng rng(seed);
    const double u = rng.uniform01();
    double cumulative = 0.0;
    const OutcomeRecord* picked = nullptr;
    for (const OutcomeRecord& rec : records) {
        if (rec.probability <= kDropTol) continue;
        cumulative += rec.probability;
        picked = &rec;
        if (u < cumulative) break;
    }
    if (picked == nullptr) throw std::runtime_error("teleport: empty outcome distribution");

    Transcript t;
    t.d = input.d;
    t.lambdas = resource.lambdas;
    t.basis_kind = basis.kind;
    t.outcome_index = picked->index;
    t.outcome_m = picked->class_m;
    t.outcome_slot = picked->slot;
    t.designated = picked->designated;
    t.message = {picked->index, message_width_bits(input.d)};
    t.seed = seed;
    t.rng = std::string(kRngName);

    const auto& correction = table.entries[picked->index];
    if (correction.has_value()) {
        t.bob_final = generalized_pauli(*correction, input.d).apply(picked->bob_conditional);
    } else {
        t.bob_final = picked->bob_conditional;  // FAIL: keep the uncorrected state
    }
    t.fidelity_value = fidelity(input.amplitudes, t.bob_final);
    t.success = picked->designated && t.fidelity_value >= 1.0 - kEqTol;
    return t;
}

MonteCarloSummary run_monte_carlo(const InputSpec& input_spec, const ResourceState& resource,
                                  const MeasurementBasis& basis, const CorrectionTable& table,
                                  long trials, uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    UnknownQudit fixed_input;
    if (!input_spec.haar) fixed_input = UnknownQudit::from_amplitudes(input_spec.amplitudes);

    std::vector<char> success(trials, 0);
    std::vector<double> fid(trials, 0.0);

    // Trials are independent; results land in per-trial slots so the
    // aggregation below is identical for every pool size.
    auto run_range = [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            const uint64_t trial_seed = derive_seed(seed, static_cast<uint64_t>(i));
            const UnknownQudit input =
                input_spec.haar ? random_unknown_state(resource.d, splitmix64(trial_seed))
                                : fixed_input;
            const Transcript t = teleport(input, resource, basis, table, trial_seed);
            success[i] = t.success ? 1 : 0;
            fid[i] = t.fidelity_value;
        }
    };

    const int pool = static_cast<int>(std::clamp<long>(workers, 1, trials));
    if (pool <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(pool);
        const long chunk = (trials + pool - 1) / pool;
        for (int w = 0; w < pool; ++w) {
            const long begin = w * chunk;
            const long end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back([&, begin, end, w]() {
                try {
                    run_range(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (std::thread& th : threads) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    MonteCarloSummary summary;
    summary.trials = trials;
    double fid_sum = 0.0;
    for (long i = 0; i < trials; ++i)
        if (success[i]) {
            ++summary.success_count;
            fid_sum += fid[i];
        }
    summary.empirical_p = static_cast<double>(summary.success_count) / trials;
    summary.stderr_p = std::sqrt(summary.empirical_p * (1.0 - summary.empirical_p) / trials);
    summary.mean_fidelity_on_success =
        summary.success_count > 0 ? fid_sum / summary.success_count : 0.0;
    return summary;
}

} // namespace quditsim
