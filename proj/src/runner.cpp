#include "quditsim/runner.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "quditsim/analysis.hpp"
#include "quditsim/bases.hpp"
#include "quditsim/protocol.hpp"
#include "quditsim/rng.hpp"
#include "quditsim/serialize.hpp"

namespace quditsim {

namespace {

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

double parse_real(const std::string& text) {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad number: " + text);
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

cx parse_complex(const std::string& text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // find the +/- separating real and imaginary parts (not leading, not exponent)
        size_t sep = std::string::npos;
        for (size_t k = body.size(); k-- > 1;) {
            const char c = body[k];
            if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                sep = k;
                break;
            }
        }
        if (sep == std::string::npos) {
            std::string imag = body;
            if (imag.empty() || imag == "+") return {0.0, 1.0};
            if (imag == "-") return {0.0, -1.0};
            return {0.0, parse_real(imag)};
        }
        const std::string re = body.substr(0, sep);
        std::string im = body.substr(sep);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {parse_real(re), parse_real(im)};
    }
    return {parse_real(s), 0.0};
}

namespace {

ResourceState resource_from_config(const RunConfig& config) {
    const std::string spec = strip_spaces(config.lambda_spec);
    if (spec == "uniform") {
        if (config.d < 2) throw std::invalid_argument("--d must be >= 2");
        return resource_from_lambdas(std::vector<double>(config.d, 1.0 / config.d));
    }
    if (spec.rfind("n=", 0) == 0) {
        const cx n = parse_complex(spec.substr(2));
        return resource_from_qubit_n(n);
    }
    std::vector<double> lambdas;
    for (const std::string& part : split(spec, ',')) lambdas.push_back(parse_real(part));
    return resource_from_lambdas(std::move(lambdas));
}

MeasurementBasis basis_from_config(const RunConfig& config, const ResourceState& resource) {
    if (config.basis == "bell") return bell_basis(resource.d);
    if (config.basis == "nme") {
        std::vector<int> choice = config.l_choice;
        if (!choice.empty() && static_cast<int>(choice.size()) != resource.d)
            throw std::invalid_argument("--l-choice must list one phase label per class");
        return nme_basis(resource, choice);
    }
    throw std::invalid_argument("unknown basis kind: " + config.basis);
}

InputSpec input_from_config(const RunConfig& config, int d) {
    if (strip_spaces(config.state_spec) == "random") return InputSpec::random();
    ComplexVec amps;
    for (const std::string& part : split(config.state_spec, ','))
        amps.push_back(parse_complex(part));
    if (static_cast<int>(amps.size()) != d)
        throw std::invalid_argument("state amplitude count must equal d");
    return InputSpec::fixed(UnknownQudit::from_amplitudes(std::move(amps)).amplitudes);
}

/// Success probability implied by the table: designated outcomes with a
/// correction have input-independent probabilities, so any reference input
/// works; the uniform superposition is used.
double exact_success_probability(const ResourceState& resource, const MeasurementBasis& basis,
                                 const CorrectionTable& table) {
    ComplexVec uniform(resource.d, cx{1.0 / std::sqrt(static_cast<double>(resource.d)), 0.0});
    const UnknownQudit reference{resource.d, std::move(uniform)};
    const auto records = outcome_distribution(reference, resource, basis);
    double p = 0.0;
    for (const OutcomeRecord& rec : records)
        if (rec.designated && table.entries[rec.index].has_value()) p += rec.probability;
    return p;
}

int classify_error(const std::exception& e, std::ostream& err) {
    if (dynamic_cast<const rank_error*>(&e) != nullptr) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
}

} // namespace

int cmd_teleport(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const ResourceState resource = resource_from_config(config);
        if (config.d >= 2 && config.lambda_spec != "uniform" && resource.d != config.d &&
            config.d != 2)  // d=2 is the flag default; explicit mismatches are caught here
            throw std::invalid_argument("--d disagrees with the lambda spec");
        const MeasurementBasis basis = basis_from_config(config, resource);
        const InputSpec input_spec = input_from_config(config, resource.d);
        if (config.trials < 1) throw std::invalid_argument("--trials must be >= 1");

        const CorrectionTable table =
            derive_correction_table(resource, basis, 5, derive_seed(config.seed, 0xAC));

        // one transcript per line, rendered in parallel but emitted in order
        std::vector<std::string> lines(config.trials);
        auto run_range = [&](long begin, long end) {
            for (long i = begin; i < end; ++i) {
                const uint64_t trial_seed = derive_seed(config.seed, static_cast<uint64_t>(i));
                const UnknownQudit input =
                    input_spec.haar
                        ? random_unknown_state(resource.d, splitmix64(trial_seed))
                        : UnknownQudit{resource.d, input_spec.amplitudes};
                const Transcript t = teleport(input, resource, basis, table, trial_seed);
                lines[i] = to_json(t).dump();
            }
        };
        const int pool = static_cast<int>(std::clamp<long>(config.workers, 1, config.trials));
        if (pool <= 1) {
            run_range(0, config.trials);
        } else {
            std::vector<std::thread> threads;
            const long chunk = (config.trials + pool - 1) / pool;
            for (int w = 0; w < pool; ++w) {
                const long begin = w * chunk;
                const long end = std::min<long>(config.trials, begin + chunk);
                if (begin >= end) break;
                threads.emplace_back(run_range, begin, end);
            }
            for (std::thread& th : threads) th.join();
        }
        long success_count = 0;
        double fid_sum = 0.0;
        for (long i = 0; i < config.trials; ++i) out << lines[i] << '\n';
        const MonteCarloSummary mc = run_monte_carlo(input_spec, resource, basis, table,
                                                     config.trials, config.seed, config.workers);
        (void)success_count;
        (void)fid_sum;
        out << to_json(mc, exact_success_probability(resource, basis, table)).dump() << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_error(e, err);
    }
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const SweepFamily family = sweep_family_from_string(config.family);
        if (config.points < 1) throw std::invalid_argument("--points must be >= 1");
        if (config.trials < 1) throw std::invalid_argument("--trials must be >= 1");
        const auto rows = sweep(family, config.d, config.points, config.trials, config.seed,
                                config.workers);
        out << sweep_csv(rows);
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_error(e, err);
    }
}

int cmd_basis(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        MeasurementBasis basis;
        if (config.basis == "bell") {
            if (config.d < 2) throw std::invalid_argument("--d must be >= 2");
            basis = bell_basis(config.d);
        } else {
            basis = basis_from_config(config, resource_from_config(config));
        }
        out << basis_dump(basis).dump(2) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_error(e, err);
    }
}

int run_command(const std::string& command, const RunConfig& config,
                std::ostream& out, std::ostream& err) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out_path.empty()) {
        file.open(config.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file " << config.out_path << '\n';
            return kExitConfig;
        }
        sink = &file;
    }
    if (command == "teleport") return cmd_teleport(config, *sink, err);
    if (command == "sweep") return cmd_sweep(config, *sink, err);
    if (command == "verify") return cmd_verify(config, *sink, err);
    if (command == "basis") return cmd_basis(config, *sink, err);
    err << "error: unknown command " << command << '\n';
    return kExitConfig;
}

} // namespace quditsim
