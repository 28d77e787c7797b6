#include "quditsim/serialize.hpp"

#include <charconv>
#include <cstdio>

namespace quditsim {

double round_sig(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

ordered_json json_number(double x) { return round_sig(x); }

ordered_json json_complex(cx z) {
    return ordered_json::array({round_sig(z.real()), round_sig(z.imag())});
}

ordered_json json_real_list(const std::vector<double>& xs) {
    ordered_json arr = ordered_json::array();
    for (double x : xs) arr.push_back(round_sig(x));
    return arr;
}

ordered_json json_amplitudes(const ComplexVec& v) {
    ordered_json arr = ordered_json::array();
    for (const cx& z : v) arr.push_back(json_complex(z));
    return arr;
}

ordered_json to_json(const Transcript& t) {
    ordered_json j;
    j["d"] = t.d;
    j["lambda"] = json_real_list(t.lambdas);
    j["basis_kind"] = std::string(to_string(t.basis_kind));
    j["outcome"] = ordered_json{{"m", t.outcome_m}, {"slot", t.outcome_slot}};
    j["message_bits"] = t.message.payload;
    j["message_width"] = t.message.width_bits;
    j["designated"] = t.designated;
    j["bob_final"] = json_amplitudes(t.bob_final);
    j["fidelity"] = json_number(t.fidelity_value);
    j["success"] = t.success;
    j["seed"] = t.seed;
    j["rng"] = t.rng;
    return j;
}

ordered_json to_json(const MonteCarloSummary& s, double exact_p) {
    ordered_json j;
    j["type"] = "summary";
    j["trials"] = s.trials;
    j["success_count"] = s.success_count;
    j["empirical_p"] = json_number(s.empirical_p);
    j["exact_p"] = json_number(exact_p);
    j["stderr"] = json_number(s.stderr_p);
    j["mean_fidelity_on_success"] = json_number(s.mean_fidelity_on_success);
    return j;
}

ordered_json basis_dump(const MeasurementBasis& basis) {
    ordered_json vectors = ordered_json::array();
    for (int i = 0; i < static_cast<int>(basis.vectors.size()); ++i) {
        const BasisVector& v = basis.vectors[i];
        const auto [m, slot] = basis.label_of(i);
        ordered_json jv;
        jv["index"] = i;
        jv["class_m"] = m;
        jv["slot"] = slot;
        if (v.phase_l.has_value())
            jv["phase_l"] = *v.phase_l;
        else
            jv["phase_l"] = nullptr;
        jv["designated"] = v.designated;
        jv["entropy_bits"] = json_number(entanglement_entropy(v.schmidt_spectrum(basis.d)));
        jv["amplitudes"] = json_amplitudes(v.ket);
        vectors.push_back(std::move(jv));
    }
    ordered_json j;
    j["d"] = basis.d;
    j["kind"] = std::string(to_string(basis.kind));
    j["vectors"] = std::move(vectors);
    return j;
}

const char* const kSweepCsvHeader =
    "d,lambda_spec,entropy_bits,p_succ_exact,p_succ_mc,mc_stderr,repetitions_R,"
    "basis_entropy_bits";

namespace {

std::string format_sig(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

} // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const SweepRow& row : rows) {
        out += std::to_string(row.d);
        out += ',';
        for (size_t i = 0; i < row.lambdas.size(); ++i) {
            if (i > 0) out += ';';
            out += format_sig(row.lambdas[i]);
        }
        out += ',';
        out += format_sig(row.entropy_bits);
        out += ',';
        out += format_sig(row.p_succ_exact);
        out += ',';
        out += format_sig(row.p_succ_mc);
        out += ',';
        out += format_sig(row.mc_stderr);
        out += ',';
        out += format_sig(row.repetitions_r);
        out += ',';
        out += format_sig(row.basis_entropy_bits);
        out += '\n';
    }
    return out;
}

} // namespace quditsim
