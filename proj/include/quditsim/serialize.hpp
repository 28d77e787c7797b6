#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quditsim/analysis.hpp"
#include "quditsim/bases.hpp"
#include "quditsim/protocol.hpp"

// JSON and CSV emission. Numbers carry 12 significant digits; complex
// amplitudes serialize as [re, im] pairs; field order is fixed so identical
// inputs produce byte-identical output.

namespace quditsim {

using ordered_json = nlohmann::ordered_json;

/// Round to 12 significant digits so serialized numbers are stable.
double round_sig(double x);

ordered_json json_number(double x);
ordered_json json_complex(cx z);
ordered_json json_real_list(const std::vector<double>& xs);
ordered_json json_amplitudes(const ComplexVec& v);

ordered_json to_json(const Transcript& t);
ordered_json to_json(const MonteCarloSummary& s, double exact_p);
ordered_json basis_dump(const MeasurementBasis& basis);

extern const char* const kSweepCsvHeader;
std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace quditsim
