#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quditsim/tensor.hpp"

// Command implementations behind the CLI. Each command writes its primary
// output to `out` and diagnostics to `err`, and returns a process exit code:
//   0 ok, 2 usage/config error, 3 domain precondition (Schmidt rank),
//   4 internal invariant violation.

namespace quditsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitInternal = 4;

struct RunConfig {
    int d = 2;
    std::string lambda_spec = "uniform";  // "uniform" | "n=<complex>" | comma reals
    std::string basis = "bell";           // "bell" | "nme"
    std::vector<int> l_choice;            // empty = all zero
    std::string state_spec = "random";    // "random" | comma-separated complex amplitudes
    uint64_t seed = 0;
    long trials = 1;
    std::string format = "json";  // "json" | "csv"
    std::string out_path;         // empty = stdout
    int workers = 1;
    std::optional<double> tolerance;
    std::string family = "qubit-n";  // sweep family
    int points = 20;                 // sweep grid size
    std::string d_range;             // verify: "2..6" | single value; empty = default
};

/// Parse "a", "a+bi", "a-bi", "bi", "i" into a complex number.
cx parse_complex(const std::string& text);

int cmd_teleport(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_basis(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatch on command name, honoring config.out_path for file output.
int run_command(const std::string& command, const RunConfig& config,
                std::ostream& out, std::ostream& err);

} // namespace quditsim
