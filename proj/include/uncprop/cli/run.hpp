#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "uncprop/cli/report.hpp"

namespace uncprop::cli {

enum class Command { Propagate, Quantify, Calibrate, McCheck, CoinDemo, Replicates };
enum class PolicyMode { Complete, Truncated, Both };

struct RunConfig {
    Command command = Command::Propagate;
    std::string input_path;
    std::string output_path;  // empty -> stdout
    PolicyMode policy = PolicyMode::Complete;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    int coin_n = 3;
    OutputFormat format = OutputFormat::Json;
};

/// Execute one batch command: read the input file (when the command takes
/// one), compute, and write the report to `output_path` or `out`.
/// Returns the process exit status: 0 ok, 1 validation error, 2 computation
/// error. Diagnostics go to `err`; this never throws on malformed input.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace uncprop::cli
