#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uncprop/coinflip.hpp"
#include "uncprop/montecarlo.hpp"
#include "uncprop/propagation.hpp"
#include "uncprop/txrf.hpp"

namespace uncprop::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Text };

struct McReportInfo {
    McResult result;
    std::uint64_t seed = 0;
};

/// Everything a propagation-family report (propagate, quantify, calibrate,
/// mc-check) can carry. Key order and 9-significant-digit float formatting
/// are fixed so identical runs serialize byte-identically.
struct ReportContent {
    std::string command;
    double value = 0.0;
    const UncertaintyBudget* budget = nullptr;
    std::optional<std::string> policy;
    std::optional<double> gap;                          // policy=both
    const UncertaintyBudget* truncated_budget = nullptr;  // policy=both
    std::optional<McReportInfo> mc;
    std::vector<std::string> flags;
};

Json make_propagation_report(const ReportContent& content);
Json make_coin_report(const coin::SequenceTable& table, const coin::FrequencyEstimate& sim,
                      std::uint64_t seed, std::vector<std::string> flags);
Json make_replicates_report(const txrf::ReplicateReport& rep, std::vector<std::string> flags);

/// JSON dump or the aligned text form of the same report.
std::string serialize_report(const Json& report, OutputFormat format);

}  // namespace uncprop::cli
