#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uncprop/propagation.hpp"
#include "uncprop/txrf.hpp"

namespace uncprop::cli {

struct PropagateRequest {
    std::string model_source;
    InputMap inputs;
};

struct QuantifyRequest {
    txrf::TxrfSample sample;
    Measurement analyte_sensitivity;
    Measurement standard_sensitivity;
};

struct CalibrateRequest {
    txrf::CalibrationInputs inputs;
};

struct ReplicatesRequest {
    std::vector<double> values;
    std::optional<double> reference;
};

enum class InputKind { Propagate, Quantify, Calibrate, Replicates };

struct ParsedInput {
    std::variant<PropagateRequest, QuantifyRequest, CalibrateRequest, ReplicatesRequest> request;
    std::vector<std::string> flags;  // defaults applied while reading, e.g. "poisson-default:<path>"
};

/// Read and validate a request file. Two formats are accepted and detected
/// by content: JSON (canonical, first non-space byte '{') and line-oriented
/// `dotted.path = value` text. Unknown keys, duplicate keys, and type errors
/// are rejected with the offending path (and line, for text input).
ParsedInput parse_input_file(InputKind kind, const std::string& path);

/// Same, over an in-memory buffer; `origin` names the source in diagnostics.
ParsedInput parse_input(InputKind kind, std::string_view content, const std::string& origin);

}  // namespace uncprop::cli
