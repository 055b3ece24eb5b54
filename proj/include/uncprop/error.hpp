#pragma once

#include <stdexcept>
#include <string>

namespace uncprop {

// Failure categories. Validation codes mean the request itself was
// ill-formed; computation codes mean a well-formed request hit a numerical
// singularity while running.
enum class errc {
    negative_uncertainty,
    non_finite,
    zero_value,
    syntax_error,
    duplicate_input,
    missing_input,
    unused_input,
    empty_list,
    out_of_range,
    non_positive_input,
    mismatched_inputs,
    too_few_replicates,
    bad_request,
    division_by_zero,
    overflow,
    degenerate_sampling,
};

const char* errc_name(errc code);

// True for errors a caller could have prevented by fixing the request;
// false for singularities discovered during computation.
bool is_validation_error(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message, int line = 0, int column = 0)
        : std::runtime_error(std::move(message)), code_(code), line_(line), column_(column) {}

    errc code() const { return code_; }
    // 1-based source position for parser/input-file diagnostics; 0 = not applicable.
    int line() const { return line_; }
    int column() const { return column_; }

private:
    errc code_;
    int line_;
    int column_;
};

[[noreturn]] inline void fail(errc code, std::string message, int line = 0, int column = 0) {
    throw Error(code, std::move(message), line, column);
}

}  // namespace uncprop
