#include "uncprop/error.hpp"

namespace uncprop {

const char* errc_name(errc code) {
    switch (code) {
        case errc::negative_uncertainty: return "NegativeUncertainty";
        case errc::non_finite: return "NonFinite";
        case errc::zero_value: return "ZeroValue";
        case errc::syntax_error: return "SyntaxError";
        case errc::duplicate_input: return "DuplicateInput";
        case errc::missing_input: return "MissingInput";
        case errc::unused_input: return "UnusedInput";
        case errc::empty_list: return "EmptyList";
        case errc::out_of_range: return "OutOfRange";
        case errc::non_positive_input: return "NonPositiveInput";
        case errc::mismatched_inputs: return "MismatchedInputs";
        case errc::too_few_replicates: return "TooFewReplicates";
        case errc::bad_request: return "BadRequest";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::overflow: return "Overflow";
        case errc::degenerate_sampling: return "DegenerateSampling";
    }
    return "UnknownError";
}

bool is_validation_error(errc code) {
    switch (code) {
        case errc::division_by_zero:
        case errc::overflow:
        case errc::degenerate_sampling:
            return false;
        default:
            return true;
    }
}

}  // namespace uncprop
