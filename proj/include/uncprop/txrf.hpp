#pragma once

#include <optional>
#include <span>
#include <string>

#include "uncprop/measurement.hpp"
#include "uncprop/propagation.hpp"

namespace uncprop::txrf {

/// Whether a sensitivity budget includes the reference-sensitivity
/// uncertainty term. TRUNCATED reproduces the legacy convention that zeroes
/// it; every SensitivityRecord carries the policy it was computed under so
/// the assumption is never silent.
enum class Policy { Complete, Truncated };

const char* to_string(Policy p);

/// One analyte line plus the internal-standard record it is quantified
/// against. Intensities are net counts; concentration units are the
/// caller's (they cancel except through standard_concentration).
struct TxrfSample {
    std::string analyte_name;
    Measurement analyte_intensity;        // N_y
    std::string standard_name;
    Measurement standard_intensity;       // N_p
    Measurement standard_concentration;   // C_p
};

/// Per-element sensitivity with the budget that produced its uncertainty.
struct SensitivityRecord {
    std::string element;
    Measurement sensitivity;  // S, counts per concentration unit
    Policy policy = Policy::Complete;
    UncertaintyBudget budget;
};

/// Calibration measurement set: reference element (primed quantities) plus
/// the element being calibrated, all from the calibration sample.
struct CalibrationInputs {
    Measurement ref_sensitivity;         // S'ref, conventionally 1 with an explicit uncertainty
    Measurement ref_intensity;           // N'ref
    Measurement ref_concentration;       // C'ref
    Measurement element_intensity;       // N'
    Measurement element_concentration;   // C'
};

struct QuantifyResult {
    Measurement concentration;  // C_y
    UncertaintyBudget budget;   // contributions of Cp, Ny, Sp, Np, Sy
};

/// Replicate statistics: accuracy (bias vs a reference) and precision
/// (sample standard deviation, n-1).
struct ReplicateReport {
    double mean = 0.0;
    std::optional<double> bias;  // mean - reference, when a reference is supplied
    double dispersion = 0.0;
    std::size_t n = 0;
};

/// Internal-standard quantification C_y = C_p * N_y * S_p / (N_p * S_y) with
/// the full five-input uncertainty budget from the propagation engine.
QuantifyResult quantify(const TxrfSample& sample, const SensitivityRecord& analyte_sensitivity,
                        const SensitivityRecord& standard_sensitivity);

/// Sensitivity from the functional relation, S = S'ref * N' * C'ref /
/// (N'ref * C'), with its uncertainty budget. COMPLETE keeps all five
/// relative terms; TRUNCATED zeroes the reference-sensitivity term.
SensitivityRecord calibrate_sensitivity(const CalibrationInputs& inputs, Policy policy,
                                        std::string element = "element");

/// complete.combined - truncated.combined for two records calibrated from
/// identical inputs; >= 0 always, > 0 exactly when the reference-sensitivity
/// uncertainty is nonzero.
double budget_gap(const SensitivityRecord& complete, const SensitivityRecord& truncated);

ReplicateReport replicate_stats(std::span<const double> values, std::optional<double> reference = {});

}  // namespace uncprop::txrf
