#include "uncprop/txrf.hpp"

#include <cmath>

#include "uncprop/error.hpp"
#include "uncprop/numfmt.hpp"

namespace uncprop::txrf {

const char* to_string(Policy p) { return p == Policy::Complete ? "complete" : "truncated"; }

namespace {

const Model& quantification_model() {
    static const Model m = parse_model("Cp * Ny * Sp / (Np * Sy)");
    return m;
}

const Model& calibration_model() {
    static const Model m = parse_model("Sref * N * Cref / (Nref * C)");
    return m;
}

void require_positive(const Measurement& m, const char* what) {
    if (!(m.value() > 0.0))
        fail(errc::non_positive_input, std::string(what) + " must be > 0, got " + format_double(m.value()));
}

}  // namespace

QuantifyResult quantify(const TxrfSample& sample, const SensitivityRecord& analyte_sensitivity,
                        const SensitivityRecord& standard_sensitivity) {
    require_positive(sample.analyte_intensity, "analyte intensity (Ny)");
    require_positive(sample.standard_intensity, "standard intensity (Np)");
    require_positive(sample.standard_concentration, "standard concentration (Cp)");
    require_positive(analyte_sensitivity.sensitivity, "analyte sensitivity (Sy)");
    require_positive(standard_sensitivity.sensitivity, "standard sensitivity (Sp)");

    InputMap in{{"Cp", sample.standard_concentration},
                {"Ny", sample.analyte_intensity},
                {"Sp", standard_sensitivity.sensitivity},
                {"Np", sample.standard_intensity},
                {"Sy", analyte_sensitivity.sensitivity}};
    PropagationResult r = propagate_full(quantification_model(), in);
    return QuantifyResult{Measurement(r.value, r.budget.combined), std::move(r.budget)};
}

SensitivityRecord calibrate_sensitivity(const CalibrationInputs& inputs, Policy policy, std::string element) {
    require_positive(inputs.ref_sensitivity, "reference sensitivity (S'ref)");
    require_positive(inputs.ref_intensity, "reference intensity (N'ref)");
    require_positive(inputs.ref_concentration, "reference concentration (C'ref)");
    require_positive(inputs.element_intensity, "element intensity (N')");
    require_positive(inputs.element_concentration, "element concentration (C')");

    // TRUNCATED follows the legacy convention: the reference-sensitivity
    // uncertainty term is zeroed, everything else is identical.
    Measurement sref = policy == Policy::Truncated
                           ? Measurement(inputs.ref_sensitivity.value(), 0.0)
                           : inputs.ref_sensitivity;

    InputMap in{{"Sref", sref},
                {"N", inputs.element_intensity},
                {"Cref", inputs.ref_concentration},
                {"Nref", inputs.ref_intensity},
                {"C", inputs.element_concentration}};
    PropagationResult r = propagate_full(calibration_model(), in);
    return SensitivityRecord{std::move(element), Measurement(r.value, r.budget.combined), policy,
                             std::move(r.budget)};
}

double budget_gap(const SensitivityRecord& complete, const SensitivityRecord& truncated) {
    if (complete.policy != Policy::Complete || truncated.policy != Policy::Truncated)
        fail(errc::mismatched_inputs, "budget_gap expects a COMPLETE record and a TRUNCATED record");
    const auto& a = complete.budget.contributions;
    const auto& b = truncated.budget.contributions;
    if (a.size() != b.size())
        fail(errc::mismatched_inputs, "budgets carry different contribution sets");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].input != b[i].input)
            fail(errc::mismatched_inputs, "budgets carry different contribution sets");
        if (a[i].input == "Sref") continue;  // the one term the policies may disagree on
        if (a[i].partial != b[i].partial || a[i].term != b[i].term)
            fail(errc::mismatched_inputs,
                 "contribution '" + a[i].input + "' differs between the two records; they were not "
                 "calibrated from identical inputs");
    }
    return complete.budget.combined - truncated.budget.combined;
}

ReplicateReport replicate_stats(std::span<const double> values, std::optional<double> reference) {
    if (values.size() < 2)
        fail(errc::too_few_replicates, "replicate statistics need n >= 2, got n = " +
                                           std::to_string(values.size()));
    for (double v : values)
        if (!std::isfinite(v)) fail(errc::non_finite, "replicate values must be finite");
    if (reference && !std::isfinite(*reference)) fail(errc::non_finite, "reference value must be finite");

    ReplicateReport r;
    r.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    r.mean = sum / static_cast<double>(r.n);
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.dispersion = std::sqrt(ss / static_cast<double>(r.n - 1));
    if (reference) r.bias = r.mean - *reference;
    return r;
}

}  // namespace uncprop::txrf
