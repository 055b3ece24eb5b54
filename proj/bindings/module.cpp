#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uncprop/coinflip.hpp"
#include "uncprop/error.hpp"
#include "uncprop/expression.hpp"
#include "uncprop/measurement.hpp"
#include "uncprop/montecarlo.hpp"
#include "uncprop/numfmt.hpp"
#include "uncprop/propagation.hpp"
#include "uncprop/txrf.hpp"

namespace py = pybind11;
using namespace uncprop;

namespace {

std::string measurement_repr(const Measurement& m) {
    return "Measurement(" + format_double(m.value()) + ", " + format_double(m.unc()) + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "uncprop core: uncertainty propagation, Monte Carlo validation, TXRF quantification, "
              "coin-flip frequency demo";

    py::register_exception<Error>(m, "Error");

    // --- measurement ---------------------------------------------------
    py::class_<Measurement>(m, "Measurement")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("value"), py::arg("unc"))
        .def_property_readonly("value", &Measurement::value)
        .def_property_readonly("unc", &Measurement::unc)
        .def("__eq__", [](const Measurement& a, const Measurement& b) { return a == b; })
        .def("__repr__", &measurement_repr);

    py::class_<RelativeUncertainty>(m, "RelativeUncertainty")
        .def(py::init([](double ratio) { return RelativeUncertainty{ratio}; }), py::arg("ratio"))
        .def_readonly("ratio", &RelativeUncertainty::ratio)
        .def("__repr__",
             [](const RelativeUncertainty& r) { return "RelativeUncertainty(" + format_double(r.ratio) + ")"; });
    py::implicitly_convertible<double, RelativeUncertainty>();

    m.def("relative", &relative, py::arg("measurement"), "unc/|value|; error when value == 0");

    // --- propagation ----------------------------------------------------
    py::class_<Model>(m, "Model")
        .def_property_readonly("inputs", &Model::inputs)
        .def("render", [](const Model& model) { return render_model(model); })
        .def("__repr__", [](const Model& model) { return "Model('" + render_model(model) + "')"; });

    m.def("parse_model", &parse_model, py::arg("source"),
          "Parse an arithmetic measurement model (+, -, *, /, unary minus, integer powers)");
    m.def("render_model", &render_model, py::arg("model"), "Canonical text; round-trips structurally");

    py::class_<BudgetTerm>(m, "BudgetTerm")
        .def_readonly("input", &BudgetTerm::input)
        .def_readonly("partial", &BudgetTerm::partial)
        .def_readonly("term", &BudgetTerm::term)
        .def("__repr__", [](const BudgetTerm& t) {
            return "BudgetTerm(" + t.input + ", partial=" + format_double(t.partial) +
                   ", term=" + format_double(t.term) + ")";
        });

    py::class_<UncertaintyBudget>(m, "UncertaintyBudget")
        .def_readonly("combined", &UncertaintyBudget::combined)
        .def_readonly("contributions", &UncertaintyBudget::contributions)
        .def("__repr__", [](const UncertaintyBudget& b) {
            return "UncertaintyBudget(combined=" + format_double(b.combined) + ", " +
                   std::to_string(b.contributions.size()) + " contributions)";
        });

    m.def(
        "evaluate_with_partials",
        [](const Model& model, const InputMap& inputs) {
            Gradient g = evaluate_with_partials(model, inputs);
            py::dict partials;
            for (const auto& [name, d] : g.partials) partials[py::str(name)] = d;
            return py::make_tuple(g.value, partials);
        },
        py::arg("model"), py::arg("inputs"),
        "Model value and exact forward-mode partial derivatives as (value, {input: partial})");
    m.def("evaluate", &evaluate, py::arg("model"), py::arg("inputs"));
    m.def("propagate", &propagate, py::arg("model"), py::arg("inputs"),
          "Combined standard uncertainty and per-input budget");
    m.def(
        "combine_relative",
        [](const std::vector<RelativeUncertainty>& rels) { return combine_relative(rels); },
        py::arg("ratios"), "sqrt(sum of squared ratios)");

    // --- montecarlo -----------------------------------------------------
    py::class_<McConfig>(m, "McConfig")
        .def(py::init([](std::uint64_t sample_count, std::uint64_t seed, std::uint64_t chunk_size) {
                 return McConfig{sample_count, seed, chunk_size};
             }),
             py::arg("sample_count") = 1'000'000, py::arg("seed") = 0, py::arg("chunk_size") = 65536)
        .def_readwrite("sample_count", &McConfig::sample_count)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("chunk_size", &McConfig::chunk_size);

    py::class_<McResult>(m, "McResult")
        .def_readonly("mean", &McResult::mean)
        .def_readonly("empirical_std", &McResult::empirical_std)
        .def_readonly("sample_count", &McResult::sample_count)
        .def_readonly("rejected_count", &McResult::rejected_count)
        .def_readonly("linearized_std", &McResult::linearized_std)
        .def_readonly("agreement_ratio", &McResult::agreement_ratio)
        .def("__eq__", [](const McResult& a, const McResult& b) { return a == b; })
        .def("__repr__", [](const McResult& r) {
            return "McResult(mean=" + format_double(r.mean) +
                   ", empirical_std=" + format_double(r.empirical_std) + ")";
        });

    m.def("mc_propagate", &mc_propagate, py::arg("model"), py::arg("inputs"), py::arg("config") = McConfig{},
          py::arg("worker_count") = 0,
          "Sampling check of the linearized budget; deterministic per (seed, sample_count, chunk_size)",
          py::call_guard<py::gil_scoped_release>());

    // --- txrf -----------------------------------------------------------
    py::enum_<txrf::Policy>(m, "Policy")
        .value("COMPLETE", txrf::Policy::Complete)
        .value("TRUNCATED", txrf::Policy::Truncated);

    py::class_<txrf::TxrfSample>(m, "TxrfSample")
        .def(py::init([](std::string analyte_name, Measurement analyte_intensity, std::string standard_name,
                         Measurement standard_intensity, Measurement standard_concentration) {
                 return txrf::TxrfSample{std::move(analyte_name), analyte_intensity, std::move(standard_name),
                                         standard_intensity, standard_concentration};
             }),
             py::arg("analyte_name"), py::arg("analyte_intensity"), py::arg("standard_name"),
             py::arg("standard_intensity"), py::arg("standard_concentration"))
        .def_readonly("analyte_name", &txrf::TxrfSample::analyte_name)
        .def_readonly("analyte_intensity", &txrf::TxrfSample::analyte_intensity)
        .def_readonly("standard_name", &txrf::TxrfSample::standard_name)
        .def_readonly("standard_intensity", &txrf::TxrfSample::standard_intensity)
        .def_readonly("standard_concentration", &txrf::TxrfSample::standard_concentration);

    py::class_<txrf::SensitivityRecord>(m, "SensitivityRecord")
        .def(py::init([](std::string element, Measurement sensitivity, txrf::Policy policy,
                         UncertaintyBudget budget) {
                 return txrf::SensitivityRecord{std::move(element), sensitivity, policy, std::move(budget)};
             }),
             py::arg("element"), py::arg("sensitivity"), py::arg("policy") = txrf::Policy::Complete,
             py::arg("budget") = UncertaintyBudget{})
        .def_readonly("element", &txrf::SensitivityRecord::element)
        .def_readonly("sensitivity", &txrf::SensitivityRecord::sensitivity)
        .def_readonly("policy", &txrf::SensitivityRecord::policy)
        .def_readonly("budget", &txrf::SensitivityRecord::budget);

    py::class_<txrf::CalibrationInputs>(m, "CalibrationInputs")
        .def(py::init([](Measurement ref_sensitivity, Measurement ref_intensity, Measurement ref_concentration,
                         Measurement element_intensity, Measurement element_concentration) {
                 return txrf::CalibrationInputs{ref_sensitivity, ref_intensity, ref_concentration,
                                                element_intensity, element_concentration};
             }),
             py::arg("ref_sensitivity"), py::arg("ref_intensity"), py::arg("ref_concentration"),
             py::arg("element_intensity"), py::arg("element_concentration"))
        .def_readonly("ref_sensitivity", &txrf::CalibrationInputs::ref_sensitivity)
        .def_readonly("ref_intensity", &txrf::CalibrationInputs::ref_intensity)
        .def_readonly("ref_concentration", &txrf::CalibrationInputs::ref_concentration)
        .def_readonly("element_intensity", &txrf::CalibrationInputs::element_intensity)
        .def_readonly("element_concentration", &txrf::CalibrationInputs::element_concentration);

    py::class_<txrf::QuantifyResult>(m, "QuantifyResult")
        .def_readonly("concentration", &txrf::QuantifyResult::concentration)
        .def_readonly("budget", &txrf::QuantifyResult::budget);

    py::class_<txrf::ReplicateReport>(m, "ReplicateReport")
        .def_readonly("mean", &txrf::ReplicateReport::mean)
        .def_readonly("bias", &txrf::ReplicateReport::bias)
        .def_readonly("dispersion", &txrf::ReplicateReport::dispersion)
        .def_readonly("n", &txrf::ReplicateReport::n);

    m.def("quantify", &txrf::quantify, py::arg("sample"), py::arg("analyte_sensitivity"),
          py::arg("standard_sensitivity"),
          "C_y = Cp*Ny*Sp/(Np*Sy) with its five-input uncertainty budget");
    m.def("calibrate_sensitivity", &txrf::calibrate_sensitivity, py::arg("inputs"), py::arg("policy"),
          py::arg("element") = "element",
          "Sensitivity from the functional relation, with a COMPLETE or TRUNCATED budget");
    m.def("budget_gap", &txrf::budget_gap, py::arg("complete"), py::arg("truncated"),
          "complete.combined - truncated.combined for records from identical inputs");
    m.def(
        "replicate_stats",
        [](const std::vector<double>& values, std::optional<double> reference) {
            return txrf::replicate_stats(values, reference);
        },
        py::arg("values"), py::arg("reference") = std::nullopt,
        "Mean, bias vs reference (accuracy) and sample standard deviation (precision)");

    // --- coinflip ---------------------------------------------------------
    m.attr("DEFAULT_SEED") = coin::kDefaultSeed;

    py::class_<coin::SequenceRow>(m, "SequenceRow")
        .def_readonly("sequence", &coin::SequenceRow::sequence)
        .def_readonly("heads", &coin::SequenceRow::heads)
        .def("__repr__", [](const coin::SequenceRow& r) {
            return "SequenceRow('" + r.sequence + "', heads=" + std::to_string(r.heads) + ")";
        });

    py::class_<coin::SequenceTable>(m, "SequenceTable")
        .def_readonly("n", &coin::SequenceTable::n)
        .def_readonly("rows", &coin::SequenceTable::rows);

    py::class_<coin::FrequencyEstimate>(m, "FrequencyEstimate")
        .def_readonly("f", &coin::FrequencyEstimate::f)
        .def_readonly("delta_f", &coin::FrequencyEstimate::delta_f)
        .def_readonly("n", &coin::FrequencyEstimate::n)
        .def("__repr__", [](const coin::FrequencyEstimate& e) {
            return "FrequencyEstimate(f=" + format_double(e.f) + ", delta_f=" + format_double(e.delta_f) +
                   ", n=" + std::to_string(e.n) + ")";
        });

    m.def("enumerate_sequences", &coin::enumerate_sequences, py::arg("n"),
          "All 2^n flip sequences with exact head frequencies, lexicographic (H before T)");
    m.def("frequency_fraction", &coin::frequency_fraction, py::arg("heads"), py::arg("n"));
    m.def("frequency_uncertainty", &coin::frequency_uncertainty, py::arg("f"), py::arg("n"),
          "Binomial (Wald) standard error sqrt(f(1-f)/n)");
    m.def("simulate_flips", &coin::simulate_flips, py::arg("n"), py::arg("seed") = coin::kDefaultSeed,
          "n fair flips from a seeded generator; pure function of (n, seed)");

#ifdef UNCPROP_VERSION
    m.attr("__version__") = UNCPROP_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
