#include "uncprop/cli/run.hpp"

#include <fstream>
#include <ostream>

#include "uncprop/cli/request.hpp"
#include "uncprop/error.hpp"

namespace uncprop::cli {

namespace {

constexpr std::uint64_t kDefaultMcSamples = 1'000'000;

// Wrap a user-supplied sensitivity in a record whose one-term budget keeps
// the combined == unc invariant.
txrf::SensitivityRecord supplied_record(std::string element, const Measurement& s, txrf::Policy policy) {
    UncertaintyBudget budget;
    budget.combined = s.unc();
    budget.contributions.push_back({"supplied", 1.0, s.unc() * s.unc()});
    return txrf::SensitivityRecord{std::move(element), s, policy, std::move(budget)};
}

Json execute_propagate(const RunConfig& cfg) {
    ParsedInput in = parse_input_file(InputKind::Propagate, cfg.input_path);
    const auto& req = std::get<PropagateRequest>(in.request);
    Model model = parse_model(req.model_source);
    PropagationResult r = propagate_full(model, req.inputs);

    ReportContent content;
    content.command = "propagate";
    content.value = r.value;
    content.budget = &r.budget;
    content.flags = std::move(in.flags);
    return make_propagation_report(content);
}

Json execute_quantify(const RunConfig& cfg) {
    if (cfg.policy == PolicyMode::Both)
        fail(errc::bad_request,
             "policy 'both' applies to calibrate only: quantify sensitivities are supplied directly, so "
             "there are no calibration inputs to recompute a second budget from");
    txrf::Policy policy =
        cfg.policy == PolicyMode::Truncated ? txrf::Policy::Truncated : txrf::Policy::Complete;

    ParsedInput in = parse_input_file(InputKind::Quantify, cfg.input_path);
    const auto& req = std::get<QuantifyRequest>(in.request);
    txrf::QuantifyResult r =
        txrf::quantify(req.sample, supplied_record(req.sample.analyte_name, req.analyte_sensitivity, policy),
                       supplied_record(req.sample.standard_name, req.standard_sensitivity, policy));

    ReportContent content;
    content.command = "quantify";
    content.value = r.concentration.value();
    content.budget = &r.budget;
    content.policy = txrf::to_string(policy);
    content.flags = std::move(in.flags);
    return make_propagation_report(content);
}

Json execute_calibrate(const RunConfig& cfg) {
    ParsedInput in = parse_input_file(InputKind::Calibrate, cfg.input_path);
    const auto& req = std::get<CalibrateRequest>(in.request);

    ReportContent content;
    content.command = "calibrate";
    content.flags = std::move(in.flags);

    if (cfg.policy == PolicyMode::Both) {
        txrf::SensitivityRecord complete = txrf::calibrate_sensitivity(req.inputs, txrf::Policy::Complete);
        txrf::SensitivityRecord truncated = txrf::calibrate_sensitivity(req.inputs, txrf::Policy::Truncated);
        double gap = txrf::budget_gap(complete, truncated);
        content.value = complete.sensitivity.value();
        content.budget = &complete.budget;
        content.policy = "both";
        content.gap = gap;
        content.truncated_budget = &truncated.budget;
        return make_propagation_report(content);
    }

    txrf::Policy policy =
        cfg.policy == PolicyMode::Truncated ? txrf::Policy::Truncated : txrf::Policy::Complete;
    txrf::SensitivityRecord record = txrf::calibrate_sensitivity(req.inputs, policy);
    content.value = record.sensitivity.value();
    content.budget = &record.budget;
    content.policy = txrf::to_string(policy);
    return make_propagation_report(content);
}

Json execute_mc_check(const RunConfig& cfg) {
    ParsedInput in = parse_input_file(InputKind::Propagate, cfg.input_path);
    const auto& req = std::get<PropagateRequest>(in.request);
    Model model = parse_model(req.model_source);

    McConfig mc_cfg;
    mc_cfg.sample_count = cfg.samples.value_or(kDefaultMcSamples);
    mc_cfg.seed = cfg.seed.value_or(coin::kDefaultSeed);

    PropagationResult linear = propagate_full(model, req.inputs);
    McResult mc = mc_propagate(model, req.inputs, mc_cfg);

    ReportContent content;
    content.command = "mc-check";
    content.value = linear.value;
    content.budget = &linear.budget;
    content.mc = McReportInfo{mc, mc_cfg.seed};
    content.flags = std::move(in.flags);
    return make_propagation_report(content);
}

Json execute_coin_demo(const RunConfig& cfg) {
    coin::SequenceTable table = coin::enumerate_sequences(cfg.coin_n);
    std::uint64_t seed = cfg.seed.value_or(coin::kDefaultSeed);
    std::uint64_t flips = cfg.samples.value_or(kDefaultMcSamples);
    coin::FrequencyEstimate sim = coin::simulate_flips(flips, seed);
    return make_coin_report(table, sim, seed, {});
}

Json execute_replicates(const RunConfig& cfg) {
    ParsedInput in = parse_input_file(InputKind::Replicates, cfg.input_path);
    const auto& req = std::get<ReplicatesRequest>(in.request);
    txrf::ReplicateReport rep = txrf::replicate_stats(req.values, req.reference);
    return make_replicates_report(rep, std::move(in.flags));
}

Json execute(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Propagate: return execute_propagate(cfg);
        case Command::Quantify: return execute_quantify(cfg);
        case Command::Calibrate: return execute_calibrate(cfg);
        case Command::McCheck: return execute_mc_check(cfg);
        case Command::CoinDemo: return execute_coin_demo(cfg);
        case Command::Replicates: return execute_replicates(cfg);
    }
    fail(errc::bad_request, "unknown command");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        Json report = execute(cfg);
        std::string text = serialize_report(report, cfg.format);
        if (!cfg.output_path.empty()) {
            std::ofstream file(cfg.output_path, std::ios::binary);
            if (!file) fail(errc::bad_request, cfg.output_path + ": cannot open output file");
            file << text;
            if (!file) fail(errc::bad_request, cfg.output_path + ": write failed");
        } else {
            out << text;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return is_validation_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace uncprop::cli
