#include "uncprop/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uncprop/numfmt.hpp"

namespace uncprop::cli {

namespace {

Json num(double x) { return Json(round_sig9(x)); }

Json budget_to_json(const UncertaintyBudget& budget) {
    Json rows = Json::array();
    double sum = budget.combined * budget.combined;
    for (const auto& c : budget.contributions) {
        Json row;
        row["input"] = c.input;
        row["partial"] = num(c.partial);
        row["term"] = num(c.term);
        row["share_percent"] = num(sum > 0.0 ? 100.0 * c.term / sum : 0.0);
        rows.push_back(std::move(row));
    }
    return rows;
}

Json relative_or_null(double value, double combined, std::vector<std::string>& flags) {
    if (value == 0.0) {
        flags.push_back("relative-undefined:zero-value");
        return Json();
    }
    return num(combined / std::fabs(value));
}

}  // namespace

Json make_propagation_report(const ReportContent& content) {
    std::vector<std::string> flags = content.flags;

    Json report;
    report["command"] = content.command;
    report["value"] = num(content.value);
    report["combined_unc"] = num(content.budget->combined);
    report["relative_unc"] = relative_or_null(content.value, content.budget->combined, flags);
    report["budget"] = budget_to_json(*content.budget);
    if (content.policy) report["policy"] = *content.policy;
    if (content.gap) report["gap"] = num(*content.gap);
    if (content.truncated_budget) {
        Json t;
        t["combined_unc"] = num(content.truncated_budget->combined);
        t["relative_unc"] = relative_or_null(content.value, content.truncated_budget->combined, flags);
        t["budget"] = budget_to_json(*content.truncated_budget);
        report["truncated"] = std::move(t);
    }
    if (content.mc) {
        const McResult& r = content.mc->result;
        Json mc;
        mc["empirical_std"] = num(r.empirical_std);
        mc["agreement_ratio"] = r.agreement_ratio ? num(*r.agreement_ratio) : Json();
        mc["samples"] = r.sample_count;
        mc["seed"] = content.mc->seed;
        report["mc"] = std::move(mc);
        if (r.rejected_count > 0)
            flags.push_back("mc-rejected-samples:" + std::to_string(r.rejected_count));
    }
    report["flags"] = flags;
    return report;
}

Json make_coin_report(const coin::SequenceTable& table, const coin::FrequencyEstimate& sim,
                      std::uint64_t seed, std::vector<std::string> flags) {
    Json report;
    report["command"] = "coin-demo";
    report["n"] = table.n;

    Json rows = Json::array();
    for (const auto& r : table.rows) {
        double f = static_cast<double>(r.heads) / table.n;
        Json row;
        row["sequence"] = r.sequence;
        row["frequency"] = coin::frequency_fraction(r.heads, table.n);
        row["f"] = num(f);
        row["delta_f"] = num(coin::frequency_uncertainty(f, static_cast<std::uint64_t>(table.n)));
        row["degenerate"] = coin::degenerate_frequency(f);
        rows.push_back(std::move(row));
    }
    report["table"] = std::move(rows);

    Json s;
    s["flips"] = sim.n;
    s["seed"] = seed;
    s["f"] = num(sim.f);
    s["delta_f"] = num(sim.delta_f);
    s["interval_contains_half"] = std::fabs(sim.f - 0.5) <= 2.0 * sim.delta_f;
    report["simulation"] = std::move(s);

    flags.push_back("delta-f-convention:wald");
    report["flags"] = flags;
    return report;
}

Json make_replicates_report(const txrf::ReplicateReport& rep, std::vector<std::string> flags) {
    Json report;
    report["command"] = "replicates";
    report["mean"] = num(rep.mean);
    if (rep.bias) report["bias"] = num(*rep.bias);
    report["dispersion"] = num(rep.dispersion);
    report["n"] = rep.n;
    report["flags"] = flags;
    return report;
}

// ---------------------------------------------------------------------------
// Aligned text rendering (same data as the JSON form)

namespace {

std::string text_of(const Json& j) {
    if (j.is_null()) return "n/a";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    if (j.is_number_float()) return format_double(j.get<double>());
    return j.dump();
}

void put_kv(std::ostream& out, const std::string& key, const std::string& value, int indent = 0) {
    out << std::string(static_cast<std::size_t>(indent), ' ') << key;
    int pad = std::max(1, 18 - indent - static_cast<int>(key.size()));
    out << std::string(static_cast<std::size_t>(pad), ' ') << value << "\n";
}

void render_budget_table(std::ostream& out, const Json& rows, int indent) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"input", "partial", "term", "share_percent"});
    for (const auto& row : rows)
        cells.push_back({text_of(row.at("input")), text_of(row.at("partial")), text_of(row.at("term")),
                         text_of(row.at("share_percent"))});
    std::size_t widths[4] = {0, 0, 0, 0};
    for (const auto& row : cells)
        for (int c = 0; c < 4; ++c) widths[c] = std::max(widths[c], row[static_cast<std::size_t>(c)].size());
    for (const auto& row : cells) {
        out << std::string(static_cast<std::size_t>(indent), ' ');
        for (int c = 0; c < 4; ++c) {
            out << row[static_cast<std::size_t>(c)];
            if (c < 3) out << std::string(widths[c] - row[static_cast<std::size_t>(c)].size() + 2, ' ');
        }
        out << "\n";
    }
}

void render_flags(std::ostream& out, const Json& flags) {
    std::string joined;
    for (const auto& f : flags) {
        if (!joined.empty()) joined += ", ";
        joined += f.get<std::string>();
    }
    put_kv(out, "flags", joined.empty() ? "none" : joined);
}

std::string render_propagation_text(const Json& report) {
    std::ostringstream out;
    put_kv(out, "command", text_of(report.at("command")));
    put_kv(out, "value", text_of(report.at("value")));
    put_kv(out, "combined_unc", text_of(report.at("combined_unc")));
    put_kv(out, "relative_unc", text_of(report.at("relative_unc")));
    out << "budget\n";
    render_budget_table(out, report.at("budget"), 2);
    if (report.contains("policy")) put_kv(out, "policy", text_of(report.at("policy")));
    if (report.contains("gap")) put_kv(out, "gap", text_of(report.at("gap")));
    if (report.contains("truncated")) {
        const Json& t = report.at("truncated");
        out << "truncated\n";
        put_kv(out, "combined_unc", text_of(t.at("combined_unc")), 2);
        put_kv(out, "relative_unc", text_of(t.at("relative_unc")), 2);
        out << "  budget\n";
        render_budget_table(out, t.at("budget"), 4);
    }
    if (report.contains("mc")) {
        const Json& mc = report.at("mc");
        out << "mc\n";
        put_kv(out, "empirical_std", text_of(mc.at("empirical_std")), 2);
        put_kv(out, "agreement_ratio", text_of(mc.at("agreement_ratio")), 2);
        put_kv(out, "samples", mc.at("samples").dump(), 2);
        put_kv(out, "seed", mc.at("seed").dump(), 2);
    }
    render_flags(out, report.at("flags"));
    return out.str();
}

std::string render_coin_text(const Json& report) {
    std::ostringstream out;
    put_kv(out, "command", "coin-demo");
    out << "table  n=" << report.at("n").dump() << "\n";
    for (const auto& row : report.at("table")) {
        out << "  " << text_of(row.at("sequence")) << "  " << text_of(row.at("frequency")) << "  delta_f="
            << text_of(row.at("delta_f"));
        if (row.at("degenerate").get<bool>()) out << "  (degenerate)";
        out << "\n";
    }
    const Json& s = report.at("simulation");
    out << "simulation  flips=" << s.at("flips").dump() << "  seed=" << s.at("seed").dump() << "\n";
    put_kv(out, "f", text_of(s.at("f")), 2);
    put_kv(out, "delta_f", text_of(s.at("delta_f")), 2);
    put_kv(out, "contains_half", text_of(s.at("interval_contains_half")), 2);
    render_flags(out, report.at("flags"));
    return out.str();
}

std::string render_replicates_text(const Json& report) {
    std::ostringstream out;
    put_kv(out, "command", "replicates");
    put_kv(out, "mean", text_of(report.at("mean")));
    if (report.contains("bias")) put_kv(out, "bias", text_of(report.at("bias")));
    put_kv(out, "dispersion", text_of(report.at("dispersion")));
    put_kv(out, "n", report.at("n").dump());
    render_flags(out, report.at("flags"));
    return out.str();
}

}  // namespace

std::string serialize_report(const Json& report, OutputFormat format) {
    if (format == OutputFormat::Json) return report.dump(2) + "\n";
    std::string command = report.at("command").get<std::string>();
    if (command == "coin-demo") return render_coin_text(report);
    if (command == "replicates") return render_replicates_text(report);
    return render_propagation_text(report);
}

}  // namespace uncprop::cli
