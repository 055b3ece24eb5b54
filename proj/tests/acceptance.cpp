// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Usage: acceptance_tests <path-to-cli-binary>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "model_gen.hpp"
#include "uncprop/coinflip.hpp"
#include "uncprop/error.hpp"
#include "uncprop/expression.hpp"
#include "uncprop/montecarlo.hpp"
#include "uncprop/propagation.hpp"
#include "uncprop/txrf.hpp"

using namespace uncprop;
using Json = nlohmann::ordered_json;

namespace {

std::string g_cli_path;

struct CliResult {
    int status = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string command = "'" + g_cli_path + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    CliResult result;
    if (!pipe) return result;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), got);
    int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& message) {
        if (!ok && pass) {
            pass = false;
            detail = message;
        }
    }
};

// --- 1: the 2^3 sequence table through the CLI, exact content and order ----
Outcome criterion_table() {
    Outcome out;
    CliResult text = run_cli("coin-demo --n 3 --samples 1000 --format text");
    out.require(text.status == 0, "coin-demo exited with " + std::to_string(text.status));
    if (!out.pass) return out;

    const std::array<std::pair<std::string, std::string>, 8> expected{{{"HHH", "1"},
                                                                       {"HHT", "2/3"},
                                                                       {"HTH", "2/3"},
                                                                       {"HTT", "1/3"},
                                                                       {"THH", "2/3"},
                                                                       {"THT", "1/3"},
                                                                       {"TTH", "1/3"},
                                                                       {"TTT", "0"}}};

    std::vector<std::pair<std::string, std::string>> rows;
    std::istringstream lines(text.output);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string seq, freq;
        if (!(fields >> seq >> freq)) continue;
        if (seq.size() == 3 && seq.find_first_not_of("HT") == std::string::npos) rows.emplace_back(seq, freq);
    }
    out.require(rows.size() == 8, "expected 8 sequence rows, saw " + std::to_string(rows.size()));
    if (!out.pass) return out;
    for (std::size_t i = 0; i < 8; ++i)
        out.require(rows[i] == expected[i],
                    "row " + std::to_string(i) + " is " + rows[i].first + " " + rows[i].second + ", expected " +
                        expected[i].first + " " + expected[i].second);

    // Same table through the JSON report.
    CliResult json = run_cli("coin-demo --n 3 --samples 1000");
    out.require(json.status == 0, "json coin-demo failed");
    if (out.pass) {
        Json report = Json::parse(json.output);
        out.require(report.at("table").size() == 8, "json table row count");
        for (std::size_t i = 0; i < 8; ++i) {
            const auto& row = report.at("table")[i];
            out.require(row.at("sequence") == expected[i].first && row.at("frequency") == expected[i].second,
                        "json row " + std::to_string(i) + " mismatch");
        }
    }
    return out;
}

// --- 2: engine vs explicit quadrature on the five-input ratio --------------
Outcome criterion_closed_form() {
    Outcome out;
    Model m = parse_model("Cp * Ny * Sp / (Np * Sy)");
    InputMap in{{"Cp", {10, 0.1}}, {"Ny", {2000, 20}}, {"Sp", {1, 0.01}}, {"Np", {1000, 10}}, {"Sy", {2, 0.02}}};
    PropagationResult r = propagate_full(m, in);
    double engine_rel = r.budget.combined / std::fabs(r.value);

    std::vector<RelativeUncertainty> rels;
    for (const auto& [name, meas] : in) rels.push_back(relative(meas));
    double quadrature_rel = combine_relative(rels).ratio;

    out.require(close_rel(engine_rel, quadrature_rel, 1e-12),
                "engine and quadrature disagree: " + std::to_string(engine_rel) + " vs " +
                    std::to_string(quadrature_rel));
    out.require(close_rel(engine_rel, std::sqrt(5.0) * 0.01, 1e-12), "relative combined is not sqrt(5)%");
    return out;
}

// --- 3: Monte Carlo agreement through the mc-check command ----------------
Outcome criterion_mc() {
    Outcome out;
    std::string input = "/tmp/uncprop_acceptance_mc.json";
    {
        std::ofstream f(input);
        f << R"json({"model": "Cp * Ny * Sp / (Np * Sy)", "inputs": {
               "Cp": {"value": 10, "unc": 0.2}, "Ny": {"value": 2000, "unc": 30},
               "Sp": {"value": 1, "unc": 0.01}, "Np": {"value": 1000, "unc": 5},
               "Sy": {"value": 2, "unc": 0.04}}})json";
    }
    CliResult r = run_cli("mc-check --input " + input + " --samples 1000000 --seed 20117");
    std::remove(input.c_str());
    out.require(r.status == 0, "mc-check exited with " + std::to_string(r.status));
    if (!out.pass) return out;

    Json report = Json::parse(r.output);
    double ratio = report.at("mc").at("agreement_ratio").get<double>();
    out.require(ratio >= 0.98 && ratio <= 1.02, "agreement_ratio " + std::to_string(ratio) + " outside [0.98, 1.02]");
    return out;
}

// --- 4: complete vs truncated sensitivity budgets --------------------------
Outcome criterion_policies() {
    Outcome out;
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> value_dist(0.5, 5000.0);
    std::uniform_real_distribution<double> rel_dist(1e-4, 0.05);

    int strict = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        auto mk = [&] {
            double v = value_dist(rng);
            return Measurement(v, rel_dist(rng) * v);
        };
        txrf::CalibrationInputs inputs{mk(), mk(), mk(), mk(), mk()};
        auto complete = txrf::calibrate_sensitivity(inputs, txrf::Policy::Complete);
        auto truncated = txrf::calibrate_sensitivity(inputs, txrf::Policy::Truncated);
        if (complete.sensitivity.unc() > truncated.sensitivity.unc()) ++strict;
    }
    out.require(strict == trials,
                "COMPLETE > TRUNCATED in only " + std::to_string(strict) + "/" + std::to_string(trials));

    // Exact reference sensitivity: the two policies coincide.
    for (int t = 0; t < 100; ++t) {
        auto mk = [&] {
            double v = value_dist(rng);
            return Measurement(v, rel_dist(rng) * v);
        };
        txrf::CalibrationInputs inputs{Measurement(value_dist(rng), 0.0), mk(), mk(), mk(), mk()};
        auto complete = txrf::calibrate_sensitivity(inputs, txrf::Policy::Complete);
        auto truncated = txrf::calibrate_sensitivity(inputs, txrf::Policy::Truncated);
        out.require(std::fabs(complete.sensitivity.unc() - truncated.sensitivity.unc()) < 1e-15,
                    "policies differ with an exact reference sensitivity");
    }

    // The worked pair: sqrt(8e-4) vs 0.02 relative.
    txrf::CalibrationInputs worked{Measurement(1.0, 0.02), Measurement(1000, 10), Measurement(10, 0.1),
                                   Measurement(2000, 20), Measurement(20, 0.2)};
    auto complete = txrf::calibrate_sensitivity(worked, txrf::Policy::Complete);
    auto truncated = txrf::calibrate_sensitivity(worked, txrf::Policy::Truncated);
    double rel_c = complete.sensitivity.unc() / complete.sensitivity.value();
    double rel_t = truncated.sensitivity.unc() / truncated.sensitivity.value();
    out.require(close_rel(rel_c, std::sqrt(8e-4), 1e-12), "worked pair complete side mismatch");
    out.require(close_rel(rel_t, 0.02, 1e-12), "worked pair truncated side mismatch");
    out.require(std::fabs(rel_c - 0.0282843) < 5e-8 && std::fabs(rel_t - 0.02) < 1e-15,
                "worked pair does not reproduce 0.0282843 vs 0.02");
    out.require(txrf::budget_gap(complete, truncated) > 0.0, "worked pair gap is not positive");
    return out;
}

// --- 5: forward-mode gradients vs central finite differences ---------------
Outcome criterion_gradients() {
    Outcome out;
    std::mt19937_64 rng(505);
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        auto [model, inputs] = testutil::random_conditioned_case(rng, 6);
        Gradient g = evaluate_with_partials(model, inputs);
        std::vector<double> fd = testutil::finite_difference_partials(model, inputs);
        for (std::size_t i = 0; i < fd.size(); ++i) {
            double ad = g.partials[i].second;
            if (std::max(std::fabs(ad), std::fabs(fd[i])) < 1e-8) continue;
            out.require(close_rel(ad, fd[i], 1e-6),
                        "gradient mismatch on " + render_model(model) + " input " + model.inputs()[i]);
        }
    }
    return out;
}

// --- 6: calibrate -> quantify round trip -----------------------------------
Outcome criterion_round_trip() {
    Outcome out;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> value_dist(0.5, 5000.0);
    std::uniform_real_distribution<double> rel_dist(1e-4, 0.05);
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        auto mk = [&] {
            double v = value_dist(rng);
            return Measurement(v, rel_dist(rng) * v);
        };
        txrf::CalibrationInputs cal{mk(), mk(), mk(), mk(), mk()};
        auto s_y = txrf::calibrate_sensitivity(cal, txrf::Policy::Complete, "analyte");

        UncertaintyBudget ref_budget;
        ref_budget.combined = cal.ref_sensitivity.unc();
        ref_budget.contributions.push_back(
            {"supplied", 1.0, cal.ref_sensitivity.unc() * cal.ref_sensitivity.unc()});
        txrf::SensitivityRecord s_p{"ref", cal.ref_sensitivity, txrf::Policy::Complete, ref_budget};

        txrf::TxrfSample sample{"analyte", cal.element_intensity, "ref", cal.ref_intensity,
                                cal.ref_concentration};
        auto [c, budget] = txrf::quantify(sample, s_y, s_p);
        out.require(close_rel(c.value(), cal.element_concentration.value(), 1e-12),
                    "round trip missed at trial " + std::to_string(t));
    }
    return out;
}

// --- 7: convergence and coverage for the shipped seed ----------------------
Outcome criterion_convergence() {
    Outcome out;
    coin::FrequencyEstimate est = coin::simulate_flips(1'000'000, coin::kDefaultSeed);
    out.require(std::fabs(est.f - 0.5) < 0.002,
                "f = " + std::to_string(est.f) + " misses the 0.002 band at n = 1e6");

    const int batches = 10'000;
    int covered = 0;
    for (int i = 0; i < batches; ++i) {
        coin::FrequencyEstimate batch = coin::simulate_flips(100, coin::kDefaultSeed + 1 + i);
        if (std::fabs(batch.f - 0.5) <= 2.0 * batch.delta_f) ++covered;
    }
    out.require(covered >= 9300,
                "coverage " + std::to_string(covered) + "/10000 below the 93% floor");
    return out;
}

// --- 8: parser round trip over a generative corpus + malformed fixtures ----
Outcome criterion_parser() {
    Outcome out;
    std::mt19937_64 rng(808);
    const int corpus = 10'000;
    for (int t = 0; t < corpus; ++t) {
        Model m(testutil::random_expr(rng, 6));
        std::string text = render_expression(*m.root());
        Model first = parse_model(text);
        Model second = parse_model(render_model(first));
        out.require(structurally_equal(*first.root(), *second.root()),
                    "parse-render-parse changed the tree for: " + text);
        if (!out.pass) break;
    }

    const char* malformed[] = {"",      "x y",   "x +",   "(x + y", ")x(",   "x ~ y", "x ^ 2.5",
                               "x ^",   "x^(2)", "x^2^3", "1e",     "1.2.3", "* x",   "x + + y",
                               "x ^ y", "(((x)", "x)",    "x + ()", "x & y", "§"};
    for (const char* source : malformed) {
        try {
            parse_model(source);
            out.require(false, std::string("malformed model accepted: '") + source + "'");
        } catch (const Error& e) {
            out.require(e.code() == errc::syntax_error && e.line() >= 1 && e.column() >= 1,
                        std::string("diagnostic without a position for: '") + source + "'");
        } catch (...) {
            out.require(false, std::string("wrong exception type for: '") + source + "'");
        }
    }
    return out;
}

struct Criterion {
    int number;
    std::string name;
    double time_limit_s;  // 0 = unbounded
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_cli_path = argv[1];
    } else if (const char* env = std::getenv("UNCPROP_CLI")) {
        g_cli_path = env;
    } else {
        std::cerr << "usage: acceptance_tests <path-to-cli>\n";
        return 2;
    }

    const std::vector<Criterion> criteria = {
        {1, "sequence table n=3 through the CLI, exact rows in order", 1.0, criterion_table},
        {2, "five 1% inputs: engine vs quadrature, sqrt(5)% to 1e-12", 1.0, criterion_closed_form},
        {3, "mc-check agreement_ratio in [0.98, 1.02] at n=1e6", 10.0, criterion_mc},
        {4, "COMPLETE > TRUNCATED in 1000/1000 trials; worked pair 0.0282843 vs 0.02", 5.0, criterion_policies},
        {5, "forward-mode partials vs finite differences, 500 random models", 10.0, criterion_gradients},
        {6, "calibrate->quantify round trip to 1e-12 over 1000 trials", 5.0, criterion_round_trip},
        {7, "fair-coin convergence and 2-sigma coverage for the shipped seed", 30.0, criterion_convergence},
        {8, "parser round trip over 10^4 models; malformed fixtures positioned", 0.0, criterion_parser},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("unexpected exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0.0 && elapsed > c.time_limit_s) {
            outcome.pass = false;
            outcome.detail = "exceeded the " + std::to_string(c.time_limit_s) + "s budget";
        }

        char timing[32];
        std::snprintf(timing, sizeof(timing), "%6.2fs", elapsed);
        std::cout << (outcome.pass ? "PASS" : "FAIL") << "  [" << c.number << "] " << c.name << "  ("
                  << timing << ")";
        if (!outcome.pass) std::cout << " — " << outcome.detail;
        std::cout << "\n";
        if (!outcome.pass) ++failures;
    }

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
