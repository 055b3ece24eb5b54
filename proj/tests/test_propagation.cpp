#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "model_gen.hpp"
#include "testutil.hpp"
#include "uncprop/error.hpp"
#include "uncprop/propagation.hpp"

using namespace uncprop;
using testutil::close_rel;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return errc::bad_request;
}

}  // namespace

TEST_CASE("product rule partials") {
    Model m = parse_model("x1 * x2");
    InputMap in{{"x1", {2, 0.02}}, {"x2", {5, 0.05}}};
    Gradient g = evaluate_with_partials(m, in);
    CHECK(g.value == 10.0);
    CHECK(g.partial("x1") == 5.0);
    CHECK(g.partial("x2") == 2.0);
}

TEST_CASE("identity model") {
    Model m = parse_model("x");
    Gradient g = evaluate_with_partials(m, {{"x", {7, 0.1}}});
    CHECK(g.value == 7.0);
    CHECK(g.partial("x") == 1.0);
}

TEST_CASE("quantification-ratio partials match the finite-difference oracle") {
    Model m = parse_model("Cp * Ny * Sp / (Np * Sy)");
    InputMap in{{"Cp", {10, 0}}, {"Ny", {2000, 0}}, {"Sp", {1, 0}}, {"Np", {1000, 0}}, {"Sy", {2, 0}}};
    Gradient g = evaluate_with_partials(m, in);
    CHECK(g.value == doctest::Approx(10.0).epsilon(1e-15));

    std::vector<double> fd = testutil::finite_difference_partials(m, in);
    for (std::size_t i = 0; i < m.inputs().size(); ++i) {
        CAPTURE(m.inputs()[i]);
        CHECK(close_rel(g.partials[i].second, fd[i], 1e-6));
    }
}

TEST_CASE("3-4-5 quadrature") {
    Model m = parse_model("x1 + x2");
    UncertaintyBudget b = propagate(m, {{"x1", {100, 3}}, {"x2", {7, 4}}});
    CHECK(b.combined == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("product model combined uncertainty, closed form") {
    Model m = parse_model("x1 * x2");
    UncertaintyBudget b = propagate(m, {{"x1", {2, 0.02}}, {"x2", {5, 0.05}}});
    CHECK(b.combined == doctest::Approx(std::sqrt(0.02)).epsilon(1e-15));
    REQUIRE(b.contributions.size() == 2);
    CHECK(b.find("x1")->term == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(b.find("x2")->term == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("five inputs at 1 percent give sqrt(5) percent relative") {
    Model m = parse_model("Cp * Ny * Sp / (Np * Sy)");
    InputMap in{{"Cp", {10, 0.1}}, {"Ny", {2000, 20}}, {"Sp", {1, 0.01}}, {"Np", {1000, 10}}, {"Sy", {2, 0.02}}};
    PropagationResult r = propagate_full(m, in);
    double rel = r.budget.combined / std::fabs(r.value);
    CHECK(close_rel(rel, std::sqrt(5.0) * 0.01, 1e-12));
}

TEST_CASE("combine_relative") {
    std::vector<RelativeUncertainty> five(5, RelativeUncertainty{0.01});
    CHECK(combine_relative(five).ratio == doctest::Approx(0.0223607).epsilon(1e-5));
    CHECK(close_rel(combine_relative(five).ratio, std::sqrt(5.0) * 0.01, 1e-15));

    std::vector<RelativeUncertainty> zeros(3, RelativeUncertainty{0.0});
    CHECK(combine_relative(zeros).ratio == 0.0);

    std::vector<RelativeUncertainty> pyth{{0.03}, {0.04}};
    CHECK(combine_relative(pyth).ratio == doctest::Approx(0.05).epsilon(1e-15));

    CHECK(code_of([] { combine_relative({}); }) == errc::empty_list);
}

TEST_CASE("input checking") {
    Model m = parse_model("x + y");
    CHECK(code_of([&] { evaluate_with_partials(m, {{"x", {1, 0}}}); }) == errc::missing_input);
    CHECK(code_of([&] {
              evaluate_with_partials(m, {{"x", {1, 0}}, {"y", {1, 0}}, {"z", {1, 0}}});
          }) == errc::unused_input);

    try {
        evaluate_with_partials(m, {{"x", {1, 0}}});
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("y") != std::string::npos);
    }
}

TEST_CASE("division by zero and the 1e-300 floor") {
    Model m = parse_model("x / d");
    CHECK(code_of([&] { evaluate(m, {{"x", {1, 0}}, {"d", {0, 0}}}); }) == errc::division_by_zero);
    CHECK(code_of([&] { evaluate(m, {{"x", {1, 0}}, {"d", {1e-310, 0}}}); }) == errc::division_by_zero);
    CHECK(evaluate(m, {{"x", {1, 0}}, {"d", {1e-100, 0}}}) == doctest::Approx(1e100).epsilon(1e-12));

    Model diff = parse_model("x / (y - y)");
    CHECK(code_of([&] { evaluate(diff, {{"x", {1, 0}}, {"y", {3, 0}}}); }) == errc::division_by_zero);

    Model neg_pow = parse_model("x^-2");
    CHECK(code_of([&] { evaluate(neg_pow, {{"x", {0, 0}}}); }) == errc::division_by_zero);
}

TEST_CASE("integer powers") {
    Model m = parse_model("x^3");
    Gradient g = evaluate_with_partials(m, {{"x", {2, 0}}});
    CHECK(g.value == 8.0);
    CHECK(g.partial("x") == 12.0);

    Model zero = parse_model("x^0");
    Gradient gz = evaluate_with_partials(zero, {{"x", {0, 0}}});
    CHECK(gz.value == 1.0);  // 0^0 == 1 convention
    CHECK(gz.partial("x") == 0.0);

    Model inv = parse_model("x^-1");
    Gradient gi = evaluate_with_partials(inv, {{"x", {4, 0}}});
    CHECK(gi.value == 0.25);
    CHECK(gi.partial("x") == -0.0625);
}

TEST_CASE("overflow is reported, not returned") {
    Model m = parse_model("x * x * x * x");
    CHECK(code_of([&] { evaluate(m, {{"x", {1e100, 0}}}); }) == errc::overflow);
}

TEST_CASE("gradient correctness against central finite differences") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto [model, inputs] = testutil::random_conditioned_case(rng);
        Gradient g = evaluate_with_partials(model, inputs);
        std::vector<double> fd = testutil::finite_difference_partials(model, inputs);
        for (std::size_t i = 0; i < fd.size(); ++i) {
            double ad = g.partials[i].second;
            if (std::max(std::fabs(ad), std::fabs(fd[i])) < 1e-8) continue;
            CAPTURE(render_model(model));
            CAPTURE(model.inputs()[i]);
            CHECK(close_rel(ad, fd[i], 1e-6));
        }
    }
}

TEST_CASE("quadrature consistency on product/quotient chains") {
    // For pure products/quotients the relative uncertainties add in
    // quadrature; the generic engine must agree with that closed form.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> value_dist(0.3, 4.0);
    std::uniform_real_distribution<double> rel_dist(0.0, 0.05);
    std::uniform_int_distribution<int> length_dist(2, 6);
    std::uniform_int_distribution<int> op_dist(0, 1);

    for (int trial = 0; trial < 300; ++trial) {
        int length = length_dist(rng);
        std::string source = "x0";
        for (int i = 1; i < length; ++i)
            source += (op_dist(rng) ? " * " : " / ") + ("x" + std::to_string(i));
        Model model = parse_model(source);

        InputMap inputs;
        std::vector<RelativeUncertainty> rels;
        for (const auto& name : model.inputs()) {
            double v = value_dist(rng);
            double rel = rel_dist(rng);
            inputs.emplace(name, Measurement(v, rel * v));
            rels.push_back(RelativeUncertainty{rel});
        }

        PropagationResult r = propagate_full(model, inputs);
        double closed_form = combine_relative(rels).ratio * std::fabs(r.value);
        CAPTURE(source);
        CHECK(close_rel(r.budget.combined, closed_form, 1e-12));
    }
}

TEST_CASE("budget decomposition: combined^2 equals the term sum within 4 ulps") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        auto [model, inputs] = testutil::random_conditioned_case(rng);
        UncertaintyBudget b = propagate(model, inputs);
        double sum = 0.0;
        for (const auto& c : b.contributions) sum += c.term;
        CHECK(testutil::ulp_distance(b.combined * b.combined, sum) <= 4);
        CHECK(b.contributions.size() == model.inputs().size());
    }
}

TEST_CASE("zero-uncertainty absorption removes exactly one term") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        auto [model, inputs] = testutil::random_conditioned_case(rng);
        if (model.inputs().empty()) continue;
        UncertaintyBudget before = propagate(model, inputs);

        std::uniform_int_distribution<std::size_t> pick(0, model.inputs().size() - 1);
        std::string victim = model.inputs()[pick(rng)];
        InputMap zeroed = inputs;
        zeroed.at(victim) = Measurement(inputs.at(victim).value(), 0.0);
        UncertaintyBudget after = propagate(model, zeroed);

        for (std::size_t i = 0; i < before.contributions.size(); ++i) {
            const auto& a = before.contributions[i];
            const auto& b = after.contributions[i];
            CHECK(a.input == b.input);
            CHECK(a.partial == b.partial);  // bit-identical: value path unchanged
            if (a.input == victim)
                CHECK(b.term == 0.0);
            else
                CHECK(a.term == b.term);
        }
    }
}

TEST_CASE("monotonicity: a strictly positive extra term strictly increases combined") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unc_dist(0.001, 0.1);
    for (int trial = 0; trial < 300; ++trial) {
        auto [model, inputs] = testutil::random_conditioned_case(rng);
        if (model.inputs().empty()) continue;

        std::uniform_int_distribution<std::size_t> pick(0, model.inputs().size() - 1);
        std::string grown = model.inputs()[pick(rng)];

        InputMap zeroed = inputs;
        zeroed.at(grown) = Measurement(inputs.at(grown).value(), 0.0);
        InputMap bumped = inputs;
        bumped.at(grown) = Measurement(inputs.at(grown).value(), unc_dist(rng));

        UncertaintyBudget without = propagate(model, zeroed);
        UncertaintyBudget with = propagate(model, bumped);
        double extra = with.find(grown)->term;
        // Strictness needs the extra term to be positive and representable
        // next to the remaining sum.
        if (extra <= 1e-9 * without.combined * without.combined) continue;
        CAPTURE(render_model(model));
        CHECK(with.combined > without.combined);
    }
}
