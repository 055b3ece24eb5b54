#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "uncprop/error.hpp"
#include "uncprop/measurement.hpp"

using namespace uncprop;

TEST_CASE("construction keeps value and uncertainty unchanged") {
    Measurement m(10.0, 0.1);
    CHECK(m.value() == 10.0);
    CHECK(m.unc() == 0.1);

    Measurement exact(0.5, 0.0);
    CHECK(exact.value() == 0.5);
    CHECK(exact.unc() == 0.0);
}

TEST_CASE("construction rejects bad components") {
    CHECK_THROWS_WITH_AS(Measurement(1.0, -0.1), doctest::Contains("-0.1"), Error);
    try {
        Measurement(1.0, -0.1);
    } catch (const Error& e) {
        CHECK(e.code() == errc::negative_uncertainty);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    for (auto [v, u] : {std::pair{nan, 0.1}, {1.0, nan}, {inf, 0.1}, {1.0, inf}}) {
        CAPTURE(v);
        CAPTURE(u);
        try {
            Measurement m(v, u);
            FAIL("expected rejection");
        } catch (const Error& e) {
            CHECK(e.code() == errc::non_finite);
        }
    }
}

TEST_CASE("relative uncertainty is the hand-division ratio") {
    CHECK(relative(Measurement(100, 1)).ratio == 0.01);
    CHECK(relative(Measurement(-50, 1)).ratio == 0.02);  // |value| convention

    try {
        relative(Measurement(0, 1));
        FAIL("expected ZeroValue");
    } catch (const Error& e) {
        CHECK(e.code() == errc::zero_value);
    }
}

TEST_CASE("relative matches hand division bit for bit on random inputs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> value_dist(-1e6, 1e6);
    std::uniform_real_distribution<double> unc_dist(0.0, 1e3);
    for (int i = 0; i < 1000; ++i) {
        double v = value_dist(rng);
        if (v == 0.0) continue;
        double u = unc_dist(rng);
        CHECK(relative(Measurement(v, u)).ratio == u / std::fabs(v));
    }
}

TEST_CASE("relative uncertainty is invariant under unit changes") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> value_dist(0.1, 1e3);
    std::uniform_real_distribution<double> unc_dist(0.0, 10.0);
    std::uniform_real_distribution<double> scale_dist(-1e3, 1e3);

    for (int i = 0; i < 1000; ++i) {
        double v = value_dist(rng);
        double u = unc_dist(rng);
        double k = scale_dist(rng);
        if (k == 0.0) continue;
        Measurement m(v, u);
        Measurement scaled(v * k, u * std::fabs(k));
        CHECK(relative(scaled).ratio == doctest::Approx(relative(m).ratio).epsilon(1e-14));
    }

    // Power-of-two scales are exact.
    Measurement m(3.7, 0.21);
    for (double k : {2.0, 4.0, 0.5, 1024.0, 0.0009765625}) {
        Measurement scaled(m.value() * k, m.unc() * k);
        CHECK(relative(scaled).ratio == relative(m).ratio);
    }
}
