// SPDX-License-Identifier: Apache-2.0

// Diagnostics: equal-mass cut points, one- and two-sample chi-square tests
// (calibration and power), and Wilson intervals (frozen pin and coverage).

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "grou/diagnostics.hpp"
#include "grou/rng.hpp"
#include "grou/targets.hpp"

using namespace grou;

TEST_CASE("equal-mass cuts follow the analytic quantiles", "[diagnostics]") {
    const auto expo = exponential_density();
    const auto cuts = equiprobable_cuts(expo, 50);
    REQUIRE(cuts.size() == 49);
    for (int j : {1, 10, 25, 40, 49}) {
        const double want = -std::log(1.0 - double(j) / 50.0);
        CHECK(cuts[j - 1] == Catch::Approx(want).margin(1e-9));
    }
    CHECK(cuts[24] == Catch::Approx(std::log(2.0)).margin(1e-9));
    CHECK_THROWS_AS(equiprobable_cuts(expo, 1), config_error);

    // two-sided target with an analytic cdf
    const auto g = gaussian_density();
    const auto gcuts = equiprobable_cuts(g, 4);
    CHECK(gcuts[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(gcuts[0] == Catch::Approx(-gcuts[2]).margin(1e-9));

    // tabulated path: no analytic cdf on the bimodal quartic
    const auto bq = bimodal_quartic_density();
    const auto bcuts = equiprobable_cuts(bq, 10);
    REQUIRE(bcuts.size() == 9);
    CHECK(bcuts[4] == Catch::Approx(0.0).margin(1e-3)); // symmetric median
    for (std::size_t i = 1; i < bcuts.size(); ++i) CHECK(bcuts[i] > bcuts[i - 1]);
}

TEST_CASE("cut points ignore the normalization of the rule", "[diagnostics]") {
    const auto expo = exponential_density();
    UnnormalizedDensity doubled = expo;
    doubled.pdf = [](double x) { return 2.0 * std::exp(-x); };
    doubled.cdf = [](double x) { return 2.0 * (1.0 - std::exp(-x)); };
    doubled.mass = 2.0;
    doubled.sup_value = 2.0;
    const auto a = equiprobable_cuts(expo, 20);
    const auto b = equiprobable_cuts(doubled, 20);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == Catch::Approx(b[i]).margin(1e-9));
}

TEST_CASE("goodness of fit accepts its own law and rejects another", "[diagnostics]") {
    const auto expo = exponential_density();
    RngStream rng(21, 0);
    std::vector<double> xs;
    xs.reserve(50000);
    for (int i = 0; i < 50000; ++i) xs.push_back(rng.exponential());

    const auto ok = gof_chisq(xs, expo, 50);
    CHECK(ok.pass);
    CHECK(ok.dof == 49);
    CHECK(ok.p_value > 0.01);

    const auto wrong = gof_chisq(xs, half_gaussian_density(), 50);
    CHECK_FALSE(wrong.pass);
    CHECK(wrong.p_value < 1e-6);

    CHECK_THROWS_AS(gof_chisq({}, expo, 50), config_error);
}

TEST_CASE("two-sample test passes same-law pairs and flags different laws",
          "[diagnostics]") {
    RngStream r1(22, 0), r2(22, 1), r3(22, 2);
    std::vector<double> a, b, c;
    for (int i = 0; i < 30000; ++i) {
        a.push_back(r1.exponential());
        b.push_back(r2.exponential());
        c.push_back(std::fabs(r3.normal()));
    }
    CHECK(two_sample_chisq(a, b, 50).pass);
    CHECK_FALSE(two_sample_chisq(a, c, 50).pass);
    CHECK_THROWS_AS(two_sample_chisq(std::vector<double>(10, 0.5), b, 50), config_error);
}

TEST_CASE("chi-square p-values are calibrated under the null", "[diagnostics]") {
    // across 200 independent same-law pairs, p < 0.01 should be rare
    int rejections = 0;
    for (int k = 0; k < 200; ++k) {
        RngStream r1(500 + k, 0), r2(500 + k, 1);
        std::vector<double> a, b;
        for (int i = 0; i < 2000; ++i) {
            a.push_back(r1.exponential());
            b.push_back(r2.exponential());
        }
        if (!two_sample_chisq(a, b, 20).pass) ++rejections;
    }
    CHECK(rejections <= 8); // E = 2 under exact calibration
}

TEST_CASE("wilson interval matches the frozen pin and brackets the rate", "[diagnostics]") {
    const auto est = wilson_interval(65000, 100000);
    CHECK(est.rate == Catch::Approx(0.65).margin(1e-12));
    CHECK(est.ci_lo == Catch::Approx(0.64703805530653702).margin(1e-12));
    CHECK(est.ci_hi == Catch::Approx(0.65295042075968823).margin(1e-12));
    CHECK(est.ci_lo < est.rate);
    CHECK(est.rate < est.ci_hi);

    const auto zero = wilson_interval(0, 50);
    CHECK(zero.ci_lo == 0.0);
    CHECK(zero.ci_hi > 0.0);
    const auto full = wilson_interval(50, 50);
    CHECK(full.ci_hi == 1.0);
    CHECK_THROWS_AS(wilson_interval(1, 0), config_error);
}

TEST_CASE("wilson coverage stays near the nominal level", "[diagnostics]") {
    // 1000 binomial draws at p = 0.3, n = 1000: the 95% interval should
    // cover p roughly 950 times; [925, 975] is a generous band.
    const double p = 0.3;
    int covered = 0;
    for (int k = 0; k < 1000; ++k) {
        RngStream rng(9000 + k, 0);
        std::uint64_t acc = 0;
        for (int i = 0; i < 1000; ++i)
            if (rng.u01() < p) ++acc;
        const auto est = wilson_interval(acc, 1000);
        if (est.ci_lo <= p && p <= est.ci_hi) ++covered;
    }
    CHECK(covered >= 925);
    CHECK(covered <= 975);
}
