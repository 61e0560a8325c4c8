// SPDX-License-Identifier: Apache-2.0

// Densities, monotone-piece decompositions, level sets, the generalized
// inverse, vertical densities, and the inverse-target CDF in both its
// decreasing and piecewise-general forms.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "grou/density.hpp"
#include "grou/targets.hpp"

using namespace grou;

TEST_CASE("support closure rules decide membership", "[density]") {
    const Support s(0.0, 1.0, true, false);
    CHECK(s.contains(0.0));
    CHECK_FALSE(s.contains(1.0));
    CHECK(s.contains(0.5));
    CHECK_FALSE(s.contains(-0.1));
    CHECK(Support::real().contains(1e308));
    CHECK(Support::nonneg().contains(0.0));
    CHECK(s.finite());
    CHECK(s.width() == 1.0);
}

TEST_CASE("density evaluation guards support and asymptotes", "[density]") {
    const auto snl = sqrt_neg_log_density();
    CHECK_THROWS_AS(snl(-1.0), std::domain_error);
    CHECK(std::isinf(snl.eval_for_membership(0.0)));
    CHECK(std::isnan(snl.eval_for_membership(-1.0)));
    const auto expo = exponential_density();
    CHECK(expo(2.0) == Catch::Approx(std::exp(-2.0)));
    CHECK(expo.eval_for_membership(2.0) == Catch::Approx(std::exp(-2.0)));
}

TEST_CASE("piece construction rejects non-monotone stretches", "[density]") {
    UnnormalizedDensity wavy;
    wavy.name = "wavy";
    wavy.pdf = [](double x) { return 2.0 + std::sin(x); };
    wavy.support = Support::closed(0.0, 6.0);
    CHECK_THROWS_AS(make_piece(wavy, wavy.support, Direction::increasing), config_error);
    // a genuinely decreasing stretch passes
    const auto expo = exponential_density();
    CHECK_NOTHROW(make_piece(expo, expo.support, Direction::decreasing));
}

TEST_CASE("branch inversion agrees between analytic and bracketed paths", "[density]") {
    const auto expo = exponential_density();
    const auto analytic = make_piece(expo, expo.support, Direction::decreasing, expo.inverse);
    const auto bracketed = make_piece(expo, expo.support, Direction::decreasing);
    for (double y : {0.9, 0.5, 0.1, 1e-3, 1e-8}) {
        const double want = -std::log(y);
        CHECK(invert_monotone(analytic, y) == Catch::Approx(want).margin(1e-12));
        CHECK(invert_monotone(bracketed, y) == Catch::Approx(want).margin(1e-9));
    }
}

TEST_CASE("piecewise assembly validates alternation and tiling", "[density]") {
    const auto pm = bimodal_quartic_pieces();
    REQUIRE(pm.pieces.size() == 4);
    CHECK(pm.eval(0.0) == Catch::Approx(std::exp(-4.0)));
    CHECK(pm.eval(2.0) == Catch::Approx(1.0));

    auto bad = pm.pieces;
    std::swap(bad[1], bad[2]); // breaks contiguity and alternation
    CHECK_THROWS_AS(make_piecewise(bad, pm.sup_value, "scrambled"), config_error);
}

TEST_CASE("level sets come back ordered, disjoint, and measured", "[density]") {
    const auto bq = bimodal_quartic_pieces();
    const auto ls = level_set(bq, std::exp(-1.0));
    REQUIRE(ls.size() == 2);
    CHECK(ls[0].hi <= ls[1].lo);
    double len = 0.0;
    for (const auto& iv : ls) len += iv.length();
    // exp(-(x^2-4)^2/4) >= e^-1 iff x^2 in [2, 6], width 2(sqrt 6 - sqrt 2)
    CHECK(len == Catch::Approx(2.0 * (std::sqrt(6.0) - std::sqrt(2.0))).margin(1e-9));
    CHECK(len == Catch::Approx(2.0705523608201655).margin(1e-9));

    const auto ep = exponential_pieces();
    const auto single = level_set(ep, 0.5);
    REQUIRE(single.size() == 1);
    CHECK(single[0].lo == 0.0);
    CHECK(single[0].hi == Catch::Approx(std::log(2.0)).margin(1e-12));

    CHECK(level_set(ep, 2.0).empty());
    CHECK_THROWS_AS(level_set(ep, 0.0), config_error);
}

TEST_CASE("generalized inverse measures the level width", "[density]") {
    const auto gp = gaussian_pieces();
    for (double y : {0.9, 0.5, 0.1}) {
        CHECK(generalized_inverse(gp, y) ==
              Catch::Approx(2.0 * std::sqrt(-2.0 * std::log(y))).margin(1e-9));
    }
    CHECK(generalized_inverse(gp, 1.0 + 1e-12) == 0.0);
}

TEST_CASE("vertical density recovers -u p'(u) from the inverse piece", "[density]") {
    // Inverse piece of the exponential target: u = -log(y), its own inverse
    // is exp(-u), so q(u) = u exp(-u).
    UnnormalizedDensity nl = neg_log_density();
    const auto inv_piece = make_piece(nl, Support::left_open(0.0, 1.0),
                                      Direction::decreasing, nl.inverse);
    CHECK(vertical_density(inv_piece, 1.0) == Catch::Approx(std::exp(-1.0)).margin(1e-9));
    CHECK(vertical_density(inv_piece, 0.5) ==
          Catch::Approx(0.5 * std::exp(-0.5)).margin(1e-9));
    CHECK(vertical_density(inv_piece, 1.0) == Catch::Approx(0.36787944115990179).margin(1e-11));
}

TEST_CASE("normalization integrates once and honors recorded masses", "[density]") {
    CHECK(normalization(exponential_density()) == 1.0); // recorded mass short-circuits
    CHECK(normalization(gaussian_density()) ==
          Catch::Approx(std::sqrt(2.0 * std::acos(-1.0))).epsilon(1e-12));
    CHECK(normalization(bimodal_quartic_density()) ==
          Catch::Approx(1.8956756659735376).epsilon(1e-8));
    CHECK_THROWS_AS(normalization(bimodal_quartic_density(), 0.5), config_error);
}

TEST_CASE("inverse-target cdf: decreasing form matches frozen references", "[density]") {
    const auto hg = half_gaussian_density();
    CHECK(cdf_of_inverse_target(hg, 0.0) == 0.0);
    CHECK(cdf_of_inverse_target(hg, 0.2) == Catch::Approx(0.450057771184547).margin(1e-9));
    CHECK(cdf_of_inverse_target(hg, 0.5) == Catch::Approx(0.8882870600806747).margin(1e-9));
    CHECK(cdf_of_inverse_target(hg, 0.9) == Catch::Approx(1.223034415969016).margin(1e-9));
    CHECK(cdf_of_inverse_target(hg, 1.0) == Catch::Approx(*hg.mass).margin(1e-12));
    CHECK(cdf_of_inverse_target(hg, 7.0) == Catch::Approx(*hg.mass).margin(1e-12));
    CHECK_THROWS_AS(cdf_of_inverse_target(hg, -0.1), config_error);
}

TEST_CASE("inverse-target cdf: general form handles two-sided targets", "[density]") {
    const auto g = gaussian_density();
    const auto gp = gaussian_pieces();
    // closed form: F_Y(y) = 2 y sqrt(-2 log y) + sqrt(2 pi) erfc(sqrt(-log y))
    for (double y : {0.05, 0.3, 0.7, 0.95}) {
        const double xy = std::sqrt(-2.0 * std::log(y));
        const double want = 2.0 * y * xy +
                            std::sqrt(2.0 * std::acos(-1.0)) * std::erfc(xy / std::sqrt(2.0));
        CHECK(cdf_of_inverse_target(gp, g, y) == Catch::Approx(want).margin(1e-9));
    }
    CHECK(cdf_of_inverse_target(gp, g, 0.0) == 0.0);
    CHECK(cdf_of_inverse_target(gp, g, 1.0) == Catch::Approx(*g.mass).margin(1e-12));

    // collapses to the decreasing form on a one-sided target
    const auto expo = exponential_density();
    const auto ep = exponential_pieces();
    for (double y : {0.9, 0.4, 0.05})
        CHECK(cdf_of_inverse_target(ep, expo, y) ==
              Catch::Approx(cdf_of_inverse_target(expo, y)).margin(1e-10));

    // needs the analytic cdf
    const auto bq = bimodal_quartic_density();
    CHECK_THROWS_AS(cdf_of_inverse_target(bimodal_quartic_pieces(), bq, 0.5), config_error);
}
