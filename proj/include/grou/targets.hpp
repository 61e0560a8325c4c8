// SPDX-License-Identifier: Apache-2.0
#pragma once

// Built-in target densities. Every density is unnormalized; analytic
// inverses, CDFs and masses are attached where closed forms exist so the
// dual code paths (analytic vs bisection/quadrature) can be cross-checked.

#include <cmath>
#include <utility>

#include "density.hpp"

namespace grou {

inline constexpr double kSqrtPiOver2 = 1.2533141373155003; // sqrt(pi/2)

// p(x) = exp(-x^2 / (2 sigma^2)) on [0, inf)
inline UnnormalizedDensity half_gaussian_density(double sigma = 1.0) {
    if (!(sigma > 0.0)) throw config_error("half-gaussian: sigma must be > 0");
    UnnormalizedDensity d;
    d.name = "half-gaussian";
    d.support = Support::nonneg();
    d.pdf = [sigma](double x) { return std::exp(-x * x / (2.0 * sigma * sigma)); };
    d.sup_value = 1.0;
    d.derivative = [sigma](double x) {
        return -x / (sigma * sigma) * std::exp(-x * x / (2.0 * sigma * sigma));
    };
    d.inverse = [sigma](double y) { return sigma * std::sqrt(-2.0 * std::log(y)); };
    d.cdf = [sigma](double x) {
        return sigma * kSqrtPiOver2 * std::erf(x / (sigma * std::sqrt(2.0)));
    };
    d.mass = sigma * kSqrtPiOver2;
    return d;
}

// p(x) = exp(-rate * x) on [0, inf)
inline UnnormalizedDensity exponential_density(double rate = 1.0) {
    if (!(rate > 0.0)) throw config_error("exponential: rate must be > 0");
    UnnormalizedDensity d;
    d.name = "exponential";
    d.support = Support::nonneg();
    d.pdf = [rate](double x) { return std::exp(-rate * x); };
    d.sup_value = 1.0;
    d.derivative = [rate](double x) { return -rate * std::exp(-rate * x); };
    d.inverse = [rate](double y) { return -std::log(y) / rate; };
    d.cdf = [rate](double x) { return (1.0 - std::exp(-rate * x)) / rate; };
    d.mass = 1.0 / rate;
    return d;
}

// p(x) = exp(-x^2/2) on the whole line
inline UnnormalizedDensity gaussian_density() {
    UnnormalizedDensity d;
    d.name = "gaussian";
    d.support = Support::real();
    d.pdf = [](double x) { return std::exp(-0.5 * x * x); };
    d.sup_value = 1.0;
    d.derivative = [](double x) { return -x * std::exp(-0.5 * x * x); };
    d.cdf = [](double x) {
        return kSqrtPiOver2 * (1.0 + std::erf(x / std::sqrt(2.0)));
    };
    d.mass = std::sqrt(2.0 * 3.14159265358979323846);
    return d;
}

// p(x) = exp(-(x^2 - 4)^2 / 4) on the whole line; modes at +-2
inline UnnormalizedDensity bimodal_quartic_density() {
    UnnormalizedDensity d;
    d.name = "bimodal-quartic";
    d.support = Support::real();
    d.pdf = [](double x) {
        const double t = x * x - 4.0;
        return std::exp(-0.25 * t * t);
    };
    d.sup_value = 1.0;
    d.derivative = [](double x) {
        const double t = x * x - 4.0;
        return -x * t * std::exp(-0.25 * t * t);
    };
    return d;
}

// p(x) = sqrt(-2 log x) on (0, 1]; diverges at 0, decreasing.
// Closed-form mass and CDF: with a = sqrt(-2 log x),
//   F(x) = a x + sqrt(pi/2) erfc(a / sqrt 2),   F(1) = sqrt(pi/2).
inline UnnormalizedDensity sqrt_neg_log_density() {
    UnnormalizedDensity d;
    d.name = "sqrt-neg-log";
    d.support = Support::left_open(0.0, 1.0);
    d.pdf = [](double x) { return std::sqrt(-2.0 * std::log(x)); };
    d.asymptotes = {0.0};
    d.derivative = [](double x) {
        const double a = std::sqrt(-2.0 * std::log(x));
        return a > 0.0 ? -1.0 / (x * a) : -kInf;
    };
    d.inverse = [](double y) { return std::exp(-0.5 * y * y); };
    d.cdf = [](double x) {
        if (x >= 1.0) return kSqrtPiOver2;
        const double a = std::sqrt(-2.0 * std::log(x));
        return a * x + kSqrtPiOver2 * std::erfc(a / std::sqrt(2.0));
    };
    d.mass = kSqrtPiOver2;
    return d;
}

// p(x) = (1 + x)^{-3/2} on [0, inf); tail too fat for a bounded
// ratio-of-uniforms region under g(u) = u^2/2.
inline UnnormalizedDensity heavy_tail_density() {
    UnnormalizedDensity d;
    d.name = "heavy-tail";
    d.support = Support::nonneg();
    d.pdf = [](double x) { return std::pow(1.0 + x, -1.5); };
    d.sup_value = 1.0;
    d.derivative = [](double x) { return -1.5 * std::pow(1.0 + x, -2.5); };
    d.inverse = [](double y) { return std::pow(y, -2.0 / 3.0) - 1.0; };
    d.cdf = [](double x) { return 2.0 * (1.0 - 1.0 / std::sqrt(1.0 + x)); };
    d.mass = 2.0;
    return d;
}

// p(x) = 1 / (1 + x^2) on the whole line (quadratic tail, boundary case).
inline UnnormalizedDensity cauchy_density() {
    UnnormalizedDensity d;
    d.name = "cauchy";
    d.support = Support::real();
    d.pdf = [](double x) { return 1.0 / (1.0 + x * x); };
    d.sup_value = 1.0;
    d.derivative = [](double x) {
        const double t = 1.0 + x * x;
        return -2.0 * x / (t * t);
    };
    d.cdf = [](double x) { return std::atan(x) + 0.5 * 3.14159265358979323846; };
    d.mass = 3.14159265358979323846;
    return d;
}

// p(y) = -log y on (0, 1]; this is the inverse rule of the unit exponential.
inline UnnormalizedDensity neg_log_density() {
    UnnormalizedDensity d;
    d.name = "neg-log";
    d.support = Support::left_open(0.0, 1.0);
    d.pdf = [](double y) { return -std::log(y); };
    d.asymptotes = {0.0};
    d.derivative = [](double y) { return -1.0 / y; };
    d.inverse = [](double t) { return std::exp(-t); };
    d.cdf = [](double y) { return y - y * std::log(y); };
    d.mass = 1.0;
    return d;
}

// p(x) = x^{-1/2} e^{-x} on (0, inf); asymptote and an infinite tail.
inline UnnormalizedDensity gamma_half_density() {
    UnnormalizedDensity d;
    d.name = "gamma-half";
    d.support = Support::open(0.0, kInf);
    d.pdf = [](double x) { return std::exp(-x) / std::sqrt(x); };
    d.asymptotes = {0.0};
    d.mass = std::sqrt(3.14159265358979323846);
    return d;
}

// Reflection x -> -x; the result lives on the mirrored support.
inline UnnormalizedDensity reflected_density(const UnnormalizedDensity& d) {
    UnnormalizedDensity r;
    r.name = d.name + "-reflected";
    r.support = Support(-d.support.hi, -d.support.lo, d.support.hi_closed, d.support.lo_closed);
    auto base = d.pdf;
    r.pdf = [base](double x) { return base(-x); };
    r.sup_value = d.sup_value;
    for (double a : d.asymptotes) r.asymptotes.push_back(-a);
    r.mass = d.mass;
    return r;
}

// --- monotone-piece decompositions ------------------------------------

inline PiecewiseMonotoneDensity half_gaussian_pieces(double sigma = 1.0) {
    auto d = half_gaussian_density(sigma);
    auto inv = d.inverse;
    return make_piecewise({make_piece(d, d.support, Direction::decreasing, inv)},
                          d.sup_value, d.name);
}

inline PiecewiseMonotoneDensity exponential_pieces(double rate = 1.0) {
    auto d = exponential_density(rate);
    auto inv = d.inverse;
    return make_piecewise({make_piece(d, d.support, Direction::decreasing, inv)},
                          d.sup_value, d.name);
}

inline PiecewiseMonotoneDensity sqrt_neg_log_pieces() {
    auto d = sqrt_neg_log_density();
    auto inv = d.inverse;
    return make_piecewise({make_piece(d, d.support, Direction::decreasing, inv)},
                          d.sup_value, d.name);
}

inline PiecewiseMonotoneDensity gaussian_pieces() {
    auto d = gaussian_density();
    auto left = make_piece(d, Support{-kInf, 0.0, false, true}, Direction::increasing,
                           [](double y) { return -std::sqrt(-2.0 * std::log(y)); });
    auto right = make_piece(d, Support{0.0, kInf, true, false}, Direction::decreasing,
                            [](double y) { return std::sqrt(-2.0 * std::log(y)); });
    return make_piecewise({std::move(left), std::move(right)}, d.sup_value, d.name);
}

inline PiecewiseMonotoneDensity bimodal_quartic_pieces() {
    auto d = bimodal_quartic_density();
    // (x^2-4)^2 = -4 log y; outer branches |x| >= 2, inner branches need
    // y >= e^{-4} and are handled by the piece supports.
    auto outer = [](double y) { return std::sqrt(4.0 + 2.0 * std::sqrt(-std::log(y))); };
    auto inner = [](double y) { return std::sqrt(4.0 - 2.0 * std::sqrt(-std::log(y))); };
    auto p1 = make_piece(d, Support{-kInf, -2.0, false, true}, Direction::increasing,
                         [outer](double y) { return -outer(y); });
    auto p2 = make_piece(d, Support{-2.0, 0.0, true, true}, Direction::decreasing,
                         [inner](double y) { return -inner(y); });
    auto p3 = make_piece(d, Support{0.0, 2.0, true, true}, Direction::increasing, inner);
    auto p4 = make_piece(d, Support{2.0, kInf, true, false}, Direction::decreasing, outer);
    return make_piecewise({std::move(p1), std::move(p2), std::move(p3), std::move(p4)},
                          d.sup_value, d.name);
}

inline PiecewiseMonotoneDensity heavy_tail_pieces() {
    auto d = heavy_tail_density();
    auto inv = d.inverse;
    return make_piecewise({make_piece(d, d.support, Direction::decreasing, inv)},
                          d.sup_value, d.name);
}

inline PiecewiseMonotoneDensity cauchy_pieces() {
    auto d = cauchy_density();
    auto left = make_piece(d, Support{-kInf, 0.0, false, true}, Direction::increasing,
                           [](double y) { return -std::sqrt(1.0 / y - 1.0); });
    auto right = make_piece(d, Support{0.0, kInf, true, false}, Direction::decreasing,
                            [](double y) { return std::sqrt(1.0 / y - 1.0); });
    return make_piecewise({std::move(left), std::move(right)}, d.sup_value, d.name);
}

} // namespace grou
