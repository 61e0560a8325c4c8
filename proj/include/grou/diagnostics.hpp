// SPDX-License-Identifier: Apache-2.0
#pragma once

// Statistical checks: equal-mass chi-square goodness of fit against an
// unnormalized density, a pooled-quantile two-sample chi-square, and Wilson
// score intervals for acceptance rates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "support.hpp"

namespace grou {

struct GofReport {
    double statistic = 0.0;
    double p_value = 1.0;
    int bins = 0;
    int dof = 0;
    bool pass = true;  // p > 0.01
};

// Interior cut points splitting the support into `bins` equal-mass cells.
// Uses the analytic CDF when the total mass is also known, otherwise a
// tabulated CDF of the raw rule.
inline std::vector<double> equiprobable_cuts(const UnnormalizedDensity& d, int bins) {
    if (bins < 2) throw config_error("equiprobable_cuts: bins must be >= 2");
    std::vector<double> cuts;
    cuts.reserve(bins - 1);
    if (d.cdf && d.mass) {
        const double total = *d.mass;
        const Support& s = d.support;
        for (int j = 1; j < bins; ++j) {
            const double target = total * j / bins;
            double lo = s.lo, hi = s.hi;
            if (std::isinf(lo)) {
                lo = std::isfinite(hi) ? hi - 1.0 : -1.0;
                double step = 1.0;
                while (d.cdf(lo) > target && step < 1e18) { step *= 2.0; lo -= step; }
            }
            if (std::isinf(hi)) {
                hi = std::isfinite(s.lo) ? s.lo + 1.0 : 1.0;
                double step = 1.0;
                while (d.cdf(hi) < target && step < 1e18) { step *= 2.0; hi += step; }
            }
            cuts.push_back(bisect([&](double x) { return d.cdf(x); }, target, lo, hi, true));
        }
        return cuts;
    }
    CdfTable tab([&](double x) { return d.pdf(x); }, d.support, 8192);
    for (int j = 1; j < bins; ++j) cuts.push_back(tab.quantile(double(j) / bins));
    return cuts;
}

// Chi-square against equal-mass bins; dof = bins - 1.
inline GofReport gof_chisq(const std::vector<double>& xs, const UnnormalizedDensity& d,
                           int bins = 50) {
    if (xs.empty()) throw config_error("gof_chisq: empty sample");
    const auto cuts = equiprobable_cuts(d, bins);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    for (double x : xs) {
        const std::size_t b =
            static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
        ++counts[b];
    }
    const double e = double(xs.size()) / bins;
    double stat = 0.0;
    for (auto c : counts) {
        const double delta = double(c) - e;
        stat += delta * delta / e;
    }
    GofReport rep{stat, chi2_sf(stat, bins - 1), bins, bins - 1, false};
    rep.pass = rep.p_value > 0.01;
    return rep;
}

// Two-sample chi-square on pooled-quantile bins; dof = bins - 1.
inline GofReport two_sample_chisq(const std::vector<double>& a, const std::vector<double>& b,
                                  int bins = 50) {
    if (a.size() < static_cast<std::size_t>(bins) || b.size() < static_cast<std::size_t>(bins))
        throw config_error("two_sample_chisq: samples smaller than the bin count");
    std::vector<double> pool;
    pool.reserve(a.size() + b.size());
    pool.insert(pool.end(), a.begin(), a.end());
    pool.insert(pool.end(), b.begin(), b.end());
    std::sort(pool.begin(), pool.end());
    const std::size_t n_pool = pool.size();
    std::vector<double> cuts;
    cuts.reserve(bins - 1);
    for (int j = 1; j < bins; ++j) cuts.push_back(pool[n_pool * j / bins]);
    auto count = [&](const std::vector<double>& xs) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(bins), 0);
        for (double x : xs)
            ++c[static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), x) -
                                         cuts.begin())];
        return c;
    };
    const auto ca = count(a), cb = count(b);
    double stat = 0.0;
    for (int j = 0; j < bins; ++j) {
        const double pooled = double(ca[j] + cb[j]);
        if (pooled == 0.0) continue;
        const double ea = pooled * double(a.size()) / double(n_pool);
        const double eb = pooled * double(b.size()) / double(n_pool);
        const double da = double(ca[j]) - ea, db = double(cb[j]) - eb;
        stat += da * da / ea + db * db / eb;
    }
    GofReport rep{stat, chi2_sf(stat, bins - 1), bins, bins - 1, false};
    rep.pass = rep.p_value > 0.01;
    return rep;
}

struct RateEstimate {
    std::uint64_t accepted = 0;
    std::uint64_t proposals = 0;
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
};

// 95% Wilson score interval for a binomial rate.
inline RateEstimate wilson_interval(std::uint64_t accepted, std::uint64_t proposals) {
    if (proposals == 0) throw config_error("wilson_interval: no proposals");
    constexpr double z = 1.959963984540054;  // two-sided 95%
    const double n = double(proposals);
    const double ph = double(accepted) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
    RateEstimate est;
    est.accepted = accepted;
    est.proposals = proposals;
    est.rate = ph;
    // clamp to [0, 1] and make sure rounding never pushes the point
    // estimate outside its own interval (exact at ph = 0 and ph = 1)
    est.ci_lo = std::min(std::max(0.0, center - half), ph);
    est.ci_hi = std::max(std::min(1.0, center + half), ph);
    return est;
}

} // namespace grou
