// SPDX-License-Identifier: Apache-2.0
#pragma once

// Unnormalized densities and their monotone-piece decompositions.
//
// A density here is any nonnegative integrable rule p on a support; nothing
// assumes p integrates to one. Level sets, inverse branches, vertical
// densities and the inverse-target CDF are all defined on that raw scale.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "support.hpp"

namespace grou {

using Fn1 = std::function<double(double)>;

struct UnnormalizedDensity {
    std::string name;
    Fn1 pdf;                        // raw rule, evaluated through operator()
    Support support;
    std::optional<double> sup_value;    // sup p when bounded, else empty
    std::vector<double> asymptotes;     // finite x where p diverges
    Fn1 derivative;                 // optional analytic p'
    Fn1 inverse;                    // optional analytic inverse (monotone p only)
    Fn1 cdf;                        // optional analytic mass of (lo, x]
    std::optional<double> mass;     // optional known total mass

    bool bounded() const { return sup_value.has_value(); }

    double operator()(double x) const {
        if (!support.contains(x))
            throw std::domain_error(name + ": evaluation outside support");
        for (double a : asymptotes)
            if (std::fabs(x - a) < 1e-300)
                throw std::domain_error(name + ": evaluation at asymptote");
        return pdf(x);
    }

    // Membership-oriented evaluation: +inf exactly at an asymptote, NaN
    // outside the support. Callers map NaN to "not in region".
    double eval_for_membership(double x) const {
        for (double a : asymptotes)
            if (x == a) return kInf;
        if (!support.contains(x)) return std::numeric_limits<double>::quiet_NaN();
        return pdf(x);
    }
};

inline double eval_density(const UnnormalizedDensity& d, double x) { return d(x); }

// One strictly monotone branch of a density, with an optional analytic
// branch inverse. Construction probes a grid and rejects plateaus; ties are
// tolerated only where both values have underflowed.
struct MonotonePiece {
    UnnormalizedDensity d;
    Support sub_support;
    Direction dir = Direction::decreasing;
    Fn1 inverse; // optional analytic branch inverse

    double eval(double x) const {
        if (!sub_support.contains(x))
            throw std::domain_error(d.name + ": evaluation outside piece");
        return d.pdf(x);
    }
};

namespace detail {

// Probe points spanning a support, avoiding open/infinite endpoints.
inline std::vector<double> probe_grid(const Support& s, int n) {
    std::vector<double> xs;
    xs.reserve(n);
    const bool lo_inf = std::isinf(s.lo), hi_inf = std::isinf(s.hi);
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        double x;
        if (!lo_inf && !hi_inf)
            x = s.lo + (s.hi - s.lo) * t;
        else if (!lo_inf)
            x = s.lo + t / (1.0 - t) * 4.0; // reach several scale lengths out
        else if (!hi_inf)
            x = s.hi - t / (1.0 - t) * 4.0;
        else
            x = std::tan(3.14159265358979323846 * (t - 0.5)) * 2.0;
        xs.push_back(x);
    }
    return xs;
}

} // namespace detail

inline MonotonePiece make_piece(UnnormalizedDensity d, Support sub, Direction dir,
                                Fn1 inverse = nullptr) {
    MonotonePiece p{std::move(d), sub, dir, std::move(inverse)};
    auto xs = detail::probe_grid(sub, 33);
    std::sort(xs.begin(), xs.end());
    double prev = p.d.pdf(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = p.d.pdf(xs[i]);
        const bool underflow_tie = prev <= 1e-300 && cur <= 1e-300;
        const bool ok = dir == Direction::increasing ? cur > prev : cur < prev;
        if (!ok && !underflow_tie)
            throw config_error(p.d.name + ": piece is not strictly monotone");
        prev = cur;
    }
    return p;
}

// Solve piece(x) = y. Uses the analytic branch inverse when present,
// otherwise brackets from the finite end and probes geometrically toward
// any open end, then bisects (200-iteration cap).
inline double invert_monotone(const MonotonePiece& p, double y, double x_tol = 1e-13) {
    if (p.inverse) return p.inverse(y);
    const Support& s = p.sub_support;
    const bool inc = p.dir == Direction::increasing;
    auto f = [&](double x) { return p.d.pdf(x); };
    const double span = s.finite() ? s.width() : 1.0;

    // Bracket side by side. The lo end must sit on the low-value side for an
    // increasing piece (high-value side for decreasing); mirrored for hi.
    auto lo_side = [&](double x) { return inc ? f(x) <= y : f(x) >= y; };
    auto hi_side = [&](double x) { return inc ? f(x) >= y : f(x) <= y; };

    double lo;
    if (std::isinf(s.lo)) {
        lo = std::isfinite(s.hi) ? s.hi - 1.0 : -1.0;
        double step = 1.0;
        for (int i = 0; i < 200 && !lo_side(lo); ++i) { step *= 2.0; lo -= step; }
    } else if (!s.lo_closed) {
        double step = 0.5 * span;
        lo = s.lo + step;
        for (int i = 0; i < 200 && !lo_side(lo); ++i) { step *= 0.5; lo = s.lo + step; }
    } else {
        lo = s.lo;
    }

    double hi;
    if (std::isinf(s.hi)) {
        hi = std::isfinite(s.lo) ? s.lo + 1.0 : 1.0;
        double step = 1.0;
        for (int i = 0; i < 200 && !hi_side(hi); ++i) { step *= 2.0; hi += step; }
    } else if (!s.hi_closed) {
        double step = 0.5 * span;
        hi = s.hi - step;
        for (int i = 0; i < 200 && !hi_side(hi); ++i) { step *= 0.5; hi = s.hi - step; }
    } else {
        hi = s.hi;
    }
    return bisect(f, y, lo, hi, inc, SolveOpts{x_tol, 200});
}

// A density tiled by alternating monotone pieces (breakpoints at the modes
// and antimodes). A single piece is allowed for one-sided targets.
struct PiecewiseMonotoneDensity {
    std::vector<MonotonePiece> pieces;
    Support support;
    std::optional<double> sup_value;
    std::string name;

    double eval(double x) const { return piece_at(x).d.pdf(x); }

    const MonotonePiece& piece_at(double x) const {
        if (!support.contains(x))
            throw std::domain_error(name + ": evaluation outside support");
        for (const auto& p : pieces)
            if (p.sub_support.contains(x)) return p;
        return pieces.back();
    }
};

inline PiecewiseMonotoneDensity make_piecewise(std::vector<MonotonePiece> pieces,
                                               std::optional<double> sup_value,
                                               std::string name) {
    if (pieces.empty()) throw config_error("piecewise density: no pieces");
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].dir == pieces[i - 1].dir)
            throw config_error(name + ": adjacent pieces must alternate direction");
        if (pieces[i].sub_support.lo != pieces[i - 1].sub_support.hi)
            throw config_error(name + ": pieces must tile the support contiguously");
    }
    Support sup(pieces.front().sub_support.lo, pieces.back().sub_support.hi,
                pieces.front().sub_support.lo_closed, pieces.back().sub_support.hi_closed);
    return PiecewiseMonotoneDensity{std::move(pieces), sup, sup_value, std::move(name)};
}

// {x : p(x) >= y} as disjoint closed intervals, ordered; empty above sup p.
// Degenerate intervals appear when y touches a mode exactly.
inline std::vector<Interval> level_set(const PiecewiseMonotoneDensity& p, double y,
                                       double x_tol = 1e-13) {
    if (y <= 0.0) throw config_error("level_set: y must be > 0");
    std::vector<Interval> raw;
    for (const auto& piece : p.pieces) {
        const Support& s = piece.sub_support;
        // value range over the piece, with extended endpoint semantics
        auto end_value = [&](double x) -> double {
            if (std::isinf(x)) return 0.0; // integrable tail
            for (double a : piece.d.asymptotes)
                if (x == a) return kInf;
            return piece.d.pdf(x);
        };
        const double v_lo_end = end_value(s.lo);
        const double v_hi_end = end_value(s.hi);
        const double vmax = std::max(v_lo_end, v_hi_end);
        const double vmin = std::min(v_lo_end, v_hi_end);
        if (y > vmax) continue;
        if (piece.dir == Direction::decreasing) {
            const double right = y <= vmin ? s.hi : invert_monotone(piece, y, x_tol);
            raw.push_back({s.lo, right});
        } else {
            const double left = y <= vmin ? s.lo : invert_monotone(piece, y, x_tol);
            raw.push_back({left, s.hi});
        }
    }
    // merge intervals that touch at shared breakpoints
    std::vector<Interval> out;
    for (const auto& iv : raw) {
        if (!out.empty() && iv.lo <= out.back().hi + 0.0)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

// Total level-set length; this is the generalized inverse of p at height y.
inline double generalized_inverse(const PiecewiseMonotoneDensity& p, double y,
                                  double x_tol = 1e-13) {
    double len = 0.0;
    for (const auto& iv : level_set(p, y, x_tol)) len += iv.length();
    return len;
}

// Vertical density q(u) = -u * dp/du, where the piece holds the inverse
// rule p^{-1} of a monotone decreasing target p. The slope of p at u is
// recovered from the piece: its analytic branch inverse is p itself when
// present, otherwise p(u) is solved by bisection.
inline double vertical_density(const MonotonePiece& inv_piece, double u) {
    Fn1 p_of;
    if (inv_piece.inverse) {
        p_of = inv_piece.inverse;
    } else {
        p_of = [&inv_piece](double x) { return invert_monotone(inv_piece, x); };
    }
    return -u * central_diff(p_of, u);
}

// Total mass of a density over its support (adaptive quadrature; uses the
// recorded value when one is attached).
inline double normalization(const UnnormalizedDensity& d, double rel_tol = 1e-9) {
    if (d.mass) return *d.mass;
    if (rel_tol <= 0.0 || rel_tol > 1e-2) throw config_error("normalization: bad tolerance");
    return integrate_support([&](double x) { return d.pdf(x); }, d.support, rel_tol);
}

// CDF of the inverse target: F_Y(y) = mass - F_X(p^{-1}(y)) + y p^{-1}(y)
// for a monotone decreasing p. Its derivative in y is p^{-1}(y).
inline double cdf_of_inverse_target(const UnnormalizedDensity& d, double y) {
    if (!(y >= 0.0)) throw config_error("cdf_of_inverse_target: y must be >= 0");
    if (y == 0.0) return 0.0;
    const double total = d.mass ? *d.mass : normalization(d);
    if (d.sup_value && y >= *d.sup_value) return total;
    double x;
    if (d.inverse) {
        x = d.inverse(y);
    } else {
        MonotonePiece p{d, d.support, Direction::decreasing, nullptr};
        x = invert_monotone(p, y);
    }
    double fx;
    if (d.cdf) {
        fx = d.cdf(x);
    } else {
        Support head(d.support.lo, x, d.support.lo_closed, true);
        fx = integrate_support([&](double t) { return d.pdf(t); }, head, 1e-10);
    }
    return total - fx + y * x;
}

// General form, valid for any piecewise monotone target: F_Y(y) is the area
// under min(p, y), i.e. y times the level width plus the mass where p < y.
// Its derivative in y is the generalized inverse (the level width at y).
// Needs an analytic CDF so the mass inside each level interval is exact.
inline double cdf_of_inverse_target(const PiecewiseMonotoneDensity& pm,
                                    const UnnormalizedDensity& d, double y) {
    if (!(y >= 0.0)) throw config_error("cdf_of_inverse_target: y must be >= 0");
    if (!d.cdf || !d.mass)
        throw config_error(d.name + ": inverse-target CDF needs an analytic cdf and mass");
    if (y == 0.0) return 0.0;
    double acc = *d.mass;
    if (d.sup_value && y >= *d.sup_value) return acc;
    for (const Interval& iv : level_set(pm, y))
        acc += y * iv.length() - (d.cdf(iv.hi) - d.cdf(iv.lo));
    return std::max(acc, 0.0);
}

} // namespace grou
