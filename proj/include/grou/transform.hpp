// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monotone C^1 transforms, the pushforward of a density through one, and
// the two boundedness probes:
//   - transformed-rejection check on rho(z) = p(t^{-1}(z)) |dt^{-1}/dz|
//   - ratio-of-uniforms admissibility of the region bounded by
//       |g(u)| <= |c| p(v / |g'(u)|)
// Both walk geometric ladders toward every critical endpoint and compare
// per-decade sups; a sup still growing by >= 5% per decade is reported as
// unbounded, growth inside (1e-6, 5%) as inconclusive.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "support.hpp"

namespace grou {

struct MonotoneTransform {
    std::string name;
    Fn1 fwd;          // t(x)
    Fn1 inv;          // t^{-1}(z)
    Fn1 deriv;        // t'(x)
    Support domain;
    Support codomain;
    Direction dir = Direction::increasing;
    // codomain points where dt^{-1}/dz diverges (images of infinite ends)
    std::vector<double> inverse_asymptotes;
    // optional exact d t^{-1}/dz. Boundary probes prefer it over deriv(inv(z))
    // because it stays accurate where inv(z) is only available by bisection.
    Fn1 inv_slope;
};

// --- catalog -----------------------------------------------------------

// u^r / r on [0, inf); r > 0
inline MonotoneTransform power_transform(double r) {
    if (!(r > 0.0)) throw config_error("power transform: r must be > 0");
    MonotoneTransform t;
    char name[32];
    std::snprintf(name, sizeof name, "power(%g)", r);
    t.name = name;
    t.fwd = [r](double u) { return std::pow(u, r) / r; };
    t.inv = [r](double y) { return std::pow(r * y, 1.0 / r); };
    t.deriv = [r](double u) { return std::pow(u, r - 1.0); };
    t.domain = Support::nonneg();
    t.codomain = Support::nonneg();
    return t;
}

// u^2/2, the transform behind the classical ratio-of-uniforms region
inline MonotoneTransform half_square_transform() {
    MonotoneTransform t;
    t.name = "half-square";
    t.fwd = [](double u) { return 0.5 * u * u; };
    t.inv = [](double y) { return std::sqrt(2.0 * y); };
    t.deriv = [](double u) { return u; };
    t.domain = Support::nonneg();
    t.codomain = Support::nonneg();
    return t;
}

// sqrt(2u), the functional inverse of half-square
inline MonotoneTransform sqrt2u_transform() {
    MonotoneTransform t;
    t.name = "sqrt2u";
    t.fwd = [](double u) { return std::sqrt(2.0 * u); };
    t.inv = [](double y) { return 0.5 * y * y; };
    t.deriv = [](double u) { return u > 0.0 ? 1.0 / std::sqrt(2.0 * u) : kInf; };
    t.domain = Support::nonneg();
    t.codomain = Support::nonneg();
    return t;
}

inline MonotoneTransform arctan_transform() {
    MonotoneTransform t;
    t.name = "arctan";
    t.fwd = [](double x) { return std::atan(x); };
    t.inv = [](double z) { return std::tan(z); };
    t.deriv = [](double x) { return 1.0 / (1.0 + x * x); };
    t.domain = Support::real();
    constexpr double half_pi = 1.5707963267948966;
    t.codomain = Support::open(-half_pi, half_pi);
    t.inverse_asymptotes = {-half_pi, half_pi};
    return t;
}

// x / (1 + x) on [0, inf) -> [0, 1)
inline MonotoneTransform mobius_transform() {
    MonotoneTransform t;
    t.name = "mobius";
    t.fwd = [](double x) { return x / (1.0 + x); };
    t.inv = [](double z) { return z / (1.0 - z); };
    t.deriv = [](double x) { const double s = 1.0 + x; return 1.0 / (s * s); };
    t.domain = Support::nonneg();
    t.codomain = Support::right_open(0.0, 1.0);
    t.inverse_asymptotes = {1.0};
    return t;
}

inline MonotoneTransform identity_transform() {
    MonotoneTransform t;
    t.name = "identity";
    t.fwd = [](double x) { return x; };
    t.inv = [](double z) { return z; };
    t.deriv = [](double) { return 1.0; };
    t.domain = Support::real();
    t.codomain = Support::real();
    return t;
}

// outer(inner(x)); both increasing, outer's domain covering inner's image
inline MonotoneTransform compose(const MonotoneTransform& outer,
                                 const MonotoneTransform& inner) {
    if (outer.dir != Direction::increasing || inner.dir != Direction::increasing)
        throw config_error("compose: only increasing transforms are composed");
    if (!(outer.domain.lo <= inner.codomain.lo && inner.codomain.hi <= outer.domain.hi))
        throw config_error("compose: outer domain must cover inner image");
    MonotoneTransform t;
    t.name = outer.name + "." + inner.name;
    auto of = outer.fwd, og = outer.inv, od = outer.deriv;
    auto inf_ = inner.fwd, ig = inner.inv, id = inner.deriv;
    t.fwd = [of, inf_](double x) { return of(inf_(x)); };
    t.inv = [og, ig](double z) { return ig(og(z)); };
    t.deriv = [od, inf_, id](double x) { return od(inf_(x)) * id(x); };
    t.domain = inner.domain;
    const double zlo = std::isinf(inner.codomain.lo) ? outer.codomain.lo
                                                     : outer.fwd(inner.codomain.lo);
    const double zhi = std::isinf(inner.codomain.hi) ? outer.codomain.hi
                                                     : outer.fwd(inner.codomain.hi);
    t.codomain = Support(zlo, zhi, inner.codomain.lo_closed && std::isfinite(zlo),
                         inner.codomain.hi_closed && std::isfinite(zhi));
    return t;
}

// Functional inverse as a transform in its own right: the roles of g and
// g^{-1} swap, which is how a bounded map on the density axis becomes a
// ratio-of-uniforms transform with a capped u extent.
inline MonotoneTransform inverted(const MonotoneTransform& t) {
    MonotoneTransform r;
    r.name = "inv." + t.name;
    auto f = t.fwd, g = t.inv, d = t.deriv;
    r.fwd = g;
    r.inv = f;
    r.deriv = [d, g](double u) { return 1.0 / d(g(u)); };
    r.domain = t.codomain;
    r.codomain = t.domain;
    r.dir = t.dir;
    r.inv_slope = t.deriv;  // (r^{-1})' = t' exactly
    return r;
}

// --- ratio-of-uniforms configuration -----------------------------------

struct GrouConfig {
    MonotoneTransform g;
    double c = 1.0;
};

// The anchor is the u value where g vanishes; the region lives on the side
// of the anchor where sign(g) matches sign(c).
inline double grou_anchor(const GrouConfig& cfg) { return cfg.g.inv(0.0); }

inline void validate_grou_config(const GrouConfig& cfg) {
    if (cfg.c == 0.0 || !std::isfinite(cfg.c))
        throw config_error("grou config: c must be finite and nonzero");
    const double b = grou_anchor(cfg);
    if (!std::isfinite(b))
        throw config_error("grou config: g must vanish at a finite anchor");
    const double gb = cfg.g.fwd(b);
    if (!(std::fabs(gb) <= 1e-9))
        throw config_error("grou config: fwd/inv inconsistent at the anchor");
    const bool image_has_pos = cfg.g.codomain.hi > 0.0;
    const bool image_has_neg = cfg.g.codomain.lo < 0.0;
    if (cfg.c > 0.0 && !image_has_pos)
        throw config_error("grou config: c > 0 needs g to take positive values");
    if (cfg.c < 0.0 && !image_has_neg)
        throw config_error("grou config: c < 0 needs g to take negative values");
}

// Closed u interval [anchor, far] (or [far, anchor]) on the sign-compatible
// side of the anchor; far may be infinite.
inline Interval grou_u_side(const GrouConfig& cfg) {
    const double b = grou_anchor(cfg);
    const bool up = (cfg.g.dir == Direction::increasing) == (cfg.c > 0.0);
    return up ? Interval{b, cfg.g.domain.hi} : Interval{cfg.g.domain.lo, b};
}

// g's value at the far domain end of the sign-compatible side.
inline double grou_image_far(const GrouConfig& cfg) {
    const Interval side = grou_u_side(cfg);
    const bool up = (cfg.g.dir == Direction::increasing) == (cfg.c > 0.0);
    const double far_dom = up ? side.hi : side.lo;
    return (far_dom == cfg.g.domain.hi)
               ? (cfg.g.dir == Direction::increasing ? cfg.g.codomain.hi : cfg.g.codomain.lo)
               : (cfg.g.dir == Direction::increasing ? cfg.g.codomain.lo : cfg.g.codomain.hi);
}

// u extent actually reached by the region: the far end is capped at
// g^{-1}(c sup p) whenever p is bounded and c sup p lies inside the image.
inline Interval grou_u_interval(const UnnormalizedDensity& p, const GrouConfig& cfg) {
    const Interval side = grou_u_side(cfg);
    const bool up = (cfg.g.dir == Direction::increasing) == (cfg.c > 0.0);
    const double far_dom = up ? side.hi : side.lo;
    const double img_far = grou_image_far(cfg);
    double far = far_dom;
    if (p.bounded()) {
        const double y = cfg.c * *p.sup_value;
        if (std::fabs(y) < std::fabs(img_far)) far = cfg.g.inv(y);
    }
    return up ? Interval{side.lo, far} : Interval{far, side.hi};
}

// --- pushforward --------------------------------------------------------

// Density of z = t(x) when x follows p: rho(z) = p(t^{-1}(z)) / |t'(t^{-1}(z))|.
inline UnnormalizedDensity push_forward_density(const UnnormalizedDensity& p,
                                                const MonotoneTransform& t) {
    if (!(t.domain.lo <= p.support.lo && p.support.hi <= t.domain.hi))
        throw config_error("push_forward: transform domain must cover the support");
    UnnormalizedDensity r;
    r.name = p.name + "@" + t.name;
    auto pf = p.pdf, tin = t.inv, td = t.deriv;
    r.pdf = [pf, tin, td](double z) {
        const double x = tin(z);
        return pf(x) / std::fabs(td(x));
    };
    const bool inc = t.dir == Direction::increasing;
    const double a = std::isinf(p.support.lo)
                         ? (inc ? t.codomain.lo : t.codomain.hi)
                         : t.fwd(p.support.lo);
    const double b = std::isinf(p.support.hi)
                         ? (inc ? t.codomain.hi : t.codomain.lo)
                         : t.fwd(p.support.hi);
    const double zlo = inc ? a : b, zhi = inc ? b : a;
    const bool lo_cl = (inc ? p.support.lo_closed : p.support.hi_closed) && std::isfinite(zlo);
    const bool hi_cl = (inc ? p.support.hi_closed : p.support.lo_closed) && std::isfinite(zhi);
    r.support = Support(zlo, zhi, lo_cl, hi_cl);
    for (double ax : p.asymptotes) r.asymptotes.push_back(t.fwd(ax));
    r.mass = p.mass; // a pushforward preserves total mass
    return r;
}

// --- boundedness ladders -------------------------------------------------

enum class BoundVerdict { bounded, unbounded, inconclusive };

inline const char* to_string(BoundVerdict v) {
    switch (v) {
        case BoundVerdict::bounded: return "bounded";
        case BoundVerdict::unbounded: return "unbounded";
        default: return "inconclusive";
    }
}

struct LimitEstimate {
    std::string end;  // endpoint this ladder walked toward
    double probe = 0.0;
    double sup = 0.0;
};

struct BoundednessReport {
    bool bounded = false;
    BoundVerdict verdict = BoundVerdict::inconclusive;
    double probed_sup = 0.0;
    std::string diverging_end;  // empty when bounded
    std::vector<LimitEstimate> limit_estimates;
};

namespace detail {

struct LadderResult {
    BoundVerdict verdict = BoundVerdict::bounded;
    double sup = 0.0;
    std::vector<std::pair<double, double>> decade_sups;
};

// Walk 12 decades of 40 probes toward a finite point (offsets shrinking) or
// toward infinity (offsets growing). eval returns the probed magnitude,
// +inf to flag outright divergence, NaN to skip a probe.
template <class F>
LadderResult run_ladder(F&& eval, double start_offset, bool toward_infinity,
                        double anchor, double direction) {
    LadderResult r;
    double prev_decade = -1.0;
    for (int decade = 0; decade < 12; ++decade) {
        double dec_sup = 0.0;
        for (int j = 0; j < 40; ++j) {
            const double frac = decade + j / 40.0;
            const double off = toward_infinity ? start_offset * std::pow(10.0, frac)
                                               : start_offset * std::pow(10.0, -frac);
            const double val = eval(anchor + direction * off);
            if (std::isnan(val)) continue;
            if (std::isinf(val)) {
                r.verdict = BoundVerdict::unbounded;
                r.sup = kInf;
                return r;
            }
            dec_sup = std::max(dec_sup, std::fabs(val));
        }
        const double mark = toward_infinity ? start_offset * std::pow(10.0, double(decade))
                                            : start_offset * std::pow(10.0, -double(decade));
        r.decade_sups.emplace_back(mark, dec_sup);
        r.sup = std::max(r.sup, dec_sup);
        if (decade == 11 && prev_decade > 0.0) {
            const double growth = dec_sup / prev_decade;
            if (growth >= 1.05)
                r.verdict = BoundVerdict::unbounded;
            else if (growth > 1.0 + 1e-6)
                r.verdict = BoundVerdict::inconclusive;
        }
        prev_decade = dec_sup;
    }
    return r;
}

inline void fold_ladder(BoundednessReport& rep, const LadderResult& lr,
                        const std::string& end_name) {
    if (std::isfinite(lr.sup)) rep.probed_sup = std::max(rep.probed_sup, lr.sup);
    for (const auto& [mark, sup] : lr.decade_sups)
        rep.limit_estimates.push_back({end_name, mark, sup});
    if (lr.verdict == BoundVerdict::unbounded) {
        rep.verdict = BoundVerdict::unbounded;
        if (rep.diverging_end.empty()) rep.diverging_end = end_name;
    } else if (lr.verdict == BoundVerdict::inconclusive &&
               rep.verdict != BoundVerdict::unbounded) {
        rep.verdict = BoundVerdict::inconclusive;
        if (rep.diverging_end.empty()) rep.diverging_end = end_name + " (creeping)";
    }
}

} // namespace detail

// Is rho = pushforward(p, t) bounded on its (bounded) image interval?
// Ladders approach the image of every infinite support end and of every
// asymptote of p; a 4096-point interior sweep supplies the envelope sup.
inline BoundednessReport check_trs_boundedness(const UnnormalizedDensity& p,
                                               const MonotoneTransform& t) {
    const auto rho = push_forward_density(p, t);
    if (!rho.support.finite())
        throw config_error("trs boundedness: transform must map the support "
                           "to a bounded interval");
    const double width = rho.support.width();
    if (!(width > 0.0)) throw config_error("trs boundedness: empty image interval");

    auto eval = [&](double z) -> double {
        if (!rho.support.contains(z)) return std::numeric_limits<double>::quiet_NaN();
        const double v = rho.pdf(z);
        if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
        return std::isfinite(v) ? std::fabs(v) : kInf;
    };

    BoundednessReport rep;
    rep.verdict = BoundVerdict::bounded;

    for (int i = 1; i < 4096; ++i) {
        const double v = eval(rho.support.lo + width * i / 4096.0);
        if (std::isfinite(v)) rep.probed_sup = std::max(rep.probed_sup, v);
    }

    // critical codomain points: images of infinite ends and of asymptotes
    std::vector<std::pair<double, std::string>> crit;
    if (std::isinf(p.support.lo))
        crit.emplace_back(t.dir == Direction::increasing ? rho.support.lo : rho.support.hi,
                          "image of x -> -inf");
    if (std::isinf(p.support.hi))
        crit.emplace_back(t.dir == Direction::increasing ? rho.support.hi : rho.support.lo,
                          "image of x -> +inf");
    for (double ax : p.asymptotes) crit.emplace_back(t.fwd(ax), "image of asymptote");

    const double mid = 0.5 * (rho.support.lo + rho.support.hi);
    for (const auto& [z0, name] : crit) {
        const double dir = z0 <= mid ? 1.0 : -1.0;
        auto lr = detail::run_ladder(eval, 0.1 * width, false, z0, dir);
        detail::fold_ladder(rep, lr, name);
    }
    rep.bounded = rep.verdict == BoundVerdict::bounded;
    if (rep.bounded) rep.diverging_end.clear();
    return rep;
}

namespace detail {

// u assigned by the region boundary to the signed density level y = c p(x).
// Levels at or beyond the image cap map to the far domain end.
inline double grou_boundary_u(const GrouConfig& cfg, double y_signed) {
    const Interval side = grou_u_side(cfg);
    const bool up = (cfg.g.dir == Direction::increasing) == (cfg.c > 0.0);
    const double far_dom = up ? side.hi : side.lo;
    return std::fabs(y_signed) < std::fabs(grou_image_far(cfg)) ? cfg.g.inv(y_signed)
                                                                : far_dom;
}

// |g'| along the same boundary parameterization. Below the image cap the
// exact inverse slope is used when available: 1/|dg^{-1}/dy| at y itself.
inline double grou_boundary_gdot(const GrouConfig& cfg, double y_signed) {
    if (cfg.g.inv_slope && std::fabs(y_signed) < std::fabs(grou_image_far(cfg))) {
        const double s = std::fabs(cfg.g.inv_slope(y_signed));
        if (s == 0.0) return kInf;
        return std::isinf(s) ? 0.0 : 1.0 / s;
    }
    const double u = grou_boundary_u(cfg, y_signed);
    if (!std::isfinite(u)) return kInf;
    return std::fabs(cfg.g.deriv(u));
}

} // namespace detail

// Admissibility of the ratio-of-uniforms region for (p, g, c): finite u
// extent and a bounded v boundary |x| |g'(u(x))|, probed along ladders
// toward every infinite support end and every asymptote. Works for
// unbounded targets when g's domain is bounded (so the u extent stays
// finite); an unbounded target with an unbounded g domain is reported as
// unbounded in u.
inline BoundednessReport check_grou_admissibility(const UnnormalizedDensity& p,
                                                  const GrouConfig& cfg) {
    validate_grou_config(cfg);

    BoundednessReport rep;
    rep.verdict = BoundVerdict::bounded;

    const Interval uext = grou_u_interval(p, cfg);
    if (!std::isfinite(uext.lo) || !std::isfinite(uext.hi)) {
        rep.verdict = BoundVerdict::unbounded;
        rep.bounded = false;
        rep.diverging_end = "u extent";
        return rep;
    }

    auto v_of = [&](double x) -> double {
        if (!p.support.contains(x)) return std::numeric_limits<double>::quiet_NaN();
        const double px = p.pdf(x);
        if (std::isnan(px)) return std::numeric_limits<double>::quiet_NaN();
        const double gd = detail::grou_boundary_gdot(cfg, cfg.c * px);
        const double v = std::fabs(x) * gd;
        return std::isfinite(v) ? v : kInf;
    };

    const double win_lo = std::isinf(p.support.lo) ? -32.0 : p.support.lo;
    const double win_hi = std::isinf(p.support.hi) ? 32.0 : p.support.hi;
    for (int i = 1; i < 4096; ++i) {
        const double v = v_of(win_lo + (win_hi - win_lo) * i / 4096.0);
        if (std::isfinite(v)) rep.probed_sup = std::max(rep.probed_sup, v);
    }

    if (std::isinf(p.support.hi)) {
        auto lr = detail::run_ladder(v_of, 1.0, true, 0.0, 1.0);
        detail::fold_ladder(rep, lr, "x -> +inf");
    }
    if (std::isinf(p.support.lo)) {
        auto lr = detail::run_ladder(v_of, 1.0, true, 0.0, -1.0);
        detail::fold_ladder(rep, lr, "x -> -inf");
    }
    for (double ax : p.asymptotes) {
        const double scale = std::max(1.0, std::fabs(ax));
        if (ax > p.support.lo) {  // approach from below
            auto lr = detail::run_ladder(v_of, 0.1 * scale, false, ax, -1.0);
            detail::fold_ladder(rep, lr, "asymptote from below");
        }
        if (ax < p.support.hi) {  // approach from above
            auto lr = detail::run_ladder(v_of, 0.1 * scale, false, ax, 1.0);
            detail::fold_ladder(rep, lr, "asymptote from above");
        }
    }
    rep.bounded = rep.verdict == BoundVerdict::bounded;
    if (rep.bounded) rep.diverging_end.clear();
    return rep;
}

// --- CDF-based g ----------------------------------------------------------

// g whose inverse is the CDF of the inverse target. The region becomes the
// rectangle [0, 1] x [0, total mass]; acceptance from its own bounding
// rectangle approaches one.
inline MonotoneTransform cdf_based_g(const UnnormalizedDensity& p) {
    if (!p.bounded()) throw config_error("cdf_based_g: target must be bounded");
    const double y_top = *p.sup_value;
    const double total = p.mass ? *p.mass : normalization(p);

    UnnormalizedDensity pc = p;  // owned copy for the closures
    auto fy = [pc](double y) { return cdf_of_inverse_target(pc, y); };
    auto p_inv = [pc](double y) -> double {
        if (pc.inverse) return pc.inverse(y);
        MonotonePiece piece{pc, pc.support, Direction::decreasing, nullptr};
        return invert_monotone(piece, y);
    };

    MonotoneTransform t;
    t.name = "cdf(" + p.name + ")";
    t.inv = fy;
    t.fwd = [fy, y_top, total](double u) {  // bisection on the monotone CDF
        if (u <= 0.0) return 0.0;
        if (u >= total) return y_top;
        double lo = 0.0, hi = y_top;
        for (int i = 0; i < 120; ++i) {
            const double mid = 0.5 * (lo + hi);
            (fy(mid) > u ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto fwd = t.fwd;
    t.deriv = [p_inv, fwd](double u) {  // dg/du = 1 / p^{-1}(g(u))
        const double y = fwd(u);
        const double w = p_inv(std::max(y, 1e-300));
        return w > 0.0 ? 1.0 / w : kInf;
    };
    // dg^{-1}/dy is the inverse target itself; exact down to y = 0, where an
    // unbounded support makes it diverge and the boundary slope vanish.
    t.inv_slope = [p_inv](double y) { return p_inv(std::max(y, 0.0)); };
    t.domain = Support::closed(0.0, total);
    t.codomain = Support::closed(0.0, y_top);
    t.inverse_asymptotes = {total};
    return t;
}

// General form for piecewise monotone targets. The role of p^{-1} passes to
// the level width (generalized inverse), so two-sided and multimodal shapes
// rectangularize too: slices keep unit v-width at every u and x = v / |g'(u)|
// lands uniformly on the level set.
inline MonotoneTransform cdf_based_g(const PiecewiseMonotoneDensity& pm,
                                     const UnnormalizedDensity& p) {
    if (!p.bounded()) throw config_error("cdf_based_g: target must be bounded");
    if (!p.cdf || !p.mass)
        throw config_error("cdf_based_g: " + p.name + " needs an analytic cdf and mass");
    const double y_top = *p.sup_value;
    const double total = *p.mass;

    UnnormalizedDensity pc = p;  // owned copies for the closures
    PiecewiseMonotoneDensity pmc = pm;
    auto fy = [pmc, pc](double y) { return cdf_of_inverse_target(pmc, pc, y); };
    auto width = [pmc](double y) -> double {
        if (y <= 0.0) return pmc.support.finite() ? pmc.support.width() : kInf;
        return generalized_inverse(pmc, y);
    };

    MonotoneTransform t;
    t.name = "cdf(" + p.name + ")";
    t.inv = fy;
    t.fwd = [fy, y_top, total](double u) {  // bisection on the monotone CDF
        if (u <= 0.0) return 0.0;
        if (u >= total) return y_top;
        double lo = 0.0, hi = y_top;
        for (int i = 0; i < 120; ++i) {
            const double mid = 0.5 * (lo + hi);
            (fy(mid) > u ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto fwd = t.fwd;
    t.deriv = [width, fwd](double u) {  // dg/du = 1 / width(g(u))
        const double w = width(std::max(fwd(u), 1e-300));
        return w > 0.0 ? 1.0 / w : kInf;
    };
    t.inv_slope = width;
    t.domain = Support::closed(0.0, total);
    t.codomain = Support::closed(0.0, y_top);
    t.inverse_asymptotes = {total};
    return t;
}

} // namespace grou
