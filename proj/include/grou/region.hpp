// SPDX-License-Identifier: Apache-2.0
#pragma once

// Two-dimensional acceptance regions in the (v, u) plane.
//
// Every sampler in the family reduces to "draw uniformly from a planar
// region, then map to x". Regions are defined by a membership predicate, a
// tight bounding rectangle, and an optional point-to-sample map. Boundaries
// are treated as inside (closed regions); columns where the scaling
// derivative vanishes degenerate to {v = 0}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "support.hpp"
#include "transform.hpp"

namespace grou {

// Relative head-room added to probed rectangle extents so the true region
// is never clipped by a slightly low numeric sup.
inline constexpr double kRectInflation = 1e-4;

struct BoundingRect {
    double v_lo = 0.0, v_hi = 0.0;
    double u_lo = 0.0, u_hi = 0.0;
    double area() const { return (v_hi - v_lo) * (u_hi - u_lo); }
};

struct Region2D {
    std::string kind;  // "under-density" | "transformed" | "inverse-form" | "slice-form"
    std::string name;
    std::function<bool(double, double)> contains;  // (v, u)
    BoundingRect rect{};
    Fn1 slice;                                     // optional analytic slice length at u
    std::function<double(double, double)> to_x;    // optional (v, u) -> sample value
};

// --- region under a density ------------------------------------------------

// A0 = {(x, y): x in support, 0 <= y <= p(x)}; the axes are (v, u) = (x, y).
// An unbounded support needs an explicit finite clip window for the
// rectangle; an unbounded density has no rectangle at all.
inline Region2D region_under_density(const UnnormalizedDensity& p,
                                     std::optional<Interval> clip = std::nullopt) {
    Region2D r;
    r.kind = "under-density";
    r.name = p.name;
    UnnormalizedDensity pc = p;
    r.contains = [pc](double v, double u) {
        if (u < 0.0) return false;
        const double y = pc.eval_for_membership(v);
        if (std::isnan(y)) return false;
        return u <= y;
    };
    double lo = p.support.lo, hi = p.support.hi;
    if (clip) {
        lo = std::max(lo, clip->lo);
        hi = std::min(hi, clip->hi);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw config_error(p.name + ": unbounded support needs a clip window");
    if (!(hi > lo)) throw config_error(p.name + ": clip window misses the support");
    if (!p.bounded())
        throw admissibility_error(p.name + ": unbounded density has no bounding rectangle");
    r.rect = BoundingRect{lo, hi, 0.0, *p.sup_value * (1.0 + kRectInflation)};
    r.to_x = [](double v, double) { return v; };
    return r;
}

// --- transformed (ratio-of-uniforms) region ---------------------------------

// Tight rectangle around the transformed region: the u extent is analytic,
// the v extent is probed on a support-spanning grid and polished by golden
// section, then both are inflated by kRectInflation away from the anchor.
inline BoundingRect bounding_rectangle(const UnnormalizedDensity& p, const GrouConfig& cfg) {
    validate_grou_config(cfg);
    const Interval uext = grou_u_interval(p, cfg);
    if (!std::isfinite(uext.lo) || !std::isfinite(uext.hi))
        throw admissibility_error(p.name + " / " + cfg.g.name + ": u extent is unbounded");

    auto v_of = [&](double x) -> double {
        if (!p.support.contains(x)) return 0.0;
        const double px = p.pdf(x);
        if (!std::isfinite(px)) return 0.0;
        const double v = x * detail::grou_boundary_gdot(cfg, cfg.c * px);
        return std::isfinite(v) ? v : 0.0;
    };

    auto xs = detail::probe_grid(p.support, 4097);
    std::sort(xs.begin(), xs.end());
    double vmax = 0.0, vmin = 0.0;
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = v_of(xs[i]);
        if (v > vmax) { vmax = v; imax = i; }
        if (v < vmin) { vmin = v; imin = i; }
    }
    if (vmax > 0.0) {
        const double a = xs[imax > 0 ? imax - 1 : imax];
        const double b = xs[imax + 1 < xs.size() ? imax + 1 : imax];
        vmax = std::max(vmax, golden_max(v_of, a, b).second);
    }
    if (vmin < 0.0) {
        auto neg = [&](double x) { return -v_of(x); };
        const double a = xs[imin > 0 ? imin - 1 : imin];
        const double b = xs[imin + 1 < xs.size() ? imin + 1 : imin];
        vmin = std::min(vmin, -golden_max(neg, a, b).second);
    }

    BoundingRect r;
    r.v_hi = vmax > 0.0 ? vmax * (1.0 + kRectInflation) : 0.0;
    r.v_lo = vmin < 0.0 ? vmin * (1.0 + kRectInflation) : 0.0;
    const double anchor = grou_anchor(cfg);
    const bool up = (cfg.g.dir == Direction::increasing) == (cfg.c > 0.0);
    if (up) {
        r.u_lo = uext.lo;  // anchor side, exact
        r.u_hi = anchor + (uext.hi - anchor) * (1.0 + kRectInflation);
    } else {
        r.u_hi = uext.hi;
        r.u_lo = anchor - (anchor - uext.lo) * (1.0 + kRectInflation);
    }
    if (!(r.area() > 0.0))
        throw admissibility_error(p.name + " / " + cfg.g.name + ": degenerate rectangle");
    return r;
}

// A_g = {(v, u): u on the sign-compatible side, |g(u)| <= |c| p(v / |g'(u)|)}.
// Membership never inverts g, so density levels beyond g's image and
// asymptotes of p (p = +inf) behave correctly by direct comparison.
inline Region2D region_grou(const UnnormalizedDensity& p, const GrouConfig& cfg) {
    validate_grou_config(cfg);
    Region2D r;
    r.kind = "transformed";
    r.name = p.name + " / " + cfg.g.name;
    const Interval side = grou_u_side(cfg);
    UnnormalizedDensity pc = p;
    GrouConfig cc = cfg;
    r.contains = [pc, cc, side](double v, double u) {
        if (!cc.g.domain.contains(u)) return false;
        if (u < side.lo || u > side.hi) return false;
        const double gd = cc.g.deriv(u);
        if (std::fabs(gd) < 1e-300) return v == 0.0;  // degenerate column
        const double x = v / std::fabs(gd);
        const double px = pc.eval_for_membership(x);
        if (std::isnan(px)) return false;
        return std::fabs(cc.g.fwd(u)) <= std::fabs(cc.c) * px;
    };
    r.rect = bounding_rectangle(p, cfg);
    r.to_x = [cc, pc](double v, double u) {
        const double x = v / std::fabs(cc.g.deriv(u));
        return std::isnan(x) ? pc.support.clamp_inside(0.0, 1e-9) : x;
    };
    return r;
}

// --- slice-form regions ------------------------------------------------------

// {(v, u): u in range, 0 <= v <= q(u)} for a nonnegative slice rule q.
inline Region2D region_slice_form(std::string name, Fn1 q, Support u_range,
                                  std::function<double(double, double)> to_x = nullptr) {
    if (!u_range.finite())
        throw config_error(name + ": slice-form region needs a bounded u range");
    Region2D r;
    r.kind = "slice-form";
    r.name = std::move(name);
    Fn1 qc = q;
    Support ur = u_range;
    r.contains = [qc, ur](double v, double u) {
        if (!ur.contains(u)) return false;
        if (v < 0.0) return false;
        const double s = qc(u);
        if (std::isnan(s)) return false;
        return v <= s;
    };
    auto us = detail::probe_grid(ur, 2049);
    std::sort(us.begin(), us.end());
    double qmax = 0.0;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double s = qc(us[i]);
        if (std::isfinite(s) && s > qmax) { qmax = s; imax = i; }
    }
    if (qmax > 0.0) {
        auto qf = [&](double u) {
            const double s = qc(u);
            return std::isfinite(s) ? s : 0.0;
        };
        const double a = us[imax > 0 ? imax - 1 : imax];
        const double b = us[imax + 1 < us.size() ? imax + 1 : imax];
        qmax = std::max(qmax, golden_max(qf, a, b).second);
    }
    if (!(qmax > 0.0)) throw admissibility_error(r.name + ": empty slice-form region");
    r.rect = BoundingRect{0.0, qmax * (1.0 + kRectInflation), ur.lo, ur.hi};
    r.slice = qc;
    r.to_x = std::move(to_x);
    return r;
}

// Region characterized through the generalized inverse of the target:
// slice length at u is |{x : p(x) >= g(u)/c}| * |g'(u)|. For a single
// decreasing branch this is the textbook 0 <= v <= p^{-1}(g(u)/c) g'(u).
inline Region2D region_trs_inverse(const PiecewiseMonotoneDensity& pm, const GrouConfig& cfg) {
    validate_grou_config(cfg);
    UnnormalizedDensity shim;  // u extent only needs the support and the sup
    shim.name = pm.name;
    shim.support = pm.support;
    shim.sup_value = pm.sup_value;
    const Interval uext = grou_u_interval(shim, cfg);
    if (!std::isfinite(uext.lo) || !std::isfinite(uext.hi))
        throw admissibility_error(pm.name + " / " + cfg.g.name + ": u extent is unbounded");

    PiecewiseMonotoneDensity pmc = pm;
    GrouConfig cc = cfg;
    Fn1 q = [pmc, cc](double u) -> double {
        const double y = cc.g.fwd(u) / cc.c;
        if (!(y > 0.0)) return 0.0;
        if (pmc.sup_value && y > *pmc.sup_value) return 0.0;
        return generalized_inverse(pmc, y) * std::fabs(cc.g.deriv(u));
    };
    auto r = region_slice_form(pm.name + " / " + cfg.g.name + " (inverse form)", q,
                               Support::closed(uext.lo, uext.hi));
    r.kind = "inverse-form";
    return r;
}

// --- boundary, slices, agreement ---------------------------------------------

struct BoundaryPoint {
    double x, v, u;
};

// Parametric boundary curve of the transformed region, sampled over the
// support: u(x) = g^{-1}(c p(x)) (capped at the image edge), v(x) = x |g'(u)|.
// The grid gains one golden-refined point at the tallest probe so the curve
// reaches u = g^{-1}(c sup p) instead of stopping at the nearest grid node.
inline std::vector<BoundaryPoint> boundary_points(const UnnormalizedDensity& p,
                                                  const GrouConfig& cfg, int n) {
    validate_grou_config(cfg);
    if (n < 2) throw config_error("boundary_points: need at least two points");
    auto xs = detail::probe_grid(p.support, n);
    std::sort(xs.begin(), xs.end());
    std::size_t peak = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (p.pdf(xs[i]) > p.pdf(xs[peak])) peak = i;
    }
    const double bl = peak > 0 ? xs[peak - 1] : xs[peak];
    const double bh = peak + 1 < xs.size() ? xs[peak + 1] : xs[peak];
    if (bh > bl) xs.push_back(golden_max([&](double x) { return p.pdf(x); }, bl, bh).first);
    std::sort(xs.begin(), xs.end());
    std::vector<BoundaryPoint> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const double px = p.pdf(x);
        if (!std::isfinite(px)) continue;
        const double u = detail::grou_boundary_u(cfg, cfg.c * px);
        if (!std::isfinite(u)) continue;
        const double v = x * detail::grou_boundary_gdot(cfg, cfg.c * px);
        if (!std::isfinite(v)) continue;
        out.push_back({x, v, u});
    }
    return out;
}

// Slice length of any region at height u, measured from membership alone:
// scan the rectangle's v range, bisect every crossing to full precision.
inline double slice_measure(const Region2D& r, double u, int n = 4096) {
    const double lo = r.rect.v_lo, hi = r.rect.v_hi;
    if (!(hi > lo)) return 0.0;
    const double h = (hi - lo) / n;
    auto inside = [&](double v) { return r.contains(v, u); };
    double len = 0.0;
    bool prev = inside(lo);
    double seg_start = lo;
    for (int i = 1; i <= n; ++i) {
        const bool cur = inside(lo + h * i);
        if (cur != prev) {
            double a = lo + h * (i - 1), b = lo + h * i;
            for (int k = 0; k < 60; ++k) {
                const double m = 0.5 * (a + b);
                (inside(m) == prev ? a : b) = m;
            }
            const double cross = 0.5 * (a + b);
            if (prev) len += cross - seg_start;
            else seg_start = cross;
            prev = cur;
        }
    }
    if (prev) len += hi - seg_start;
    return len;
}

struct AgreementReport {
    double agree_fraction = 1.0;
    std::size_t counted = 0;
    std::size_t excluded = 0;
    std::size_t disagreements = 0;
};

// Pointwise membership agreement of two regions over the union of their
// rectangles. Cells whose 5-point stencil (+-tol in v and in u) straddles
// either boundary are excluded, so the fraction measures interior agreement.
inline AgreementReport region_agreement(const Region2D& a, const Region2D& b,
                                        int nv, int nu, double boundary_tol) {
    const double v_lo = std::min(a.rect.v_lo, b.rect.v_lo);
    const double v_hi = std::max(a.rect.v_hi, b.rect.v_hi);
    const double u_lo = std::min(a.rect.u_lo, b.rect.u_lo);
    const double u_hi = std::max(a.rect.u_hi, b.rect.u_hi);
    AgreementReport rep;
    auto stable = [&](const Region2D& r, double v, double u, bool& val) {
        val = r.contains(v, u);
        return r.contains(v - boundary_tol, u) == val &&
               r.contains(v + boundary_tol, u) == val &&
               r.contains(v, u - boundary_tol) == val &&
               r.contains(v, u + boundary_tol) == val;
    };
    for (int i = 0; i < nv; ++i) {
        const double v = v_lo + (v_hi - v_lo) * (i + 0.5) / nv;
        for (int j = 0; j < nu; ++j) {
            const double u = u_lo + (u_hi - u_lo) * (j + 0.5) / nu;
            bool va = false, vb = false;
            const bool sa = stable(a, v, u, va);
            const bool sb = stable(b, v, u, vb);
            if (!sa || !sb) {
                ++rep.excluded;
                continue;
            }
            ++rep.counted;
            if (va != vb) ++rep.disagreements;
        }
    }
    rep.agree_fraction =
        rep.counted ? 1.0 - double(rep.disagreements) / double(rep.counted) : 1.0;
    return rep;
}

} // namespace grou
