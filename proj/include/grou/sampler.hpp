// SPDX-License-Identifier: Apache-2.0
#pragma once

// The sampler family. Every routine is driven by an explicit RngStream and
// consumes draws in a fixed documented order, so a (seed, stream) pair pins
// the output sequence exactly.
//
// Guards: a flat envelope is pre-validated on a grid and re-checked on
// every proposal (envelope_error on violation); acceptance loops abort when
// the running rate is still below 1e-4 after a million proposals
// (starvation_error).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "region.hpp"
#include "rng.hpp"
#include "support.hpp"
#include "transform.hpp"

namespace grou {

struct AcceptanceStats {
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
    double rate() const { return proposals ? double(accepted) / double(proposals) : 0.0; }
};

struct SampleBatch {
    std::vector<double> values;
    AcceptanceStats stats;
    std::uint64_t seed = 0;
    unsigned streams = 1;
};

struct PointBatch {
    std::vector<double> v, u;
    AcceptanceStats stats;
};

using ScalarSampler = std::function<double(RngStream&)>;

namespace detail {

inline void starvation_check(const AcceptanceStats& s, const std::string& who) {
    if (s.proposals % 1000000 == 0 && s.rate() < 1e-4)
        throw starvation_error(who + ": acceptance rate below 1e-4 after " +
                               std::to_string(s.proposals) + " proposals");
}

} // namespace detail

// --- uniform points on a region ------------------------------------------

// Draw order per proposal: v, then u.
inline PointBatch sample_uniform_region(const Region2D& r, std::size_t n, RngStream& rng) {
    PointBatch out;
    out.v.reserve(n);
    out.u.reserve(n);
    while (out.v.size() < n) {
        const double v = rng.uniform(r.rect.v_lo, r.rect.v_hi);
        const double u = rng.uniform(r.rect.u_lo, r.rect.u_hi);
        ++out.stats.proposals;
        if (r.contains(v, u)) {
            ++out.stats.accepted;
            out.v.push_back(v);
            out.u.push_back(u);
        }
        detail::starvation_check(out.stats, r.name);
    }
    return out;
}

// Uniform region points pushed through the region's sample map. mirror
// negates the output, which turns a sampler for p(x) into one for p(-x).
inline SampleBatch sample_region_mapped(const Region2D& r, std::size_t n, RngStream& rng,
                                        bool mirror = false) {
    if (!r.to_x) throw config_error(r.name + ": region has no sample map");
    SampleBatch out;
    out.values.reserve(n);
    while (out.values.size() < n) {
        const double v = rng.uniform(r.rect.v_lo, r.rect.v_hi);
        const double u = rng.uniform(r.rect.u_lo, r.rect.u_hi);
        ++out.stats.proposals;
        if (r.contains(v, u)) {
            ++out.stats.accepted;
            const double x = r.to_x(v, u);
            out.values.push_back(mirror ? -x : x);
        }
        detail::starvation_check(out.stats, r.name);
    }
    return out;
}

// --- rejection from a flat envelope over the support -----------------------

// x uniform over the (possibly clipped) support, y uniform under the flat
// cap; accept when y <= p(x). The cap is the inflated sup of p, validated
// against a 512-point grid before any draw.
inline SampleBatch sample_rejection(const UnnormalizedDensity& p, std::size_t n,
                                    RngStream& rng,
                                    std::optional<Interval> clip = std::nullopt) {
    const Region2D r = region_under_density(p, clip);
    const double cap = r.rect.u_hi;
    for (double x : detail::probe_grid(Support(r.rect.v_lo, r.rect.v_hi, false, false), 512))
        if (p.eval_for_membership(x) > cap)
            throw envelope_error(p.name + ": flat envelope below the density at grid probe");
    SampleBatch out;
    out.values.reserve(n);
    while (out.values.size() < n) {
        const double x = rng.uniform(r.rect.v_lo, r.rect.v_hi);
        const double y = rng.uniform(0.0, cap);
        ++out.stats.proposals;
        const double px = p.eval_for_membership(x);
        if (std::isnan(px)) continue;
        if (px > cap)
            throw envelope_error(p.name + ": envelope violated at x = " + std::to_string(x));
        if (y <= px) {
            ++out.stats.accepted;
            out.values.push_back(x);
        }
        detail::starvation_check(out.stats, p.name);
    }
    return out;
}

// --- transformed rejection ---------------------------------------------------

struct TrsPlan {
    UnnormalizedDensity rho;  // pushforward of the target through t
    MonotoneTransform t;
    double envelope = 0.0;    // flat cap, 1.01 * probed sup of rho
    BoundednessReport report;
};

inline TrsPlan plan_trs(const UnnormalizedDensity& p, const MonotoneTransform& t) {
    BoundednessReport rep = check_trs_boundedness(p, t);
    if (rep.verdict == BoundVerdict::unbounded)
        throw admissibility_error(p.name + " @ " + t.name +
                                  ": transformed density diverges at " + rep.diverging_end);
    if (rep.verdict == BoundVerdict::inconclusive)
        throw inconclusive_error(p.name + " @ " + t.name +
                                 ": boundedness probe inconclusive at " + rep.diverging_end);
    TrsPlan plan{push_forward_density(p, t), t, 1.01 * rep.probed_sup, std::move(rep)};
    return plan;
}

// z uniform over the image interval, w uniform under the flat envelope;
// accept when w <= rho(z), return x = t^{-1}(z).
inline SampleBatch sample_trs(const TrsPlan& plan, std::size_t n, RngStream& rng) {
    const double lo = plan.rho.support.lo, hi = plan.rho.support.hi;
    SampleBatch out;
    out.values.reserve(n);
    while (out.values.size() < n) {
        const double z = rng.uniform(lo, hi);
        const double w = rng.uniform(0.0, plan.envelope);
        ++out.stats.proposals;
        if (!plan.rho.support.contains(z)) continue;
        const double rz = plan.rho.pdf(z);
        if (!std::isfinite(rz)) continue;  // exact asymptote image, measure zero
        if (rz > plan.envelope)
            throw envelope_error(plan.rho.name + ": envelope violated at z = " +
                                 std::to_string(z));
        if (w <= rz) {
            ++out.stats.accepted;
            out.values.push_back(plan.t.inv(z));
        }
        detail::starvation_check(out.stats, plan.rho.name);
    }
    return out;
}

// --- ratio-of-uniforms --------------------------------------------------------

// Admissibility is probed first (admissibility_error / inconclusive_error),
// then points are drawn uniformly from the transformed region and mapped
// through x = v / |g'(u)|.
inline SampleBatch sample_grou(const UnnormalizedDensity& p, const GrouConfig& cfg,
                               std::size_t n, RngStream& rng, bool mirror = false) {
    BoundednessReport rep = check_grou_admissibility(p, cfg);
    if (rep.verdict == BoundVerdict::unbounded)
        throw admissibility_error(p.name + " / " + cfg.g.name +
                                  ": region unbounded at " + rep.diverging_end);
    if (rep.verdict == BoundVerdict::inconclusive)
        throw inconclusive_error(p.name + " / " + cfg.g.name +
                                 ": admissibility probe inconclusive at " + rep.diverging_end);
    return sample_region_mapped(region_grou(p, cfg), n, rng, mirror);
}

// Unbounded-target variant: the bounded map phi acts on the density axis,
// so the transform handed to the region is its functional inverse.
inline SampleBatch sample_ugrou(const UnnormalizedDensity& p, const MonotoneTransform& phi,
                                double c, std::size_t n, RngStream& rng) {
    return sample_grou(p, GrouConfig{inverted(phi), c}, n, rng);
}

// --- inverse-of-density and the vertical form ---------------------------------

// x = w * p^{-1}(y), with y drawn from the rule proportional to p^{-1}.
inline SampleBatch sample_iod(const UnnormalizedDensity& p, const ScalarSampler& y_sampler,
                              std::size_t n, RngStream& rng) {
    if (!p.inverse) throw config_error(p.name + ": inverse-of-density route needs an inverse");
    SampleBatch out;
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = y_sampler(rng);
        out.values.push_back(rng.u01() * p.inverse(y));
    }
    out.stats.proposals = out.stats.accepted = n;
    return out;
}

// x = w * u, with u drawn from the vertical rule q(u) = -u p'(u).
inline SampleBatch sample_khintchine(const ScalarSampler& u_sampler, std::size_t n,
                                     RngStream& rng) {
    SampleBatch out;
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = u_sampler(rng);
        out.values.push_back(rng.u01() * u);
    }
    out.stats.proposals = out.stats.accepted = n;
    return out;
}

// --- generic inverse-of-density via the level-set hull -------------------------

// For multimodal targets p^{-1} is set-valued; the level y is drawn with
// density proportional to the hull width of {p >= y}, x uniform on the hull,
// and the pair is accepted when p(x) >= y. Acceptance equals region mass
// over hull mass.
struct GenericIodPlan {
    PiecewiseMonotoneDensity pm;
    double y_top = 0.0;
    CdfTable width_cdf;
};

inline GenericIodPlan plan_generic_iod(const PiecewiseMonotoneDensity& pm) {
    if (!pm.sup_value)
        throw config_error(pm.name + ": level-hull route needs a bounded target");
    const double top = *pm.sup_value;
    PiecewiseMonotoneDensity pmc = pm;
    auto width = [pmc](double y) -> double {
        auto ls = level_set(pmc, y);
        if (ls.empty()) return 0.0;
        return ls.back().hi - ls.front().lo;
    };
    CdfTable tab(width, Support::open(0.0, top), 8192);
    return GenericIodPlan{pmc, top, std::move(tab)};
}

inline SampleBatch sample_generic_iod(const GenericIodPlan& plan, std::size_t n,
                                      RngStream& rng) {
    SampleBatch out;
    out.values.reserve(n);
    while (out.values.size() < n) {
        const double y = plan.width_cdf.quantile(rng.u01_pos());
        ++out.stats.proposals;
        if (!(y > 0.0) || y >= plan.y_top) continue;
        auto ls = level_set(plan.pm, y);
        if (ls.empty()) continue;
        const double x = rng.uniform(ls.front().lo, ls.back().hi);
        if (plan.pm.support.contains(x) && plan.pm.eval(x) >= y) {
            ++out.stats.accepted;
            out.values.push_back(x);
        }
        detail::starvation_check(out.stats, plan.pm.name);
    }
    return out;
}

// --- substream splitting --------------------------------------------------------

// Split n across `streams` substreams of the same seed and concatenate the
// chunks in stream order. make_batch(rng, count) must be a pure function of
// the stream state.
template <class MakeBatch>
SampleBatch run_streams(std::size_t n, std::uint64_t seed, unsigned streams,
                        MakeBatch&& make_batch) {
    if (streams == 0) throw config_error("streams must be >= 1");
    SampleBatch out;
    out.seed = seed;
    out.streams = streams;
    out.values.reserve(n);
    const std::size_t base = n / streams, extra = n % streams;
    for (unsigned s = 0; s < streams; ++s) {
        const std::size_t cnt = base + (s < extra ? 1 : 0);
        if (cnt == 0) continue;
        RngStream rng(seed, s);
        SampleBatch chunk = make_batch(rng, cnt);
        out.values.insert(out.values.end(), chunk.values.begin(), chunk.values.end());
        out.stats.proposals += chunk.stats.proposals;
        out.stats.accepted += chunk.stats.accepted;
    }
    return out;
}

} // namespace grou
