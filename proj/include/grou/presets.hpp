// SPDX-License-Identifier: Apache-2.0
#pragma once

// Named presets: string -> target / transform / method, the analytic inner
// samplers for the inverse-density and vertical routes, and make_run, the
// single dispatch point shared by the command-line tool and the tests.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "region.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "support.hpp"
#include "targets.hpp"
#include "transform.hpp"

namespace grou {

enum class Method { iod, khintchine, rs, trs, grou, ugrou, generic_iod };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::iod: return "iod";
        case Method::khintchine: return "khintchine";
        case Method::rs: return "rs";
        case Method::trs: return "trs";
        case Method::grou: return "grou";
        case Method::ugrou: return "ugrou";
        default: return "generic-iod";
    }
}

inline Method method_by_name(const std::string& s) {
    if (s == "iod") return Method::iod;
    if (s == "khintchine") return Method::khintchine;
    if (s == "rs") return Method::rs;
    if (s == "trs") return Method::trs;
    if (s == "grou") return Method::grou;
    if (s == "ugrou") return Method::ugrou;
    if (s == "generic-iod") return Method::generic_iod;
    throw config_error("unknown method: " + s);
}

namespace detail {

// "name" or "name(param)" -> {name, param}
inline std::pair<std::string, std::optional<double>> split_spec(const std::string& spec) {
    const auto open = spec.find('(');
    if (open == std::string::npos) return {spec, std::nullopt};
    if (spec.back() != ')') throw config_error("malformed spec: " + spec);
    const std::string base = spec.substr(0, open);
    const std::string arg = spec.substr(open + 1, spec.size() - open - 2);
    try {
        std::size_t used = 0;
        const double v = std::stod(arg, &used);
        if (used != arg.size()) throw config_error("malformed parameter in: " + spec);
        return {base, v};
    } catch (const config_error&) {
        throw;
    } catch (...) {
        throw config_error("malformed parameter in: " + spec);
    }
}

} // namespace detail

inline UnnormalizedDensity target_by_name(const std::string& spec) {
    auto [base, param] = detail::split_spec(spec);
    if (base == "half-gaussian") return half_gaussian_density(param.value_or(1.0));
    if (base == "exponential") return exponential_density(param.value_or(1.0));
    if (param) throw config_error(base + ": target takes no parameter");
    if (base == "gaussian") return gaussian_density();
    if (base == "bimodal-quartic") return bimodal_quartic_density();
    if (base == "sqrt-neg-log") return sqrt_neg_log_density();
    if (base == "heavy-tail") return heavy_tail_density();
    if (base == "cauchy") return cauchy_density();
    if (base == "neg-log") return neg_log_density();
    if (base == "gamma-half") return gamma_half_density();
    throw config_error("unknown target: " + spec);
}

inline PiecewiseMonotoneDensity pieces_by_name(const std::string& spec) {
    auto [base, param] = detail::split_spec(spec);
    if (base == "half-gaussian") return half_gaussian_pieces(param.value_or(1.0));
    if (base == "exponential") return exponential_pieces(param.value_or(1.0));
    if (param) throw config_error(base + ": target takes no parameter");
    if (base == "gaussian") return gaussian_pieces();
    if (base == "bimodal-quartic") return bimodal_quartic_pieces();
    if (base == "sqrt-neg-log") return sqrt_neg_log_pieces();
    if (base == "heavy-tail") return heavy_tail_pieces();
    if (base == "cauchy") return cauchy_pieces();
    if (base == "neg-log") {
        auto d = neg_log_density();
        auto inv = d.inverse;
        return make_piecewise({make_piece(d, d.support, Direction::decreasing, inv)},
                              d.sup_value, d.name);
    }
    if (base == "gamma-half") {
        auto d = gamma_half_density();
        return make_piecewise({make_piece(d, d.support, Direction::decreasing, nullptr)},
                              d.sup_value, d.name);
    }
    throw config_error("no monotone-piece decomposition for target: " + spec);
}

// Transform names: identity, half-square, sqrt2u, arctan, mobius, power(r),
// cdf (built from the target), and dotted compositions like arctan.sqrt2u.
// The dot splits at parenthesis depth zero, so power(1.5) stays intact.
// target_spec names the target so the cdf form can reach its piece
// decomposition when the target is not monotone.
inline MonotoneTransform transform_by_name(const std::string& spec,
                                           const UnnormalizedDensity* target = nullptr,
                                           const std::string& target_spec = "") {
    int depth = 0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (spec[i] == '(') ++depth;
        else if (spec[i] == ')') --depth;
        else if (spec[i] == '.' && depth == 0)
            return compose(transform_by_name(spec.substr(0, i), target, target_spec),
                           transform_by_name(spec.substr(i + 1), target, target_spec));
    }
    auto [base, param] = detail::split_spec(spec);
    if (base == "power") {
        if (!param) throw config_error("power transform needs a parameter, e.g. power(3)");
        return power_transform(*param);
    }
    if (param) throw config_error(base + ": transform takes no parameter");
    if (base == "identity") return identity_transform();
    if (base == "half-square") return half_square_transform();
    if (base == "sqrt2u") return sqrt2u_transform();
    if (base == "arctan") return arctan_transform();
    if (base == "mobius") return mobius_transform();
    if (base == "cdf") {
        if (!target) throw config_error("cdf transform needs a target");
        if (target->inverse) return cdf_based_g(*target);  // one decreasing branch
        if (target_spec.empty())
            throw config_error("cdf transform on a non-monotone target needs a named target");
        return cdf_based_g(pieces_by_name(target_spec), *target);
    }
    throw config_error("unknown transform: " + spec);
}

// Analytic sampler for the level variable of the inverse-density route:
// density proportional to p^{-1}(y). Each draw consumes a fixed number of
// stream values.
inline ScalarSampler iod_level_sampler(const std::string& target_spec) {
    auto [base, param] = detail::split_spec(target_spec);
    (void)param;  // the level law is scale-free for the parametrized targets
    if (base == "exponential")  // product of two uniforms: density -log y
        return [](RngStream& r) {
            const double a = r.u01_pos();
            return a * r.u01_pos();
        };
    if (base == "half-gaussian")  // w * p(x') with x' drawn from the target
        return [](RngStream& r) {
            const double z = r.normal();
            return r.u01_pos() * std::exp(-0.5 * z * z);
        };
    if (base == "sqrt-neg-log")  // density e^{-y^2/2} on (0, inf)
        return [](RngStream& r) { return std::fabs(r.normal()); };
    if (base == "heavy-tail")  // w * p(x'), x' by CDF inversion
        return [](RngStream& r) {
            const double x = std::pow(1.0 - r.u01(), -2.0) - 1.0;
            return r.u01_pos() * std::pow(1.0 + x, -1.5);
        };
    throw config_error("no inverse-density level sampler for target: " + target_spec);
}

// Analytic sampler for the vertical rule q(u) = -u p'(u).
inline ScalarSampler khintchine_vertical_sampler(const std::string& target_spec) {
    auto [base, param] = detail::split_spec(target_spec);
    if (base == "exponential") {  // q is the rate-lambda gamma(2) rule
        const double rate = param.value_or(1.0);
        return [rate](RngStream& r) { return (r.exponential() + r.exponential()) / rate; };
    }
    if (base == "half-gaussian") {  // q is the sigma Maxwell rule
        const double sigma = param.value_or(1.0);
        return [sigma](RngStream& r) {
            const double a = r.normal(), b = r.normal(), c = r.normal();
            return sigma * std::sqrt(a * a + b * b + c * c);
        };
    }
    throw config_error("no vertical-rule sampler for target: " + target_spec);
}

// --- one-call run dispatch -----------------------------------------------

struct RunSpec {
    Method method = Method::grou;
    std::string target = "gaussian";
    std::string transform;  // empty -> per-method default
    double c = 1.0;
    std::size_t n = 10000;
    std::uint64_t seed = 1;
    unsigned streams = 1;
    std::optional<Interval> clip;  // rs only
    bool mirror = false;           // grou / ugrou only
};

struct RunOutput {
    SampleBatch batch;
    UnnormalizedDensity target_density;
    std::string method_name, transform_name;
    double envelope = 0.0;  // trs flat cap when applicable
};

inline std::string default_transform(Method m) {
    switch (m) {
        case Method::grou: return "half-square";
        case Method::ugrou: return "arctan";
        default: return "";
    }
}

inline RunOutput make_run(const RunSpec& spec) {
    if (spec.n < 1) throw config_error("n must be >= 1");
    if (spec.streams < 1) throw config_error("streams must be >= 1");
    RunOutput out;
    out.method_name = to_string(spec.method);
    out.target_density = target_by_name(spec.target);
    const UnnormalizedDensity& p = out.target_density;

    if (spec.clip && spec.method != Method::rs)
        throw config_error("--clip only applies to the rs method");
    if (spec.mirror && spec.method != Method::grou && spec.method != Method::ugrou)
        throw config_error("--mirror only applies to grou and ugrou");

    std::string tname = spec.transform.empty() ? default_transform(spec.method) : spec.transform;

    switch (spec.method) {
        case Method::iod: {
            auto ys = iod_level_sampler(spec.target);
            out.batch = run_streams(spec.n, spec.seed, spec.streams,
                                    [&p, &ys](RngStream& rng, std::size_t cnt) {
                                        return sample_iod(p, ys, cnt, rng);
                                    });
            break;
        }
        case Method::khintchine: {
            auto us = khintchine_vertical_sampler(spec.target);
            out.batch = run_streams(spec.n, spec.seed, spec.streams,
                                    [&us](RngStream& rng, std::size_t cnt) {
                                        return sample_khintchine(us, cnt, rng);
                                    });
            break;
        }
        case Method::rs: {
            out.batch = run_streams(spec.n, spec.seed, spec.streams,
                                    [&p, &spec](RngStream& rng, std::size_t cnt) {
                                        return sample_rejection(p, cnt, rng, spec.clip);
                                    });
            break;
        }
        case Method::trs: {
            if (tname.empty())
                throw config_error("trs needs --transform (e.g. mobius, arctan)");
            const auto t = transform_by_name(tname, &p, spec.target);
            const TrsPlan plan = plan_trs(p, t);
            out.envelope = plan.envelope;
            out.transform_name = t.name;
            out.batch = run_streams(spec.n, spec.seed, spec.streams,
                                    [&plan](RngStream& rng, std::size_t cnt) {
                                        return sample_trs(plan, cnt, rng);
                                    });
            break;
        }
        case Method::grou:
        case Method::ugrou: {
            auto t = transform_by_name(tname, &p, spec.target);
            if (spec.method == Method::ugrou) t = inverted(t);
            const GrouConfig cfg{t, spec.c};
            BoundednessReport rep = check_grou_admissibility(p, cfg);
            if (rep.verdict == BoundVerdict::unbounded)
                throw admissibility_error(p.name + " / " + t.name + ": region unbounded at " +
                                          rep.diverging_end);
            if (rep.verdict == BoundVerdict::inconclusive)
                throw inconclusive_error(p.name + " / " + t.name +
                                         ": admissibility probe inconclusive at " +
                                         rep.diverging_end);
            const Region2D region = region_grou(p, cfg);
            out.transform_name = t.name;
            out.batch = run_streams(spec.n, spec.seed, spec.streams,
                                    [&region, &spec](RngStream& rng, std::size_t cnt) {
                                        return sample_region_mapped(region, cnt, rng,
                                                                    spec.mirror);
                                    });
            break;
        }
        case Method::generic_iod: {
            const GenericIodPlan plan = plan_generic_iod(pieces_by_name(spec.target));
            out.batch = run_streams(spec.n, spec.seed, spec.streams,
                                    [&plan](RngStream& rng, std::size_t cnt) {
                                        return sample_generic_iod(plan, cnt, rng);
                                    });
            break;
        }
    }
    out.batch.seed = spec.seed;
    out.batch.streams = spec.streams;
    if (out.transform_name.empty()) out.transform_name = tname.empty() ? "-" : tname;
    return out;
}

} // namespace grou
