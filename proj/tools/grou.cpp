// SPDX-License-Identifier: Apache-2.0

// grou: generate samples from a named target by a chosen method, export
// acceptance regions for plotting, run boundedness checks, and benchmark
// acceptance rates across the method catalog.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
// 3 inadmissible (unbounded) configuration, 4 proposal starvation,
// 5 inconclusive boundedness probe.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <grou/grou.hpp>

namespace {

using grou::io::json;

struct Args {
    std::string target = "gaussian";
    std::string method;  // empty: sample/region default to grou, check routes by transform
    std::string transform;
    double c = 1.0;
    std::size_t n = 100000;
    std::uint64_t seed = 0;
    unsigned streams = 1;
    std::vector<double> clip;
    bool mirror = false;
    std::string out = "run";
    int grid = 128;
    bool agree = false;
};

void add_run_options(CLI::App* cmd, Args& a) {
    cmd->add_option("--target", a.target, "target density, e.g. gaussian, exponential(2)");
    cmd->add_option("--method", a.method, "iod|khintchine|rs|trs|grou|ugrou|generic-iod");
    cmd->add_option("--transform", a.transform, "transform, e.g. half-square, arctan, power(3)");
    cmd->add_option("--c", a.c, "region scale constant c");
    cmd->add_option("--n", a.n, "sample count");
    cmd->add_option("--seed", a.seed, "RNG seed (GROU_SEED env overrides)");
    cmd->add_option("--streams", a.streams, "independent substream count");
    cmd->add_option("--clip", a.clip, "clip window LO HI (rs on unbounded supports)")
        ->expected(2);
    cmd->add_flag("--mirror", a.mirror, "negate mapped samples (reflected targets)");
    cmd->add_option("--out", a.out, "output path prefix");
}

grou::RunSpec to_run_spec(const Args& a) {
    grou::RunSpec s;
    s.method = grou::method_by_name(a.method.empty() ? "grou" : a.method);
    s.target = a.target;
    s.transform = a.transform;
    s.c = a.c;
    s.n = a.n;
    s.seed = a.seed;
    s.streams = a.streams;
    if (!a.clip.empty()) s.clip = grou::Interval{a.clip[0], a.clip[1]};
    s.mirror = a.mirror;
    return s;
}

int cmd_sample(const Args& a) {
    const grou::RunSpec spec = to_run_spec(a);
    grou::RunOutput out = grou::make_run(spec);

    const grou::GofReport gof = grou::gof_chisq(out.batch.values, out.target_density, 50);
    const grou::RateEstimate rate =
        grou::wilson_interval(out.batch.stats.accepted, out.batch.stats.proposals);

    grou::io::write_samples_csv(a.out + "_samples.csv", out.batch.values);

    json stats = grou::io::new_doc();
    stats["target"] = spec.target;
    stats["method"] = out.method_name;
    stats["transform"] = out.transform_name;
    stats["c"] = spec.c;
    stats["n"] = spec.n;
    stats["seed_record"] = json{{"seed", spec.seed}, {"streams", spec.streams}};
    stats["stats"] = grou::io::json_of(out.batch.stats);
    stats["rate"] = grou::io::json_of(rate);
    if (out.envelope > 0.0) stats["envelope"] = out.envelope;
    stats["gof_pass"] = gof.pass;
    grou::io::write_json(a.out + "_stats.json", stats);

    json gj = grou::io::new_doc();
    gj["target"] = spec.target;
    gj["test"] = "chi-square, equal-mass bins";
    gj["report"] = grou::io::json_of(gof);
    grou::io::write_json(a.out + "_gof.json", gj);

    std::printf("sample: %zu values  rate=%.6f  gof_p=%.4g%s\n", out.batch.values.size(),
                out.batch.stats.rate(), gof.p_value,
                gof.pass ? "" : "  (GOF FAILED, reported in sidecar)");
    std::printf("wrote %s_samples.csv %s_stats.json %s_gof.json\n", a.out.c_str(),
                a.out.c_str(), a.out.c_str());
    return 0;
}

int cmd_region(const Args& a) {
    const std::string method = a.method.empty() ? "grou" : a.method;
    if (method != "grou" && method != "ugrou" && method != "trs")
        throw grou::config_error("region: method must be grou, ugrou, or trs");
    if (a.transform.empty() && method == "trs")
        throw grou::config_error("region: trs needs --transform");

    const grou::UnnormalizedDensity p = grou::target_by_name(a.target);
    const std::string tname =
        a.transform.empty() ? grou::default_transform(grou::method_by_name(method)) : a.transform;
    grou::MonotoneTransform t = grou::transform_by_name(tname, &p, a.target);
    if (method == "ugrou") t = grou::inverted(t);
    const grou::GrouConfig cfg{t, a.c};

    const grou::BoundednessReport rep = grou::check_grou_admissibility(p, cfg);
    if (rep.verdict == grou::BoundVerdict::unbounded)
        throw grou::admissibility_error(a.target + " / " + t.name + ": region unbounded at " +
                                        rep.diverging_end);
    if (rep.verdict == grou::BoundVerdict::inconclusive)
        throw grou::inconclusive_error(a.target + " / " + t.name + ": probe inconclusive");

    grou::Region2D region;
    std::vector<grou::BoundaryPoint> boundary;
    if (method == "trs") {
        region = grou::region_trs_inverse(grou::pieces_by_name(a.target), cfg);
        const int nb = 4 * a.grid;
        for (int i = 0; i < nb; ++i) {
            const double u =
                region.rect.u_lo + (region.rect.u_hi - region.rect.u_lo) * (i + 0.5) / nb;
            const double v = region.slice ? region.slice(u) : 0.0;
            const double gd = std::fabs(cfg.g.deriv(u));
            if (!std::isfinite(v) || !(gd > 0.0)) continue;
            boundary.push_back({v / gd, v, u});
        }
    } else {
        region = grou::region_grou(p, cfg);
        boundary = grou::boundary_points(p, cfg, 4 * a.grid);
    }

    grou::io::write_boundary_csv(a.out + "_boundary.csv", boundary);
    grou::io::write_lattice_csv(
        a.out + "_lattice.csv",
        grou::io::membership_lattice(region, static_cast<std::size_t>(a.grid),
                                     static_cast<std::size_t>(a.grid)));

    json rj = grou::io::new_doc();
    rj["target"] = a.target;
    rj["transform"] = t.name;
    rj["c"] = a.c;
    rj["region"] = region.name;
    rj["rect"] = grou::io::json_of(region.rect);
    rj["admissibility"] = grou::io::json_of(rep);
    if (a.agree) {
        grou::Region2D other = method == "trs"
                                   ? grou::region_grou(p, cfg)
                                   : grou::region_trs_inverse(grou::pieces_by_name(a.target), cfg);
        const double tol =
            2.0 * std::max((region.rect.v_hi - region.rect.v_lo) / a.grid,
                           (region.rect.u_hi - region.rect.u_lo) / a.grid);
        rj["agreement"] = grou::io::json_of(grou::region_agreement(
            region, other, static_cast<std::size_t>(a.grid), static_cast<std::size_t>(a.grid),
            tol));
    }
    grou::io::write_json(a.out + "_rect.json", rj);

    std::printf("region %s: v in [%.6g, %.6g], u in [%.6g, %.6g]\n", region.name.c_str(),
                region.rect.v_lo, region.rect.v_hi, region.rect.u_lo, region.rect.u_hi);
    std::printf("wrote %s_boundary.csv %s_rect.json %s_lattice.csv\n", a.out.c_str(),
                a.out.c_str(), a.out.c_str());
    return 0;
}

int cmd_check(const Args& a) {
    if (a.transform.empty()) throw grou::config_error("check: --transform is required");
    const grou::UnnormalizedDensity p = grou::target_by_name(a.target);

    // Route: explicit --method wins; otherwise bounded-image reparameterizations
    // (mobius, arctan and their compositions) get the transformed-density check,
    // everything else the region admissibility check.
    std::string mode = a.method;
    if (mode.empty()) {
        const std::string head = a.transform.substr(0, a.transform.find_first_of(".("));
        mode = (head == "mobius" || head == "arctan") ? "trs" : "grou";
    }

    json doc = grou::io::new_doc();
    doc["target"] = a.target;
    doc["transform"] = a.transform;
    grou::BoundednessReport rep;
    if (mode == "trs") {
        const grou::MonotoneTransform t = grou::transform_by_name(a.transform, &p, a.target);
        rep = grou::check_trs_boundedness(p, t);
        doc["mode"] = "transformed-density";
    } else if (mode == "grou" || mode == "ugrou") {
        grou::MonotoneTransform t = grou::transform_by_name(a.transform, &p, a.target);
        if (mode == "ugrou") t = grou::inverted(t);
        rep = grou::check_grou_admissibility(p, grou::GrouConfig{t, a.c});
        doc["mode"] = "region-admissibility";
        if (a.transform.rfind("cdf", 0) == 0) doc["note"] = "rectangular";
    } else {
        throw grou::config_error("check: method must be trs, grou, or ugrou");
    }
    doc["report"] = grou::io::json_of(rep);
    std::printf("%s\n", doc.dump(2).c_str());

    switch (rep.verdict) {
        case grou::BoundVerdict::bounded: return 0;
        case grou::BoundVerdict::unbounded: return 3;
        default: return 5;
    }
}

int cmd_compare(const Args& a) {
    struct Row { const char* method; const char* target; const char* transform; };
    static const Row kMatrix[] = {
        {"iod", "exponential", ""},
        {"iod", "half-gaussian", ""},
        {"iod", "sqrt-neg-log", ""},
        {"khintchine", "exponential", ""},
        {"khintchine", "half-gaussian", ""},
        {"trs", "exponential", "mobius"},
        {"trs", "half-gaussian", "mobius"},
        {"trs", "gaussian", "arctan"},
        {"trs", "bimodal-quartic", "arctan"},
        {"trs", "sqrt-neg-log", "power(0.5)"},
        {"grou", "exponential", "half-square"},
        {"grou", "half-gaussian", "half-square"},
        {"grou", "gaussian", "half-square"},
        {"grou", "bimodal-quartic", "half-square"},
        {"ugrou", "sqrt-neg-log", "arctan"},
        {"generic-iod", "exponential", ""},
        {"generic-iod", "half-gaussian", ""},
        {"generic-iod", "gaussian", ""},
        {"generic-iod", "bimodal-quartic", ""},
    };

    std::vector<grou::io::CompareRow> rows;
    for (const Row& r : kMatrix) {
        grou::RunSpec spec;
        spec.method = grou::method_by_name(r.method);
        spec.target = r.target;
        spec.transform = r.transform;
        spec.n = a.n;
        spec.seed = a.seed;
        spec.streams = a.streams;
        const grou::RunOutput out = grou::make_run(spec);
        const grou::RateEstimate est =
            grou::wilson_interval(out.batch.stats.accepted, out.batch.stats.proposals);
        const grou::GofReport gof = grou::gof_chisq(out.batch.values, out.target_density, 50);
        rows.push_back({r.target, out.method_name, out.transform_name, est.rate, est.ci_lo,
                        est.ci_hi, gof.p_value});
        std::printf("%-12s %-16s %-12s rate=%.4f [%.4f, %.4f] gof_p=%.4g\n", r.method,
                    r.target, out.transform_name.c_str(), est.rate, est.ci_lo, est.ci_hi,
                    gof.p_value);
    }
    grou::io::write_compare_csv(a.out + "_rates.csv", rows);
    std::printf("wrote %s_rates.csv\n", a.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unified random-variate generation: inverse-density, vertical-density, "
                 "rejection and ratio-of-uniforms samplers"};
    app.require_subcommand(1);

    Args args;
    CLI::App* sample = app.add_subcommand("sample", "generate samples and sidecar reports");
    add_run_options(sample, args);
    CLI::App* region = app.add_subcommand("region", "export region boundary, rect and lattice");
    add_run_options(region, args);
    region->add_option("--grid", args.grid, "lattice resolution per axis");
    region->add_flag("--agree", args.agree, "include region-form agreement in the report");
    CLI::App* check = app.add_subcommand("check", "boundedness / admissibility verdict");
    add_run_options(check, args);
    CLI::App* compare = app.add_subcommand("compare", "acceptance-rate table across methods");
    add_run_options(compare, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // bad flags are configuration errors
    }

    if (const char* env = std::getenv("GROU_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            std::fprintf(stderr, "error: GROU_SEED is not an integer: %s\n", env);
            return 2;
        }
        args.seed = v;
    }

    try {
        if (sample->parsed()) return cmd_sample(args);
        if (region->parsed()) return cmd_region(args);
        if (check->parsed()) return cmd_check(args);
        return cmd_compare(args);
    } catch (const grou::config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const grou::admissibility_error& e) {
        std::fprintf(stderr, "admissibility error: %s\n", e.what());
        return 3;
    } catch (const grou::envelope_error& e) {
        std::fprintf(stderr, "envelope violation: %s\n", e.what());
        return 3;
    } catch (const grou::starvation_error& e) {
        std::fprintf(stderr, "starvation: %s\n", e.what());
        return 4;
    } catch (const grou::inconclusive_error& e) {
        std::fprintf(stderr, "inconclusive: %s\n", e.what());
        return 5;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
