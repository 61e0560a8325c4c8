// SPDX-License-Identifier: Apache-2.0
#pragma once

// CSV and JSON serialization. Floats are written with %.17g so files
// round-trip bit-exactly through the readers below. Every JSON document
// carries "schema": "1" as its first field; CSV layouts are versioned by
// their fixed headers.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "region.hpp"
#include "sampler.hpp"
#include "transform.hpp"

namespace grou::io {

using json = nlohmann::ordered_json;

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw config_error("write failed: " + path);
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_num(const std::string& s, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw config_error(path + ": bad numeric field '" + s + "'");
    return v;
}

// Rows of `path` after validating the exact header.
inline std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                                      const std::string& header) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) throw config_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw config_error(path + ": expected header '" + header + "', got '" + line + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_csv_line(line));
        if (rows.back().size() != split_csv_line(header).size())
            throw config_error(path + ": ragged row '" + line + "'");
    }
    return rows;
}

} // namespace detail

// --- samples ("index,x") ---------------------------------------------------

inline void write_samples_csv(const std::string& path, const std::vector<double>& xs) {
    std::string s = "index,x\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += std::to_string(i);
        s += ',';
        s += fmt17(xs[i]);
        s += '\n';
    }
    write_text(path, s);
}

inline std::vector<double> read_samples_csv(const std::string& path) {
    std::vector<double> xs;
    for (const auto& row : detail::read_csv(path, "index,x"))
        xs.push_back(detail::parse_num(row[1], path));
    return xs;
}

// --- region boundary ("x,v,u") ---------------------------------------------

inline void write_boundary_csv(const std::string& path, const std::vector<BoundaryPoint>& pts) {
    std::string s = "x,v,u\n";
    for (const auto& p : pts)
        s += fmt17(p.x) + "," + fmt17(p.v) + "," + fmt17(p.u) + "\n";
    write_text(path, s);
}

inline std::vector<BoundaryPoint> read_boundary_csv(const std::string& path) {
    std::vector<BoundaryPoint> pts;
    for (const auto& row : detail::read_csv(path, "x,v,u"))
        pts.push_back({detail::parse_num(row[0], path), detail::parse_num(row[1], path),
                       detail::parse_num(row[2], path)});
    return pts;
}

// --- membership lattice ("v,u,inside") --------------------------------------

struct LatticeCell {
    double v = 0.0, u = 0.0;
    bool inside = false;
};

// Cell-center lattice over the region's bounding rectangle.
inline std::vector<LatticeCell> membership_lattice(const Region2D& r, std::size_t nv,
                                                   std::size_t nu) {
    std::vector<LatticeCell> cells;
    cells.reserve(nv * nu);
    const BoundingRect& b = r.rect;
    for (std::size_t i = 0; i < nv; ++i) {
        const double v = b.v_lo + (b.v_hi - b.v_lo) * (i + 0.5) / nv;
        for (std::size_t j = 0; j < nu; ++j) {
            const double u = b.u_lo + (b.u_hi - b.u_lo) * (j + 0.5) / nu;
            cells.push_back({v, u, r.contains(v, u)});
        }
    }
    return cells;
}

inline void write_lattice_csv(const std::string& path, const std::vector<LatticeCell>& cells) {
    std::string s = "v,u,inside\n";
    for (const auto& c : cells)
        s += fmt17(c.v) + "," + fmt17(c.u) + "," + (c.inside ? "1" : "0") + "\n";
    write_text(path, s);
}

inline std::vector<LatticeCell> read_lattice_csv(const std::string& path) {
    std::vector<LatticeCell> cells;
    for (const auto& row : detail::read_csv(path, "v,u,inside"))
        cells.push_back({detail::parse_num(row[0], path), detail::parse_num(row[1], path),
                         detail::parse_num(row[2], path) != 0.0});
    return cells;
}

// --- histogram ("bin_left,bin_right,count,expected") -------------------------

struct HistRow {
    double left = 0.0, right = 0.0;
    std::uint64_t count = 0;
    double expected = 0.0;
};

// Equal-mass binning against interior cuts; outer edges come from the support.
inline std::vector<HistRow> histogram_rows(const std::vector<double>& xs,
                                           const std::vector<double>& cuts, const Support& s) {
    const std::size_t bins = cuts.size() + 1;
    std::vector<HistRow> rows(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        rows[b].left = b == 0 ? s.lo : cuts[b - 1];
        rows[b].right = b + 1 == bins ? s.hi : cuts[b];
        rows[b].expected = static_cast<double>(xs.size()) / static_cast<double>(bins);
    }
    for (double x : xs) {
        const auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
        rows[static_cast<std::size_t>(it - cuts.begin())].count++;
    }
    return rows;
}

inline void write_histogram_csv(const std::string& path, const std::vector<HistRow>& rows) {
    std::string s = "bin_left,bin_right,count,expected\n";
    for (const auto& r : rows)
        s += fmt17(r.left) + "," + fmt17(r.right) + "," + std::to_string(r.count) + "," +
             fmt17(r.expected) + "\n";
    write_text(path, s);
}

inline std::vector<HistRow> read_histogram_csv(const std::string& path) {
    std::vector<HistRow> rows;
    for (const auto& row : detail::read_csv(path, "bin_left,bin_right,count,expected"))
        rows.push_back({detail::parse_num(row[0], path), detail::parse_num(row[1], path),
                        static_cast<std::uint64_t>(detail::parse_num(row[2], path)),
                        detail::parse_num(row[3], path)});
    return rows;
}

// --- rates table ("target,method,transform,rate,ci_low,ci_high,gof_p") ------

struct CompareRow {
    std::string target, method, transform;
    double rate = 0.0, ci_low = 0.0, ci_high = 1.0, gof_p = 1.0;
};

inline void write_compare_csv(const std::string& path, const std::vector<CompareRow>& rows) {
    std::string s = "target,method,transform,rate,ci_low,ci_high,gof_p\n";
    for (const auto& r : rows)
        s += r.target + "," + r.method + "," + r.transform + "," + fmt17(r.rate) + "," +
             fmt17(r.ci_low) + "," + fmt17(r.ci_high) + "," + fmt17(r.gof_p) + "\n";
    write_text(path, s);
}

inline std::vector<CompareRow> read_compare_csv(const std::string& path) {
    std::vector<CompareRow> rows;
    for (const auto& row :
         detail::read_csv(path, "target,method,transform,rate,ci_low,ci_high,gof_p"))
        rows.push_back({row[0], row[1], row[2], detail::parse_num(row[3], path),
                        detail::parse_num(row[4], path), detail::parse_num(row[5], path),
                        detail::parse_num(row[6], path)});
    return rows;
}

// --- JSON pieces -------------------------------------------------------------

inline json json_of(const AcceptanceStats& s) {
    return json{{"proposals", s.proposals}, {"accepted", s.accepted}, {"rate", s.rate()}};
}

inline json json_of(const RateEstimate& e) {
    return json{{"accepted", e.accepted},
                {"proposals", e.proposals},
                {"rate", e.rate},
                {"ci_low", e.ci_lo},
                {"ci_high", e.ci_hi}};
}

inline json json_of(const GofReport& g) {
    return json{{"statistic", g.statistic},
                {"p_value", g.p_value},
                {"bins", g.bins},
                {"dof", g.dof},
                {"pass", g.pass}};
}

inline json json_of(const BoundingRect& r) {
    return json{{"v_min", r.v_lo}, {"v_max", r.v_hi}, {"u_min", r.u_lo},
                {"u_max", r.u_hi}, {"area", r.area()}};
}

inline json json_of(const AgreementReport& a) {
    return json{{"agree_fraction", a.agree_fraction},
                {"counted", a.counted},
                {"excluded", a.excluded},
                {"disagreements", a.disagreements}};
}

inline json json_of(const BoundednessReport& r) {
    json ladder = json::array();
    for (const auto& e : r.limit_estimates)
        ladder.push_back(json{{"end", e.end}, {"probe", e.probe}, {"sup", e.sup}});
    return json{{"bounded", r.bounded},
                {"verdict", to_string(r.verdict)},
                {"probed_sup", r.probed_sup},
                {"diverging_end", r.diverging_end},
                {"ladder", ladder}};
}

// Serialized documents always start with the schema tag.
inline json new_doc() { return json{{"schema", "1"}}; }

inline void write_json(const std::string& path, const json& j) {
    if (!j.contains("schema"))
        throw config_error(path + ": refusing to write JSON without a schema field");
    write_text(path, j.dump(2) + "\n");
}

inline json read_json(const std::string& path) {
    json j = json::parse(read_text(path));
    if (!j.contains("schema") || j["schema"] != "1")
        throw config_error(path + ": missing or unsupported schema version");
    return j;
}

} // namespace grou::io
