// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace grou {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// An interval of the extended real line. Infinite endpoints are always open.
struct Support {
    double lo = -kInf;
    double hi = kInf;
    bool lo_closed = false;
    bool hi_closed = false;

    Support() = default;
    Support(double a, double b, bool a_closed, bool b_closed)
        : lo(a), hi(b), lo_closed(a_closed), hi_closed(b_closed) {
        if (!(lo < hi)) throw config_error("support: lo must be < hi");
        if (std::isinf(lo)) lo_closed = false;
        if (std::isinf(hi)) hi_closed = false;
    }

    static Support closed(double a, double b) { return {a, b, true, true}; }
    static Support open(double a, double b) { return {a, b, false, false}; }
    static Support left_open(double a, double b) { return {a, b, false, true}; }
    static Support right_open(double a, double b) { return {a, b, true, false}; }
    static Support nonneg() { return {0.0, kInf, true, false}; }
    static Support real() { return {-kInf, kInf, false, false}; }

    bool contains(double x) const {
        if (std::isnan(x)) return false;
        if (lo_closed ? x < lo : x <= lo) return false;
        if (hi_closed ? x > hi : x >= hi) return false;
        return true;
    }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    double width() const { return hi - lo; }
    // Pull x to the nearest contained point, nudging off open endpoints.
    double clamp_inside(double x, double nudge) const {
        double a = lo_closed ? lo : lo + nudge;
        double b = hi_closed ? hi : hi - nudge;
        if (std::isinf(lo)) a = -1.0 / nudge;
        if (std::isinf(hi)) b = 1.0 / nudge;
        return x < a ? a : (x > b ? b : x);
    }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

enum class Direction { increasing, decreasing };

} // namespace grou
