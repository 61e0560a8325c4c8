// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared numeric kernels: differentiation, root bracketing and bisection,
// golden-section maximization, adaptive Simpson quadrature with endpoint
// compactification, tabulated CDF inversion, and the regularized upper
// incomplete gamma used for chi-square tail probabilities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "support.hpp"

namespace grou {

// Central difference with a scale-aware step.
template <class F>
double central_diff(F&& f, double x) {
    const double h = std::max(1e-6, 1e-6 * std::fabs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct SolveOpts {
    double x_tol = 1e-13; // relative on x
    int max_iter = 200;
};

// Solve f(x) = y on a finite bracket [lo, hi] that straddles y.
// f need only be monotone between lo and hi; `increasing` gives orientation.
template <class F>
double bisect(F&& f, double y, double lo, double hi, bool increasing,
              SolveOpts opts = {}) {
    if (!(lo <= hi)) std::swap(lo, hi);
    for (int i = 0; i < opts.max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid; // bracket exhausted in doubles
        const double fm = f(mid);
        const bool go_right = increasing ? (fm < y) : (fm > y);
        if (go_right)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= opts.x_tol * std::max(1.0, std::fabs(lo) + std::fabs(hi)))
            return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

// Golden-section search for the maximum of f on [a, b] (unimodal on [a, b]).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters = 160) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > 1e-14 * std::max(1.0, std::fabs(a) + std::fabs(b)); ++i) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double fa, double b, double fb, double m,
                   double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson on a finite interval. Non-finite endpoint values are
// nudged inward, which truncates at worst an integrable endpoint sliver.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10, int depth = 48) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa)) {
        const double eps = 1e-12 * std::max(1.0, std::fabs(b - a));
        a += eps;
        fa = f(a);
        if (!std::isfinite(fa)) throw convergence_error("integrate: endpoint not evaluable");
    }
    if (!std::isfinite(fb)) {
        const double eps = 1e-12 * std::max(1.0, std::fabs(b - a));
        b -= eps;
        fb = f(b);
        if (!std::isfinite(fb)) throw convergence_error("integrate: endpoint not evaluable");
    }
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max({std::fabs(whole), 1e-30});
    return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, tol * scale, depth);
}

// Integrate over a support, compactifying infinite ends.
//   [a, inf):  x = a + t/(1-t)
//   (-inf, b]: x = b - t/(1-t)
//   (-inf, inf): x = t/(1-t^2)
template <class F>
double integrate_support(F&& f, const Support& s, double tol = 1e-10) {
    const bool lo_inf = std::isinf(s.lo), hi_inf = std::isinf(s.hi);
    if (!lo_inf && !hi_inf) {
        double a = s.lo, b = s.hi;
        const double eps = 1e-12 * std::max(1.0, b - a);
        if (!s.lo_closed) a += eps;
        if (!s.hi_closed) b -= eps;
        return integrate(f, a, b, tol);
    }
    if (!lo_inf && hi_inf) {
        auto g = [&](double t) {
            const double om = 1.0 - t;
            return f(s.lo + t / om) / (om * om);
        };
        return integrate(g, s.lo_closed ? 0.0 : 1e-13, 1.0, tol);
    }
    if (lo_inf && !hi_inf) {
        auto g = [&](double t) {
            const double om = 1.0 - t;
            return f(s.hi - t / om) / (om * om);
        };
        return integrate(g, s.hi_closed ? 0.0 : 1e-13, 1.0, tol);
    }
    auto g = [&](double t) {
        const double d = 1.0 - t * t;
        return f(t / d) * (1.0 + t * t) / (d * d);
    };
    return integrate(g, -1.0, 1.0, tol);
}

// Cumulative table for a nonnegative integrable function on a support,
// built once and inverted per draw. Nodes are warped toward both ends so
// integrable endpoint singularities land in narrow panels; panel masses use
// 3-point Gauss-Legendre (nodes strictly interior, endpoint-safe).
class CdfTable {
  public:
    CdfTable() = default;
    CdfTable(std::function<double(double)> f, Support s, int panels = 8192) {
        if (panels < 16) throw config_error("CdfTable: panels must be >= 16");
        x_.resize(static_cast<std::size_t>(panels) + 1);
        c_.resize(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) {
            const double t = static_cast<double>(i) / panels;
            x_[i] = map_node(t, s);
        }
        c_[0] = 0.0;
        // Gauss-Legendre 3-point on [-1, 1]
        constexpr double gx = 0.7745966692414834; // sqrt(3/5)
        constexpr double w0 = 0.8888888888888888, w1 = 0.5555555555555556;
        for (std::size_t i = 1; i < x_.size(); ++i) {
            const double a = x_[i - 1], b = x_[i];
            const double h = 0.5 * (b - a), m = 0.5 * (a + b);
            double mass = h * (w0 * f(m) + w1 * f(m - gx * h) + w1 * f(m + gx * h));
            if (!std::isfinite(mass) || mass < 0.0) mass = 0.0;
            c_[i] = c_[i - 1] + mass;
        }
        if (!(c_.back() > 0.0)) throw convergence_error("CdfTable: zero total mass");
    }

    double total() const { return c_.back(); }

    // q in [0, 1]; linear interpolation of the inverse within a panel.
    double quantile(double q) const {
        const double target = q * c_.back();
        auto it = std::lower_bound(c_.begin(), c_.end(), target);
        if (it == c_.begin()) return x_.front();
        if (it == c_.end()) return x_.back();
        const std::size_t i = static_cast<std::size_t>(it - c_.begin());
        const double dm = c_[i] - c_[i - 1];
        const double frac = dm > 0.0 ? (target - c_[i - 1]) / dm : 0.5;
        return x_[i - 1] + frac * (x_[i] - x_[i - 1]);
    }

  private:
    static double map_node(double t, const Support& s) {
        const double w = t * t * (3.0 - 2.0 * t); // clusters nodes at both ends
        const bool lo_inf = std::isinf(s.lo), hi_inf = std::isinf(s.hi);
        const double nudge = 1e-12;
        if (!lo_inf && !hi_inf) {
            double x = s.lo + (s.hi - s.lo) * w;
            const double eps = nudge * std::max(1.0, s.hi - s.lo);
            if (!s.lo_closed && t == 0.0) x = s.lo + eps;
            if (!s.hi_closed && t == 1.0) x = s.hi - eps;
            return x;
        }
        if (!lo_inf) {
            double ww = std::min(w, 1.0 - nudge);
            double x = s.lo + ww / (1.0 - ww);
            if (!s.lo_closed && t == 0.0) x = s.lo + nudge;
            return x;
        }
        if (!hi_inf) {
            double ww = std::min(w, 1.0 - nudge);
            double x = s.hi - ww / (1.0 - ww);
            if (!s.hi_closed && t == 1.0) x = s.hi - nudge;
            return x;
        }
        const double u = std::clamp(2.0 * w - 1.0, -1.0 + nudge, 1.0 - nudge);
        return u / (1.0 - u * u);
    }

    std::vector<double> x_, c_;
};

// Regularized upper incomplete gamma Q(a, x); Q(dof/2, x/2) is the
// chi-square survival function.
inline double gammq(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw config_error("gammq: bad arguments");
    if (x == 0.0) return 1.0;
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    if (x < a + 1.0) {
        // lower series, Q = 1 - P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * kEps) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    // continued fraction (modified Lentz)
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::clamp(std::exp(-x + a * std::log(x) - std::lgamma(a)) * h, 0.0, 1.0);
}

inline double chi2_sf(double x, int dof) {
    if (dof < 1) throw config_error("chi2_sf: dof must be >= 1");
    return gammq(0.5 * dof, 0.5 * x);
}

// Standard normal quantile: bracketed bisection on the normal CDF, then a
// few Newton polish steps. The bisection keeps Newton from overshooting in
// the flat tails. The CDF uses the complementary form on each side so the
// tails keep full relative precision.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw config_error("normal_quantile: p in (0,1)");
    const double kSqrt2 = std::sqrt(2.0);
    const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * 3.14159265358979323846);
    auto cdf = [&](double z) {
        const double t = z / kSqrt2;
        return z < 0.0 ? 0.5 * std::erfc(-t) : 1.0 - 0.5 * std::erfc(t);
    };
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double pdf = std::exp(-0.5 * z * z) * kInvSqrt2Pi;
        if (pdf < 1e-300) break;
        const double step = (cdf(z) - p) / pdf;
        if (!std::isfinite(step)) break;
        z -= std::clamp(step, -1.0, 1.0);
    }
    return z;
}

} // namespace grou
