#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "aparam/error.hpp"
#include "aparam/ratfun.hpp"
#include "aparam/roots.hpp"

namespace aparam {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double t) const { return lo <= t && t <= hi; }
};

/// A closed subset of the real line given as a finite union of closed pieces
/// (pieces may extend to -inf or +inf).
struct Domain {
    std::vector<Interval> pieces;

    static Domain real_line() { return {{{-kInf, kInf}}}; }
    static Domain interval(double lo, double hi) {
        if (!(lo <= hi)) throw Error(ErrorKind::invalid_argument, "interval with lo > hi");
        return {{{lo, hi}}};
    }
    /// R minus the union of the open intervals (lo, hi).
    static Domain complement_of(std::vector<Interval> open) {
        std::sort(open.begin(), open.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        Domain d;
        double start = -kInf;
        for (const auto& iv : open) {
            if (iv.lo >= start) d.pieces.push_back({start, iv.lo});
            start = std::max(start, iv.hi);
        }
        d.pieces.push_back({start, kInf});
        return d;
    }
    /// Closure of the union of the given intervals.
    static Domain closure_of_union(std::vector<Interval> ivs) {
        std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        Domain d;
        for (const auto& iv : ivs) {
            if (!d.pieces.empty() && iv.lo <= d.pieces.back().hi)
                d.pieces.back().hi = std::max(d.pieces.back().hi, iv.hi);
            else
                d.pieces.push_back(iv);
        }
        return d;
    }

    bool contains(double t) const {
        return std::any_of(pieces.begin(), pieces.end(), [&](const Interval& p) { return p.contains(t); });
    }
};

struct MaxResult {
    double value = 0.0;
    double argmax = 0.0;  ///< may be -inf or +inf when the sup is a limit
};

namespace detail {

inline double abs_root(double v, int root_order) { return root_order == 2 ? std::sqrt(v) : v; }

/// Real zeros of N'D - ND' with a loose imaginary-part filter, polished by a
/// few real Newton steps. Extra candidates are harmless: every candidate is a
/// point of the domain that gets evaluated.
inline std::vector<double> loose_real_zeros(const UniPoly& crit_in) {
    const UniPoly crit = crit_in.real_part().trimmed(1e-15);
    std::vector<double> out;
    if (crit.degree() < 1) return out;
    const UniPoly dcrit = crit.derivative();
    for (const auto& z : all_roots(crit).roots) {
        if (std::abs(z.imag()) > 1e-4 * (1.0 + std::abs(z.real()))) continue;
        double t = z.real();
        for (int it = 0; it < 5; ++it) {
            const double f = crit.eval(t).real(), df = dcrit.eval(t).real();
            if (df == 0.0) break;
            const double next = t - f / df;
            if (!std::isfinite(next) || std::abs(crit.eval(next).real()) >= std::abs(f)) break;
            t = next;
        }
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<double> loose_critical_points(const RatFun& r) {
    const UniPoly n = r.num().real_part(), d = r.den().real_part();
    return loose_real_zeros(n.derivative() * d - n * d.derivative());
}

}  // namespace detail

/// Critical points of r (real roots of the derivative numerator).
inline std::vector<double> ratfun_critical_points(const RatFun& r) { return detail::loose_critical_points(r); }

/// Limit of |r(t)| as t -> +-inf; +inf when the numerator degree is larger.
inline double abs_limit_at_infinity(const RatFun& r) {
    if (r.num().is_zero()) return 0.0;
    const int dn = r.num().degree(), dd = r.den().degree();
    if (dn > dd) return kInf;
    if (dn < dd) return 0.0;
    return std::abs(r.num().leading() / r.den().leading());
}

/// What the maximizer needs to know about a function besides its values.
struct MaxStructure {
    std::vector<double> poles;     ///< real poles; none may lie in the domain
    double limit = 0.0;            ///< |value| at +-inf (kInf when unbounded)
    std::vector<double> critical;  ///< candidate interior extrema
};

/// Global maximum of absval(t)^(1/root_order) over the domain.
///
/// Candidates: limits at +-inf for unbounded pieces, finite endpoints and the
/// supplied critical points. A 1024-point scan in t = tan(theta) with
/// golden-section refinement guards against critical points lost to root
/// finding.
template <class F>
MaxResult max_abs_function(F&& absval, const MaxStructure& st, const Domain& domain, int root_order = 1) {
    if (root_order != 1 && root_order != 2) throw Error(ErrorKind::invalid_argument, "root_order must be 1 or 2");
    if (domain.pieces.empty()) throw Error(ErrorKind::invalid_argument, "empty domain");
    MaxResult best{-1.0, 0.0};
    auto offer = [&](double value, double at) {
        if (value > best.value) best = {value, at};
    };
    for (double pole : st.poles)
        if (domain.contains(pole)) throw Error(ErrorKind::unbounded, "pole inside the domain");
    const double lim = st.limit;
    for (const auto& p : domain.pieces) {
        if (std::isinf(p.hi) && p.hi > 0) {
            if (std::isinf(lim)) throw Error(ErrorKind::unbounded, "infinite limit at +inf");
            offer(lim, kInf);
        }
        if (std::isinf(p.lo) && p.lo < 0) {
            if (std::isinf(lim)) throw Error(ErrorKind::unbounded, "infinite limit at -inf");
            offer(lim, -kInf);
        }
    }
    for (const auto& p : domain.pieces) {
        if (std::isfinite(p.lo)) offer(absval(p.lo), p.lo);
        if (std::isfinite(p.hi)) offer(absval(p.hi), p.hi);
    }
    for (double t : st.critical)
        if (domain.contains(t)) offer(absval(t), t);

    const int samples = 1024;
    for (const auto& p : domain.pieces) {
        const double a = std::atan(p.lo), b = std::atan(p.hi);
        if (!(b > a)) continue;
        auto g = [&](double th) { return absval(std::tan(th)); };
        const double h = (b - a) / samples;
        std::vector<double> th(samples + 1), gv(samples + 1);
        for (int k = 0; k <= samples; ++k) {
            th[static_cast<size_t>(k)] = a + h * k;
            const bool edge = (k == 0 && std::isinf(p.lo)) || (k == samples && std::isinf(p.hi));
            gv[static_cast<size_t>(k)] = edge ? lim : g(th[static_cast<size_t>(k)]);
        }
        for (int k = 1; k < samples; ++k) {
            const size_t u = static_cast<size_t>(k);
            if (!(gv[u] >= gv[u - 1] && gv[u] >= gv[u + 1])) continue;
            double lo = th[u - 1], hi = th[u + 1];
            const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
            double gc = g(c), gd = g(d);
            for (int it = 0; it < 60; ++it) {
                if (gc >= gd) {
                    hi = d;
                    d = c;
                    gd = gc;
                    c = hi - phi * (hi - lo);
                    gc = g(c);
                } else {
                    lo = c;
                    c = d;
                    gc = gd;
                    d = lo + phi * (hi - lo);
                    gd = g(d);
                }
            }
            const double tm = std::tan(0.5 * (lo + hi));
            if (p.contains(tm)) offer(absval(tm), tm);
            offer(gv[u], std::tan(th[u]));
        }
    }
    best.value = detail::abs_root(best.value, root_order);
    return best;
}

/// Global maximum of |r(t)|^(1/root_order) over the domain.
inline MaxResult max_abs_ratfun(const RatFun& r, const Domain& domain, int root_order = 1) {
    if (domain.pieces.empty()) throw Error(ErrorKind::invalid_argument, "empty domain");
    if (r.num().is_zero()) {
        const auto& p = domain.pieces.front();
        return {0.0, std::isfinite(p.lo) ? p.lo : (std::isfinite(p.hi) ? p.hi : 0.0)};
    }
    MaxStructure st;
    if (r.den().degree() >= 1) st.poles = real_roots(r.den().real_part());
    st.limit = abs_limit_at_infinity(r);
    st.critical = detail::loose_critical_points(r);
    return max_abs_function([&](double t) { return std::abs(r.eval(t)); }, st, domain, root_order);
}

/// Symmetric interval around target whose half-width is half the distance to
/// the nearest excluded point; half-width 1 when nothing is excluded.
inline Interval isolating_interval(double target, const std::vector<double>& excluded) {
    double dist = kInf;
    for (double e : excluded) {
        const double d = std::abs(e - target);
        if (d == 0.0) throw Error(ErrorKind::invalid_argument, "target coincides with an excluded point");
        dist = std::min(dist, d);
    }
    const double half = std::isinf(dist) ? 1.0 : 0.5 * dist;
    return {target - half, target + half};
}

/// Interval of length 10^-(k+5) centred at target.
inline Interval nested_interval(double target, int k) {
    const double half = 0.5 * std::pow(10.0, -(k + 5));
    return {target - half, target + half};
}

}  // namespace aparam
