#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "aparam/asymptotes.hpp"
#include "aparam/paramalg.hpp"
#include "aparam/resultant.hpp"

namespace aparam {

/// Maxima of rho2 over the real points of f on one line x = c or y = c.
struct LineRecord {
    bool vertical = true;  ///< x = position when true, y = position otherwise
    double position = 0.0;
    int points = 0;
    double m = 0.0;        ///< max rho2
    double m_real = 0.0;   ///< max real rho2 (NaN if some point has no real root)
    bool equal = true;
};

struct LatticeReport {
    double tau1 = 0, tau2 = 0, tau3 = 0, tau4 = 0;
    double m = 0.0;
    double eta = 0.0;
    double stop_eps = 0.0;
    bool compact = false;
    bool truncated = false;  ///< the stopping test was not met within tau_cap on some side
    std::vector<LineRecord> per_line;

    bool all_equal() const {
        return std::all_of(per_line.begin(), per_line.end(), [](const LineRecord& r) { return r.equal; });
    }
};

namespace detail {

/// Real points of f on x = c (vertical) or y = c, as (x, y) pairs.
inline std::vector<std::pair<double, double>> line_points(const BiPoly& f, bool vertical, double c) {
    const UniPoly p = f.specialize(vertical ? Var::x : Var::y, c).trimmed(1e-14);
    std::vector<std::pair<double, double>> out;
    if (p.degree() < 1) return out;
    for (double r : real_roots(p.real_part())) out.push_back(vertical ? std::pair{c, r} : std::pair{r, c});
    return out;
}

struct LineScan {
    LineRecord record;
    std::vector<double> real_values;
};

inline LineScan scan_line(const BiPoly& f, const BiPoly& fbar, bool vertical, double c) {
    LineScan s;
    s.record.vertical = vertical;
    s.record.position = c;
    bool real_defined = true;
    for (const auto& [a, b] : line_points(f, vertical, c)) {
        std::optional<double> all, real;
        try {
            all = rho2(fbar, f, a, b, false);
            real = rho2(fbar, f, a, b, true);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::singular_footpoint) continue;
            throw;
        }
        ++s.record.points;
        if (all) s.record.m = std::max(s.record.m, *all);
        if (real) {
            s.record.m_real = std::max(s.record.m_real, *real);
            s.real_values.push_back(*real);
        } else {
            real_defined = false;
        }
    }
    if (!real_defined) s.record.m_real = std::nan("");
    s.record.equal = real_defined && std::abs(s.record.m - s.record.m_real) <= 1e-8 * (1.0 + s.record.m);
    return s;
}

/// Real critical values of the coordinate v on f: roots of Res(f, f_w) in v,
/// w the other coordinate.
inline std::vector<double> coordinate_extrema(const BiPoly& f, Var v) {
    const Var w = other(v);
    const BiPoly fw = w == Var::x ? f.partial(1, 0) : f.partial(0, 1);
    if (fw.deg(w) < 1 || f.deg(w) < 1) return {};
    const UniPoly r = resultant(f, fw, w).trimmed(1e-12);
    if (r.degree() < 1) return {};
    return real_roots(r.real_part());
}

}  // namespace detail

/// Empirical bound on the distance from points of f to fbar along lattice lines.
///
/// Non-compact curves: lines x = -1, -2, ... until some point's real rho2 is
/// within stop_eps of a paired asymptote distance (tau1), then x = 1, 2, ...
/// (tau2), then y = j (tau3, tau4). Compact curves: a dyadic lattice over a
/// box containing the real part, padded by 10%.
inline LatticeReport lattice_scan(const BiPoly& f, const BiPoly& fbar, double stop_eps, int tau_cap) {
    if (!(stop_eps > 0.0)) throw Error(ErrorKind::invalid_argument, "stop_eps must be positive");
    if (tau_cap < 1) throw Error(ErrorKind::invalid_argument, "tau_cap must be at least 1");
    LatticeReport rep;
    rep.stop_eps = stop_eps;
    const auto pairs = pair_asymptotes(f, fbar);
    for (const auto& p : pairs) rep.eta = std::max(rep.eta, p.distance);
    int total_points = 0;
    auto record = [&](const detail::LineScan& s) {
        if (s.record.points == 0) return;
        total_points += s.record.points;
        rep.m = std::max(rep.m, s.record.m);
        rep.per_line.push_back(s.record);
    };

    if (pairs.empty()) {
        rep.compact = true;
        std::vector<double> xs = detail::coordinate_extrema(f, Var::x), ys = detail::coordinate_extrema(f, Var::y);
        if (xs.empty() || ys.empty()) throw Error(ErrorKind::empty_curve, "curve has no real points");
        auto padded = [](std::vector<double>& v) {
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            const double pad = 0.1 * std::max(*hi - *lo, 1e-3);
            return std::pair{*lo - pad, *hi + pad};
        };
        const auto [x0, x1] = padded(xs);
        const auto [y0, y1] = padded(ys);
        // dyadic step giving at least 64 lines across the wider side
        const double width = std::max(x1 - x0, y1 - y0);
        double h = 1.0;
        while (width / h < 64) h /= 2;
        while (width / h > 128) h *= 2;
        rep.tau1 = std::floor(x0 / h) * h;
        rep.tau2 = std::ceil(x1 / h) * h;
        rep.tau3 = std::floor(y0 / h) * h;
        rep.tau4 = std::ceil(y1 / h) * h;
        for (double c = rep.tau1; c <= rep.tau2 + 0.5 * h; c += h) record(detail::scan_line(f, fbar, true, c));
        for (double c = rep.tau3; c <= rep.tau4 + 0.5 * h; c += h) record(detail::scan_line(f, fbar, false, c));
    } else {
        auto run = [&](bool vertical, int dir) {
            for (int i = 1; i <= tau_cap; ++i) {
                const double c = dir * i;
                const detail::LineScan s = detail::scan_line(f, fbar, vertical, c);
                record(s);
                for (double v : s.real_values)
                    for (const auto& p : pairs)
                        if (std::abs(v - p.distance) < stop_eps) return c;
            }
            rep.truncated = true;
            return static_cast<double>(dir * tau_cap);
        };
        rep.tau1 = run(true, -1);
        rep.tau2 = run(true, 1);
        rep.tau3 = run(false, -1);
        rep.tau4 = run(false, 1);
    }
    if (total_points == 0) throw Error(ErrorKind::empty_curve, "no real points on any scanned line");
    return rep;
}

}  // namespace aparam
