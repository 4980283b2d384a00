#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/compose.hpp"
#include "aparam/epsgeo.hpp"
#include "aparam/error.hpp"
#include "aparam/roots.hpp"

namespace aparam {

/// y = slope x + offset, or x = offset when vertical.
struct Asymptote {
    bool vertical = false;
    double slope = 0.0;
    double offset = 0.0;

    /// Direction angle in [0, pi).
    double angle() const {
        if (vertical) return std::numbers::pi / 2;
        const double a = std::atan(slope);
        return a < 0 ? a + std::numbers::pi : a;
    }
};

/// Distance between two lines of (nearly) equal direction.
inline double parallel_distance(const Asymptote& a, const Asymptote& b) {
    if (a.vertical || b.vertical) return std::abs(a.offset - b.offset);
    const double mu = 0.5 * (a.slope + b.slope);
    return std::abs(a.offset - b.offset) / std::sqrt(1.0 + mu * mu);
}

namespace detail {

/// Degree-n homogeneous part evaluated at (u, v).
inline Scalar form_value(const BiPoly& f, int n, Scalar u, Scalar v) {
    Scalar acc = 0.0;
    for (const auto& t : f.terms())
        if (t.i + t.j == n) acc += t.c * std::pow(u, t.i) * std::pow(v, t.j);
    return acc;
}

}  // namespace detail

/// Real asymptotes from the real points at infinity. For a direction (1 : mu)
/// the offset c solves c dF_d/dy(1, mu) + F_{d-1}(1, mu) = 0.
inline std::vector<Asymptote> asymptotes(const BiPoly& f) {
    const int d = f.total_degree();
    std::vector<Asymptote> out;
    const BiPoly fy = f.partial(0, 1), fx = f.partial(1, 0);
    for (const Scalar mu : binary_form_roots(f.leading_form(), d)) {
        if (std::abs(mu) >= 1e299) {
            const Scalar den = detail::form_value(fx, d - 1, 0.0, 1.0);
            if (std::abs(den) == 0.0) continue;
            out.push_back({true, 0.0, (-detail::form_value(f, d - 1, 0.0, 1.0) / den).real()});
            continue;
        }
        if (std::abs(mu.imag()) > 1e-7 * (1.0 + std::abs(mu.real()))) continue;
        const double m = mu.real();
        const Scalar den = detail::form_value(fy, d - 1, 1.0, m);
        if (std::abs(den) == 0.0) continue;
        out.push_back({false, m, (-detail::form_value(f, d - 1, 1.0, m) / den).real()});
    }
    std::sort(out.begin(), out.end(), [](const Asymptote& a, const Asymptote& b) { return a.angle() < b.angle(); });
    return out;
}

/// Angular gap between two directions, modulo pi.
inline double direction_gap(const Asymptote& a, const Asymptote& b) {
    const double g = std::abs(a.angle() - b.angle());
    return std::min(g, std::numbers::pi - g);
}

struct AsymptotePair {
    Asymptote first, second;
    double distance = 0.0;
};

/// Pairs every asymptote of f with the nearest-direction asymptote of fbar.
inline std::vector<AsymptotePair> pair_asymptotes(const BiPoly& f, const BiPoly& fbar) {
    const auto a = asymptotes(f), b = asymptotes(fbar);
    if (a.size() != b.size()) throw Error(ErrorKind::not_parallel, "curves have different numbers of real asymptotes");
    std::vector<char> used(b.size(), 0);
    std::vector<AsymptotePair> out;
    for (const auto& la : a) {
        size_t best = b.size();
        for (size_t k = 0; k < b.size(); ++k)
            if (!used[k] && (best == b.size() || direction_gap(la, b[k]) < direction_gap(la, b[best]))) best = k;
        if (best == b.size() || direction_gap(la, b[best]) > 1e-3) throw Error(ErrorKind::not_parallel, "asymptote directions do not match");
        used[best] = 1;
        out.push_back({la, b[best], parallel_distance(la, b[best])});
    }
    return out;
}

/// Largest distance between paired parallel asymptotes; 0 without real ones.
inline double eta(const BiPoly& f, const BiPoly& fbar) {
    double e = 0.0;
    for (const auto& p : pair_asymptotes(f, fbar)) e = std::max(e, p.distance);
    return e;
}

/// Smallest |s| with fbar((a, b) + s n) = 0, n the unit normal of f at (a, b).
inline std::optional<double> rho2(const BiPoly& fbar, const BiPoly& f, double a, double b, bool real_only) {
    const double nf = f.inf_norm();
    const double scale = std::pow(std::max({1.0, std::abs(a), std::abs(b)}), f.total_degree());
    if (std::abs(f.eval(a, b)) > 1e-8 * nf * scale) throw Error(ErrorKind::invalid_argument, "foot point is not on the curve");
    const double gx = f.partial(1, 0).eval(a, b).real(), gy = f.partial(0, 1).eval(a, b).real();
    const double g = std::hypot(gx, gy);
    if (g < 1e-10 * nf) throw Error(ErrorKind::singular_footpoint, "gradient vanishes at the foot point");
    const UniPoly line = compose_line(fbar, a, b, gx / g, gy / g);
    if (line.is_zero() || line[0] == Scalar(0.0)) return 0.0;
    return min_abs_root(line, real_only);
}

}  // namespace aparam
