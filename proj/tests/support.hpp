#pragma once

// Random instance generators and independent reference computations shared by
// the test suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "aparam/bipoly.hpp"
#include "aparam/maximize.hpp"
#include "aparam/paramalg.hpp"
#include "aparam/roots.hpp"
#include "aparam/unipoly.hpp"

namespace testsupport {

using aparam::BiPoly;
using aparam::Scalar;
using aparam::UniPoly;
using aparam::Domain;
using aparam::Parametrization;
using aparam::RatFun;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// Dense real polynomial of exact total degree d, coefficients in [-1, 1].
    BiPoly bipoly(int d) {
        std::vector<aparam::Term> t;
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j) t.push_back({i, j, uniform(-1.0, 1.0)});
        t.push_back({d, 0, 0.5 + uniform(0.0, 0.5)});
        t.push_back({0, d, 0.5 + uniform(0.0, 0.5)});
        return BiPoly::from_terms(t);
    }

    UniPoly unipoly(int d) {
        std::vector<Scalar> c;
        for (int k = 0; k <= d; ++k) c.push_back(uniform(-1.0, 1.0));
        c.back() = (integer(0, 1) ? 1.0 : -1.0) * uniform(0.3, 1.0);
        return UniPoly(c);
    }

    Scalar complex_in_disk(double r) { return std::polar(uniform(0.1, r), uniform(0.0, 6.283185307179586)); }

private:
    std::mt19937_64 rng_;
};

/// Determinant by Laplace expansion along the first row (fine for n <= 8).
inline Scalar laplace_det(const std::vector<std::vector<Scalar>>& m) {
    const size_t n = m.size();
    if (n == 0) return 1.0;
    if (n == 1) return m[0][0];
    Scalar acc = 0.0;
    for (size_t c = 0; c < n; ++c) {
        if (m[0][c] == Scalar(0.0)) continue;
        std::vector<std::vector<Scalar>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Scalar> row;
            for (size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        acc += (c % 2 ? -1.0 : 1.0) * m[0][c] * laplace_det(minor);
    }
    return acc;
}

/// Sylvester matrix written out row by row from descending coefficients.
inline std::vector<std::vector<Scalar>> sylvester_rows(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    const size_t m = a.size() - 1, n = b.size() - 1, s = m + n;
    std::vector<std::vector<Scalar>> out(s, std::vector<Scalar>(s, 0.0));
    for (size_t r = 0; r < n; ++r)
        for (size_t k = 0; k <= m; ++k) out[r][r + k] = a[m - k];
    for (size_t r = 0; r < m; ++r)
        for (size_t k = 0; k <= n; ++k) out[n + r][r + k] = b[n - k];
    return out;
}

/// Direct substitution p(a + s d1, b + s d2) expanded by polynomial products.
inline UniPoly substitute_line(const BiPoly& p, Scalar a, Scalar b, Scalar d1, Scalar d2) {
    UniPoly acc;
    const UniPoly lx({a, d1}), ly({b, d2});
    for (const auto& t : p.terms()) acc = acc + lx.pow(t.i) * ly.pow(t.j) * t.c;
    return acc;
}

inline double max_abs_diff(const UniPoly& a, const UniPoly& b) {
    double m = 0.0;
    for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double max_abs_diff(const BiPoly& a, const BiPoly& b) {
    double m = 0.0;
    for (int i = 0; i <= std::max(a.degx(), b.degx()); ++i)
        for (int j = 0; j <= std::max(a.degy(), b.degy()); ++j) m = std::max(m, std::abs(a.coeff(i, j) - b.coeff(i, j)));
    return m;
}

/// max coefficient difference after dividing each side by its first
/// coefficient of (nearly) largest modulus
inline double distance_up_to_scale(const BiPoly& a, const BiPoly& b) {
    auto unit = [](const BiPoly& p) {
        const double top = p.inf_norm();
        for (const auto& t : p.terms())
            if (std::abs(t.c) >= (1.0 - 1e-6) * top) return p * (Scalar(1.0) / t.c);
        return p;
    };
    return max_abs_diff(unit(a), unit(b));
}

/// Slopes y/x of the points at infinity: roots of L(1, s) for the leading form L.
inline std::vector<Scalar> infinity_slopes(const BiPoly& f) {
    const int d = f.total_degree();
    std::vector<Scalar> c(static_cast<size_t>(d + 1), 0.0);
    for (const auto& t : f.terms())
        if (t.i + t.j == d) c[static_cast<size_t>(t.j)] += t.c;
    return aparam::all_roots(UniPoly(c)).roots;
}

/// Largest distance from a slope of a to the nearest slope of b, measured on the unit circle of directions.
inline double slope_mismatch(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    auto chordal = [](Scalar s, Scalar t) { return std::abs(s - t) / (std::sqrt(1.0 + std::norm(s)) * std::sqrt(1.0 + std::norm(t))); };
    double worst = 0.0;
    for (const auto& s : a) {
        double best = 1e300;
        for (const auto& t : b) best = std::min(best, chordal(s, t));
        worst = std::max(worst, best);
    }
    return worst;
}

/// Greedy matching distance between two root multisets.
inline double match_distance(std::vector<Scalar> a, std::vector<Scalar> b) {
    double worst = 0.0;
    for (const auto& z : a) {
        size_t best = 0;
        for (size_t k = 1; k < b.size(); ++k)
            if (std::abs(b[k] - z) < std::abs(b[best] - z)) best = k;
        worst = std::max(worst, std::abs(b[best] - z));
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

inline std::vector<Scalar> companion_eigenvalues(const UniPoly& p) {
    const int n = p.degree();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) c(k, k - 1) = 1.0;
    for (int k = 0; k < n; ++k) c(k, n - 1) = -p[k] / p.leading();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c);
    std::vector<Scalar> out;
    for (int k = 0; k < n; ++k) out.push_back(es.eigenvalues()(k));
    return out;
}

/// max |r|^(1/order) over a dense uniform grid in theta (t = tan theta)
/// restricted to the domain, with a second dense grid around the best sample.
inline double grid_max(const RatFun& r, const Domain& d, int order, int n = 100000) {
    const double half_pi = 1.5707963267948966, h = 2 * half_pi / n;
    double best = 0.0, best_th = 0.0;
    auto visit = [&](double th) {
        const double t = std::tan(th);
        if (!d.contains(t)) return;
        const double v = std::abs(r.eval(t));
        if (v > best) {
            best = v;
            best_th = th;
        }
    };
    for (int k = 1; k < n; ++k) visit(-half_pi + h * k);
    const double centre = best_th;
    for (int k = -10000; k <= 10000; ++k) visit(centre + h * k / 10000.0);
    for (const auto& p : d.pieces) {
        if (std::isfinite(p.lo)) best = std::max(best, std::abs(r.eval(p.lo)));
        if (std::isfinite(p.hi)) best = std::max(best, std::abs(r.eval(p.hi)));
    }
    return order == 2 ? std::sqrt(best) : best;
}

// Unit normal of P at t from central differences.
inline std::pair<double, double> fd_unit_normal(const Parametrization& P, double t) {
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    const auto [xa, ya] = P.eval(t + h);
    const auto [xb, yb] = P.eval(t - h);
    const double dx = (xa - xb).real(), dy = (ya - yb).real();
    const double len = std::hypot(dx, dy);
    return {-dy / len, dx / len};
}

// min |s| with f(P(t) + s n) = 0, n the unit normal.
inline double oracle_rho1(const BiPoly& f, const Parametrization& P, double t) {
    const auto [x, y] = P.eval(t);
    const auto [nx, ny] = fd_unit_normal(P, t);
    double best = 1e300;
    for (const auto& r : companion_eigenvalues(substitute_line(f, x, y, nx, ny))) best = std::min(best, std::abs(r));
    return best;
}

}  // namespace testsupport
