#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/error.hpp"
#include "aparam/unipoly.hpp"

namespace aparam {

/// Sylvester matrix of a (formal degree m) and b (formal degree n); the
/// coefficient vectors are ascending and are not trimmed.
inline Eigen::MatrixXcd sylvester_matrix(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    if (m < 0 || n < 0) throw Error(ErrorKind::invalid_argument, "empty coefficient vector");
    const int size = m + n;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s(r, r + k) = a[static_cast<size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s(n + r, r + k) = b[static_cast<size_t>(n - k)];
    return s;
}

inline Scalar sylvester_det(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    if (m == 0) return std::pow(a[0], n);
    if (n == 0) return std::pow(b[0], m);
    return sylvester_matrix(a, b).partialPivLu().determinant();
}

/// Resultant of two univariate polynomials (true degrees).
inline Scalar resultant(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0.0;
    return sylvester_det(a.coeffs(), b.coeffs());
}

namespace detail {

/// Coefficients of p in variable v at other = value, padded to the formal degree in v.
inline std::vector<Scalar> formal_coeffs(const BiPoly& p, Var v, Scalar value) {
    std::vector<Scalar> out(static_cast<size_t>(p.deg(v) + 1), 0.0);
    for (int k = 0; k <= p.deg(v); ++k) out[static_cast<size_t>(k)] = p.slice(v, k).eval(value);
    return out;
}

/// Recovers the polynomial of bidegree <= (du, dw) whose values at
/// (omega_u^a, omega_w^b) are given by `value`, via an inverse DFT.
template <class F>
BiPoly interpolate_on_roots_of_unity(F&& value, int du, int dw, bool real) {
    const int nu = du + 1, nw = dw + 1;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Scalar> wu(static_cast<size_t>(nu)), ww(static_cast<size_t>(nw));
    for (int a = 0; a < nu; ++a) wu[static_cast<size_t>(a)] = std::polar(1.0, two_pi * a / nu);
    for (int b = 0; b < nw; ++b) ww[static_cast<size_t>(b)] = std::polar(1.0, two_pi * b / nw);
    std::vector<Scalar> vals(static_cast<size_t>(nu * nw));
    for (int a = 0; a < nu; ++a)
        for (int b = 0; b < nw; ++b) vals[static_cast<size_t>(a * nw + b)] = value(wu[static_cast<size_t>(a)], ww[static_cast<size_t>(b)]);
    std::vector<std::vector<Scalar>> grid(static_cast<size_t>(nu), std::vector<Scalar>(static_cast<size_t>(nw), 0.0));
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nw; ++j) {
            Scalar acc = 0.0;
            for (int a = 0; a < nu; ++a)
                for (int b = 0; b < nw; ++b)
                    acc += vals[static_cast<size_t>(a * nw + b)] *
                           std::conj(wu[static_cast<size_t>((a * i) % nu)] * ww[static_cast<size_t>((b * j) % nw)]);
            acc /= static_cast<double>(nu * nw);
            grid[static_cast<size_t>(i)][static_cast<size_t>(j)] = real ? Scalar(acc.real()) : acc;
        }
    return BiPoly(grid);
}

inline void require_positive_degree(const BiPoly& p, const BiPoly& q, Var v) {
    if (p.deg(v) < 1 || q.deg(v) < 1) throw Error(ErrorKind::degree_dropped, "resultant needs positive degree in the eliminated variable");
}

}  // namespace detail

/// Res_v(p, q) as a polynomial in the other variable, by evaluation at roots of
/// unity and interpolation. Degree bound: deg_v p * deg_o q + deg_v q * deg_o p,
/// capped by the Bezout bound.
inline UniPoly resultant(const BiPoly& p, const BiPoly& q, Var v) {
    detail::require_positive_degree(p, q, v);
    const Var o = other(v);
    const int bound = std::min(p.deg(v) * q.deg(o) + q.deg(v) * p.deg(o), p.total_degree() * q.total_degree());
    auto value = [&](Scalar u, Scalar) {
        return sylvester_det(detail::formal_coeffs(p, v, u), detail::formal_coeffs(q, v, u));
    };
    const BiPoly r = detail::interpolate_on_roots_of_unity(value, std::max(bound, 0), 0, p.is_real() && q.is_real());
    return r.slice(Var::y, 0);
}

/// Res_v(h1 + t h2, f) as a BiPoly whose first slot is the surviving variable
/// and whose second slot is t.
inline BiPoly resultant_pencil(const BiPoly& h1, const BiPoly& h2, const BiPoly& f, Var v) {
    const BiPoly probe = h1 + h2 * Scalar(0.6180339887498949);
    const int dv = std::max(h1.deg(v), h2.deg(v));
    detail::require_positive_degree(probe.is_zero() ? h1 : probe, f, v);
    const Var o = other(v);
    const int dho = std::max(h1.deg(o), h2.deg(o));
    const int tot = std::max(h1.total_degree(), h2.total_degree());
    const int bound = std::min(dv * f.deg(o) + f.deg(v) * dho, tot * f.total_degree());
    auto value = [&](Scalar u, Scalar t) {
        std::vector<Scalar> a(static_cast<size_t>(dv + 1), 0.0);
        for (int k = 0; k <= dv; ++k) a[static_cast<size_t>(k)] = h1.slice(v, k).eval(u) + t * h2.slice(v, k).eval(u);
        return sylvester_det(a, detail::formal_coeffs(f, v, u));
    };
    return detail::interpolate_on_roots_of_unity(value, bound, f.deg(v), h1.is_real() && h2.is_real() && f.is_real());
}

}  // namespace aparam
