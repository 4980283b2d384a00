#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/error.hpp"
#include "aparam/roots.hpp"
#include "aparam/unipoly.hpp"

namespace aparam {

template <class P>
struct DivResult {
    P quotient;
    P remainder;
};

inline DivResult<UniPoly> euclid_div(const UniPoly& p, const UniPoly& q) {
    if (q.is_zero()) throw Error(ErrorKind::ill_conditioned_divisor, "division by zero polynomial");
    if (std::abs(q.leading()) < 1e-10 * q.norm())
        throw Error(ErrorKind::ill_conditioned_divisor, "leading coefficient of divisor too small");
    const int n = p.degree(), m = q.degree();
    if (n < m) return {UniPoly{}, p};
    std::vector<Scalar> r = p.coeffs();
    std::vector<Scalar> quo(static_cast<size_t>(n - m + 1), 0.0);
    const Scalar lc = q.leading();
    for (int k = n - m; k >= 0; --k) {
        const Scalar c = r[static_cast<size_t>(k + m)] / lc;
        quo[static_cast<size_t>(k)] = c;
        for (int j = 0; j <= m; ++j) r[static_cast<size_t>(k + j)] -= c * q[j];
        r[static_cast<size_t>(k + m)] = 0.0;
    }
    r.resize(static_cast<size_t>(m));
    return {UniPoly(std::move(quo)), UniPoly(std::move(r))};
}

/// Division of p by a divisor that depends on v only. Coefficients in the
/// other variable are carried as polynomials, so the quotient is exact
/// polynomial arithmetic there.
inline DivResult<BiPoly> euclid_div(const BiPoly& p, const UniPoly& q, Var v) {
    if (q.is_zero()) throw Error(ErrorKind::ill_conditioned_divisor, "division by zero polynomial");
    if (std::abs(q.leading()) < 1e-10 * q.norm())
        throw Error(ErrorKind::ill_conditioned_divisor, "leading coefficient of divisor too small");
    const int n = p.deg(v), m = q.degree();
    if (n < m) return {BiPoly{}, p};
    std::vector<UniPoly> r = p.as_poly_in(v);
    std::vector<UniPoly> quo(static_cast<size_t>(n - m + 1));
    const Scalar inv = 1.0 / q.leading();
    for (int k = n - m; k >= 0; --k) {
        const UniPoly c = r[static_cast<size_t>(k + m)] * inv;
        quo[static_cast<size_t>(k)] = c;
        for (int j = 0; j < m; ++j) r[static_cast<size_t>(k + j)] = r[static_cast<size_t>(k + j)] - c * q[j];
        r[static_cast<size_t>(k + m)] = UniPoly{};
    }
    r.resize(static_cast<size_t>(m));
    return {BiPoly::from_poly_in(v, quo), BiPoly::from_poly_in(v, r)};
}

/// Monic polynomial whose roots are the roots shared (within tol (1 + |r|)) by
/// every nonzero polynomial in the list; 1 when there are none.
inline UniPoly common_root_gcd(const std::vector<UniPoly>& polys, double tol = 1e-8) {
    std::vector<UniPoly> nz;
    for (const auto& p : polys)
        if (!p.trimmed().is_zero()) nz.push_back(p.trimmed());
    if (nz.empty()) return UniPoly::constant(1.0);
    for (const auto& p : nz)
        if (p.degree() == 0) return UniPoly::constant(1.0);
    std::vector<Scalar> common = all_roots(nz.front()).roots;
    for (size_t k = 1; k < nz.size() && !common.empty(); ++k) {
        std::vector<Scalar> other = all_roots(nz[k]).roots;
        std::vector<char> used(other.size(), 0);
        std::vector<Scalar> kept;
        for (const auto& a : common)
            for (size_t b = 0; b < other.size(); ++b)
                if (!used[b] && std::abs(a - other[b]) <= tol * (1.0 + std::abs(a))) {
                    used[b] = 1;
                    kept.push_back(a);
                    break;
                }
        common = std::move(kept);
    }
    UniPoly g = UniPoly::from_roots(common);
    bool real = true;
    for (const auto& p : nz) real = real && p.is_real();
    return real ? g.real_part() : g;
}

inline UniPoly approx_gcd(const UniPoly& a, const UniPoly& b, double tol = 1e-8) {
    return common_root_gcd({a, b}, tol);
}

/// Content of p regarded as a polynomial in v: the approximate gcd of its
/// coefficients, which are polynomials in the other variable.
inline UniPoly content(const BiPoly& p, Var v, double tol = 1e-8) { return common_root_gcd(p.as_poly_in(v), tol); }

}  // namespace aparam
