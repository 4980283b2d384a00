#pragma once

#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/unipoly.hpp"

namespace aparam {

inline double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

/// f(base + s dir) as a polynomial in s, through the Taylor identity
/// coeff(s^i) = sum_{|v|=i} f^v(base) dir1^v1 dir2^v2 / (v1! v2!).
inline UniPoly compose_line(const BiPoly& f, Scalar a, Scalar b, Scalar d1, Scalar d2) {
    const int d = f.total_degree();
    std::vector<Scalar> c(static_cast<size_t>(std::max(d, 0) + 1), 0.0);
    for (int i = 0; i <= d; ++i)
        for (int v1 = 0; v1 <= i; ++v1) {
            const int v2 = i - v1;
            const BiPoly der = f.partial(v1, v2);
            if (der.is_zero()) continue;
            c[static_cast<size_t>(i)] += der.eval(a, b) * std::pow(d1, v1) * std::pow(d2, v2) / (factorial(v1) * factorial(v2));
        }
    return UniPoly(std::move(c));
}

/// Powers p^0..p^n.
inline std::vector<UniPoly> powers(const UniPoly& p, int n) {
    std::vector<UniPoly> out{UniPoly::constant(1.0)};
    for (int k = 1; k <= n; ++k) out.push_back(out.back() * p);
    return out;
}

/// sum c_ij X^i Y^j D^(deg - i - j): the homogenized g evaluated at (X : Y : D).
/// With X = x(t) D, Y = y(t) D this equals D^deg g(x(t), y(t)).
inline UniPoly compose_homogeneous(const BiPoly& g, int deg, const std::vector<UniPoly>& xp, const std::vector<UniPoly>& yp,
                                   const std::vector<UniPoly>& dp) {
    UniPoly acc;
    for (const auto& term : g.terms()) acc = acc + xp[static_cast<size_t>(term.i)] * yp[static_cast<size_t>(term.j)] * dp[static_cast<size_t>(deg - term.i - term.j)] * term.c;
    return acc;
}

/// Coefficient-wise moduli.
inline UniPoly abs_coeffs(const UniPoly& p) {
    std::vector<Scalar> v;
    for (const auto& z : p.coeffs()) v.push_back(std::abs(z));
    return UniPoly(std::move(v));
}

/// compose_homogeneous with |c_ij|; fed with powers of abs_coeffs(X) etc. it
/// bounds the rounding error scale of compose_homogeneous coefficient-wise.
inline UniPoly compose_homogeneous_magnitude(const BiPoly& g, int deg, const std::vector<UniPoly>& axp,
                                             const std::vector<UniPoly>& ayp, const std::vector<UniPoly>& adp) {
    UniPoly acc;
    for (const auto& term : g.terms())
        acc = acc + axp[static_cast<size_t>(term.i)] * ayp[static_cast<size_t>(term.j)] * adp[static_cast<size_t>(deg - term.i - term.j)] * std::abs(term.c);
    return acc;
}

}  // namespace aparam
