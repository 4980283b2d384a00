#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/compose.hpp"
#include "aparam/division.hpp"
#include "aparam/error.hpp"
#include "aparam/maximize.hpp"
#include "aparam/paramalg.hpp"
#include "aparam/ratfun.hpp"
#include "aparam/roots.hpp"

namespace aparam {

/// Coefficients of f(P(t) + s n(t)) in s.
///
/// tilde_A[i] = G[i] / D^e[i] and norm_sq = W / D^ew. The unit-direction
/// coefficient is A_i = tilde_A[i] / norm_sq^(i/2). For a fixed unit direction
/// W = 1 and ew = 0.
struct PencilCoeffs {
    std::vector<RatFun> tilde_A;
    RatFun norm_sq;
    int n = 0;

    std::vector<UniPoly> G;
    std::vector<int> e;
    UniPoly D;
    UniPoly W;
    int ew = 0;
    std::vector<double> poles;  ///< real roots of D
    bool on_curve = false;      ///< G[0] was negligible and has been set to zero

    // Evaluation form: D = lead(D) prod (t - D_roots), and G[i] = G_reduced[i]
    // times (t - poles[k])^G_cancel[i][k] for the real poles at which G[i]
    // vanishes to rounding.
    std::vector<Scalar> D_roots;
    std::vector<UniPoly> G_reduced;
    std::vector<std::vector<int>> G_cancel;

    /// A_0..A_n at t0 with the direction scaled to unit length.
    std::vector<Scalar> unit_coeffs(double t0) const;
};

/// Common-denominator form P = (X/D, Y/D). Denominators equal within 1e-8 are
/// treated as one.
struct CommonForm {
    UniPoly X, Y, D;
};

inline CommonForm common_form(const Parametrization& P) {
    const UniPoly &d1 = P.p1.den(), &d2 = P.p2.den();
    if (detail::same_denominator(d1, d2)) return {P.p1.num(), P.p2.num(), d1};
    return {P.p1.num() * d2, P.p2.num() * d1, d1 * d2};
}

namespace detail {

/// G_i = sum_{|v|=i} D^(d-i) f^v(X/D, Y/D) / v! * c1^v1 c2^v2.
inline std::vector<UniPoly> taylor_numerators(const BiPoly& f, const CommonForm& cf, const UniPoly& c1, const UniPoly& c2) {
    const int d = f.total_degree();
    const auto xp = powers(cf.X, d), yp = powers(cf.Y, d), dp = powers(cf.D, d);
    const auto c1p = powers(c1, d), c2p = powers(c2, d);
    std::vector<UniPoly> G;
    for (int i = 0; i <= d; ++i) {
        UniPoly acc;
        for (int v1 = 0; v1 <= i; ++v1) {
            const int v2 = i - v1;
            const BiPoly der = f.partial(v1, v2) * Scalar(1.0 / (factorial(v1) * factorial(v2)));
            if (der.is_zero()) continue;
            acc = acc + compose_homogeneous(der, d - i, xp, yp, dp) * c1p[static_cast<size_t>(v1)] * c2p[static_cast<size_t>(v2)];
        }
        G.push_back(acc);
    }
    return G;
}

/// Whether D^d f(X/D, Y/D) vanishes up to the rounding level of its own
/// evaluation, i.e. the parametrization lies on f.
inline bool residual_negligible(const BiPoly& f, const CommonForm& cf) {
    const int d = f.total_degree();
    const UniPoly g0 = compose_homogeneous(f, d, powers(cf.X, d), powers(cf.Y, d), powers(cf.D, d));
    const UniPoly mag = compose_homogeneous_magnitude(f, d, powers(abs_coeffs(cf.X), d), powers(abs_coeffs(cf.Y), d),
                                                      powers(abs_coeffs(cf.D), d));
    return g0.norm() <= 1e-9 * mag.norm();
}

inline PencilCoeffs assemble(std::vector<UniPoly> G, std::vector<int> e, const UniPoly& D, const UniPoly& W, int ew, bool on_curve) {
    PencilCoeffs pc;
    pc.on_curve = on_curve;
    if (on_curve) G[0] = UniPoly{};
    pc.n = static_cast<int>(G.size()) - 1;
    const auto dp = powers(D, *std::max_element(e.begin(), e.end()) + ew);
    for (size_t i = 0; i < G.size(); ++i) pc.tilde_A.emplace_back(G[i], dp[static_cast<size_t>(e[i])]);
    pc.norm_sq = RatFun(W, dp[static_cast<size_t>(ew)]);
    pc.G = std::move(G);
    pc.e = std::move(e);
    pc.D = D;
    pc.W = W;
    pc.ew = ew;
    if (pc.D.degree() >= 1) {
        for (Scalar z : all_roots(pc.D).roots) {
            if (pc.D.is_real() && std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z.real()))) {
                z = z.real();
                pc.poles.push_back(z.real());
            }
            pc.D_roots.push_back(z);
        }
        std::sort(pc.poles.begin(), pc.poles.end());
    }
    // Order of vanishing of G[i] at each pole, read off the Taylor
    // coefficients of the original G[i] so that the test does not depend on
    // earlier divisions.
    for (size_t i = 0; i < pc.G.size(); ++i) {
        UniPoly q = pc.G[i];
        std::vector<int> cancel(pc.poles.size(), 0);
        for (size_t k = 0; k < pc.poles.size() && !q.is_zero(); ++k) {
            const double b = pc.poles[k];
            UniPoly deriv = pc.G[i];
            while (cancel[k] < pc.e[i] && deriv.degree() >= 1 && std::abs(deriv.eval(b)) <= 1e-11 * abs_coeffs(deriv).abs_eval(std::abs(b))) {
                q = euclid_div(q, UniPoly::linear(b)).quotient;
                if (pc.G[i].is_real()) q = q.real_part();
                deriv = deriv.derivative();
                ++cancel[k];
            }
        }
        pc.G_reduced.push_back(q);
        pc.G_cancel.push_back(cancel);
    }
    return pc;
}

}  // namespace detail

namespace detail {

/// p(t) as m * t^k with k = 0 for |t| <= 1 and k = deg p otherwise, so that
/// large |t| neither overflows nor loses the leading terms.
inline std::pair<Scalar, int> scaled_eval(const UniPoly& p, double t) {
    if (std::abs(t) <= 1.0 || p.degree() < 1) return {p.eval(t), 0};
    return {p.reversed().eval(1.0 / t), p.degree()};
}

/// t - z in the same mantissa/exponent form.
inline std::pair<Scalar, int> scaled_linear(Scalar z, double t) {
    if (std::abs(t) <= 1.0) return {t - z, 0};
    return {1.0 - z / t, 1};
}

}  // namespace detail

// Each factor is evaluated separately: expanding D^e first loses every digit
// close to a root of D, and G[i] evaluated in expanded form there is pure
// rounding noise divided by a tiny D.
inline std::vector<Scalar> PencilCoeffs::unit_coeffs(double t0) const {
    for (double b : poles)
        if (t0 == b) throw Error(ErrorKind::outside_domain, "t0 is a pole of the parametrization");
    Scalar dm = D.leading();
    int dk = 0;
    for (const Scalar z : D_roots) {
        const auto [m, k] = detail::scaled_linear(z, t0);
        dm *= m;
        dk += k;
    }
    const auto [wm, wk] = detail::scaled_eval(W, t0);
    const int ns_exp = wk - dk * ew;
    const double ns_mant = std::abs(wm) / std::pow(std::abs(dm), ew);
    if (!(ns_mant > 0.0) || !std::isfinite(ns_mant) || dm == Scalar(0.0))
        throw Error(ErrorKind::outside_domain, "normal direction undefined at t0");
    const double len_mant = std::sqrt(ns_mant);
    std::vector<Scalar> a;
    for (int i = 0; i <= n; ++i) {
        auto [gm, gk] = detail::scaled_eval(G_reduced[static_cast<size_t>(i)], t0);
        for (size_t k = 0; k < poles.size(); ++k) {
            const auto [m, kk] = detail::scaled_linear(poles[k], t0);
            for (int c = 0; c < G_cancel[static_cast<size_t>(i)][k]; ++c) {
                gm *= m;
                gk += kk;
            }
        }
        const int expo = gk - dk * e[static_cast<size_t>(i)] - ns_exp * i / 2;
        const Scalar v = gm / std::pow(dm, e[static_cast<size_t>(i)]) / std::pow(len_mant, i) * std::pow(t0, expo);
        if (!is_finite(v)) throw Error(ErrorKind::outside_domain, "pencil coefficient undefined at t0");
        a.push_back(v);
    }
    return a;
}

/// Pencil along the normal n(t) = (-p2'(t), p1'(t)) of the parametrized curve.
inline PencilCoeffs normal_pencil(const BiPoly& f, const Parametrization& P) {
    const CommonForm cf = common_form(P);
    const UniPoly dD = cf.D.derivative();
    const UniPoly U = (cf.Y.derivative() * cf.D - cf.Y * dD) * Scalar(-1.0);
    const UniPoly V = cf.X.derivative() * cf.D - cf.X * dD;
    if (U.trimmed(1e-13).is_zero() && V.trimmed(1e-13).is_zero()) throw Error(ErrorKind::zero_tangent, "parametrization has zero tangent");
    const int d = f.total_degree();
    std::vector<int> e;
    for (int i = 0; i <= d; ++i) e.push_back(d + i);
    return detail::assemble(detail::taylor_numerators(f, cf, U, V), e, cf.D, U * U + V * V, 4, detail::residual_negligible(f, cf));
}

/// Unit direction (2h/(h^2+1), (h^2-1)/(h^2+1)).
inline std::pair<double, double> direction_of(double h) { return {2.0 * h / (h * h + 1.0), (h * h - 1.0) / (h * h + 1.0)}; }

/// Pencil along the fixed unit direction given by h0.
inline PencilCoeffs directional_pencil(const BiPoly& f, const Parametrization& P, double h0) {
    if (!std::isfinite(h0)) throw Error(ErrorKind::invalid_argument, "direction parameter must be finite");
    const CommonForm cf = common_form(P);
    const auto [c1, c2] = direction_of(h0);
    const int d = f.total_degree();
    std::vector<int> e;
    for (int i = 0; i <= d; ++i) e.push_back(d - i);
    return detail::assemble(detail::taylor_numerators(f, cf, UniPoly::constant(c1), UniPoly::constant(c2)), e, cf.D, UniPoly::constant(1.0), 0,
                            detail::residual_negligible(f, cf));
}

/// Smallest |s| over the roots of the unit-direction pencil at t0; empty when
/// real_only is set and there is no real root.
inline std::optional<double> rho1(const PencilCoeffs& pc, double t0, bool real_only) {
    const auto a = pc.unit_coeffs(t0);
    if (a[0] == Scalar(0.0)) return 0.0;
    return min_abs_root(UniPoly(a), real_only);
}

/// min over i with A_i(t0) != 0 of C(n, i) |A_0 / A_i|^(1/i).
inline double coefficient_bound(const PencilCoeffs& pc, double t0) {
    const auto a = pc.unit_coeffs(t0);
    double best = kInf;
    for (int i = 1; i <= pc.n; ++i) {
        const Scalar ai = a[static_cast<size_t>(i)];
        if (ai == Scalar(0.0)) continue;
        best = std::min(best, binomial(pc.n, i) * std::pow(std::abs(a[0] / ai), 1.0 / i));
    }
    return best;
}

}  // namespace aparam
