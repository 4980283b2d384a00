#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "aparam/division.hpp"
#include "aparam/maximize.hpp"
#include "aparam/pencil.hpp"

namespace aparam {

/// Bound on the distance from the parametrized curve to f along a pencil.
///
/// R1(t) = sqrt|r1(t)| = C(n,1) |A0/A1| and R2(t) = sqrt|r2(t)| = C(n,2) |A0/A2|^(1/2)
/// (binomial prefactors of the degree). B1b maximizes R1 off the isolating
/// intervals of the real poles alpha of R1, B2b maximizes R2 on their closure.
struct BoundReport {
    double B1b = 0.0, B2b = 0.0, B = 0.0;
    std::vector<double> alpha;
    std::vector<Interval> intervals;
    double argmax1 = 0.0, argmax2 = 0.0;
    double full_min_sampled = 0.0;  ///< max over a t-grid of the all-i coefficient bound
    RatFun r1, r2;

    double R1(double t) const { return std::sqrt(std::abs(r1.eval(t))); }
    double R2(double t) const { return std::sqrt(std::abs(r2.eval(t))); }
};

namespace detail {

/// num * D^k / den (k may be negative), with every root z of D at which num
/// vanishes to rounding removed once from both sides.
inline RatFun quotient_cancelling_poles(UniPoly num, UniPoly den, const UniPoly& D, int k) {
    const bool real = num.is_real() && den.is_real() && D.is_real();
    if (k < 0 && D.degree() >= 1) {
        const UniPoly orig = num, mag = abs_coeffs(num);
        for (const Scalar z : all_roots(D).roots) {
            if (std::abs(orig.eval(z)) <= 1e-11 * mag.abs_eval(std::abs(z))) {
                num = euclid_div(num, UniPoly::linear(z)).quotient;
            } else {
                den = den * UniPoly::linear(z);
            }
        }
        for (int j = 1; j < -k; ++j) den = den * D.monic();
        if (real) {
            num = num.real_part();
            den = den.real_part();
        }
        return RatFun(num * (1.0 / std::pow(D.leading(), -k)), den);
    }
    for (int j = 0; j < k; ++j) num = num * D;
    for (int j = 0; j < -k; ++j) den = den * D;
    return RatFun(num, den);
}

inline std::vector<double> real_poles_of(const RatFun& r) {
    if (r.den().degree() < 1) return {};
    return real_roots(r.den().is_real() ? r.den().real_part() : r.den());
}

template <class F>
MaxResult maximize_or_throw(F&& absval, const MaxStructure& st, const Domain& dom) {
    try {
        return max_abs_function(absval, st, dom, 2);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::unbounded) throw Error(ErrorKind::unbounded_bound, e.what());
        throw;
    }
}

}  // namespace detail

/// B = max(B1b, B2b) for a pencil (normal or fixed-direction).
inline BoundReport bound_B(const PencilCoeffs& pc) {
    if (pc.n < 2) throw Error(ErrorKind::invalid_argument, "pencil degree must be at least 2");
    if (pc.G[1].trimmed(1e-13).is_zero()) throw Error(ErrorKind::invalid_argument, "first-order coefficient vanishes identically");
    BoundReport rep;
    if (pc.on_curve || pc.G[0].is_zero()) {
        rep.r1 = RatFun();
        rep.r2 = RatFun();
        return rep;
    }
    // A0/A1 = G0 D^(e1-e0-ew/2) sqrt(W) / G1 and A0/A2 = G0 W D^(e2-e0-ew) / G2
    const RatFun q1 = detail::quotient_cancelling_poles(pc.G[0], pc.G[1], pc.D, pc.e[1] - pc.e[0] - pc.ew / 2);
    const double c1 = binomial(pc.n, 1), c2 = binomial(pc.n, 2);
    rep.r1 = RatFun(q1.num() * q1.num() * pc.W * Scalar(c1 * c1), q1.den() * q1.den());
    const RatFun q2 = detail::quotient_cancelling_poles(pc.G[0] * pc.W, pc.G[2], pc.D, pc.e[2] - pc.e[0] - pc.ew);
    rep.r2 = q2 * Scalar(c2 * c2);

    rep.alpha = detail::real_poles_of(q1);
    const std::vector<double> r2_poles = detail::real_poles_of(q2);
    for (double a : rep.alpha)
        for (double p : r2_poles)
            if (std::abs(a - p) <= 1e-8 * (1.0 + std::abs(a))) throw Error(ErrorKind::pole_collision, "pole of R1 is also a pole of R2");
    for (size_t k = 0; k < rep.alpha.size(); ++k) {
        std::vector<double> excluded = r2_poles;
        for (size_t m = 0; m < rep.alpha.size(); ++m)
            if (m != k) excluded.push_back(rep.alpha[m]);
        rep.intervals.push_back(isolating_interval(rep.alpha[k], excluded));
    }

    // Values come from the pencil coefficients evaluated factor by factor;
    // the expanded r1, r2 only supply poles, limits and critical points.
    auto stable = [&](double t, int i, const RatFun& fallback) {
        try {
            const auto a = pc.unit_coeffs(t);
            const double q = std::abs(a[0] / a[static_cast<size_t>(i)]);
            return i == 1 ? c1 * c1 * q * q : c2 * c2 * q;
        } catch (const Error&) {
            return std::abs(fallback.eval(t));
        }
    };
    MaxStructure s1;
    s1.poles = rep.alpha;
    s1.limit = abs_limit_at_infinity(rep.r1);
    {
        const UniPoly &a = q1.num(), &b = q1.den();
        s1.critical = detail::loose_real_zeros((a.derivative() * b - a * b.derivative()) * pc.W * Scalar(2.0) + a * b * pc.W.derivative());
    }
    const MaxResult m1 = detail::maximize_or_throw([&](double t) { return stable(t, 1, rep.r1); }, s1,
                                                   rep.intervals.empty() ? Domain::real_line() : Domain::complement_of(rep.intervals));
    rep.B1b = m1.value;
    rep.argmax1 = m1.argmax;
    if (!rep.intervals.empty()) {
        MaxStructure s2;
        s2.poles = r2_poles;
        s2.limit = abs_limit_at_infinity(rep.r2);
        s2.critical = detail::loose_critical_points(rep.r2);
        const MaxResult m2 = detail::maximize_or_throw([&](double t) { return stable(t, 2, rep.r2); }, s2, Domain::closure_of_union(rep.intervals));
        rep.B2b = m2.value;
        rep.argmax2 = m2.argmax;
    }
    rep.B = std::max(rep.B1b, rep.B2b);

    // all-i coefficient bound on a tan(theta) grid, skipping the pencil poles
    for (int k = 1; k < 2000; ++k) {
        const double t = std::tan(-M_PI / 2 + M_PI * k / 2000.0);
        try {
            const double c = coefficient_bound(pc, t);
            if (std::isfinite(c)) rep.full_min_sampled = std::max(rep.full_min_sampled, c);
        } catch (const Error&) {
        }
    }
    return rep;
}

inline BoundReport directional_bound(const BiPoly& f, const Parametrization& P, double h0) { return bound_B(directional_pencil(f, P, h0)); }

}  // namespace aparam
