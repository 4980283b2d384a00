#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/compose.hpp"
#include "aparam/division.hpp"
#include "aparam/epsgeo.hpp"
#include "aparam/error.hpp"
#include "aparam/ratfun.hpp"
#include "aparam/resultant.hpp"
#include "aparam/roots.hpp"

namespace aparam {

struct DivisorEntry {
    ProjPoint point;
    int multiplicity = 1;
};

struct Divisor {
    std::vector<DivisorEntry> entries;
};

struct AdjointPencil {
    BiPoly H1;
    BiPoly H2;

    BiPoly at(Scalar t) const { return H1 + H2 * t; }
};

struct Parametrization {
    RatFun p1;
    RatFun p2;
    std::vector<double> poles;  ///< real poles, sorted

    /// (p1(t), p2(t))
    std::pair<Scalar, Scalar> eval(Scalar t) const { return {p1.eval(t), p2.eval(t)}; }
};

/// Every intermediate object of one run of the parametrization algorithm.
struct ParamRun {
    Parametrization param;
    CurveHypotheses hypotheses;
    std::vector<EpsSingularity> singularities;
    std::vector<EpsCluster> clusters;
    std::vector<ProjPoint> simple_points;
    Divisor divisor;
    AdjointPencil pencil;
    bool infinity_fixed = false;
    BiPoly S1, S2;  ///< (x, t) and (y, t)
    UniPoly A1, A2;
    BiPoly B1, B2;
    double remainder1 = 0.0, remainder2 = 0.0;  ///< ||remainder|| / ||S_i||
};

/// Monomials x^a y^b with a + b <= n, in the order used for pencil coefficient vectors.
inline std::vector<std::pair<int, int>> monomials_up_to(int n) {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k <= n; ++k)
        for (int a = k; a >= 0; --a) out.push_back({a, k - a});
    return out;
}

namespace detail {

/// d^(i+j)/dx^i dy^j of x^a y^b at (x, y).
inline Scalar monomial_partial(int a, int b, int i, int j, Scalar x, Scalar y) {
    if (i > a || j > b) return 0.0;
    double c = 1.0;
    for (int k = 0; k < i; ++k) c *= a - k;
    for (int k = 0; k < j; ++k) c *= b - k;
    return c * std::pow(x, a - i) * std::pow(y, b - j);
}

inline bool has_conjugate_partner(const std::vector<DivisorEntry>& entries, size_t k) {
    const auto& p = entries[k].point;
    for (size_t m = 0; m < entries.size(); ++m)
        if (m != k && entries[m].multiplicity == entries[k].multiplicity &&
            distance(entries[m].point, p.conj()) <= 1e-8 * (1.0 + p.norm()))
            return true;
    return false;
}

inline BiPoly from_coefficient_vector(const std::vector<std::pair<int, int>>& mons, const Eigen::VectorXd& v) {
    std::vector<Term> t;
    size_t first = mons.size();
    for (size_t k = 0; k < mons.size(); ++k)
        if (std::abs(v(static_cast<long>(k))) > 1e-12) {
            first = k;
            break;
        }
    const double sign = (first < mons.size() && v(static_cast<long>(first)) < 0) ? -1.0 : 1.0;
    for (size_t k = 0; k < mons.size(); ++k) t.push_back({mons[k].first, mons[k].second, sign * v(static_cast<long>(k))});
    return BiPoly::from_terms(t);
}

}  // namespace detail

/// Divisor sum r_i Q_i + sum P_j. A non-real representative whose conjugate is
/// not another representative stands for a self-conjugate cluster and is
/// replaced by its real part.
inline Divisor make_divisor(const std::vector<EpsCluster>& clusters, const std::vector<ProjPoint>& simple) {
    Divisor d;
    for (const auto& c : clusters) d.entries.push_back({c.rep, c.r});
    for (size_t k = 0; k < clusters.size(); ++k) {
        auto& e = d.entries[k];
        if (!e.point.is_real() && !detail::has_conjugate_partner(d.entries, k)) e.point = {e.point.a.real(), e.point.b.real(), 1};
        if (e.point.is_real()) e.point = {e.point.a.real(), e.point.b.real(), 1};
    }
    for (const auto& p : simple) d.entries.push_back({p, 1});
    return d;
}

/// Degree d-2 curves with an (r-1)-fold point at every r Q and through every
/// simple P: the two-dimensional null space of the constraint matrix.
inline AdjointPencil build_adjoint_pencil(const Divisor& divisor, int d) {
    const auto mons = monomials_up_to(d - 2);
    const int nm = static_cast<int>(mons.size());
    std::vector<std::vector<Scalar>> rows;
    std::vector<char> skip(divisor.entries.size(), 0);
    std::vector<char> paired(divisor.entries.size(), 0);
    for (size_t k = 0; k < divisor.entries.size(); ++k) {
        const auto& e = divisor.entries[k];
        if (!e.point.is_real()) {
            // conjugate pairs contribute the real and imaginary parts of one row set
            if (skip[k]) continue;
            for (size_t m = k + 1; m < divisor.entries.size(); ++m)
                if (!skip[m] && distance(divisor.entries[m].point, e.point.conj()) <= 1e-8 * (1.0 + e.point.norm())) {
                    skip[m] = 1;
                    paired[k] = 1;
                    break;
                }
        }
        const int order = std::max(e.multiplicity - 2, 0);
        for (int o = 0; o <= order; ++o)
            for (int i = o; i >= 0; --i) {
                std::vector<Scalar> row;
                for (const auto& [a, b] : mons) row.push_back(detail::monomial_partial(a, b, i, o - i, e.point.a, e.point.b));
                rows.push_back(row);
                if (!e.point.is_real() && !paired[k]) rows.back().push_back(Scalar(0.0, 1.0));  // marker: unpaired complex
            }
    }
    std::vector<std::vector<double>> real_rows;
    for (auto& row : rows) {
        const bool complex_row = std::any_of(row.begin(), row.begin() + nm, [](Scalar z) { return z.imag() != 0.0; }) ||
                                 static_cast<int>(row.size()) > nm;
        row.resize(static_cast<size_t>(nm));
        std::vector<double> re(static_cast<size_t>(nm)), im(static_cast<size_t>(nm));
        for (int k = 0; k < nm; ++k) {
            re[static_cast<size_t>(k)] = row[static_cast<size_t>(k)].real();
            im[static_cast<size_t>(k)] = row[static_cast<size_t>(k)].imag();
        }
        real_rows.push_back(re);
        if (complex_row) real_rows.push_back(im);
    }
    Eigen::MatrixXd m(static_cast<long>(std::max<size_t>(real_rows.size(), 1)), nm);
    m.setZero();
    for (size_t r = 0; r < real_rows.size(); ++r) {
        double nrm = 0.0;
        for (double v : real_rows[r]) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (int c = 0; c < nm; ++c) m(static_cast<long>(r), c) = nrm > 0 ? real_rows[r][static_cast<size_t>(c)] / nrm : 0.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < s.size(); ++k)
        if (s(k) > 1e-8 * std::max(s(0), 1e-300)) ++rank;
    const int nullity = nm - rank;
    if (nullity != 2) throw Error(ErrorKind::wrong_dimension, "adjoint system has dimension " + std::to_string(nullity));
    const Eigen::MatrixXd& v = svd.matrixV();
    return {detail::from_coefficient_vector(mons, v.col(rank)), detail::from_coefficient_vector(mons, v.col(rank + 1))};
}

namespace detail {

/// Degree-n homogeneous part of p (zero when p has lower degree).
inline BiPoly homogeneous_part(const BiPoly& p, int n) {
    std::vector<Term> t;
    for (const auto& term : p.terms())
        if (term.i + term.j == n) t.push_back(term);
    return BiPoly::from_terms(t);
}

/// Whether the binary forms a (degree da) and b (degree db) share a root on P^1.
inline bool forms_share_root(const BiPoly& a, int da, const BiPoly& b, int db, double tol) {
    if (a.is_zero() || b.is_zero()) return true;
    if (da == 0 || db == 0) return false;
    const auto ra = binary_form_roots(a, da), rb = binary_form_roots(b, db);
    for (const auto& x : ra)
        for (const auto& y : rb)
            if (chordal_distance(x, y) <= tol) return true;
    return false;
}

}  // namespace detail

/// When both generators meet F(x, y, 0), H2 += rho1 x^(d-2) + rho2 y^(d-2)
/// with rho = (eps/2, eps/3), then (eps/5, eps/7).
inline AdjointPencil fix_infinity_gcd(const AdjointPencil& pencil, const BiPoly& f, double eps, bool* changed = nullptr) {
    const int d = f.total_degree(), n = d - 2;
    const BiPoly F0 = f.leading_form();
    auto shares = [&](const BiPoly& h) { return detail::forms_share_root(F0, d, detail::homogeneous_part(h, n), n, 1e-6); };
    if (changed) *changed = false;
    if (!shares(pencil.H1) || !shares(pencil.H2)) return pencil;
    for (const auto& [a, b] : {std::pair{2.0, 3.0}, std::pair{5.0, 7.0}}) {
        AdjointPencil p = pencil;
        p.H2 = pencil.H2 + BiPoly::from_terms({{n, 0, eps / a}, {0, n, eps / b}});
        if (!shares(p.H1) || !shares(p.H2)) {
            if (changed) *changed = true;
            return p;
        }
    }
    throw Error(ErrorKind::cannot_separate, "pencil generators keep a common point at infinity with the curve");
}

namespace detail {

/// prod (v - c)^e over the divisor entries, coordinate 0 (x) or 1 (y);
/// conjugate pairs multiply to real quadratics.
inline UniPoly divisor_product(const Divisor& div, int coord) {
    UniPoly out = UniPoly::constant(1.0);
    for (const auto& e : div.entries) {
        const Scalar c = coord == 0 ? e.point.a : e.point.b;
        const int expo = e.multiplicity >= 2 ? e.multiplicity * (e.multiplicity - 1) : 1;
        out = out * UniPoly::linear(c).pow(expo);
    }
    bool real = true;
    for (const auto& e : div.entries) real = real && (e.point.is_real() || has_conjugate_partner(div.entries, static_cast<size_t>(&e - div.entries.data())));
    return real ? out.real_part() : out;
}

/// Leading-coefficient test on a quotient that must be linear in v.
inline void require_linear(const BiPoly& b, Var v, const char* name) {
    const double nrm = b.inf_norm();
    if (b.deg(v) > 1) {
        for (int k = 2; k <= b.deg(v); ++k)
            if (b.slice(v, k).norm() > 1e-8 * nrm)
                throw Error(ErrorKind::quotient_degree_unexpected, std::string(name) + " has degree above 1");
    }
    if (b.deg(v) < 1 || b.slice(v, 1).norm() <= 1e-8 * nrm)
        throw Error(ErrorKind::quotient_degree_unexpected, std::string(name) + " has degree below 1");
}

inline double rel_norm(const BiPoly& r, const BiPoly& s) { return s.inf_norm() > 0 ? r.inf_norm() / s.inf_norm() : 0.0; }

/// Denominators of equal degree whose coefficients agree within 1e-8 of the larger norm.
inline bool same_denominator(const UniPoly& d1, const UniPoly& d2) {
    if (d1.degree() != d2.degree()) return false;
    const double scale = std::max(d1.norm(), d2.norm());
    for (int k = 0; k <= d1.degree(); ++k)
        if (std::abs(d1[k] - d2[k]) > 1e-8 * scale) return false;
    return true;
}

/// Real roots of the denominators merged within 1e-6.
inline std::vector<double> real_poles(const RatFun& p1, const RatFun& p2) {
    std::vector<double> all;
    for (const RatFun* r : {&p1, &p2})
        if (r->den().degree() >= 1)
            for (double x : real_roots(r->den())) all.push_back(x);
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double x : all)
        if (out.empty() || std::abs(x - out.back()) > 1e-6 * (1.0 + std::abs(x))) out.push_back(x);
    return out;
}

}  // namespace detail

/// Runs the parametrization algorithm and keeps every intermediate result.
inline ParamRun approx_parametrize_traced(const BiPoly& f, double eps) {
    ParamRun run;
    const int d = f.total_degree();
    if (d < 3) throw Error(ErrorKind::invalid_argument, "curve degree must be at least 3");
    run.hypotheses = check_hypotheses(f, eps);
    if (!run.hypotheses.all()) throw Error(ErrorKind::hypothesis_failed, run.hypotheses.failure_reason());

    run.singularities = find_eps_singularities(f, eps);
    run.clusters = cluster_decompose(run.singularities);
    if (!is_eps_rational(d, run.clusters)) throw Error(ErrorKind::not_eps_rational, "curve is not (affine) eps-rational");

    run.simple_points = simple_eps_points(f, eps, d - 3, run.clusters);
    run.divisor = make_divisor(run.clusters, run.simple_points);
    run.pencil = fix_infinity_gcd(build_adjoint_pencil(run.divisor, d), f, eps, &run.infinity_fixed);

    run.S1 = resultant_pencil(run.pencil.H1, run.pencil.H2, f, Var::y);
    run.S2 = resultant_pencil(run.pencil.H1, run.pencil.H2, f, Var::x);
    run.A1 = detail::divisor_product(run.divisor, 0);
    run.A2 = detail::divisor_product(run.divisor, 1);

    const auto d1 = euclid_div(run.S1, run.A1, Var::x);
    const auto d2 = euclid_div(run.S2, run.A2, Var::x);
    run.B1 = d1.quotient;
    run.B2 = d2.quotient;
    run.remainder1 = detail::rel_norm(d1.remainder, run.S1);
    run.remainder2 = detail::rel_norm(d2.remainder, run.S2);

    detail::require_linear(run.B1, Var::x, "B1");
    detail::require_linear(run.B2, Var::x, "B2");
    if (content(run.B1, Var::x).degree() > 0 || content(run.B2, Var::x).degree() > 0)
        throw Error(ErrorKind::degenerate, "degenerate case: content depends on t");

    auto root_of_linear = [](const BiPoly& b) {
        RatFun r(-b.slice(Var::x, 0), b.slice(Var::x, 1));
        r = r.normalized(1e-10);
        if (r.num().is_real(1e-12) && r.den().is_real(1e-12)) r = RatFun(r.num().real_part(), r.den().real_part());
        return r;
    };
    run.param.p1 = root_of_linear(run.B1);
    run.param.p2 = root_of_linear(run.B2);
    // two separately rounded copies of one denominator put the poles of x and y
    // apart by rounding, which |P|^d amplifies next to a pole
    if (detail::same_denominator(run.param.p1.den(), run.param.p2.den())) run.param.p2 = RatFun(run.param.p2.num(), run.param.p1.den());
    run.param.poles = detail::real_poles(run.param.p1, run.param.p2);
    return run;
}

inline Parametrization approx_parametrize(const BiPoly& f, double eps) { return approx_parametrize_traced(f, eps).param; }

namespace detail {

/// Multiplicity k with Res = c fbar^k, read off the root multiplicities of a
/// restriction to a fixed generic line.
inline int power_of_implicit(const BiPoly& r) {
    const UniPoly p = compose_line(r, 0.2718281828, -0.1414213562, 0.7071067812, 0.7071067812 * 1.0823922).trimmed(1e-12);
    if (p.degree() < 2) return 1;
    const auto roots = all_roots(p).roots;
    const auto mult = root_multiplicities(roots, 1e-4);
    int k = *std::min_element(mult.begin(), mult.end());
    while (k > 1 && p.degree() % k != 0) --k;
    return std::max(k, 1);
}

/// k-th root of a bivariate polynomial that is a perfect k-th power, through
/// Kronecker substitution and the power-series recurrence for q = p^(1/k).
inline BiPoly kth_root(const BiPoly& p, int k) {
    const int stride = p.degx() + 1;
    std::vector<Scalar> u(static_cast<size_t>(stride * (p.degy() + 1)), 0.0);
    for (const auto& t : p.terms()) u[static_cast<size_t>(t.i + t.j * stride)] = t.c;
    size_t low = 0;
    while (low < u.size() && std::abs(u[low]) <= 1e-12 * p.inf_norm()) ++low;
    const size_t n_out = (u.size() - 1 - low) / static_cast<size_t>(k) + 1;
    std::vector<Scalar> a(u.begin() + static_cast<long>(low), u.end()), q(n_out, 0.0);
    const double alpha = 1.0 / k;
    q[0] = std::pow(a[0], alpha);
    for (size_t n = 1; n < n_out; ++n) {
        Scalar acc = 0.0;
        for (size_t j = 1; j <= n && j < a.size(); ++j) acc += ((alpha + 1.0) * static_cast<double>(j) - static_cast<double>(n)) * a[j] * q[n - j];
        q[n] = acc / (static_cast<double>(n) * a[0]);
    }
    std::vector<Term> t;
    const size_t shift = low / static_cast<size_t>(k);
    for (size_t m = 0; m < n_out; ++m) {
        const size_t e = m + shift;
        t.push_back({static_cast<int>(e % static_cast<size_t>(stride)), static_cast<int>(e / static_cast<size_t>(stride)), q[m]});
    }
    return BiPoly::from_terms(t);
}

/// Scale to unit inf-norm with the first largest coefficient real positive.
inline BiPoly normalize_implicit(const BiPoly& p) {
    Scalar lead = 0.0;
    double best = -1.0;
    for (const auto& t : p.terms())
        if (std::abs(t.c) > best * (1.0 + 1e-12)) {
            best = std::abs(t.c);
            lead = t.c;
        }
    return p * (std::abs(lead) / lead / best);
}

}  // namespace detail

/// Implicit equation of the parametrized curve: the squarefree part of
/// Res_t(x den1 - num1, y den2 - num2), scaled to unit norm.
inline BiPoly implicitize(const Parametrization& P) {
    const UniPoly &n1 = P.p1.num(), &e1 = P.p1.den(), &n2 = P.p2.num(), &e2 = P.p2.den();
    const int a = std::max(n1.degree(), e1.degree()), b = std::max(n2.degree(), e2.degree());
    if (a < 1 || b < 1)
        throw Error(ErrorKind::degenerate_parametrization, "parametrization is constant in a coordinate");
    auto value = [&](Scalar x, Scalar y) {
        std::vector<Scalar> ca(static_cast<size_t>(a + 1)), cb(static_cast<size_t>(b + 1));
        for (int k = 0; k <= a; ++k) ca[static_cast<size_t>(k)] = x * e1[k] - n1[k];
        for (int k = 0; k <= b; ++k) cb[static_cast<size_t>(k)] = y * e2[k] - n2[k];
        return sylvester_det(ca, cb);
    };
    const bool real = n1.is_real() && e1.is_real() && n2.is_real() && e2.is_real();
    BiPoly r = detail::interpolate_on_roots_of_unity(value, b, a, real);
    double scale = 0.0;
    for (const UniPoly* p : {&n1, &e1, &n2, &e2}) scale = std::max(scale, p->norm());
    if (r.is_zero() || r.inf_norm() <= 1e-13 * std::pow(std::max(scale, 1.0), a + b))
        throw Error(ErrorKind::degenerate_parametrization, "implicit resultant vanishes identically");
    r = r * Scalar(1.0 / r.inf_norm());
    r = BiPoly::from_terms([&] {
        std::vector<Term> t;
        for (const auto& term : r.terms())
            if (std::abs(term.c) > 1e-11) t.push_back(term);
        return t;
    }());
    const int k = detail::power_of_implicit(r);
    if (k > 1) r = detail::kth_root(r, k);
    r = detail::normalize_implicit(r);
    return real ? r.real_part() : r;
}

}  // namespace aparam
