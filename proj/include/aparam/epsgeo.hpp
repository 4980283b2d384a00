#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/compose.hpp"
#include "aparam/division.hpp"
#include "aparam/error.hpp"
#include "aparam/resultant.hpp"
#include "aparam/roots.hpp"

namespace aparam {

/// Point (a : b : w) of the projective plane; affine points have w = 1.
struct ProjPoint {
    Scalar a = 0.0;
    Scalar b = 0.0;
    int w = 1;

    bool is_real(double tol = 1e-8) const { return is_real_within(a, tol) && is_real_within(b, tol); }
    ProjPoint conj() const { return {std::conj(a), std::conj(b), w}; }
    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

inline double distance(const ProjPoint& p, const ProjPoint& q) {
    return std::sqrt(std::norm(p.a - q.a) + std::norm(p.b - q.b));
}

struct EpsSingularity {
    ProjPoint point;
    int mult = 2;
    double radius = 0.0;
    double defect = 0.0;  ///< max |partial of order < mult| / ||f||; 0 for an exact singularity
};

struct EpsCluster {
    ProjPoint rep;
    int r = 0;
    std::vector<EpsSingularity> members;
    double radius = 0.0;
};

struct CurveHypotheses {
    bool proper_degree = false;
    bool eps_irreducible_heuristic = false;
    bool d_distinct_infinity = false;
    bool avoids_axes_at_infinity = false;

    bool all() const { return proper_degree && eps_irreducible_heuristic && d_distinct_infinity && avoids_axes_at_infinity; }
    std::string failure_reason() const {
        if (!proper_degree) return "improper_degree";
        if (!eps_irreducible_heuristic) return "reducible";
        if (!d_distinct_infinity) return "repeated_infinity_point";
        if (!avoids_axes_at_infinity) return "axis_point_at_infinity";
        return "";
    }
};

/// max over |v| = order of |f^v(P)|
inline double max_partial_modulus(const BiPoly& f, int order, Scalar a, Scalar b) {
    double m = 0.0;
    for (int i = 0; i <= order; ++i) m = std::max(m, std::abs(f.partial(i, order - i).eval(a, b)));
    return m;
}

/// First order r at which some partial exceeds eps ||f|| at P (0 when |f(P)|
/// already does).
inline int eps_multiplicity(const BiPoly& f, const ProjPoint& p, double eps) {
    if (p.w != 1) throw Error(ErrorKind::invalid_argument, "eps_multiplicity needs an affine point");
    const double thr = eps * f.inf_norm();
    const int d = f.total_degree();
    for (int r = 0; r <= d; ++r)
        if (max_partial_modulus(f, r, p.a, p.b) > thr) return r;
    return std::max(d, 0);
}

/// Stand-in for mu = inf, the point (0 : 1).
inline constexpr double kInfinityMarker = 1e300;

/// Points of P^1 given by the roots of a binary form of degree d, as (1 : mu)
/// with mu = inf standing for (0 : 1).
inline std::vector<Scalar> binary_form_roots(const BiPoly& form, int d) {
    const UniPoly chart = dehomogenized_form(form, d).trimmed();
    std::vector<Scalar> out;
    if (chart.degree() >= 1) out = all_roots(chart).roots;
    while (static_cast<int>(out.size()) < d) out.push_back(Scalar(kInfinityMarker, 0.0));
    return out;
}

/// Chordal distance on P^1 between (1 : a) and (1 : b).
inline double chordal_distance(Scalar a, Scalar b) {
    const bool ia = std::abs(a) >= 1e299, ib = std::abs(b) >= 1e299;
    if (ia && ib) return 0.0;
    if (ia) return 1.0 / std::sqrt(1.0 + std::norm(b));
    if (ib) return 1.0 / std::sqrt(1.0 + std::norm(a));
    return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

namespace detail {

/// Dimension of the solution space of f g_y - g f_y - f h_x + h f_x = 0 with
/// deg g <= (m-1, n), deg h <= (m, n-1); it counts absolutely irreducible
/// factors of a squarefree f.
inline int ruppert_nullity(const BiPoly& f_in, double tol) {
    // A fixed rotation first, so that both partial degrees equal the total
    // degree with leading coefficients of healthy size.
    const double cs = 0.8775825618903728, sn = 0.479425538604203;
    BiPoly rot;
    const BiPoly u = BiPoly::from_terms({{1, 0, cs}, {0, 1, -sn}}), v = BiPoly::from_terms({{1, 0, sn}, {0, 1, cs}});
    for (const auto& t : f_in.terms()) rot = rot + u.pow(t.i) * v.pow(t.j) * t.c;
    const BiPoly f = rot * Scalar(1.0 / rot.inf_norm());
    const int m = f.degx(), n = f.degy();
    if (m < 1 || n < 1) return 1;
    const BiPoly fx = f.partial(1, 0), fy = f.partial(0, 1);
    std::vector<BiPoly> cols;
    for (int i = 0; i <= m - 1; ++i)
        for (int j = 0; j <= n; ++j) {
            const BiPoly g = BiPoly::from_terms({{i, j, 1.0}});
            cols.push_back(f * g.partial(0, 1) - g * fy);
        }
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n - 1; ++j) {
            const BiPoly h = BiPoly::from_terms({{i, j, 1.0}});
            cols.push_back(h * fx - f * h.partial(1, 0));
        }
    const int rows_x = 2 * m, rows_y = 2 * n;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows_x * rows_y, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        for (const auto& t : cols[static_cast<size_t>(c)].terms()) a(t.i * rows_y + t.j, c) = t.c;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    int nullity = static_cast<int>(cols.size()) - static_cast<int>(s.size());
    for (int k = 0; k < s.size(); ++k)
        if (s(k) <= tol * s(0)) ++nullity;
    return nullity;
}

/// True when the restriction of f to a fixed generic line shares no root with
/// its derivative, i.e. f has no repeated factor.
inline bool squarefree_on_generic_line(const BiPoly& f) {
    const UniPoly p = compose_line(f, 0.3183098861837907, -0.5772156649015329, 0.6004524, 0.7996604).trimmed(1e-12);
    if (p.degree() < 2) return true;
    const UniPoly g = approx_gcd(p, p.derivative(), 1e-6);
    return g.degree() < 1;
}

}  // namespace detail

inline CurveHypotheses check_hypotheses(const BiPoly& f, double eps) {
    CurveHypotheses h;
    const int d = f.total_degree();
    if (f.is_zero() || d < 1) return h;
    const double nrm = f.inf_norm();
    for (int i = 0; i <= d; ++i)
        if (std::abs(f.coeff(i, d - i)) * factorial(i) * factorial(d - i) > eps * nrm) h.proper_degree = true;
    h.avoids_axes_at_infinity = std::abs(f.coeff(d, 0)) > 1e-10 * nrm && std::abs(f.coeff(0, d)) > 1e-10 * nrm;
    const auto roots = binary_form_roots(f.leading_form(), d);
    h.d_distinct_infinity = true;
    for (size_t a = 0; a < roots.size(); ++a)
        for (size_t b = a + 1; b < roots.size(); ++b)
            if (chordal_distance(roots[a], roots[b]) <= 1e-6) h.d_distinct_infinity = false;
    h.eps_irreducible_heuristic = detail::squarefree_on_generic_line(f) && detail::ruppert_nullity(f, 1e-6) == 1;
    return h;
}

namespace detail {

/// Newton on the gradient system f_x = f_y = 0.
inline ProjPoint refine_critical_point(const BiPoly& f, ProjPoint p) {
    const BiPoly fx = f.partial(1, 0), fy = f.partial(0, 1);
    const BiPoly fxx = f.partial(2, 0), fxy = f.partial(1, 1), fyy = f.partial(0, 2);
    auto res = [&](const ProjPoint& q) { return std::abs(fx.eval(q.a, q.b)) + std::abs(fy.eval(q.a, q.b)); };
    double r0 = res(p);
    for (int it = 0; it < 20 && r0 > 0.0; ++it) {
        const Scalar gx = fx.eval(p.a, p.b), gy = fy.eval(p.a, p.b);
        const Scalar jxx = fxx.eval(p.a, p.b), jxy = fxy.eval(p.a, p.b), jyy = fyy.eval(p.a, p.b);
        const Scalar det = jxx * jyy - jxy * jxy;
        if (det == Scalar(0.0)) break;
        const ProjPoint q{p.a - (jyy * gx - jxy * gy) / det, p.b - (jxx * gy - jxy * gx) / det, 1};
        const double r1 = res(q);
        if (!(r1 < r0)) break;
        p = q;
        r0 = r1;
    }
    return p;
}

inline void add_roots(std::vector<Scalar>& out, const UniPoly& p) {
    const UniPoly q = p.trimmed(1e-13);
    if (q.degree() < 1) return;
    for (const auto& r : all_roots(q).roots) out.push_back(r);
}

}  // namespace detail

/// Candidate singular points from Res_y(f_x, f_y) and back-substitution,
/// refined by Newton and kept when their eps-multiplicity is at least 2.
inline std::vector<EpsSingularity> find_eps_singularities(const BiPoly& f, double eps) {
    const BiPoly fx = f.partial(1, 0), fy = f.partial(0, 1);
    std::vector<EpsSingularity> out;
    if (fx.is_zero() || fy.is_zero()) return out;
    const bool elim_y = fx.degy() >= 1 && fy.degy() >= 1;
    const BiPoly gx = elim_y ? fx : fx.swapped(), gy = elim_y ? fy : fy.swapped();
    if (gx.degy() < 1 || gy.degy() < 1) return out;
    const UniPoly r = resultant(gx, gy, Var::y).trimmed(1e-13);
    if (r.degree() < 1) return out;
    for (const auto& x0 : all_roots(r).roots) {
        std::vector<Scalar> ys;
        detail::add_roots(ys, gx.specialize(Var::x, x0));
        detail::add_roots(ys, gy.specialize(Var::x, x0));
        for (const auto& y0 : ys) {
            ProjPoint p = elim_y ? ProjPoint{x0, y0, 1} : ProjPoint{y0, x0, 1};
            p = detail::refine_critical_point(f, p);
            if (p.is_real(1e-10)) p = {p.a.real(), p.b.real(), 1};
            const int m = eps_multiplicity(f, p, eps);
            if (m < 2) continue;
            const bool dup = std::any_of(out.begin(), out.end(), [&](const EpsSingularity& s) {
                return distance(s.point, p) <= 1e-6 * (1.0 + p.norm());
            });
            if (dup) continue;
            double defect = 0.0;
            for (int r = 0; r < m; ++r) defect = std::max(defect, max_partial_modulus(f, r, p.a, p.b));
            out.push_back({p, m, std::pow(eps, 1.0 / m), defect / f.inf_norm()});
        }
    }
    std::sort(out.begin(), out.end(), [](const EpsSingularity& s, const EpsSingularity& t) {
        const auto key = [](const EpsSingularity& e) {
            return std::array<double, 4>{e.point.a.real(), e.point.a.imag(), e.point.b.real(), e.point.b.imag()};
        };
        return key(s) < key(t);
    });
    return out;
}

/// Union-find over pairwise disk overlap. Representative: a member of maximal
/// multiplicity, preferring real points, then the smallest defect, then the
/// smallest |P|, then lexicographic order.
inline std::vector<EpsCluster> cluster_decompose(const std::vector<EpsSingularity>& sings) {
    const size_t n = sings.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            if (distance(sings[a].point, sings[b].point) <= sings[a].radius + sings[b].radius) parent[find(a)] = find(b);
    std::vector<EpsCluster> out;
    std::vector<long> slot(n, -1);
    for (size_t a = 0; a < n; ++a) {
        const size_t root = find(a);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(out.size());
            out.emplace_back();
        }
        out[static_cast<size_t>(slot[root])].members.push_back(sings[a]);
    }
    auto better = [](const EpsSingularity& s, const EpsSingularity& t) {
        if (s.mult != t.mult) return s.mult > t.mult;
        const bool rs = s.point.is_real(), rt = t.point.is_real();
        if (rs != rt) return rs;
        if (s.defect != t.defect) return s.defect < t.defect;
        if (s.point.norm() != t.point.norm()) return s.point.norm() < t.point.norm();
        const std::array<double, 4> ks{s.point.a.real(), s.point.a.imag(), s.point.b.real(), s.point.b.imag()};
        const std::array<double, 4> kt{t.point.a.real(), t.point.a.imag(), t.point.b.real(), t.point.b.imag()};
        return ks < kt;
    };
    for (auto& c : out) {
        const auto best = std::min_element(c.members.begin(), c.members.end(), better);
        c.rep = best->point;
        c.r = best->mult;
        c.radius = 0.0;
        for (const auto& m : c.members) c.radius = std::max(c.radius, distance(m.point, c.rep) + m.radius);
    }
    return out;
}

/// Genus test (d-1)(d-2) - sum r_i (r_i - 1) = 0.
inline bool is_eps_rational(int d, const std::vector<EpsCluster>& clusters) {
    if (d < 3) throw Error(ErrorKind::invalid_argument, "degree must be at least 3");
    long sum = 0;
    for (const auto& c : clusters) sum += static_cast<long>(c.r) * (c.r - 1);
    return static_cast<long>(d - 1) * (d - 2) == sum;
}

/// k-th element (k >= 1) of the base-2 van der Corput sequence.
inline double van_der_corput(unsigned k) {
    double v = 0.0, base = 0.5;
    while (k) {
        if (k & 1u) v += base;
        base *= 0.5;
        k >>= 1;
    }
    return v;
}

/// count eps-simple points on f, away from the clusters and from each other.
/// Abscissae x0 = -2 + 4 vdc(k); real ordinates are preferred (smallest |y|
/// first), otherwise a conjugate pair is taken when two points are still
/// missing.
inline std::vector<ProjPoint> simple_eps_points(const BiPoly& f, double eps, int count, const std::vector<EpsCluster>& avoid) {
    std::vector<ProjPoint> chosen;
    if (count <= 0) return chosen;
    const double disk = eps;
    auto acceptable = [&](const ProjPoint& p) {
        if (eps_multiplicity(f, p, eps) != 1) return false;
        for (const auto& c : avoid)
            if (distance(p, c.rep) <= disk + c.radius) return false;
        for (const auto& q : chosen)
            if (distance(p, q) <= 2.0 * disk) return false;
        return true;
    };
    for (unsigned k = 1; k <= 1000; ++k) {
        const double x0 = -2.0 + 4.0 * van_der_corput(k);
        const UniPoly fy = f.specialize(Var::x, x0).trimmed();
        if (fy.degree() < 1) continue;
        std::vector<Scalar> roots = all_roots(fy).roots;
        std::vector<Scalar> real, cplx;
        for (const auto& y : roots) (is_real_within(y, 1e-10) ? real : cplx).push_back(y);
        std::sort(real.begin(), real.end(), [](Scalar a, Scalar b) { return std::abs(a.real()) < std::abs(b.real()); });
        std::sort(cplx.begin(), cplx.end(), [](Scalar a, Scalar b) { return std::abs(a) < std::abs(b); });
        bool taken = false;
        for (const auto& y : real) {
            const ProjPoint p{x0, y.real(), 1};
            if (acceptable(p)) {
                chosen.push_back(p);
                taken = true;
                break;
            }
        }
        if (!taken && count - static_cast<int>(chosen.size()) >= 2) {
            for (const auto& y : cplx) {
                if (y.imag() <= 0.0) continue;
                const ProjPoint p{x0, y, 1};
                if (acceptable(p) && distance(p, p.conj()) > 2.0 * disk) {
                    chosen.push_back(p);
                    chosen.push_back(p.conj());
                    break;
                }
            }
        }
        if (static_cast<int>(chosen.size()) >= count) return chosen;
    }
    throw Error(ErrorKind::exhausted_candidates, "no admissible simple point after 1000 abscissae");
}

}  // namespace aparam
