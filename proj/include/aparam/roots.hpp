#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "aparam/error.hpp"
#include "aparam/scalar.hpp"
#include "aparam/unipoly.hpp"

namespace aparam {

struct RootSet {
    std::vector<Scalar> roots;      ///< one entry per root counted with multiplicity
    std::vector<int> multiplicity;  ///< size of the numeric cluster each root belongs to
    std::vector<double> residuals;  ///< |p(root)|
};

namespace detail {

/// Newton correction p(z)/p'(z); for |z| > 1 evaluated through the reversed
/// polynomial so that large roots do not overflow.
/// Also reports |p(z)| relative to its rounding scale through `at_noise`.
inline Scalar newton_ratio(const UniPoly& p, const UniPoly& rev, Scalar z, bool& at_noise) {
    const int n = p.degree();
    const double u = std::numeric_limits<double>::epsilon();
    if (std::abs(z) <= 1.0) {
        Scalar v = 0.0, dv = 0.0;
        const auto& c = p.coeffs();
        for (int k = n; k >= 0; --k) {
            dv = dv * z + v;
            v = v * z + c[static_cast<size_t>(k)];
        }
        at_noise = std::abs(v) <= 4.0 * n * u * p.abs_eval(std::abs(z));
        if (dv == Scalar(0.0)) return v == Scalar(0.0) ? Scalar(0.0) : Scalar(1e-3 * (1.0 + std::abs(z)));
        return v / dv;
    }
    const Scalar w = 1.0 / z;
    Scalar q = 0.0, dq = 0.0;
    const auto& c = rev.coeffs();
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        dq = dq * w + q;
        q = q * w + c[static_cast<size_t>(k)];
    }
    at_noise = std::abs(q) <= 4.0 * n * u * rev.abs_eval(std::abs(w));
    // p(z) = z^n q(w)  =>  p/p' = 1 / (w (n - w q'/q))
    if (q == Scalar(0.0)) return 0.0;
    const Scalar denom = w * (static_cast<double>(n) - w * dq / q);
    if (denom == Scalar(0.0)) return Scalar(1e-3 * (1.0 + std::abs(z)));
    return 1.0 / denom;
}

/// Starting points on circles whose radii come from the upper convex hull of
/// (k, log|a_k|).
inline std::vector<Scalar> aberth_start(const UniPoly& p) {
    const int n = p.degree();
    std::vector<int> idx;
    std::vector<double> lg;
    for (int k = 0; k <= n; ++k)
        if (std::abs(p[k]) > 0.0) {
            idx.push_back(k);
            lg.push_back(std::log(std::abs(p[k])));
        }
    std::vector<size_t> hull;
    for (size_t m = 0; m < idx.size(); ++m) {
        while (hull.size() >= 2) {
            const size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (idx[b] - idx[a]) * (lg[m] - lg[a]) - (lg[b] - lg[a]) * (idx[m] - idx[a]);
            if (cross >= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(m);
    }
    std::vector<Scalar> z;
    const double two_pi = 2.0 * std::numbers::pi;
    for (size_t h = 0; h + 1 < hull.size(); ++h) {
        const int k0 = idx[hull[h]], k1 = idx[hull[h + 1]];
        const int cnt = k1 - k0;
        const double r = std::exp((lg[hull[h]] - lg[hull[h + 1]]) / cnt);
        for (int m = 0; m < cnt; ++m) {
            const double ang = two_pi * m / cnt + two_pi * static_cast<double>(h) / n + 0.4;
            z.push_back(std::polar(r, ang));
        }
    }
    return z;
}

}  // namespace detail

/// Clusters roots lying within 1e-6 (1 + |r|) of each other (transitively) and
/// returns the cluster size for each root.
inline std::vector<int> root_multiplicities(const std::vector<Scalar>& roots, double rel = 1e-6) {
    const size_t n = roots.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            if (std::abs(roots[a] - roots[b]) <= rel * (1.0 + std::max(std::abs(roots[a]), std::abs(roots[b]))))
                parent[find(a)] = find(b);
    std::vector<int> size(n, 0), out(n);
    for (size_t a = 0; a < n; ++a) ++size[find(a)];
    for (size_t a = 0; a < n; ++a) out[a] = size[find(a)];
    return out;
}

/// Aberth-Ehrlich simultaneous iteration with Gauss-Seidel updates.
inline RootSet all_roots(const UniPoly& p_in) {
    if (p_in.degree() < 1) throw Error(ErrorKind::invalid_argument, "all_roots needs degree >= 1");
    // Exact zero roots are split off; they are returned as 0.
    int zeros = 0;
    while (p_in[zeros] == Scalar(0.0)) ++zeros;
    std::vector<Scalar> shifted(p_in.coeffs().begin() + zeros, p_in.coeffs().end());
    const UniPoly p(std::move(shifted));
    const int n = p.degree();

    std::vector<Scalar> z;
    if (n == 1) {
        z.push_back(-p[0] / p[1]);
    } else if (n > 1) {
        const UniPoly rev = p.reversed();
        z = detail::aberth_start(p);
        std::vector<char> done(static_cast<size_t>(n), 0);
        for (int sweep = 0; sweep < 200; ++sweep) {
            bool all_done = true;
            for (int i = 0; i < n; ++i) {
                if (done[static_cast<size_t>(i)]) continue;
                bool at_noise = false;
                const Scalar zi = z[static_cast<size_t>(i)];
                const Scalar ratio = detail::newton_ratio(p, rev, zi, at_noise);
                if (at_noise) {
                    done[static_cast<size_t>(i)] = 1;
                    continue;
                }
                Scalar sum = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != i) {
                        const Scalar diff = zi - z[static_cast<size_t>(j)];
                        if (diff != Scalar(0.0)) sum += 1.0 / diff;
                    }
                const Scalar step = ratio / (1.0 - ratio * sum);
                const Scalar next = zi - step;
                if (is_finite(next)) z[static_cast<size_t>(i)] = next;
                if (std::abs(step) <= 1e-13 * (1.0 + std::abs(next)))
                    done[static_cast<size_t>(i)] = 1;
                else
                    all_done = false;
            }
            if (all_done) break;
        }
    }
    for (int k = 0; k < zeros; ++k) z.push_back(0.0);

    RootSet out;
    out.multiplicity = root_multiplicities(z);
    // A multiple root comes back as a cloud of radius ~ u^(1/m); the cloud's
    // centroid is far more accurate than any member.
    std::vector<char> seen(z.size(), 0);
    for (size_t a = 0; a < z.size(); ++a) {
        if (out.multiplicity[a] < 2 || seen[a]) continue;
        std::vector<size_t> members{a};
        for (size_t m = 0; m < members.size(); ++m)
            for (size_t b = 0; b < z.size(); ++b)
                if (!seen[b] && b != a &&
                    std::find(members.begin(), members.end(), b) == members.end() &&
                    std::abs(z[members[m]] - z[b]) <= 1e-6 * (1.0 + std::max(std::abs(z[members[m]]), std::abs(z[b]))))
                    members.push_back(b);
        Scalar mean = 0.0;
        for (size_t m : members) mean += z[m];
        mean /= static_cast<double>(members.size());
        for (size_t m : members) {
            z[m] = mean;
            seen[m] = 1;
        }
    }
    out.roots = z;
    const double nrm = p_in.norm();
    const int deg = p_in.degree();
    bool ok = true;
    for (const auto& r : z) {
        const double res = std::abs(p_in.eval(r));
        out.residuals.push_back(res);
        const double scale = std::pow(std::max(1.0, std::abs(r)), deg);
        if (!(res <= 1e-8 * nrm * scale)) ok = false;
    }
    if (!ok) {
        std::ostringstream msg;
        msg << "root residuals above tolerance:";
        for (double r : out.residuals) msg << ' ' << r;
        throw Error(ErrorKind::no_convergence, msg.str());
    }
    return out;
}

/// Real parts of the roots with |im| <= tol (1 + |re|), sorted.
inline std::vector<double> real_roots(const UniPoly& p, double tol = 1e-7) {
    std::vector<double> out;
    if (p.degree() < 1) return out;
    for (const auto& r : all_roots(p).roots)
        if (std::abs(r.imag()) <= tol * (1.0 + std::abs(r.real()))) out.push_back(r.real());
    std::sort(out.begin(), out.end());
    return out;
}

/// Smallest root modulus; with real_only, only roots passing the real_roots
/// filter count and the result is absent when there are none.
inline std::optional<double> min_abs_root(const UniPoly& p, bool real_only, double tol = 1e-7) {
    if (p.degree() < 1) throw Error(ErrorKind::invalid_argument, "min_abs_root needs degree >= 1");
    std::optional<double> best;
    for (const auto& r : all_roots(p).roots) {
        if (real_only && std::abs(r.imag()) > tol * (1.0 + std::abs(r.real()))) continue;
        const double m = real_only ? std::abs(r.real()) : std::abs(r);
        if (!best || m < *best) best = m;
    }
    return best;
}

}  // namespace aparam
