#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "aparam/error.hpp"
#include "aparam/scalar.hpp"
#include "aparam/unipoly.hpp"

namespace aparam {

/// Variable slot of a BiPoly. Resultants that carry the pencil parameter t
/// return BiPolys whose second slot (Var::y) holds t.
enum class Var { x, y };

inline Var other(Var v) { return v == Var::x ? Var::y : Var::x; }

struct Term {
    int i;
    int j;
    Scalar c;
};

/// Dense bivariate polynomial sum c[i][j] x^i y^j.
///
/// Coefficients with |c| <= 1e-14 * ||p|| are stored as exact zeros and the
/// degree bounds are kept tight.
class BiPoly {
public:
    static constexpr double trim_rel = 1e-14;

    BiPoly() = default;

    /// grid[i][j] is the coefficient of x^i y^j; rows may have different lengths.
    explicit BiPoly(const std::vector<std::vector<Scalar>>& grid) {
        int dx = static_cast<int>(grid.size()) - 1;
        int dy = -1;
        for (const auto& row : grid) dy = std::max(dy, static_cast<int>(row.size()) - 1);
        resize(dx, dy);
        for (size_t i = 0; i < grid.size(); ++i)
            for (size_t j = 0; j < grid[i].size(); ++j) at(static_cast<int>(i), static_cast<int>(j)) = grid[i][j];
        normalize();
    }

    static BiPoly from_terms(const std::vector<Term>& terms) {
        BiPoly p;
        int dx = -1, dy = -1;
        for (const auto& t : terms) {
            if (t.i < 0 || t.j < 0) throw Error(ErrorKind::invalid_argument, "negative exponent");
            dx = std::max(dx, t.i);
            dy = std::max(dy, t.j);
        }
        p.resize(dx, dy);
        for (const auto& t : terms) p.at(t.i, t.j) += t.c;
        p.normalize();
        return p;
    }

    static BiPoly constant(Scalar c) { return from_terms({{0, 0, c}}); }
    static BiPoly x() { return from_terms({{1, 0, 1.0}}); }
    static BiPoly y() { return from_terms({{0, 1, 1.0}}); }

    /// Embeds a univariate polynomial in the given variable.
    static BiPoly from_uni(const UniPoly& u, Var v) {
        std::vector<Term> terms;
        for (int k = 0; k <= u.degree(); ++k)
            terms.push_back(v == Var::x ? Term{k, 0, u[k]} : Term{0, k, u[k]});
        return from_terms(terms);
    }

    bool is_zero() const { return c_.empty(); }
    int degx() const { return dx_; }
    int degy() const { return dy_; }
    int deg(Var v) const { return v == Var::x ? dx_ : dy_; }
    int total_degree() const {
        int d = -1;
        for (int i = 0; i <= dx_; ++i)
            for (int j = 0; j <= dy_; ++j)
                if (get(i, j) != Scalar(0.0)) d = std::max(d, i + j);
        return d;
    }

    Scalar coeff(int i, int j) const {
        if (i < 0 || j < 0 || i > dx_ || j > dy_) return 0.0;
        return get(i, j);
    }

    std::vector<Term> terms() const {
        std::vector<Term> out;
        for (int i = 0; i <= dx_; ++i)
            for (int j = 0; j <= dy_; ++j)
                if (get(i, j) != Scalar(0.0)) out.push_back({i, j, get(i, j)});
        return out;
    }

    double inf_norm() const {
        double m = 0.0;
        for (const auto& z : c_) m = std::max(m, std::abs(z));
        return m;
    }

    /// Horner in y inside Horner in x.
    Scalar eval(Scalar x, Scalar y) const {
        Scalar acc = 0.0;
        for (int i = dx_; i >= 0; --i) {
            Scalar row = 0.0;
            for (int j = dy_; j >= 0; --j) row = row * y + get(i, j);
            acc = acc * x + row;
        }
        return acc;
    }

    /// d^{i+j} / dx^i dy^j
    BiPoly partial(int di, int dj) const {
        if (di < 0 || dj < 0) throw Error(ErrorKind::invalid_argument, "negative derivative order");
        if (di > dx_ || dj > dy_) return {};
        BiPoly r;
        r.resize(dx_ - di, dy_ - dj);
        for (int i = di; i <= dx_; ++i)
            for (int j = dj; j <= dy_; ++j) {
                double f = 1.0;
                for (int k = 0; k < di; ++k) f *= i - k;
                for (int k = 0; k < dj; ++k) f *= j - k;
                r.at(i - di, j - dj) = get(i, j) * f;
            }
        r.normalize();
        return r;
    }

    /// Coefficient of v^k as a polynomial in the other variable.
    UniPoly slice(Var v, int k) const {
        std::vector<Scalar> out;
        if (v == Var::x) {
            if (k < 0 || k > dx_) return {};
            for (int j = 0; j <= dy_; ++j) out.push_back(get(k, j));
        } else {
            if (k < 0 || k > dy_) return {};
            for (int i = 0; i <= dx_; ++i) out.push_back(get(i, k));
        }
        return UniPoly(std::move(out));
    }

    /// Substitute v = value, leaving a polynomial in the other variable.
    UniPoly specialize(Var v, Scalar value) const {
        std::vector<Scalar> out;
        if (v == Var::x) {
            out.assign(static_cast<size_t>(dy_ + 1), 0.0);
            for (int j = 0; j <= dy_; ++j) {
                Scalar acc = 0.0;
                for (int i = dx_; i >= 0; --i) acc = acc * value + get(i, j);
                out[static_cast<size_t>(j)] = acc;
            }
        } else {
            out.assign(static_cast<size_t>(dx_ + 1), 0.0);
            for (int i = 0; i <= dx_; ++i) {
                Scalar acc = 0.0;
                for (int j = dy_; j >= 0; --j) acc = acc * value + get(i, j);
                out[static_cast<size_t>(i)] = acc;
            }
        }
        return UniPoly(std::move(out));
    }

    /// Polynomial in v with coefficients in the other variable.
    std::vector<UniPoly> as_poly_in(Var v) const {
        std::vector<UniPoly> out;
        for (int k = 0; k <= deg(v); ++k) out.push_back(slice(v, k));
        return out;
    }
    static BiPoly from_poly_in(Var v, const std::vector<UniPoly>& coeffs) {
        std::vector<Term> terms;
        for (size_t k = 0; k < coeffs.size(); ++k)
            for (int m = 0; m <= coeffs[k].degree(); ++m)
                terms.push_back(v == Var::x ? Term{static_cast<int>(k), m, coeffs[k][m]}
                                            : Term{m, static_cast<int>(k), coeffs[k][m]});
        return from_terms(terms);
    }

    /// Degree-d homogeneous part, d the total degree.
    BiPoly leading_form() const {
        const int d = total_degree();
        std::vector<Term> t;
        for (const auto& term : terms())
            if (term.i + term.j == d) t.push_back(term);
        return from_terms(t);
    }

    bool is_real() const {
        return std::all_of(c_.begin(), c_.end(), [](Scalar z) { return z.imag() == 0.0; });
    }
    BiPoly real_part() const {
        BiPoly r = *this;
        for (auto& z : r.c_) z = z.real();
        r.normalize();
        return r;
    }

    BiPoly swapped() const {
        std::vector<Term> t;
        for (const auto& term : terms()) t.push_back({term.j, term.i, term.c});
        return from_terms(t);
    }

    BiPoly pow(int e) const {
        BiPoly r = constant(1.0), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        std::vector<Term> t = a.terms();
        for (const auto& term : b.terms()) t.push_back(term);
        return from_terms(t);
    }
    friend BiPoly operator-(const BiPoly& a) { return a * Scalar(-1.0); }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        BiPoly r;
        r.resize(a.dx_ + b.dx_, a.dy_ + b.dy_);
        for (int i = 0; i <= a.dx_; ++i)
            for (int j = 0; j <= a.dy_; ++j) {
                const Scalar ca = a.get(i, j);
                if (ca == Scalar(0.0)) continue;
                for (int k = 0; k <= b.dx_; ++k)
                    for (int l = 0; l <= b.dy_; ++l) r.at(i + k, j + l) += ca * b.get(k, l);
            }
        r.normalize();
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, Scalar s) {
        BiPoly r = a;
        for (auto& z : r.c_) z *= s;
        r.normalize();
        return r;
    }
    friend BiPoly operator*(Scalar s, const BiPoly& a) { return a * s; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.dx_ == b.dx_ && a.dy_ == b.dy_ && a.c_ == b.c_;
    }

private:
    void resize(int dx, int dy) {
        dx_ = dx;
        dy_ = dy;
        if (dx < 0 || dy < 0) {
            dx_ = dy_ = -1;
            c_.clear();
            return;
        }
        c_.assign(static_cast<size_t>((dx + 1) * (dy + 1)), 0.0);
    }
    Scalar& at(int i, int j) { return c_[static_cast<size_t>(i * (dy_ + 1) + j)]; }
    Scalar get(int i, int j) const { return c_[static_cast<size_t>(i * (dy_ + 1) + j)]; }

    void normalize() {
        for (const auto& z : c_)
            if (!is_finite(z)) throw Error(ErrorKind::invalid_argument, "non-finite coefficient");
        const double thr = trim_rel * inf_norm();
        for (auto& z : c_)
            if (std::abs(z) <= thr) z = 0.0;
        int ndx = -1, ndy = -1;
        for (int i = 0; i <= dx_; ++i)
            for (int j = 0; j <= dy_; ++j)
                if (get(i, j) != Scalar(0.0)) {
                    ndx = std::max(ndx, i);
                    ndy = std::max(ndy, j);
                }
        if (ndx == dx_ && ndy == dy_) return;
        BiPoly r;
        r.resize(ndx, ndy);
        for (int i = 0; i <= ndx; ++i)
            for (int j = 0; j <= ndy; ++j) r.at(i, j) = get(i, j);
        *this = std::move(r);
    }

    int dx_ = -1;
    int dy_ = -1;
    std::vector<Scalar> c_;
};

/// Homogenization F(x, y, z) = z^d p(x/z, y/z), stored via its affine chart.
class HomPoly {
public:
    explicit HomPoly(BiPoly affine) : p_(std::move(affine)), d_(p_.total_degree()) {
        if (p_.is_zero()) throw Error(ErrorKind::invalid_argument, "homogenize zero polynomial");
    }
    int degree() const { return d_; }
    const BiPoly& dehomogenize() const { return p_; }
    /// Coefficient of x^i y^j z^(d-i-j).
    Scalar coeff(int i, int j) const { return p_.coeff(i, j); }
    Scalar eval(Scalar x, Scalar y, Scalar z) const {
        Scalar acc = 0.0;
        for (const auto& t : p_.terms()) acc += t.c * std::pow(x, t.i) * std::pow(y, t.j) * std::pow(z, d_ - t.i - t.j);
        return acc;
    }
    /// F(x, y, 0) as a BiPoly.
    BiPoly at_infinity() const { return p_.leading_form(); }

private:
    BiPoly p_;
    int d_;
};

inline HomPoly homogenize(const BiPoly& p) { return HomPoly(p); }
inline BiPoly leading_form(const BiPoly& p) { return p.leading_form(); }

/// Binary form sum_k c_k x^(d-k) y^k restricted to x = 1: coefficients ascending in mu.
inline UniPoly dehomogenized_form(const BiPoly& form, int d) {
    std::vector<Scalar> v(static_cast<size_t>(d + 1), 0.0);
    for (int k = 0; k <= d; ++k) v[static_cast<size_t>(k)] = form.coeff(d - k, k);
    return UniPoly(std::move(v));
}

}  // namespace aparam
