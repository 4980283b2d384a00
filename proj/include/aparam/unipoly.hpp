#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "aparam/error.hpp"
#include "aparam/scalar.hpp"

namespace aparam {

/// Dense univariate polynomial, coefficients in ascending degree.
/// Only exactly-zero leading coefficients are dropped on construction; products
/// of many factors can have a huge dynamic range, so relative trimming is an
/// explicit step (trimmed()).
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
        for (const auto& z : c_)
            if (!is_finite(z)) throw Error(ErrorKind::invalid_argument, "non-finite coefficient");
        strip();
    }
    UniPoly(std::initializer_list<Scalar> coeffs) : UniPoly(std::vector<Scalar>(coeffs)) {}

    static UniPoly constant(Scalar c) { return UniPoly(std::vector<Scalar>{c}); }
    static UniPoly monomial(int k, Scalar c = 1.0) {
        std::vector<Scalar> v(static_cast<size_t>(k) + 1, 0.0);
        v.back() = c;
        return UniPoly(std::move(v));
    }
    /// x - root
    static UniPoly linear(Scalar root) { return UniPoly({-root, 1.0}); }
    static UniPoly from_roots(const std::vector<Scalar>& roots) {
        UniPoly p = constant(1.0);
        for (const auto& r : roots) p = p * linear(r);
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar operator[](int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : Scalar(0.0);
    }
    Scalar leading() const { return c_.empty() ? Scalar(0.0) : c_.back(); }

    double norm() const {
        double m = 0.0;
        for (const auto& z : c_) m = std::max(m, std::abs(z));
        return m;
    }

    Scalar eval(Scalar z) const {
        Scalar acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Sum of |a_k| |z|^k, the scale against which rounding in eval() is measured.
    double abs_eval(double r) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Scalar> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
        return UniPoly(std::move(d));
    }

    /// x^deg p(1/x)
    UniPoly reversed() const {
        std::vector<Scalar> r(c_.rbegin(), c_.rend());
        return UniPoly(std::move(r));
    }

    UniPoly trimmed(double rel = 1e-14) const {
        const double thr = rel * norm();
        std::vector<Scalar> v = c_;
        for (auto& z : v)
            if (std::abs(z) <= thr) z = 0.0;
        return UniPoly(std::move(v));
    }

    UniPoly monic() const {
        if (is_zero()) throw Error(ErrorKind::invalid_argument, "monic of zero polynomial");
        return *this * (1.0 / leading());
    }

    bool is_real(double tol = 0.0) const {
        const double thr = tol * norm();
        return std::all_of(c_.begin(), c_.end(), [&](Scalar z) { return std::abs(z.imag()) <= thr; });
    }
    UniPoly real_part() const {
        std::vector<Scalar> v(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k].real();
        return UniPoly(std::move(v));
    }

    UniPoly pow(int e) const {
        UniPoly r = constant(1.0), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// p(q(x))
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
        return UniPoly(std::move(v));
    }
    friend UniPoly operator-(const UniPoly& a) { return a * Scalar(-1.0); }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, 0.0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(const UniPoly& a, Scalar s) {
        std::vector<Scalar> v = a.c_;
        for (auto& z : v) z *= s;
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(Scalar s, const UniPoly& a) { return a * s; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

private:
    void strip() {
        while (!c_.empty() && c_.back() == Scalar(0.0)) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

}  // namespace aparam
