#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "aparam/error.hpp"
#include "aparam/roots.hpp"
#include "aparam/unipoly.hpp"

namespace aparam {

/// Univariate rational function num/den with a monic denominator.
class RatFun {
public:
    RatFun() : num_(), den_(UniPoly::constant(1.0)) {}
    RatFun(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error(ErrorKind::invalid_argument, "zero denominator");
        const Scalar lc = den_.leading();
        if (lc == Scalar(1.0)) return;
        std::vector<Scalar> d = (den_ * (1.0 / lc)).coeffs();
        d.back() = 1.0;  // exactly monic, so normalizing twice is a no-op
        den_ = UniPoly(std::move(d));
        num_ = num_ * (1.0 / lc);
    }
    explicit RatFun(UniPoly num) : RatFun(std::move(num), UniPoly::constant(1.0)) {}

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }

    /// Evaluation that stays finite for large |t| by working with the reversed
    /// polynomials there.
    Scalar eval(Scalar t) const {
        if (std::abs(t) <= 1.0) return num_.eval(t) / den_.eval(t);
        const Scalar w = 1.0 / t;
        const Scalar n = num_.reversed().eval(w);
        const Scalar d = den_.reversed().eval(w);
        const int shift = num_.degree() - den_.degree();
        return n / d * std::pow(t, shift);
    }

    RatFun derivative() const {
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Cancels numerically common roots (|a - b| <= tol (1 + |a|)).
    RatFun normalized(double tol = 1e-10) const {
        if (num_.is_zero()) return RatFun(UniPoly{}, UniPoly::constant(1.0));
        if (num_.degree() < 1 || den_.degree() < 1) return *this;
        std::vector<Scalar> rn = all_roots(num_).roots;
        std::vector<Scalar> rd = all_roots(den_).roots;
        std::vector<char> used(rd.size(), 0);
        std::vector<Scalar> keep_n;
        for (const auto& a : rn) {
            bool matched = false;
            for (size_t k = 0; k < rd.size(); ++k)
                if (!used[k] && std::abs(a - rd[k]) <= tol * (1.0 + std::abs(a))) {
                    used[k] = 1;
                    matched = true;
                    break;
                }
            if (!matched) keep_n.push_back(a);
        }
        if (keep_n.size() == rn.size()) return *this;
        std::vector<Scalar> keep_d;
        for (size_t k = 0; k < rd.size(); ++k)
            if (!used[k]) keep_d.push_back(rd[k]);
        UniPoly n = UniPoly::from_roots(keep_n) * num_.leading();
        UniPoly d = UniPoly::from_roots(keep_d);
        if (num_.is_real() && den_.is_real()) {
            n = n.real_part();
            d = d.real_part();
        }
        return RatFun(n, d);
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + b * Scalar(-1.0); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }
    friend RatFun operator*(const RatFun& a, Scalar s) { return RatFun(a.num_ * s, a.den_); }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    UniPoly num_;
    UniPoly den_;
};

}  // namespace aparam
