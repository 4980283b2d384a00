#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace aparam {

using Scalar = std::complex<double>;

inline bool is_finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// |im| <= tol * max(1, |re|)
inline bool is_real_within(Scalar z, double tol) {
    return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z.real()));
}

}  // namespace aparam
