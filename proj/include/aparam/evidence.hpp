#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aparam/bounds.hpp"
#include "aparam/pencil.hpp"

namespace aparam {

struct LimitEvidence {
    double chi = 0.0;
    double chi1 = 0.0, chi2 = 0.0;
    bool chi_is_complex_min = true;  ///< chi equals the smallest |root| over all roots
    int limit_degree = 0;
    int samples = 0;
    int samples_equal = 0;  ///< samples with rho1 == real rho1
};

/// One stabilizing sequence t_k -> target.
struct SequenceRecord {
    enum class Kind { pole_of_R1, critical_of_R1, pole_of_P };
    Kind kind = Kind::pole_of_R1;
    double target = 0.0;
    int k_stable = -1;
    double rho = 0.0, rho_real = 0.0;
    bool defined = false;   ///< a stable real value was reached
    bool mismatch = false;  ///< rho != real rho at stabilization
    std::optional<double> h0;           ///< direction used by the fallback, if any
    std::optional<double> fallback_value;
};

struct EvidenceReport {
    double chi = 0.0, chi1 = 0.0, chi2 = 0.0;
    double mu = 0.0, nu = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0, gamma2_prime = 0.0;
    std::optional<double> gamma3;
    std::vector<std::string> flags;
    std::vector<SequenceRecord> sequences;
};

namespace detail {

/// Limits of the unit-direction coefficients as t -> +-inf.
inline std::vector<Scalar> limit_coeffs(const PencilCoeffs& pc) {
    const int dD = pc.D.degree(), dW = pc.W.degree();
    const int ns_exp = dW - dD * pc.ew;
    const double ns_lead = std::abs(pc.W.leading()) / std::pow(std::abs(pc.D.leading()), pc.ew);
    std::vector<Scalar> out;
    for (int i = 0; i <= pc.n; ++i) {
        const UniPoly& g = pc.G[static_cast<size_t>(i)];
        if (g.is_zero()) {
            out.push_back(0.0);
            continue;
        }
        const int expo = g.degree() - dD * pc.e[static_cast<size_t>(i)] - ns_exp * i / 2;
        if (expo > 0) throw Error(ErrorKind::no_limit, "pencil coefficient grows without bound");
        if (expo < 0) {
            out.push_back(0.0);
            continue;
        }
        out.push_back(g.leading() / std::pow(pc.D.leading(), pc.e[static_cast<size_t>(i)]) / std::pow(std::sqrt(ns_lead), i));
    }
    return out;
}

/// Midpoint of the grid-aligned interval of length 10^-(k+5) containing target.
inline double sequence_point(double target, int k) {
    const double len = std::pow(10.0, -(k + 5));
    return (std::floor(target / len) + 0.5) * len;
}

struct SequenceResult {
    bool defined = false, mismatch = false;
    int k = -1;
    double rho = 0.0, rho_real = 0.0;
};

/// rho and real rho along t_k, k = 0..kmax; stable once two consecutive real
/// values differ by less than 1e-8.
inline SequenceResult run_sequence(const PencilCoeffs& pc, double target, int kmax) {
    SequenceResult r;
    std::optional<double> prev;
    for (int k = 0; k <= kmax; ++k) {
        const double t = sequence_point(target, k);
        std::optional<double> all, real;
        try {
            all = rho1(pc, t, false);
            real = rho1(pc, t, true);
        } catch (const Error&) {
            break;
        }
        if (!real) return r;
        if (prev && std::abs(*real - *prev) < 1e-8) {
            r.defined = true;
            r.k = k;
            r.rho_real = *real;
            r.rho = all.value_or(*real);
            r.mismatch = std::abs(r.rho - r.rho_real) > 1e-8 * (1.0 + r.rho_real);
            return r;
        }
        prev = real;
    }
    return r;
}

}  // namespace detail

/// chi from the limit pencil at infinity; chi1, chi2 = min, max of real rho1
/// at t = (-10)^k, k = 1..K.
inline LimitEvidence limit_evidence(const PencilCoeffs& pc, int K = 20) {
    LimitEvidence ev;
    const UniPoly lim(detail::limit_coeffs(pc));
    ev.limit_degree = lim.trimmed(1e-12).degree();
    if (lim.is_zero() || lim[0] == Scalar(0.0)) {
        ev.chi = 0.0;
    } else {
        const auto real = min_abs_root(lim, true), all = min_abs_root(lim, false);
        ev.chi = real.value_or(std::nan(""));
        ev.chi_is_complex_min = real && all && std::abs(*real - *all) <= 1e-8 * (1.0 + *all);
    }
    ev.chi1 = kInf;
    ev.chi2 = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double t = std::pow(-10.0, k);
        std::optional<double> all, real;
        try {
            all = rho1(pc, t, false);
            real = rho1(pc, t, true);
        } catch (const Error&) {
            continue;
        }
        ++ev.samples;
        if (!real) continue;
        if (all && std::abs(*all - *real) <= 1e-8 * (1.0 + *real)) ++ev.samples_equal;
        ev.chi1 = std::min(ev.chi1, *real);
        ev.chi2 = std::max(ev.chi2, *real);
    }
    if (std::isinf(ev.chi1)) ev.chi1 = std::nan("");
    return ev;
}

/// Endpoint values mu, nu and the sequences towards poles and critical points
/// of R1 and towards the real poles of the parametrization. An undefined or
/// mismatched sequence is re-run along fixed directions h0 in turn.
inline EvidenceReport critical_evidence(const BiPoly& f, const Parametrization& P, const PencilCoeffs& pc, const BoundReport& bound,
                                        const std::vector<double>& fallback_h = {1.0, -1.0, 0.8, 0.05}, int kmax = 12) {
    EvidenceReport ev;
    std::vector<double> ends;
    for (const auto& I : bound.intervals) {
        ends.push_back(I.lo);
        ends.push_back(I.hi);
    }
    for (double t : ends) {
        ev.mu = std::max(ev.mu, bound.R2(t));
        try {
            if (auto r = rho1(pc, t, true)) ev.nu = std::max(ev.nu, *r);
        } catch (const Error&) {
        }
    }
    if (pc.on_curve) ev.mu = 0.0;

    std::vector<std::pair<SequenceRecord::Kind, double>> targets;
    for (double a : bound.alpha) targets.push_back({SequenceRecord::Kind::pole_of_R1, a});
    if (!bound.r1.num().is_zero())
        for (double c : detail::loose_critical_points(bound.r1)) targets.push_back({SequenceRecord::Kind::critical_of_R1, c});
    for (double b : pc.poles) targets.push_back({SequenceRecord::Kind::pole_of_P, b});

    std::vector<PencilCoeffs> directional;
    for (const auto& [kind, target] : targets) {
        SequenceRecord rec;
        rec.kind = kind;
        rec.target = target;
        const auto res = detail::run_sequence(pc, target, kmax);
        rec.defined = res.defined;
        rec.mismatch = res.mismatch;
        rec.k_stable = res.k;
        rec.rho = res.rho;
        rec.rho_real = res.rho_real;
        if (!res.defined || res.mismatch) {
            ev.flags.push_back(std::string(!res.defined ? "undefined_sequence" : "rho_mismatch") + " at t=" + std::to_string(target));
            if (directional.empty())
                for (double h : fallback_h) directional.push_back(directional_pencil(f, P, h));
            for (size_t k = 0; k < directional.size(); ++k) {
                const auto alt = detail::run_sequence(directional[k], target, kmax);
                if (alt.defined) {
                    rec.h0 = fallback_h[k];
                    rec.fallback_value = alt.rho_real;
                    break;
                }
            }
            if (!rec.fallback_value) throw Error(ErrorKind::no_fallback_works, "no direction gives a stable real sequence at t=" + std::to_string(target));
        }
        ev.sequences.push_back(rec);
    }

    bool any_beta = false;
    for (const auto& rec : ev.sequences) {
        const double clean = rec.defined && !rec.mismatch ? rec.rho_real : 0.0;
        const double with_fallback = rec.fallback_value ? *rec.fallback_value : clean;
        switch (rec.kind) {
            case SequenceRecord::Kind::pole_of_R1: ev.gamma1 = std::max(ev.gamma1, with_fallback); break;
            case SequenceRecord::Kind::critical_of_R1:
                ev.gamma2 = std::max(ev.gamma2, clean);
                ev.gamma2_prime = std::max(ev.gamma2_prime, with_fallback);
                break;
            case SequenceRecord::Kind::pole_of_P:
                any_beta = true;
                ev.gamma3 = std::max(ev.gamma3.value_or(0.0), with_fallback);
                break;
        }
    }
    if (!any_beta) ev.gamma3.reset();
    const LimitEvidence lim = limit_evidence(pc);
    ev.chi = lim.chi;
    ev.chi1 = lim.chi1;
    ev.chi2 = lim.chi2;
    if (!lim.chi_is_complex_min) ev.flags.push_back("chi_not_complex_minimum");
    if (lim.samples_equal != lim.samples) ev.flags.push_back("limit_samples_rho_mismatch");
    return ev;
}

}  // namespace aparam
