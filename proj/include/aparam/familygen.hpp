#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/epsgeo.hpp"
#include "aparam/error.hpp"

namespace aparam {

/// Monomial x^i y^j z^k of a quartic form whose coefficient is linear in the
/// six system parameters: sum_m weights[m] u_{m+1}.
struct SystemTerm {
    int i, j, k;
    std::array<double, 6> weights;
};

/// Quartic forms with double points at (2:0:1), (0:0:1), (1:1:1), linear in u1..u6.
inline const std::vector<SystemTerm>& base_system() {
    static const std::vector<SystemTerm> terms{
        {0, 2, 2, {0, 1, 0, 0, 0, 0}},
        {0, 3, 1, {0, 0, 1, 0, 0, 0}},
        {0, 4, 0, {0, 0, 0, 1, 0, 0}},
        {1, 1, 2, {0, 0, 0, 0, 1, 0}},
        {1, 2, 1, {0, -2, -3, -4, -0.5, -2}},
        {1, 3, 0, {0, 0, 0, 0, 0, 1}},
        {2, 0, 2, {1, 0, 0, 0, 0, 0}},
        {2, 1, 1, {-1, 0, 2, 4, -1.5, 2}},
        {2, 2, 0, {0.25, 1, 1, 1, 0.5, 0}},
        {3, 0, 1, {-1, 0, 0, 0, 0, 0}},
        {3, 1, 0, {0.5, 0, -1, -2, 0.5, -1}},
        {4, 0, 0, {0.25, 0, 0, 0, 0, 0}},
    };
    return terms;
}

/// G(x, y, 1; u) for given parameter values.
inline BiPoly base_system_at(const std::array<double, 6>& u) {
    std::vector<Term> t;
    for (const auto& term : base_system()) {
        double c = 0.0;
        for (size_t m = 0; m < 6; ++m) c += term.weights[m] * u[m];
        t.push_back({term.i, term.j, c});
    }
    return BiPoly::from_terms(t);
}

/// u_j = (r/100)^i, all other parameters 1.
inline std::array<double, 6> specialization_parameters(int i, int j, int r) {
    if (i < 1 || j < 1 || j > 6 || r < 0 || r > 100) throw Error(ErrorKind::invalid_argument, "specialization index out of range");
    std::array<double, 6> u{1, 1, 1, 1, 1, 1};
    u[static_cast<size_t>(j - 1)] = std::pow(r / 100.0, i);
    return u;
}

inline BiPoly specialize(int i, int j, int r) { return base_system_at(specialization_parameters(i, j, r)); }

/// G + eps r1/100 (x + y) + eps^2 r2/100 (x^2 + xy + y^2) + eps^3 r3/100 (x^3 + x^2 y + x y^2 + y^3)
inline BiPoly perturb(const BiPoly& g, int r1, int r2, int r3, double eps) {
    const double c1 = eps * r1 / 100.0, c2 = eps * eps * r2 / 100.0, c3 = eps * eps * eps * r3 / 100.0;
    std::vector<Term> t = g.terms();
    for (int k = 0; k <= 1; ++k) t.push_back({k, 1 - k, c1});
    for (int k = 0; k <= 2; ++k) t.push_back({k, 2 - k, c2});
    for (int k = 0; k <= 3; ++k) t.push_back({k, 3 - k, c3});
    return BiPoly::from_terms(t);
}

/// SplitMix64 generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// Integer in [0, 100] from the high 32 bits by multiply-shift.
    int draw_percent() { return static_cast<int>(((next() >> 32) * 101ull) >> 32); }

private:
    std::uint64_t state_;
};

enum class MemberStatus { rational, not_rational, hypothesis_failed };

struct FamilySpec {
    std::uint64_t seed = 0;
    double epsilon = 0.01;
    int count_i = 10;
    int count_j = 6;
    bool zero_perturbation = false;
};

struct FamilyMember {
    int i = 0, j = 0;
    int r_ij = 0, r1 = 0, r2 = 0, r3 = 0;
    BiPoly G;
    BiPoly g;
    MemberStatus status = MemberStatus::hypothesis_failed;
    std::string reason;
    std::vector<EpsCluster> clusters;

    std::string status_text() const {
        switch (status) {
            case MemberStatus::rational: return "rational";
            case MemberStatus::not_rational: return "not_rational";
            case MemberStatus::hypothesis_failed: return "hypothesis_failed(" + reason + ")";
        }
        return "unknown";
    }
};

/// Hypothesis check and genus test for one curve.
inline void screen_member(FamilyMember& m, double eps) {
    const CurveHypotheses h = check_hypotheses(m.g, eps);
    if (!h.all()) {
        m.status = MemberStatus::hypothesis_failed;
        m.reason = h.failure_reason();
        return;
    }
    m.clusters = cluster_decompose(find_eps_singularities(m.g, eps));
    m.status = is_eps_rational(m.g.total_degree(), m.clusters) ? MemberStatus::rational : MemberStatus::not_rational;
}

/// Draws every (i, j) member in row-major order (i outer, j inner): r_ij, then
/// r1, r2, r3. With zero_perturbation the r's are still drawn but ignored.
inline std::vector<FamilyMember> draw_family(const FamilySpec& spec) {
    if (!(spec.epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
    if (spec.count_i < 1 || spec.count_j < 1 || spec.count_j > 6) throw Error(ErrorKind::invalid_argument, "family grid out of range");
    SplitMix64 rng(spec.seed);
    std::vector<FamilyMember> out;
    for (int i = 1; i <= spec.count_i; ++i)
        for (int j = 1; j <= spec.count_j; ++j) {
            FamilyMember m;
            m.i = i;
            m.j = j;
            m.r_ij = rng.draw_percent();
            m.r1 = rng.draw_percent();
            m.r2 = rng.draw_percent();
            m.r3 = rng.draw_percent();
            if (spec.zero_perturbation) m.r1 = m.r2 = m.r3 = 0;
            m.G = specialize(i, j, m.r_ij);
            m.g = perturb(m.G, m.r1, m.r2, m.r3, spec.epsilon);
            out.push_back(std::move(m));
        }
    return out;
}

inline std::vector<FamilyMember> generate_family(const FamilySpec& spec) {
    std::vector<FamilyMember> members = draw_family(spec);
    for (auto& m : members) screen_member(m, spec.epsilon);
    return members;
}

}  // namespace aparam
