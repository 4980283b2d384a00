#include <gtest/gtest.h>

#include "aparam/bounds.hpp"
#include "aparam/evidence.hpp"
#include "aparam/familygen.hpp"
#include "aparam/lattice.hpp"
#include "aparam/report.hpp"
#include "support.hpp"

using namespace aparam;
using testsupport::substitute_line;

namespace {

BiPoly poly(std::initializer_list<Term> t) { return BiPoly::from_terms(t); }

BiPoly exact_G() { return base_system_at({1, 1, 1, 1, 1, 1}); }

Parametrization unit_circle() {
    const UniPoly den({1.0, 0.0, 1.0});
    Parametrization P;
    P.p1 = RatFun(UniPoly({1.0, 0.0, -1.0}), den);
    P.p2 = RatFun(UniPoly({0.0, 2.0}), den);
    return P;
}

struct Member {
    BiPoly g;
    Parametrization P;
};

const std::vector<Member>& rational_members() {
    static const std::vector<Member> members = [] {
        std::vector<Member> out;
        for (const auto& m : generate_family(FamilySpec{}))
            if (m.status == MemberStatus::rational) out.push_back({m.g, approx_parametrize(m.g, 0.01)});
        return out;
    }();
    return members;
}

bool near_pole(const Parametrization& P, double t, double gap) {
    for (double b : P.poles)
        if (std::abs(t - b) < gap) return true;
    return false;
}

}  // namespace

TEST(Pencil, DegreeAndFreeCoefficient) {
    const BiPoly f = poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -4.0}});
    const Parametrization P = unit_circle();
    const PencilCoeffs pc = normal_pencil(f, P);
    EXPECT_EQ(pc.n, 2);
    EXPECT_FALSE(pc.on_curve);
    for (double t : {-2.0, 0.0, 0.5, 3.0}) EXPECT_NEAR(pc.unit_coeffs(t)[0].real(), -3.0, 1e-12);
}

TEST(Pencil, FreeCoefficientIsCurveValue) {
    for (size_t k = 0; k < 3; ++k) {
        const auto& [g, P] = rational_members()[k];
        const PencilCoeffs pc = normal_pencil(g, P);
        EXPECT_EQ(pc.n, 4);
        for (double t : {-5.0, -0.3, 0.7, 2.5}) {
            if (near_pole(P, t, 1e-3)) continue;
            const auto [x, y] = P.eval(t);
            const Scalar v = g.eval(x, y);
            const double scale = g.inf_norm() * std::pow(std::max({1.0, std::abs(x), std::abs(y)}), 4);
            // the deflated numerators drop a remainder of rounding-noise size at the poles of P
            EXPECT_NEAR(std::abs(pc.unit_coeffs(t)[0] - v), 0.0, 1e-9 * scale);
        }
    }
}

TEST(Pencil, ExactInputIsOnCurve) {
    const BiPoly G = exact_G();
    const PencilCoeffs pc = normal_pencil(G, approx_parametrize(G, 1e-6));
    EXPECT_TRUE(pc.on_curve);
}

TEST(Pencil, UnitDirectionContract) {
    for (size_t k = 0; k < 3; ++k) {
        const auto& [g, P] = rational_members()[k];
        const PencilCoeffs pc = normal_pencil(g, P);
        for (double t : {-4.0, -1.1, 0.2, 1.7}) {
            if (near_pole(P, t, 1e-2)) continue;
            const auto [x, y] = P.eval(t);
            const auto [nx, ny] = testsupport::fd_unit_normal(P, t);
            const UniPoly ref = substitute_line(g, x, y, nx, ny);
            const auto a = pc.unit_coeffs(t);
            // the normal may point either way: odd coefficients agree up to a common sign
            const double sign = (a[1] * std::conj(ref[1])).real() < 0 ? -1.0 : 1.0;
            for (int i = 0; i <= 4; ++i)
                EXPECT_NEAR(std::abs(a[static_cast<size_t>(i)] - ref[i] * (i % 2 ? sign : 1.0)), 0.0, 1e-5 * std::max(1.0, ref.norm()));
        }
    }
}

TEST(Pencil, DirectionalUnitIdentity) {
    const auto& [g, P] = rational_members()[0];
    for (double h0 : {1.0, -1.0, 0.8, 0.05}) {
        const auto [c1, c2] = direction_of(h0);
        EXPECT_NEAR(c1 * c1 + c2 * c2, 1.0, 1e-15);
        const PencilCoeffs pc = directional_pencil(g, P, h0);
        for (double t : {-2.0, 0.3, 3.0}) {
            if (near_pole(P, t, 1e-2)) continue;
            const auto [x, y] = P.eval(t);
            const UniPoly ref = substitute_line(g, x, y, c1, c2);
            const auto a = pc.unit_coeffs(t);
            for (int i = 0; i <= 4; ++i) EXPECT_NEAR(std::abs(a[static_cast<size_t>(i)] - ref[i]), 0.0, 1e-8 * std::max(1.0, ref.norm()));
        }
    }
}

TEST(Rho1, CircleOfRadiusTwo) {
    const PencilCoeffs pc = normal_pencil(poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -4.0}}), unit_circle());
    for (double t : {-3.0, 0.0, 0.4, 10.0}) {
        EXPECT_NEAR(*rho1(pc, t, false), 1.0, 1e-12);
        EXPECT_NEAR(*rho1(pc, t, true), 1.0, 1e-12);
    }
}

TEST(Rho1, ExactInputGivesZero) {
    const BiPoly G = exact_G();
    const PencilCoeffs pc = normal_pencil(G, approx_parametrize(G, 1e-6));
    for (double t : {-2.0, 0.5, 3.0}) EXPECT_EQ(*rho1(pc, t, false), 0.0);
}

TEST(Rho1, MatchesEigenvalueOracleAndBounds) {
    testsupport::Gen gen(31);
    for (size_t k = 0; k < 5; ++k) {
        const auto& [g, P] = rational_members()[k];
        const PencilCoeffs pc = normal_pencil(g, P);
        const BoundReport b = bound_B(pc);
        for (int s = 0; s < 100; ++s) {
            const double t = std::tan(gen.uniform(-1.55, 1.55));
            if (near_pole(P, t, 1e-3)) continue;
            const double r = *rho1(pc, t, false);
            EXPECT_NEAR(r, testsupport::oracle_rho1(g, P, t), 1e-6 * std::max(1.0, r)) << "member " << k << " t=" << t;
            EXPECT_LE(r, coefficient_bound(pc, t) + 1e-9);
            EXPECT_LE(r, b.B + 1e-9);
        }
    }
}

TEST(Bound, CircleBoundCoversRho1) {
    const BoundReport b = bound_B(normal_pencil(poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -4.0}}), unit_circle()));
    // R1 = 2 |A0 / A1| = 2 * 3 / 2
    EXPECT_NEAR(b.B, 3.0, 1e-9);
    EXPECT_TRUE(b.alpha.empty());
}

TEST(Bound, ExactInputIsZero) {
    const BiPoly G = exact_G();
    const BoundReport b = bound_B(normal_pencil(G, approx_parametrize(G, 1e-6)));
    EXPECT_EQ(b.B, 0.0);
}

TEST(Bound, FiniteOnFamily) {
    for (const auto& [g, P] : rational_members()) {
        const BoundReport b = bound_B(normal_pencil(g, P));
        EXPECT_TRUE(std::isfinite(b.B));
        EXPECT_GT(b.B, 0.0);
        EXPECT_GE(b.B, b.B1b);
        for (const auto& I : b.intervals) EXPECT_LT(I.lo, I.hi);
    }
}

TEST(Asymptotes, Hyperbola) {
    const auto a = asymptotes(poly({{1, 1, 1.0}, {0, 0, -1.0}}));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_FALSE(a[0].vertical);
    EXPECT_NEAR(a[0].slope, 0.0, 1e-12);
    EXPECT_NEAR(a[0].offset, 0.0, 1e-12);
    EXPECT_TRUE(a[1].vertical);
    EXPECT_NEAR(a[1].offset, 0.0, 1e-12);
}

TEST(Asymptotes, ShiftedHyperbolaDistance) {
    const BiPoly f = poly({{1, 1, 1.0}, {0, 0, -1.0}});
    const BiPoly g = poly({{1, 1, 1.0}, {1, 0, -0.003}, {0, 0, -1.0}});  // x (y - 0.003) = 1
    EXPECT_NEAR(eta(f, g), 0.003, 1e-12);
    EXPECT_EQ(eta(f, g), eta(g, f));
}

TEST(Asymptotes, SlantedLines) {
    // y^2 - x^2 - x - y - 1: directions y = x and y = -x
    const BiPoly f = poly({{0, 2, 1.0}, {2, 0, -1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {0, 0, -1.0}});
    const auto a = asymptotes(f);
    ASSERT_EQ(a.size(), 2u);
    for (const auto& l : a) {
        // points far along the line satisfy f = O(1), not O(x)
        const double x = 1e4, y = l.slope * x + l.offset;
        EXPECT_LT(std::abs(f.eval(x, y)), 10.0);
    }
}

TEST(Asymptotes, DirectionMismatchRaises) {
    const BiPoly f = poly({{1, 1, 1.0}, {0, 0, -1.0}});
    const BiPoly g = poly({{2, 0, 1.0}, {0, 2, -1.0}, {0, 0, -1.0}});
    try {
        eta(f, g);
        FAIL() << "expected NotParallel";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_parallel);
    }
}

TEST(Asymptotes, SymmetricOnFamily) {
    for (const auto& [g, P] : rational_members()) {
        const BiPoly fbar = implicitize(P);
        EXPECT_NEAR(eta(g, fbar), eta(fbar, g), 1e-12);
    }
}

TEST(Rho2, Circles) {
    const BiPoly f = poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -1.0}});
    const BiPoly g = poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -4.0}});
    EXPECT_NEAR(*rho2(g, f, 1.0, 0.0, false), 1.0, 1e-12);
    EXPECT_NEAR(*rho2(g, f, 0.6, 0.8, true), 1.0, 1e-12);
    EXPECT_NEAR(*rho2(f, f, 0.6, 0.8, false), 0.0, 1e-12);
}

TEST(Rho2, NoRealRoot) {
    const BiPoly f = poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -1.0}});
    const BiPoly g = poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, 1.0}});  // no real points
    EXPECT_FALSE(rho2(g, f, 1.0, 0.0, true).has_value());
    EXPECT_NEAR(*rho2(g, f, 1.0, 0.0, false), std::sqrt(2.0), 1e-12);
}

TEST(Rho2, FootPointChecks) {
    const BiPoly f = poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -1.0}});
    EXPECT_THROW(rho2(f, f, 2.0, 0.0, false), Error);
    const BiPoly node = poly({{2, 0, 1.0}, {0, 2, -1.0}});
    try {
        rho2(f, node, 0.0, 0.0, false);
        FAIL() << "expected SingularFootpoint";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_footpoint);
    }
}

TEST(Lattice, ExactInputCollapses) {
    const BiPoly G = exact_G();
    const LatticeReport L = lattice_scan(G, implicitize(approx_parametrize(G, 1e-6)), 1e-3, 200);
    EXPECT_LE(L.m, 1e-6);
    EXPECT_LE(L.eta, 1e-6);
}

TEST(Lattice, FamilyBoxAndMaximum) {
    for (size_t k = 0; k < 5; ++k) {
        const auto& [g, P] = rational_members()[k];
        const LatticeReport L = lattice_scan(g, implicitize(P), 1e-3, 200);
        EXPECT_LT(L.tau1, 0);
        EXPECT_GT(L.tau2, 0);
        EXPECT_LT(L.tau3, 0);
        EXPECT_GT(L.tau4, 0);
        EXPECT_FALSE(L.per_line.empty());
        double m = 0.0;
        for (const auto& r : L.per_line) m = std::max(m, r.m);
        EXPECT_EQ(m, L.m);
        EXPECT_LE(L.m, bound_B(normal_pencil(g, P)).B);
    }
}

TEST(Lattice, TauCapMonotone) {
    const auto& [g, P] = rational_members()[0];
    const BiPoly fbar = implicitize(P);
    double prev = 0.0;
    for (int cap : {1, 2, 4, 200}) {
        const LatticeReport L = lattice_scan(g, fbar, 1e-9, cap);
        EXPECT_GE(L.m, prev);
        prev = L.m;
        EXPECT_LE(std::abs(L.tau1), cap);
    }
}

TEST(Lattice, CompactCurveUsesBox) {
    const BiPoly f = poly({{4, 0, 1.0}, {0, 4, 1.0}, {2, 2, 0.5}, {0, 0, -1.0}});
    const BiPoly g = poly({{4, 0, 1.0}, {0, 4, 1.0}, {2, 2, 0.5}, {0, 0, -1.1}});
    const LatticeReport L = lattice_scan(f, g, 1e-3, 200);
    EXPECT_TRUE(L.compact);
    EXPECT_GT(L.m, 0.0);
    EXPECT_LT(L.m, 0.1);
}

TEST(Lattice, RejectsBadParameters) {
    const BiPoly f = exact_G();
    EXPECT_THROW(lattice_scan(f, f, 0.0, 10), Error);
    EXPECT_THROW(lattice_scan(f, f, 1e-3, 0), Error);
}

TEST(Evidence, ExactInputAllZero) {
    const BiPoly G = exact_G();
    const Parametrization P = approx_parametrize(G, 1e-6);
    const PencilCoeffs pc = normal_pencil(G, P);
    const EvidenceReport e = critical_evidence(G, P, pc, bound_B(pc));
    for (double v : {e.chi, e.chi1, e.chi2, e.mu, e.nu, e.gamma1, e.gamma2, e.gamma2_prime}) EXPECT_LE(std::abs(v), 1e-6);
    if (e.gamma3) {
        EXPECT_LE(*e.gamma3, 1e-6);
    }
}

TEST(Evidence, SequencePointsApproachTarget) {
    // |t_k - target| <= L_k / 2 = 5 10^-(k+6), until the grid is finer than the spacing of doubles
    for (double target : {-1.2345, 0.0, 3.7}) {
        for (int k = 0; k <= 12; ++k) {
            const double d = std::abs(detail::sequence_point(target, k) - target);
            EXPECT_LE(d, 0.5 * std::pow(10.0, -(k + 5)) + 4 * std::numeric_limits<double>::epsilon() * std::abs(target));
        }
        EXPECT_GT(std::abs(detail::sequence_point(target, 0) - target), 0.0);
    }
}

TEST(Evidence, PoleSequencesConvergeToAsymptoteDistance) {
    const auto& [g, P] = rational_members()[0];
    ASSERT_FALSE(P.poles.empty());
    const PencilCoeffs pc = normal_pencil(g, P);
    const EvidenceReport e = critical_evidence(g, P, pc, bound_B(pc));
    ASSERT_TRUE(e.gamma3.has_value());
    EXPECT_NEAR(*e.gamma3, eta(g, implicitize(P)), 1e-3);
}

TEST(Evidence, LimitMatchesLargeT) {
    const auto& [g, P] = rational_members()[1];
    const PencilCoeffs pc = normal_pencil(g, P);
    const LimitEvidence L = limit_evidence(pc);
    ASSERT_TRUE(std::isfinite(L.chi));
    const auto far = rho1(pc, 1e8, true);
    ASSERT_TRUE(far.has_value());
    EXPECT_NEAR(*far, L.chi, 1e-4 * std::max(1.0, L.chi));
}
