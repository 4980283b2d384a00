#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <sstream>

#include "aparam/io.hpp"
#include "support.hpp"

using namespace aparam;
using testsupport::Gen;

namespace fs = std::filesystem;

namespace {

BiPoly read_curve_text(const std::string& s) {
    std::istringstream in(s);
    return read_curve(in);
}

Parametrization read_param_text(const std::string& s) {
    std::istringstream in(s);
    return read_param(in);
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::invalid_argument;
}

bool bit_equal(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return false;
    for (int k = 0; k <= a.degree(); ++k)
        if (a[k] != b[k]) return false;
    return true;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("aparam_io_" + name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Numbers, ShortestRoundTrip) {
    Gen g(41);
    for (int k = 0; k < 5000; ++k) {
        const double v = g.uniform(-1, 1) * std::pow(10.0, g.integer(-300, 300));
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Numbers, RejectTrailingGarbage) {
    EXPECT_THROW(parse_double("1.5x"), Error);
    EXPECT_THROW(parse_double(""), Error);
    EXPECT_THROW(parse_int("3.0"), Error);
    EXPECT_EQ(parse_int("-12"), -12);
}

TEST(Curve, RoundTripIsBitExact) {
    Gen g(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Term> t;
        const int d = g.integer(1, 6);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j)
                if (g.integer(0, 2)) t.push_back({i, j, Scalar(g.uniform(-1, 1) * std::pow(10.0, g.integer(-20, 20)), g.integer(0, 3) ? 0.0 : g.uniform(-1, 1))});
        const BiPoly p = BiPoly::from_terms(t);
        std::ostringstream out;
        write_curve(out, p);
        const BiPoly q = read_curve_text(out.str());
        EXPECT_EQ(testsupport::max_abs_diff(p, q), 0.0);
        EXPECT_EQ(p.terms().size(), q.terms().size());
    }
}

TEST(Curve, Format) {
    std::ostringstream out;
    write_curve(out, BiPoly::from_terms({{2, 0, 1.0}, {0, 1, Scalar(-0.5, 2.0)}}));
    EXPECT_EQ(out.str(), "CURVE v1 2 1\n0 1 -0.5 2\n2 0 1\n");
}

TEST(Curve, CommentsAndBlankLines) {
    const BiPoly p = read_curve_text("# a parabola\n\nCURVE v1 2 1\n  \n2 0 1\n# linear part\n0 1 -1\n");
    EXPECT_EQ(p.coeff(2, 0), Scalar(1.0));
    EXPECT_EQ(p.coeff(0, 1), Scalar(-1.0));
}

TEST(Curve, ParseErrors) {
    EXPECT_EQ(kind_of([] { read_curve_text("CURVE v2 1 1\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_curve_text("CURVE v1 1 1\n2 0 1\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_curve_text("CURVE v1 1 1\n1 0\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_curve_text("CURVE v1 1 1\n1 0 abc\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_curve_text("CURVE v1 1 1\n1 0 inf\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_curve_text(""); }), ErrorKind::parse_error);
}

TEST(Param, RoundTripIsBitExact) {
    Gen g(43);
    for (int trial = 0; trial < 200; ++trial) {
        auto coeffs = [&](int d, bool cplx) {
            std::vector<Scalar> c;
            for (int k = 0; k <= d; ++k) c.push_back({g.uniform(-1, 1) * std::pow(10.0, g.integer(-12, 12)), cplx ? g.uniform(-1, 1) * 1e-7 : 0.0});
            return UniPoly(c);
        };
        const bool cplx = trial % 3 == 0;
        Parametrization P;
        P.p1 = RatFun(coeffs(g.integer(0, 5), cplx), coeffs(g.integer(1, 5), false));
        P.p2 = RatFun(coeffs(g.integer(0, 5), cplx), coeffs(g.integer(1, 5), cplx));
        std::ostringstream out;
        write_param(out, P);
        const Parametrization Q = read_param_text(out.str());
        EXPECT_TRUE(bit_equal(P.p1.num(), Q.p1.num()));
        EXPECT_TRUE(bit_equal(P.p1.den(), Q.p1.den()));
        EXPECT_TRUE(bit_equal(P.p2.num(), Q.p2.num()));
        EXPECT_TRUE(bit_equal(P.p2.den(), Q.p2.den()));
    }
}

TEST(Param, ComplexTokens) {
    const Parametrization P = read_param_text("PARAM v1\nnum1 1 2e-3+4.5e+2i\nden1 1 1\nnum2 0 1-1e-5i\nden2 1\n");
    EXPECT_EQ(P.p1.num()[1], Scalar(2e-3, 450.0));
    EXPECT_EQ(P.p2.num()[1], Scalar(1.0, -1e-5));
}

TEST(Param, PolesRecomputed) {
    const Parametrization P = read_param_text("PARAM v1\nnum1 0 1\nden1 -1 0 1\nnum2 1\nden2 2 1\n");
    ASSERT_EQ(P.poles.size(), 3u);
    EXPECT_NEAR(P.poles[0], -2.0, 1e-12);
    EXPECT_NEAR(P.poles[1], -1.0, 1e-12);
    EXPECT_NEAR(P.poles[2], 1.0, 1e-12);
}

TEST(Param, ParseErrors) {
    EXPECT_EQ(kind_of([] { read_param_text("PARAM v1\nnum1 1\nden1 1\nnum2 1\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_param_text("PARAM v1\nnum1 1\nnum1 1\nden1 1\nnum2 1\nden2 1\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_param_text("PARAM v1\nnum1 1\nden1 1\nnum2 1\nden2 1\nnum3 1\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_param_text("PARAM\n"); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { read_param_text("PARAM v1\nnum1 1+i\nden1 1\nnum2 1\nden2 1\n"); }), ErrorKind::parse_error);
}

TEST(Manifest, OneLinePerMember) {
    FamilySpec spec;
    spec.count_i = 2;
    const auto members = generate_family(spec);
    std::ostringstream out;
    write_manifest(out, members);
    std::istringstream in(out.str());
    std::string line;
    size_t n = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        int i, j, r, r1, r2, r3;
        std::string status;
        ASSERT_TRUE(fields >> i >> j >> r >> r1 >> r2 >> r3);
        std::getline(fields >> std::ws, status);
        EXPECT_EQ(i, members[n].i);
        EXPECT_EQ(j, members[n].j);
        EXPECT_EQ(r, members[n].r_ij);
        EXPECT_EQ(status, members[n].status_text());
        ++n;
    }
    EXPECT_EQ(n, members.size());
}

TEST(Files, AtomicWriteCreatesDirectories) {
    const fs::path dir = scratch_dir("atomic");
    const fs::path file = dir / "a" / "b" / "x.txt";
    write_file_atomic(file, "first\n");
    write_file_atomic(file, "second\n");
    EXPECT_EQ(read_file(file), "second\n");
    size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(file.parent_path())) ++entries;
    EXPECT_EQ(entries, 1u);
    fs::remove_all(dir);
}

TEST(Files, SaveAndLoad) {
    const fs::path dir = scratch_dir("saveload");
    const BiPoly p = BiPoly::from_terms({{3, 1, 0.125}, {0, 0, -7.0}});
    save_curve(dir / "c.curve", p);
    EXPECT_EQ(testsupport::max_abs_diff(load_curve(dir / "c.curve"), p), 0.0);
    EXPECT_THROW(load_curve(dir / "missing.curve"), std::runtime_error);
    fs::remove_all(dir);
}
