#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "aparam/epsgeo.hpp"
#include "aparam/familygen.hpp"
#include "aparam/io.hpp"
#include "aparam/report.hpp"
#include "support.hpp"

using namespace aparam;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(APARAM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult r;
    if (!pipe) return r;
    std::array<char, 4096> buf;
    for (size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("aparam_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string& rel) const { return (dir / rel).string(); }

    fs::path dir;
};

std::string stem_of(const FamilyMember& m) { return "g_" + std::to_string(m.i) + "_" + std::to_string(m.j); }

}  // namespace

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("no-such-command").code, 1);
    EXPECT_EQ(run("parametrize " + path("missing.curve")).code, 1);
    EXPECT_EQ(run("gen-family --epsilon -1 --out " + path("x")).code, 1);
    write_file_atomic(dir / "bad.curve", "CURVE v1 1 1\n3 0 1\n");
    EXPECT_EQ(run("parametrize " + path("bad.curve") + " --out " + path("o")).code, 1);
}

TEST_F(Cli, GenFamilyCountsAndFiles) {
    const RunResult r = run("gen-family --out " + path("fam"));
    ASSERT_EQ(r.code, 0);
    const auto members = generate_family(FamilySpec{});
    int rational = 0;
    for (const auto& m : members) rational += m.status == MemberStatus::rational;
    EXPECT_EQ(r.out, "eps-rational: " + std::to_string(rational) + " of 60 curves\n");

    std::ostringstream manifest;
    write_manifest(manifest, members);
    EXPECT_EQ(read_file(dir / "fam" / "manifest.txt"), manifest.str());
    for (const auto& m : members) {
        const BiPoly g = load_curve(dir / "fam" / "curves" / (stem_of(m) + ".curve"));
        EXPECT_EQ(testsupport::max_abs_diff(g, m.g), 0.0);
        EXPECT_TRUE(check_hypotheses(g, 0.01).all()) << stem_of(m);
    }
}

TEST_F(Cli, GenFamilyIsDeterministic) {
    ASSERT_EQ(run("gen-family --seed 5 --out " + path("a")).code, 0);
    ASSERT_EQ(run("gen-family --seed 5 --out " + path("b")).code, 0);
    for (const auto& e : fs::recursive_directory_iterator(dir / "a")) {
        if (!e.is_regular_file()) continue;
        const fs::path rel = fs::relative(e.path(), dir / "a");
        EXPECT_EQ(read_file(e.path()), read_file(dir / "b" / rel)) << rel;
    }
}

TEST_F(Cli, ParametrizeExitCodes) {
    const auto members = generate_family(FamilySpec{});
    const FamilyMember* rational = nullptr;
    const FamilyMember* other = nullptr;
    for (const auto& m : members) {
        if (!rational && m.status == MemberStatus::rational) rational = &m;
        if (!other && m.status == MemberStatus::not_rational) other = &m;
    }
    ASSERT_TRUE(rational && other);
    save_curve(dir / "r.curve", rational->g);
    save_curve(dir / "n.curve", other->g);
    save_curve(dir / "h.curve", BiPoly::from_terms({{4, 0, 1.0}, {0, 3, 1.0}, {1, 1, 1.0}}));

    const RunResult ok = run("parametrize " + path("r.curve") + " --out " + path("o"));
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out.rfind("residual=", 0), 0u);
    const Parametrization P = load_param(dir / "o" / "r.param");
    EXPECT_EQ(load_curve(dir / "o" / "r.fbar.curve").total_degree(), 4);
    // the file reproduces the library result bit for bit
    const Parametrization Q = approx_parametrize(rational->g, 0.01);
    EXPECT_EQ(testsupport::max_abs_diff(P.p1.num(), Q.p1.num()), 0.0);
    EXPECT_EQ(testsupport::max_abs_diff(P.p1.den(), Q.p1.den()), 0.0);
    EXPECT_EQ(testsupport::max_abs_diff(P.p2.num(), Q.p2.num()), 0.0);
    EXPECT_EQ(testsupport::max_abs_diff(P.p2.den(), Q.p2.den()), 0.0);

    EXPECT_EQ(run("parametrize " + path("n.curve") + " --out " + path("o")).code, 2);
    EXPECT_EQ(run("parametrize " + path("h.curve") + " --out " + path("o")).code, 4);
}

TEST_F(Cli, AnalyzeExactPairCollapses) {
    save_curve(dir / "G.curve", base_system_at({1, 1, 1, 1, 1, 1}));
    ASSERT_EQ(run("parametrize " + path("G.curve") + " --epsilon 1e-6 --out " + path("p")).code, 0);
    const RunResult r = run("analyze " + path("G.curve") + " " + path("p/G.param") + " --samples 200 --out " + path("a"));
    ASSERT_EQ(r.code, 0);
    double B = -1, m = -1, eta = -1;
    ASSERT_EQ(std::sscanf(r.out.c_str(), "B=%lf m=%lf eta=%lf", &B, &m, &eta), 3) << r.out;
    EXPECT_LE(B, 1e-6);
    EXPECT_LE(m, 1e-6);
    EXPECT_LE(eta, 1e-6);

    const std::string bounds = read_file(dir / "a" / "bounds.csv");
    EXPECT_EQ(bounds.substr(0, bounds.find('\n')), "i,B1,B2,B");
    EXPECT_TRUE(fs::exists(dir / "a" / "report.json"));
    EXPECT_TRUE(fs::exists(dir / "a" / "rho1_plot.csv"));
}
