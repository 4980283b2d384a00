// Command-line driver: family generation, parametrization and distance analysis.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "aparam/aparam.hpp"

namespace fs = std::filesystem;
using namespace aparam;

namespace {

enum Exit { ok = 0, usage = 1, not_rational = 2, degenerate = 3, hypothesis = 4, numeric = 5 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_argument:
        case ErrorKind::parse_error: return usage;
        case ErrorKind::not_eps_rational: return not_rational;
        case ErrorKind::degenerate:
        case ErrorKind::degenerate_parametrization: return degenerate;
        case ErrorKind::hypothesis_failed: return hypothesis;
        default: return numeric;
    }
}

struct RunConfig {
    double epsilon = 0.01;
    std::uint64_t seed = 0;
    bool zero_perturbation = false;
    AnalysisConfig analysis;
    unsigned jobs = 0;
    std::string out = ".";
};

void add_family_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--seed", c.seed, "family PRNG seed")->envname("APARAM_SEED");
    cmd->add_flag("--zero-perturbation", c.zero_perturbation, "drop the random perturbation (exactly rational members)");
}

void add_epsilon(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--epsilon", c.epsilon, "tolerance epsilon")->check(CLI::PositiveNumber)->envname("APARAM_EPSILON");
}

void add_analysis_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--stop-eps", c.analysis.stop_eps, "lattice stopping tolerance")->check(CLI::PositiveNumber)->envname("APARAM_STOP_EPS");
    cmd->add_option("--tau-cap", c.analysis.tau_cap, "largest lattice line index")->check(CLI::Range(1, 1000000))->envname("APARAM_TAU_CAP");
    cmd->add_option("--samples", c.analysis.samples, "plot samples of rho1")->check(CLI::Range(1, 10000000))->envname("APARAM_SAMPLES");
    cmd->add_option("--h0", c.analysis.h0, "fallback directions, comma separated")->delimiter(',')->envname("APARAM_H0");
}

void add_out(CLI::App* cmd, RunConfig& c) { cmd->add_option("--out", c.out, "output directory")->envname("APARAM_OUT"); }

std::string curve_text(const BiPoly& p) {
    std::ostringstream s;
    write_curve(s, p);
    return s.str();
}

std::string param_text(const Parametrization& P) {
    std::ostringstream s;
    write_param(s, P);
    return s.str();
}

std::string member_label(const FamilyMember& m, int count_j) { return std::to_string((m.i - 1) * count_j + m.j); }

std::string member_stem(const FamilyMember& m) { return "g_" + std::to_string(m.i) + "_" + std::to_string(m.j); }

std::vector<FamilyMember> write_family(const RunConfig& c, FamilySpec& spec) {
    spec.seed = c.seed;
    spec.epsilon = c.epsilon;
    spec.zero_perturbation = c.zero_perturbation;
    std::vector<FamilyMember> members = generate_family(spec);
    const fs::path out(c.out);
    std::ostringstream manifest;
    write_manifest(manifest, members);
    write_file_atomic(out / "manifest.txt", manifest.str());
    for (const auto& m : members) write_file_atomic(out / "curves" / (member_stem(m) + ".curve"), curve_text(m.g));
    return members;
}

int count_rational(const std::vector<FamilyMember>& members) {
    return static_cast<int>(std::count_if(members.begin(), members.end(), [](const FamilyMember& m) { return m.status == MemberStatus::rational; }));
}

int cmd_gen_family(const RunConfig& c) {
    FamilySpec spec;
    const auto members = write_family(c, spec);
    std::printf("eps-rational: %d of %zu curves\n", count_rational(members), members.size());
    return ok;
}

int cmd_parametrize(const RunConfig& c, const std::string& curve_path) {
    const BiPoly f = load_curve(curve_path);
    const Parametrization P = approx_parametrize(f, c.epsilon);
    const BiPoly fbar = implicitize(P);
    const fs::path out(c.out);
    const std::string stem = fs::path(curve_path).stem().string();
    write_file_atomic(out / (stem + ".param"), param_text(P));
    write_file_atomic(out / (stem + ".fbar.curve"), curve_text(fbar));
    std::printf("residual=%s degree=%d poles=%zu\n", format_double(param_residual(f, P)).c_str(), fbar.total_degree(), P.poles.size());
    return ok;
}

void write_analysis_files(const fs::path& dir, const CurveAnalysis& a) {
    write_file_atomic(dir / "bounds.csv", std::string(bounds_csv_header()) + bounds_csv_row(a));
    write_file_atomic(dir / "directional.csv", std::string(directional_csv_header()) + directional_csv_rows(a));
    write_file_atomic(dir / "lattice.csv", std::string(lattice_csv_header()) + lattice_csv_row(a));
    write_file_atomic(dir / "evidence.csv", std::string(evidence_csv_header()) + evidence_csv_row(a));
    write_file_atomic(dir / "report.json", to_json(a).dump(2) + "\n");
    write_file_atomic(dir / "rho1_plot.csv", plot_csv(a));
}

int cmd_analyze(const RunConfig& c, const std::string& curve_path, const std::string& param_path, const std::string& label) {
    const BiPoly f = load_curve(curve_path);
    const Parametrization P = load_param(param_path);
    const CurveAnalysis a = analyze_curve(f, P, c.analysis, label);
    write_analysis_files(c.out, a);
    std::printf("B=%s m=%s eta=%s\n", format_double(a.bound.B).c_str(), format_double(a.lattice.m).c_str(), format_double(a.lattice.eta).c_str());
    return ok;
}

struct MemberResult {
    std::optional<Parametrization> param;
    std::optional<CurveAnalysis> analysis;
    std::string error;
};

int cmd_run_family(const RunConfig& c) {
    FamilySpec spec;
    const auto members = write_family(c, spec);
    std::vector<size_t> todo;
    for (size_t k = 0; k < members.size(); ++k)
        if (members[k].status == MemberStatus::rational) todo.push_back(k);

    std::vector<MemberResult> results(members.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t n; (n = next.fetch_add(1)) < todo.size();) {
            const FamilyMember& m = members[todo[n]];
            MemberResult& r = results[todo[n]];
            try {
                r.param = approx_parametrize(m.g, c.epsilon);
                r.analysis = analyze_curve(m.g, *r.param, c.analysis, member_label(m, spec.count_j));
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(c.jobs ? c.jobs : std::thread::hardware_concurrency(), static_cast<unsigned>(todo.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // serial reduction in member order keeps every file independent of scheduling
    const fs::path out(c.out);
    std::string bounds = bounds_csv_header(), directional = directional_csv_header(), lattice = lattice_csv_header(), evidence = evidence_csv_header();
    std::string summary = "i,j,label,B,m,eta,m_over_B,error\n";
    int failures = 0;
    for (size_t k : todo) {
        const FamilyMember& m = members[k];
        const MemberResult& r = results[k];
        const std::string label = member_label(m, spec.count_j);
        if (r.param) write_file_atomic(out / "params" / (member_stem(m) + ".param"), param_text(*r.param));
        if (!r.analysis) {
            ++failures;
            std::string err = r.error;
            std::replace(err.begin(), err.end(), '"', '\'');
            summary += std::to_string(m.i) + "," + std::to_string(m.j) + "," + label + ",,,,,\"" + err + "\"\n";
            continue;
        }
        const CurveAnalysis& a = *r.analysis;
        bounds += bounds_csv_row(a);
        directional += directional_csv_rows(a);
        lattice += lattice_csv_row(a);
        evidence += evidence_csv_row(a);
        write_file_atomic(out / "reports" / (label + ".json"), to_json(a).dump(2) + "\n");
        write_file_atomic(out / "plots" / (label + ".csv"), plot_csv(a));
        const double ratio = a.bound.B > 0 ? a.lattice.m / a.bound.B : 0.0;
        summary += std::to_string(m.i) + "," + std::to_string(m.j) + "," + label + "," + format_double(a.bound.B) + "," + format_double(a.lattice.m) + "," +
                   format_double(a.lattice.eta) + "," + format_double(ratio) + ",\n";
    }
    write_file_atomic(out / "bounds.csv", bounds);
    write_file_atomic(out / "directional.csv", directional);
    write_file_atomic(out / "lattice.csv", lattice);
    write_file_atomic(out / "evidence.csv", evidence);
    write_file_atomic(out / "summary.csv", summary);
    std::printf("eps-rational: %zu of %zu curves; analyzed %zu, failed %d\n", todo.size(), members.size(), todo.size() - failures, failures);
    return failures ? numeric : ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate parametrization of eps-rational plane curves and distance bounds"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string curve_path, param_path, label = "1";

    auto* gen = app.add_subcommand("gen-family", "generate the perturbed curve family and screen it");
    add_epsilon(gen, cfg);
    add_family_flags(gen, cfg);
    add_out(gen, cfg);

    auto* par = app.add_subcommand("parametrize", "parametrize one curve and implicitize the result");
    par->add_option("curve", curve_path, "CURVE v1 file")->required()->check(CLI::ExistingFile);
    add_epsilon(par, cfg);
    add_out(par, cfg);

    auto* ana = app.add_subcommand("analyze", "distance bounds, lattice scan and evidence for a curve and its parametrization");
    ana->add_option("curve", curve_path, "CURVE v1 file")->required()->check(CLI::ExistingFile);
    ana->add_option("param", param_path, "PARAM v1 file")->required()->check(CLI::ExistingFile);
    ana->add_option("--label", label, "row label in the CSV tables");
    add_analysis_flags(ana, cfg);
    add_out(ana, cfg);

    auto* run = app.add_subcommand("run-family", "generate, parametrize and analyze every eps-rational member");
    add_epsilon(run, cfg);
    add_family_flags(run, cfg);
    add_analysis_flags(run, cfg);
    run->add_option("--jobs", cfg.jobs, "worker threads (0: hardware concurrency)")->envname("APARAM_JOBS");
    add_out(run, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*gen) return cmd_gen_family(cfg);
        if (*par) return cmd_parametrize(cfg, curve_path);
        if (*ana) return cmd_analyze(cfg, curve_path, param_path, label);
        if (*run) return cmd_run_family(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return usage;
    }
    return usage;
}
