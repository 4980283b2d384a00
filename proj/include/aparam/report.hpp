#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aparam/bounds.hpp"
#include "aparam/evidence.hpp"
#include "aparam/io.hpp"
#include "aparam/lattice.hpp"
#include "aparam/paramalg.hpp"
#include "aparam/pencil.hpp"

namespace aparam {

struct AnalysisConfig {
    double stop_eps = 1e-3;
    int tau_cap = 200;
    int samples = 1000;
    std::vector<double> h0 = {1.0, -1.0, 0.8, 0.05};
};

struct DirectionalEntry {
    double h0 = 0.0;
    std::optional<BoundReport> bound;
    std::string error;  ///< set when the bound could not be computed
};

struct PlotSample {
    double t = 0.0;
    std::optional<double> rho1, rho1_real;
};

/// Everything computed for one (f, P) pair.
struct CurveAnalysis {
    std::string label;
    int output_degree = 0;
    double residual = 0.0;  ///< param_residual(f, P)
    BoundReport bound;
    std::vector<DirectionalEntry> directional;
    LatticeReport lattice;
    EvidenceReport evidence;
    std::vector<PlotSample> plot;
};

/// max |f(P(t))| / (|f| max(1, |P(t)|)^d) over n samples of [-10, 10],
/// skipping points within 1e-6 of a pole.
inline double param_residual(const BiPoly& f, const Parametrization& P, int n = 1000) {
    const double nf = f.inf_norm();
    const int d = f.total_degree();
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = -10.0 + 20.0 * (k + 0.5) / n;
        bool near_pole = false;
        for (double b : P.poles) near_pole = near_pole || std::abs(t - b) < 1e-6;
        if (near_pole) continue;
        const auto [x, y] = P.eval(t);
        const double scale = std::pow(std::max({1.0, std::abs(x), std::abs(y)}), d);
        worst = std::max(worst, std::abs(f.eval(x, y)) / (nf * scale));
    }
    return worst;
}

inline CurveAnalysis analyze_curve(const BiPoly& f, const Parametrization& P, const AnalysisConfig& cfg, std::string label = "1") {
    CurveAnalysis a;
    a.label = std::move(label);
    const BiPoly fbar = implicitize(P);
    a.output_degree = fbar.total_degree();
    a.residual = param_residual(f, P);
    const PencilCoeffs pc = normal_pencil(f, P);
    a.bound = bound_B(pc);
    for (double h : cfg.h0) {
        DirectionalEntry e;
        e.h0 = h;
        try {
            e.bound = directional_bound(f, P, h);
        } catch (const Error& err) {
            e.error = err.what();
        }
        a.directional.push_back(std::move(e));
    }
    a.lattice = lattice_scan(f, fbar, cfg.stop_eps, cfg.tau_cap);
    a.evidence = critical_evidence(f, P, pc, a.bound, cfg.h0);
    for (int k = 0; k < cfg.samples; ++k) {
        PlotSample s;
        s.t = std::tan(-M_PI / 2 + M_PI * (k + 0.5) / cfg.samples);
        try {
            s.rho1 = rho1(pc, s.t, false);
            s.rho1_real = rho1(pc, s.t, true);
        } catch (const Error&) {
        }
        a.plot.push_back(s);
    }
    return a;
}

namespace detail {

inline nlohmann::ordered_json num(double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); }

inline nlohmann::ordered_json num(const std::optional<double>& v) { return v ? num(*v) : nlohmann::ordered_json(); }

inline std::string csv(double v) { return std::isfinite(v) ? format_double(v) : ""; }

inline std::string csv(const std::optional<double>& v) { return v ? csv(*v) : ""; }

inline const char* kind_name(SequenceRecord::Kind k) {
    switch (k) {
        case SequenceRecord::Kind::pole_of_R1: return "pole_of_R1";
        case SequenceRecord::Kind::critical_of_R1: return "critical_of_R1";
        case SequenceRecord::Kind::pole_of_P: return "pole_of_P";
    }
    return "";
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const BoundReport& b) {
    nlohmann::ordered_json j;
    j["B1"] = detail::num(b.B1b);
    j["B2"] = detail::num(b.B2b);
    j["B"] = detail::num(b.B);
    j["alpha"] = b.alpha;
    auto& iv = j["intervals"] = nlohmann::ordered_json::array();
    for (const auto& I : b.intervals) iv.push_back({I.lo, I.hi});
    j["argmax1"] = detail::num(b.argmax1);
    j["argmax2"] = detail::num(b.argmax2);
    j["all_order_bound_sampled"] = detail::num(b.full_min_sampled);
    return j;
}

inline nlohmann::ordered_json to_json(const LatticeReport& L) {
    nlohmann::ordered_json j;
    j["box"] = {{L.tau1, L.tau2}, {L.tau3, L.tau4}};
    j["m"] = detail::num(L.m);
    j["eta"] = detail::num(L.eta);
    j["stop_eps"] = L.stop_eps;
    j["compact"] = L.compact;
    j["truncated"] = L.truncated;
    j["all_equal"] = L.all_equal();
    auto& lines = j["per_line"] = nlohmann::ordered_json::array();
    for (const auto& r : L.per_line)
        lines.push_back({{"line", std::string(r.vertical ? "x" : "y")},
                         {"position", r.position},
                         {"points", r.points},
                         {"m", detail::num(r.m)},
                         {"m_real", detail::num(r.m_real)},
                         {"equal", r.equal}});
    return j;
}

inline nlohmann::ordered_json to_json(const EvidenceReport& e) {
    nlohmann::ordered_json j;
    j["chi"] = detail::num(e.chi);
    j["chi1"] = detail::num(e.chi1);
    j["chi2"] = detail::num(e.chi2);
    j["mu"] = detail::num(e.mu);
    j["nu"] = detail::num(e.nu);
    j["gamma1"] = detail::num(e.gamma1);
    j["gamma2"] = detail::num(e.gamma2);
    j["gamma2_prime"] = detail::num(e.gamma2_prime);
    j["gamma3"] = detail::num(e.gamma3);
    j["flags"] = e.flags;
    auto& seq = j["sequences"] = nlohmann::ordered_json::array();
    for (const auto& s : e.sequences)
        seq.push_back({{"kind", detail::kind_name(s.kind)},
                       {"target", s.target},
                       {"k", s.k_stable},
                       {"defined", s.defined},
                       {"mismatch", s.mismatch},
                       {"rho", detail::num(s.rho)},
                       {"rho_real", detail::num(s.rho_real)},
                       {"h0", detail::num(s.h0)},
                       {"fallback_value", detail::num(s.fallback_value)}});
    return j;
}

inline nlohmann::ordered_json to_json(const CurveAnalysis& a) {
    nlohmann::ordered_json j;
    j["curve"] = a.label;
    j["output_degree"] = a.output_degree;
    j["residual"] = detail::num(a.residual);
    j["bound"] = to_json(a.bound);
    auto& dir = j["directional"] = nlohmann::ordered_json::array();
    for (const auto& e : a.directional) {
        nlohmann::ordered_json d;
        d["h0"] = e.h0;
        if (e.bound)
            d["bound"] = to_json(*e.bound);
        else
            d["error"] = e.error;
        dir.push_back(d);
    }
    j["lattice"] = to_json(a.lattice);
    j["evidence"] = to_json(a.evidence);
    return j;
}

// CSV tables, one row per curve.

inline const char* bounds_csv_header() { return "i,B1,B2,B\n"; }

inline std::string bounds_csv_row(const CurveAnalysis& a) {
    return a.label + "," + detail::csv(a.bound.B1b) + "," + detail::csv(a.bound.B2b) + "," + detail::csv(a.bound.B) + "\n";
}

inline const char* directional_csv_header() { return "i,h0,B1,B2,B\n"; }

inline std::string directional_csv_rows(const CurveAnalysis& a) {
    std::string out;
    for (const auto& e : a.directional) {
        out += a.label + "," + format_double(e.h0) + ",";
        if (e.bound)
            out += detail::csv(e.bound->B1b) + "," + detail::csv(e.bound->B2b) + "," + detail::csv(e.bound->B) + "\n";
        else
            out += ",,\n";
    }
    return out;
}

inline const char* lattice_csv_header() { return "i,tau1,tau2,tau3,tau4,m,eta,truncated,all_equal\n"; }

inline std::string lattice_csv_row(const CurveAnalysis& a) {
    const LatticeReport& L = a.lattice;
    return a.label + "," + format_double(L.tau1) + "," + format_double(L.tau2) + "," + format_double(L.tau3) + "," + format_double(L.tau4) + "," +
           detail::csv(L.m) + "," + detail::csv(L.eta) + "," + (L.truncated ? "1" : "0") + "," + (L.all_equal() ? "1" : "0") + "\n";
}

inline const char* evidence_csv_header() { return "i,chi,chi1,chi2,mu,nu,gamma1,gamma2,gamma2_prime,gamma3,flags\n"; }

inline std::string evidence_csv_row(const CurveAnalysis& a) {
    const EvidenceReport& e = a.evidence;
    std::string flags;
    for (const auto& f : e.flags) flags += (flags.empty() ? "" : ";") + f;
    return a.label + "," + detail::csv(e.chi) + "," + detail::csv(e.chi1) + "," + detail::csv(e.chi2) + "," + detail::csv(e.mu) + "," + detail::csv(e.nu) +
           "," + detail::csv(e.gamma1) + "," + detail::csv(e.gamma2) + "," + detail::csv(e.gamma2_prime) + "," + detail::csv(e.gamma3) + ",\"" + flags +
           "\"\n";
}

inline std::string plot_csv(const CurveAnalysis& a) {
    std::string out = "t,rho1,rho1_real\n";
    for (const auto& s : a.plot) out += format_double(s.t) + "," + detail::csv(s.rho1) + "," + detail::csv(s.rho1_real) + "\n";
    return out;
}

}  // namespace aparam
