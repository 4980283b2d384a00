#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "aparam/bipoly.hpp"
#include "aparam/error.hpp"
#include "aparam/familygen.hpp"
#include "aparam/paramalg.hpp"

namespace aparam {

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error(ErrorKind::parse_error, "not a number: '" + s + "'");
    return v;
}

inline int parse_int(const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error(ErrorKind::parse_error, "not an integer: '" + s + "'");
    return v;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline bool blank_or_comment(const std::string& line) {
    const auto p = line.find_first_not_of(" \t\r");
    return p == std::string::npos || line[p] == '#';
}

}  // namespace detail

// CURVE v1: header `CURVE v1 <degx> <degy>`, then `i j re [im]` per nonzero monomial.
inline void write_curve(std::ostream& out, const BiPoly& p) {
    out << "CURVE v1 " << std::max(p.degx(), 0) << ' ' << std::max(p.degy(), 0) << '\n';
    for (const auto& t : p.terms()) {
        out << t.i << ' ' << t.j << ' ' << format_double(t.c.real());
        if (t.c.imag() != 0.0) out << ' ' << format_double(t.c.imag());
        out << '\n';
    }
}

inline BiPoly read_curve(std::istream& in) {
    std::string line;
    while (std::getline(in, line) && detail::blank_or_comment(line)) {
    }
    const auto head = detail::split_ws(line);
    if (head.size() != 4 || head[0] != "CURVE" || head[1] != "v1") throw Error(ErrorKind::parse_error, "missing 'CURVE v1 <degx> <degy>' header");
    const int dx = parse_int(head[2]), dy = parse_int(head[3]);
    if (dx < 0 || dy < 0) throw Error(ErrorKind::parse_error, "negative degree bound in header");
    std::vector<Term> terms;
    while (std::getline(in, line)) {
        if (detail::blank_or_comment(line)) continue;
        const auto tok = detail::split_ws(line);
        if (tok.size() != 3 && tok.size() != 4) throw Error(ErrorKind::parse_error, "expected 'i j re [im]': " + line);
        const int i = parse_int(tok[0]), j = parse_int(tok[1]);
        if (i < 0 || j < 0 || i > dx || j > dy) throw Error(ErrorKind::parse_error, "monomial outside the declared degree bounds: " + line);
        const Scalar c(parse_double(tok[2]), tok.size() == 4 ? parse_double(tok[3]) : 0.0);
        if (!is_finite(c)) throw Error(ErrorKind::parse_error, "non-finite coefficient: " + line);
        terms.push_back({i, j, c});
    }
    return BiPoly::from_terms(terms);
}

namespace detail {

inline void write_coeff_line(std::ostream& out, const char* label, const UniPoly& p) {
    out << label;
    for (int k = 0; k <= p.degree(); ++k) {
        const Scalar c = p[k];
        out << ' ' << format_double(c.real());
        if (c.imag() != 0.0) out << (c.imag() < 0 ? "" : "+") << format_double(c.imag()) << 'i';
    }
    out << '\n';
}

inline Scalar parse_coeff(const std::string& tok) {
    if (tok.empty() || tok.back() != 'i') return parse_double(tok);
    // re(+|-)im i; the sign separating the parts is the last one not following an exponent marker
    for (size_t k = tok.size() - 1; k-- > 1;)
        if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
            const size_t start = tok[k] == '+' ? k + 1 : k;
            return {parse_double(tok.substr(0, k)), parse_double(tok.substr(start, tok.size() - 1 - start))};
        }
    throw Error(ErrorKind::parse_error, "bad complex coefficient: " + tok);
}

}  // namespace detail

// PARAM v1: header line, then `num1`, `den1`, `num2`, `den2` lines with
// ascending coefficients.
inline void write_param(std::ostream& out, const Parametrization& P) {
    out << "PARAM v1\n";
    detail::write_coeff_line(out, "num1", P.p1.num());
    detail::write_coeff_line(out, "den1", P.p1.den());
    detail::write_coeff_line(out, "num2", P.p2.num());
    detail::write_coeff_line(out, "den2", P.p2.den());
}

inline Parametrization read_param(std::istream& in) {
    std::string line;
    while (std::getline(in, line) && detail::blank_or_comment(line)) {
    }
    if (detail::split_ws(line) != std::vector<std::string>{"PARAM", "v1"}) throw Error(ErrorKind::parse_error, "missing 'PARAM v1' header");
    const char* labels[] = {"num1", "den1", "num2", "den2"};
    UniPoly polys[4];
    bool seen[4] = {false, false, false, false};
    while (std::getline(in, line)) {
        if (detail::blank_or_comment(line)) continue;
        const auto tok = detail::split_ws(line);
        int slot = -1;
        for (int k = 0; k < 4; ++k)
            if (tok[0] == labels[k]) slot = k;
        if (slot < 0 || seen[slot]) throw Error(ErrorKind::parse_error, "unexpected line: " + line);
        std::vector<Scalar> c;
        for (size_t k = 1; k < tok.size(); ++k) c.push_back(detail::parse_coeff(tok[k]));
        polys[slot] = UniPoly(c);
        seen[slot] = true;
    }
    for (int k = 0; k < 4; ++k)
        if (!seen[k]) throw Error(ErrorKind::parse_error, std::string("missing line ") + labels[k]);
    Parametrization P;
    P.p1 = RatFun(polys[0], polys[1]);
    P.p2 = RatFun(polys[2], polys[3]);
    P.poles = detail::real_poles(P.p1, P.p2);
    return P;
}

/// Family manifest: one `i j r_ij r1 r2 r3 status` line per member.
inline void write_manifest(std::ostream& out, const std::vector<FamilyMember>& members) {
    for (const auto& m : members) out << m.i << ' ' << m.j << ' ' << m.r_ij << ' ' << m.r1 << ' ' << m.r2 << ' ' << m.r3 << ' ' << m.status_text() << '\n';
}

/// Writes to a sibling temporary file and renames it over path.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline BiPoly load_curve(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_curve(in);
}

inline Parametrization load_param(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_param(in);
}

inline void save_curve(const std::filesystem::path& path, const BiPoly& p) {
    std::ostringstream s;
    write_curve(s, p);
    write_file_atomic(path, s.str());
}

inline void save_param(const std::filesystem::path& path, const Parametrization& P) {
    std::ostringstream s;
    write_param(s, P);
    write_file_atomic(path, s.str());
}

}  // namespace aparam
