#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "holo/report.hpp"
#include "holo/series.hpp"
#include "json.hpp"

namespace holo {

// series <var> scale=<s> order=<O|exact>
//   <exponent numerator> <num>/<den>
inline std::string format_series(const PowerSeries& f) {
    std::ostringstream os;
    os << "series " << f.var() << " scale=" << f.scale() << " order=";
    if (f.exact())
        os << "exact";
    else
        os << f.order();
    os << "\n";
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const Rational& c = f.coeffs()[i];
        if (c == 0) continue;
        os << "  " << f.valuation() + static_cast<long>(i) << " " << c.get_num().get_str() << "/" << c.get_den().get_str()
           << "\n";
    }
    return os.str();
}

namespace detail {
inline std::string expect_key(const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) throw ParseError("series header: expected " + key + "=...");
    return tok.substr(key.size() + 1);
}
inline long parse_long(const std::string& s, const std::string& what) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad " + what + " '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("bad " + what + " '" + s + "'");
    return v;
}
}  // namespace detail

inline PowerSeries parse_series(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    std::istringstream hs(line);
    std::string tag, var, st, ot;
    if (!(hs >> tag >> var >> st >> ot) || tag != "series") throw ParseError("series header expected on line " + std::to_string(lineno));
    long scale = detail::parse_long(detail::expect_key(st, "scale"), "scale");
    if (scale <= 0) throw ParseError("scale must be positive");
    std::string os = detail::expect_key(ot, "order");
    long order = os == "exact" ? kExact : detail::parse_long(os, "order");
    std::vector<std::pair<long, Rational>> terms;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string e, c;
        if (!(ls >> e)) continue;
        if (!(ls >> c)) throw ParseError("missing coefficient on line " + std::to_string(lineno));
        std::string extra;
        if (ls >> extra) throw ParseError("trailing text on line " + std::to_string(lineno));
        long n = detail::parse_long(e, "exponent");
        if (!terms.empty() && n <= terms.back().first) throw ParseError("exponents must increase (line " + std::to_string(lineno) + ")");
        if (order < kExact && n >= order) throw ParseError("term beyond the truncation order on line " + std::to_string(lineno));
        terms.emplace_back(n, parse_rational(c));
    }
    if (terms.empty()) return PowerSeries(var, scale, 0, {}, order);
    long v = terms.front().first;
    std::vector<Rational> c(static_cast<size_t>(terms.back().first - v + 1));
    for (const auto& [n, q] : terms) c[static_cast<size_t>(n - v)] = q;
    return PowerSeries(var, scale, v, std::move(c), order);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << data;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["check"] = r.id;
    if (!r.kind.empty()) j["kind"] = r.kind;
    j["order"] = r.order;
    j["status"] = status_name(r.status);
    j["first_nonzero_exponent"] = r.first_nonzero_exponent ? nlohmann::json(to_string(*r.first_nonzero_exponent)) : nlohmann::json();
    j["witness_coefficient"] = r.witness ? nlohmann::json(to_string(*r.witness)) : nlohmann::json();
    j["detail"] = r.detail;
    if (!r.anchor.empty()) j["anchor"] = r.anchor;
    return j;
}

inline nlohmann::json to_json(const PowerSeries& f) {
    nlohmann::json j;
    j["var"] = f.var();
    j["scale"] = f.scale();
    j["order"] = f.exact() ? nlohmann::json("exact") : nlohmann::json(f.order());
    nlohmann::json terms = nlohmann::json::array();
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        if (f.coeffs()[i] != 0) terms.push_back({f.valuation() + static_cast<long>(i), to_string(f.coeffs()[i])});
    j["terms"] = terms;
    return j;
}

inline std::string format_report_text(const VerifyReport& r) {
    std::ostringstream os;
    os << status_name(r.status) << "  " << r.id;
    if (r.order) os << "  order=" << r.order;
    if (r.first_nonzero_exponent) os << "  first_nonzero=" << to_string(*r.first_nonzero_exponent);
    if (r.witness) os << "  witness=" << to_string(*r.witness);
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    return os.str();
}

}  // namespace holo
