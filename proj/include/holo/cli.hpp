#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holo/diffop.hpp"
#include "holo/hyper.hpp"
#include "holo/io.hpp"
#include "holo/mirror.hpp"
#include "holo/numeric.hpp"
#include "holo/registry.hpp"

namespace holo::cli {

enum ExitCode { kOk = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct CliConfig {
    std::string command;
    long order = 0;  // 0: command default
    long precision = 128;
    std::string format = "json";
    std::optional<std::string> out, ode_file, input;
    std::string ode_role = "q-of-z";
    std::vector<std::string> ids;
    bool all = false;
    std::string target;
    long max_order = 4, max_degree = 4;
};

struct UsageError : Error {
    using Error::Error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline long to_long(const std::string& s) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("expected an integer, got '" + s + "'");
    return v;
}

inline std::vector<Rational> rationals(const std::string& s) {
    std::vector<Rational> v;
    if (s.empty()) return v;
    for (const auto& t : split(s, ',')) v.push_back(parse_rational(t));
    return v;
}

inline DiffOp default_operator() {
    Rational h = rat(1, 2);
    return hypergeometric_operator({h, h, h, h}, {1, 1, 1}, 256);
}

}  // namespace detail

// pfq:a1,a2,..;b1,..[;scale]   eta:N^e,N^e   formfactor:k,n   hadamard-power:n[,sqrt]
inline PowerSeries expand_target(const std::string& target, long order) {
    auto colon = target.find(':');
    std::string head = target.substr(0, colon), arg = colon == std::string::npos ? "" : target.substr(colon + 1);
    if (colon == std::string::npos) {
        if (target == "y0") return frobenius_mum(detail::default_operator(), order).y0();
        if (target == "nome" || target == "mirror" || target == "yukawa") {
            MirrorBundle b = build_mirror_bundle(detail::default_operator(), order);
            const PowerSeries& s = target == "nome" ? b.nome : target == "mirror" ? b.mirror : b.yukawa;
            return truncate_at(s, Rational(order));
        }
        if (target == "delta") return delta_series(order);
        if (target == "j2") return j2_series(order);
        if (target == "theta2") return theta_null(2, order);
        if (target == "theta3") return theta_null(3, order);
        if (target == "theta4") return theta_null(4, order);
    } else if (head == "pfq") {
        auto parts = detail::split(arg, ';');
        if (parts.size() < 2 || parts.size() > 3) throw UsageError("pfq target: pfq:<upper>;<lower>[;<scale>]");
        HGParams p{detail::rationals(parts[0]), detail::rationals(parts[1]), parts.size() == 3 ? parse_rational(parts[2]) : Rational(1)};
        return pfq_series(p, order);
    } else if (head == "eta") {
        EtaQuotient e;
        for (const auto& f : detail::split(arg, ',')) {
            auto hat = f.find('^');
            if (hat == std::string::npos) throw UsageError("eta target: eta:N^e,N^e,...");
            e.factors.emplace_back(detail::to_long(f.substr(0, hat)), detail::to_long(f.substr(hat + 1)));
        }
        if (e.factors.empty()) throw UsageError("eta target needs at least one factor");
        return eta_quotient(e, order);
    } else if (head == "formfactor") {
        auto kn = detail::split(arg, ',');
        if (kn.size() != 2) throw UsageError("formfactor target: formfactor:k,n");
        return form_factor_series(detail::to_long(kn[0]), detail::to_long(kn[1]), order, true);
    } else if (head == "hadamard-power") {
        auto a = detail::split(arg, ',');
        if (a.empty() || a.size() > 2 || (a.size() == 2 && a[1] != "sqrt" && a[1] != "K"))
            throw UsageError("hadamard-power target: hadamard-power:n[,sqrt]");
        PowerBase base = a.size() == 2 && a[1] == "sqrt" ? PowerBase::Sqrt : PowerBase::K;
        return hadamard_power_family(detail::to_long(a[0]), base, order);
    }
    throw UsageError("unknown expand target '" + target + "'");
}

inline void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out)
        write_file(*cfg.out, text);
    else
        out << text;
}

inline int cmd_expand(const CliConfig& cfg, std::ostream& out) {
    long order = cfg.order ? cfg.order : 20;
    PowerSeries s = expand_target(cfg.target, order);
    emit(cfg, cfg.format == "json" ? to_json(s).dump(2) + "\n" : format_series(s), out);
    return kOk;
}

// external-ode checks need an externally supplied ODE; absent or unreadable files give SKIPPED
inline std::vector<VerifyReport> external_ode_reports(const CliConfig& cfg, long order) {
    VerifyReport ode, fam;
    ode.id = "external-ode";
    fam.id = "external-ode-power-family";
    ode.kind = fam.kind = "series";
    ode.order = fam.order = order;
    if (!cfg.ode_file) {
        ode.status = fam.status = Status::Skipped;
        ode.detail = fam.detail = "no --ode-file given";
        return {ode, fam};
    }
    MPoly P;
    try {
        P = parse_mpoly_text(read_file(*cfg.ode_file));
    } catch (const std::ios_base::failure& e) {
        ode.status = fam.status = Status::Skipped;
        ode.detail = fam.detail = std::string("ode file unreadable: ") + e.what();
        return {ode, fam};
    }
    OdeRole role = parse_role(cfg.ode_role);
    MirrorBundle b = build_mirror_bundle(detail::default_operator(), order + 8);
    PowerSeries res;
    switch (role) {
        case OdeRole::QofZ: res = nonlinear_ode_residual(P, b.nome, role, order + 1); break;
        case OdeRole::ZofTau: res = nonlinear_ode_residual(P, b.mirror, role, order + 1); break;
        case OdeRole::TauOfZ: {
            PowerSeries u = div(b.mum.t(1), b.mum.y0());
            LogSeries tau(std::vector<PowerSeries>{u, PowerSeries::constant(1, u.var())});
            res = nonlinear_ode_residual(P, tau, order + 1);
            break;
        }
    }
    VerifyReport r1 = reg::series_zero(std::string("external-ode"), res, order);
    r1.kind = "series";
    r1.detail = std::string(role_name(role)) + ": " + r1.detail;
    if (role == OdeRole::QofZ) {
        VerifyReport r2 = power_family_check(P, b.nome, {2, 3, -1, -2}, order + 1, role);
        r2.id = "external-ode-power-family";
        r2.kind = "series";
        r2.order = order;
        return {r1, r2};
    }
    fam.status = Status::Skipped;
    fam.detail = "power family applies to the q-of-z role only";
    return {r1, fam};
}

inline bool is_external_ode(const std::string& id) { return id == "external-ode" || id == "external-ode-power-family"; }

inline int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    if (!cfg.all && cfg.ids.empty()) throw UsageError("verify needs --all or --id NAME");
    if (cfg.all && !cfg.ids.empty()) throw UsageError("--all and --id are exclusive");
    std::vector<VerifyReport> reports;
    long dorder = cfg.order ? cfg.order : 40;
    if (cfg.all) {
        std::map<std::string, long> ov;
        if (cfg.order)
            for (const auto& rec : registry())
                if (rec.default_order) ov[rec.id] = cfg.order;
        reports = run_all(ov);
        for (auto& r : external_ode_reports(cfg, dorder)) reports.push_back(r);
    } else {
        for (const auto& id : cfg.ids)
            if (!is_external_ode(id)) find_identity(id);
        std::vector<VerifyReport> d;
        for (const auto& id : cfg.ids) {
            if (is_external_ode(id)) {
                if (d.empty()) d = external_ode_reports(cfg, dorder);
                for (const auto& r : d)
                    if (r.id == id) reports.push_back(r);
            } else {
                reports.push_back(run_identity(id, cfg.order));
            }
        }
    }
    std::sort(reports.begin(), reports.end(), [](const VerifyReport& a, const VerifyReport& b) { return a.id < b.id; });
    std::string text;
    if (cfg.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        text = arr.dump(2) + "\n";
    } else {
        for (const auto& r : reports) text += format_report_text(r) + "\n";
    }
    emit(cfg, text, out);
    return gating_failure(reports) ? kFail : kOk;
}

inline int cmd_mirror(const CliConfig& cfg, std::ostream& out) {
    long order = cfg.order ? cfg.order : 20;
    DiffOp L = cfg.input ? parse_diffop_text(read_file(*cfg.input)) : detail::default_operator();
    MirrorBundle b = build_mirror_bundle(L, order);
    PowerSeries y0 = truncate_at(b.mum.y0(), Rational(order));
    PowerSeries nome = truncate_at(b.nome, Rational(order)), mir = truncate_at(b.mirror, Rational(order));
    PowerSeries yuk = truncate_at(b.yukawa, Rational(order));
    std::string text;
    if (cfg.format == "json") {
        nlohmann::json j;
        j["operator"] = format_diffop(L, OpForm::Theta);
        j["y0"] = to_json(y0);
        j["nome"] = to_json(nome);
        j["mirror"] = to_json(mir);
        j["yukawa"] = to_json(yuk);
        j["yukawa_raw_constant"] = to_string(b.yukawa_raw_constant);
        text = j.dump(2) + "\n";
    } else {
        text = "# y0\n" + format_series(y0) + "# nome\n" + format_series(nome) + "# mirror\n" + format_series(mir) +
               "# yukawa (raw constant " + to_string(b.yukawa_raw_constant) + ")\n" + format_series(yuk);
    }
    emit(cfg, text, out);
    return kOk;
}

inline int cmd_guess(const CliConfig& cfg, std::ostream& out) {
    if (!cfg.input) throw UsageError("guess needs a series file");
    if (cfg.max_order < 1 || cfg.max_degree < 0) throw UsageError("guess bounds: --max-order >= 1, --max-degree >= 0");
    PowerSeries f = parse_series(read_file(*cfg.input));
    auto L = guess_min_ode({f}, cfg.max_order, cfg.max_degree);
    std::string text;
    if (L) {
        text = cfg.format == "json" ? nlohmann::json{{"operator", format_diffop(*L)}}.dump(2) + "\n" : format_diffop(*L);
    } else {
        std::string msg = "none: no operator of order <= " + std::to_string(cfg.max_order) + " and degree <= " +
                          std::to_string(cfg.max_degree) + " annihilates the " +
                          std::to_string(f.exact() ? f.end() : f.order()) + " known terms";
        text = cfg.format == "json" ? nlohmann::json{{"operator", nullptr}, {"detail", msg}}.dump(2) + "\n" : msg + "\n";
    }
    emit(cfg, text, out);
    return kOk;
}

inline int cmd_qs(const CliConfig& cfg, std::ostream& out) {
    if (cfg.precision < 64) throw UsageError("qs needs --precision >= 64");
    QsResult r = qs_sums(cfg.precision);
    MirrorBundle b = build_mirror_bundle(detail::default_operator(), 201);
    double radius = ratio_radius(b.nome.coeffs());
    PrecisionScope ps(cfg.precision + 32);
    int digits = static_cast<int>(cfg.precision * 0.30103) - 2;
    std::string text;
    if (cfg.format == "json") {
        nlohmann::json j{{"qs", to_decimal(r.qs, digits)}, {"error_bound", to_decimal(r.error_bound, 3)},
                         {"x0", to_decimal(r.x0, digits)}, {"x1", to_decimal(r.x1, digits)},
                         {"radius_estimate", radius}, {"precision_bits", cfg.precision}};
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "q_s = " << to_decimal(r.qs, digits) << "\nerror_bound = " << to_decimal(r.error_bound, 3)
           << "\nx0 = " << to_decimal(r.x0, digits) << "\nx1 = " << to_decimal(r.x1, digits)
           << "\nradius_estimate = " << radius << "  (1/256 = " << 1.0 / 256 << ")\n";
        text = os.str();
    }
    emit(cfg, text, out);
    return kOk;
}

inline int dispatch(const CliConfig& cfg, std::ostream& out) {
    if (cfg.command == "expand") return cmd_expand(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "mirror") return cmd_mirror(cfg, out);
    if (cfg.command == "guess") return cmd_guess(cfg, out);
    if (cfg.command == "qs") return cmd_qs(cfg, out);
    throw UsageError("a subcommand is required: expand, verify, mirror, guess, qs");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"holonomic series, operator and mirror-map toolkit"};
    app.require_subcommand(1);
    std::string out_path, ode_path;
    auto common = [&](CLI::App* sc, bool with_order) {
        if (with_order) sc->add_option("--order", cfg.order, "truncation order");
        sc->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sc->add_option("--out", out_path, "output file (default stdout)");
    };
    auto* ex = app.add_subcommand("expand", "expand a named closed form as a series file");
    ex->add_option("target", cfg.target, "nome|mirror|yukawa|y0|delta|j2|theta2|theta3|theta4|pfq:..|eta:..|formfactor:k,n|hadamard-power:n")
        ->required();
    common(ex, true);
    auto* ve = app.add_subcommand("verify", "run registry identities");
    ve->add_option("--id", cfg.ids, "identity id (repeatable)");
    ve->add_flag("--all", cfg.all, "run every registered identity");
    ve->add_option("--ode-file", ode_path, "nonlinear ODE polynomial (mpoly text, variables x u0..u7)");
    ve->add_option("--ode-role", cfg.ode_role, "q-of-z, z-of-tau or tau-of-z")->check(CLI::IsMember({"q-of-z", "z-of-tau", "tau-of-z"}));
    common(ve, true);
    auto* mi = app.add_subcommand("mirror", "nome, mirror map and Yukawa coupling of an order-4 MUM operator");
    mi->add_option("operator", cfg.input, "operator file (default: the 4F3 operator at 256x)");
    common(mi, true);
    auto* gu = app.add_subcommand("guess", "guess a minimal linear ODE for a series file");
    gu->add_option("series", cfg.input, "series file")->required();
    gu->add_option("--max-order", cfg.max_order, "largest operator order");
    gu->add_option("--max-degree", cfg.max_degree, "largest polynomial degree");
    common(gu, false);
    auto* qs = app.add_subcommand("qs", "q at the conifold point, certified to the given precision");
    common(qs, false);
    for (auto* sc : {ex, ve, mi, gu, qs}) sc->add_option("--precision", cfg.precision, "working precision in bits (>= 64)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    for (auto* sc : {ex, ve, mi, gu, qs})
        if (sc->parsed()) cfg.command = sc->get_name();
    if (!out_path.empty()) cfg.out = out_path;
    if (!ode_path.empty()) cfg.ode_file = ode_path;
    try {
        if (cfg.order != 0 && cfg.order < 8 && cfg.command != "expand") throw UsageError("--order must be >= 8");
        if (cfg.order < 0 || (cfg.command == "expand" && cfg.order == 0 && ex->count("--order")))
            throw UsageError("--order must be positive");
        if (cfg.precision < 64) throw UsageError("--precision must be >= 64");
        return dispatch(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
}

}  // namespace holo::cli
