#pragma once

#include <map>
#include <string>
#include <vector>

#include "holo/diffop.hpp"
#include "holo/poly.hpp"
#include "holo/report.hpp"
#include "holo/series.hpp"

namespace holo {

// p(s) and num(s)/den(s) for series s
inline PowerSeries compose(const Poly& p, const PowerSeries& s) {
    const auto& c = p.coeffs();
    if (c.empty()) return PowerSeries::zero(s.var());
    PowerSeries acc = PowerSeries::constant(c.back(), s.var());
    for (size_t i = c.size() - 1; i-- > 0;) acc = add(mul(acc, s), PowerSeries::constant(c[i], s.var()));
    return acc;
}

inline PowerSeries compose(const RatFun& f, const PowerSeries& s) {
    PowerSeries n = compose(f.num(), s), d = compose(f.den(), s);
    if (d.exact() && d.coeffs().size() == 1) return mul(n, inv(d));
    if (d.exact()) d = truncate(d, d.valuation() + (s.exact() ? 0 : s.order() - s.valuation()));
    return div(n, d);
}

inline PowerSeries theta_pow(PowerSeries f, long m) {
    for (long i = 0; i < m; ++i) f = theta(f);
    return f;
}

struct MirrorBundle {
    DiffOp source;
    MumSolutions mum;
    PowerSeries nome;    // in x
    PowerSeries mirror;  // in q
    PowerSeries yukawa;  // in q, constant term 1
    Rational yukawa_raw_constant;
};

// q = x exp(t1/y0)
inline PowerSeries nome_of(const MumSolutions& m) {
    if (m.r < 2) throw PreconditionError("nome needs a MUM operator of order >= 2");
    PowerSeries u = div(m.t(1), m.y0());
    return shift(exp(u), 1);
}

inline MirrorBundle build_mirror_bundle(const DiffOp& L, long order) {
    if (L.order() != 4) throw PreconditionError("build_mirror_bundle: order-4 operator expected, got order " + std::to_string(L.order()));
    MirrorBundle b;
    b.source = L;
    b.mum = frobenius_mum(L, order);
    b.nome = nome_of(b.mum);
    b.mirror = revert(b.nome).with_var("q");

    // y2/y0 = tau^2/2 - u^2/2 + t2/y0 with u = t1/y0; theta_q^2 (tau^2/2) = 1
    PowerSeries u = div(b.mum.t(1), b.mum.y0());
    PowerSeries g = sub(div(b.mum.t(2), b.mum.y0()), scale_by(mul(u, u), rat(1, 2)));
    PowerSeries gq = compose(g, b.mirror);
    PowerSeries k = add(theta(theta(gq)), PowerSeries::constant(1, "q"));
    b.yukawa_raw_constant = k.coeff(0);
    if (b.yukawa_raw_constant == 0) throw Error("Yukawa coupling has vanishing constant term");
    b.yukawa = scale_by(k, 1 / b.yukawa_raw_constant);
    return b;
}

// (q2(z)/5) z'^2 + {z,tau} - (2/5) K''/K + (1/2) (K'/K)^2, ' = q d/dq
inline PowerSeries quantum_schwarzian_residual(const MirrorBundle& b, const RatFun& q2, long order) {
    const PowerSeries& z = b.mirror;
    const PowerSeries& K = b.yukawa;
    PowerSeries z1 = theta(z);
    PowerSeries lhs = add(scale_by(mul(compose(q2, z), mul(z1, z1)), rat(1, 5)),
                          schwarzian_with(z, [](const PowerSeries& s) { return theta(s); }));
    PowerSeries k1 = div(theta(K), K), k2 = div(theta(theta(K)), K);
    PowerSeries rhs = sub(scale_by(k2, rat(2, 5)), scale_by(mul(k1, k1), rat(1, 2)));
    return truncate_at(sub(lhs, rhs), Rational(order));
}

// the Yukawa-free version with an arbitrary K (tests the collapse K = 1)
inline PowerSeries quantum_schwarzian_residual(const PowerSeries& z, const PowerSeries& K, const RatFun& q2, long order) {
    MirrorBundle b;
    b.mirror = z;
    b.yukawa = K;
    return quantum_schwarzian_residual(b, q2, order);
}

// 2 Q(t) (t')^2 + {t,tau} for the mirror map t(q) of an order-2 MUM operator
inline PowerSeries classical_schwarzian_residual(const DiffOp& L2, const RatFun& Q, long order) {
    if (L2.order() != 2) throw PreconditionError("classical_schwarzian_residual: order-2 operator expected");
    MumSolutions m = frobenius_mum(L2, order + 4);
    PowerSeries t = revert(nome_of(m)).with_var("q");
    PowerSeries t1 = theta(t);
    PowerSeries r = add(scale_by(mul(compose(Q, t), mul(t1, t1)), 2),
                        schwarzian_with(t, [](const PowerSeries& s) { return theta(s); }));
    return truncate_at(r, Rational(order));
}

struct NamedResidual {
    std::string name;
    LogSeries value;
};

// the five defining equations with a given nome q(x)
inline std::vector<NamedResidual> nome_system_residuals(const DiffOp& L, const MumSolutions& m, const PowerSeries& q) {
    if (L.order() != 4) throw PreconditionError("nome_system_residuals: order-4 operator expected");
    DiffOp L5 = exterior_square(L);
    const PowerSeries& y0 = m.y0();
    PowerSeries w = mul(mul(y0, y0), div(derivative(q), q));
    // y0 ln q = y0 ln(q/x^e) + e y0 L, q = x^e (1 + ...)
    if (q.is_zero() || q.leading() != 1) throw PreconditionError("nome_system_residuals: q must have leading coefficient 1");
    Rational e = rat(q.valuation(), q.scale());
    PowerSeries qx = shift(q, -q.valuation(), q.scale());
    LogSeries ylnq(std::vector<PowerSeries>{mul(y0, log(qx)), scale_by(y0, e)});
    LogSeries r2 = apply(L, ylnq);
    PowerSeries r3 = apply(L, y0);
    std::vector<NamedResidual> out;
    out.push_back({"L5(y0^2 q'/q)", LogSeries(apply(L5, w))});
    out.push_back({"L4(y0 ln q)", r2});
    out.push_back({"L4(y0)", LogSeries(r3)});
    out.push_back({"Dx L4(y0 ln q)", derivative(r2)});
    out.push_back({"Dx L4(y0)", LogSeries(derivative(r3))});
    return out;
}

inline std::vector<NamedResidual> nome_system_residuals(const DiffOp& L, long order) {
    MumSolutions m = frobenius_mum(L, order);
    return nome_system_residuals(L, m, nome_of(m));
}

// ---- nonlinear ODEs in x, u0..u7 ----

enum class OdeRole { QofZ, ZofTau, TauOfZ };

inline const char* role_name(OdeRole r) {
    switch (r) {
        case OdeRole::QofZ: return "q-of-z";
        case OdeRole::ZofTau: return "z-of-tau";
        case OdeRole::TauOfZ: return "tau-of-z";
    }
    return "?";
}

inline OdeRole parse_role(const std::string& s) {
    if (s == "q-of-z") return OdeRole::QofZ;
    if (s == "z-of-tau") return OdeRole::ZofTau;
    if (s == "tau-of-z") return OdeRole::TauOfZ;
    throw PreconditionError("unknown ODE role '" + s + "' (q-of-z, z-of-tau, tau-of-z)");
}

namespace detail {

// -1 for x, m for u_m
inline long ode_slot(const std::string& v) {
    if (v == "x") return -1;
    if (v.size() == 2 && v[0] == 'u' && v[1] >= '0' && v[1] <= '7') return v[1] - '0';
    throw PreconditionError("ODE polynomial variable '" + v + "' is not one of x, u0..u7");
}

inline PowerSeries eval_ode(const MPoly& P, const std::vector<PowerSeries>& derivs, const PowerSeries& xval) {
    std::vector<PowerSeries> vals;
    const std::string& var = xval.var();
    for (size_t i = 0; i < P.nvars(); ++i) {
        long s = ode_slot(P.vars()[i]);
        if (P.degree_in(i) == 0) {
            vals.push_back(PowerSeries::zero(var));
            continue;
        }
        vals.push_back(s < 0 ? xval : derivs.at(static_cast<size_t>(s)));
    }
    return evaluate<PowerSeries>(P, vals, PowerSeries::constant(1, var),
                                 [&](const Rational& c) { return PowerSeries::constant(c, var); });
}

inline long max_derivative(const MPoly& P, bool& uses_u0, bool& uses_x) {
    long m = 0;
    uses_u0 = uses_x = false;
    if (P.nvars() > 9) throw PreconditionError("ODE polynomial has more than 9 variables");
    for (size_t i = 0; i < P.nvars(); ++i) {
        long s = ode_slot(P.vars()[i]);
        if (P.degree_in(i) == 0) continue;
        if (s < 0) uses_x = true;
        if (s == 0) uses_u0 = true;
        m = std::max(m, s);
    }
    return m;
}

}  // namespace detail

// P(x, f, f', ...) with ' = d/dx (q-of-z) or q d/dq (z-of-tau)
inline PowerSeries nonlinear_ode_residual(const MPoly& P, const PowerSeries& f, OdeRole role, long order) {
    bool u0 = false, ux = false;
    long M = detail::max_derivative(P, u0, ux);
    if (role == OdeRole::TauOfZ) {
        if (u0) throw PreconditionError("tau-of-z polynomial must not involve u0");
    }
    if (role == OdeRole::ZofTau && ux) throw PreconditionError("z-of-tau polynomial cannot involve the independent variable");
    std::vector<PowerSeries> d{f};
    for (long m = 1; m <= M; ++m) d.push_back(role == OdeRole::ZofTau ? theta(d.back()) : derivative(d.back()));
    return truncate_at(detail::eval_ode(P, d, PowerSeries::variable(f.var())), Rational(order));
}

// tau = ln x + analytic part; only its derivatives (log-free) enter
inline PowerSeries nonlinear_ode_residual(const MPoly& P, const LogSeries& tau, long order) {
    bool u0 = false, ux = false;
    long M = detail::max_derivative(P, u0, ux);
    if (u0) throw PreconditionError("tau-of-z polynomial must not involve u0 (input carries a logarithm)");
    LogSeries d1 = derivative(tau);
    if (d1.degree() > 0) throw PreconditionError("tau-of-z input must be linear in the logarithm");
    std::vector<PowerSeries> d{PowerSeries::zero(tau.var()), d1.part(0)};
    for (long m = 2; m <= M; ++m) d.push_back(derivative(d.back()));
    return truncate_at(detail::eval_ode(P, d, PowerSeries::variable(tau.var())), Rational(order));
}

enum class FamilyMove { Power, QPower, Scale };

// residual of each base^m (Power), base(q^m) (QPower) or base(m q) (Scale)
inline VerifyReport power_family_check(const MPoly& P, const PowerSeries& base, const std::vector<long>& ms,
                                       long order, OdeRole role = OdeRole::QofZ, FamilyMove move = FamilyMove::Power) {
    std::vector<VerifyReport> parts;
    for (long m : ms) {
        PowerSeries g = move == FamilyMove::Power    ? pow_int(base, m)
                        : move == FamilyMove::QPower ? substitute_power(base, m)
                                                     : rescale(base, m);
        parts.push_back(zero_report("m=" + std::to_string(m), nonlinear_ode_residual(P, g, role, order)));
    }
    return all_of("power-family", parts);
}

// denominators of f(c x) through x^order
inline VerifyReport integrality_report(const PowerSeries& f, const Rational& c, long order) {
    if (f.scale() != 1) throw PreconditionError("integrality_report needs integer exponents");
    PowerSeries g = truncate(rescale(f, c), order);
    VerifyReport r;
    r.id = "integrality";
    r.order = order;
    r.status = Status::Pass;
    Integer lcmden = 1;
    for (long n = g.valuation(); n < std::min(order, g.end()); ++n) {
        Rational a = g.coeff(n);
        if (a.get_den() != 1) {
            if (r.status == Status::Pass) {
                r.status = Status::Fail;
                r.first_nonzero_exponent = Rational(n);
                r.witness = a;
            }
            lcmden = lcm(lcmden, a.get_den());
        }
    }
    if (!g.exact() && g.order() < order) {
        r.status = Status::Fail;
        r.detail = "series known only below " + g.var() + "^" + std::to_string(g.order());
        return r;
    }
    r.detail = r.status == Status::Pass ? "all coefficients integral" : "lcm of denominators " + lcmden.get_str();
    return r;
}

// Schwarzian equation of the lambda function, {t,tau} = R(t) t'^2 with R = -(t^2-t+1)/(2 t^2 (t-1)^2),
// cleared of denominators in each role
inline MPoly lambda_ode(OdeRole role) {
    std::vector<std::string> v{"x", "u0", "u1", "u2", "u3"};
    switch (role) {
        case OdeRole::ZofTau:
            return parse_mpoly("u0^2*(u0-1)^2*(2*u1*u3-3*u2^2) + (u0^2-u0+1)*u1^4", v);
        case OdeRole::TauOfZ:
            // {tau,t} = -R(t)
            return parse_mpoly("x^2*(x-1)^2*(2*u1*u3-3*u2^2) - (x^2-x+1)*u1^2", v);
        case OdeRole::QofZ:
            // tau = ln q: 2 tau' tau''' - 3 tau''^2 = (2 q' q''' - 3 q''^2)/q^2 + q'^4/q^4, times q^4
            return parse_mpoly("x^2*(x-1)^2*(u0^2*(2*u1*u3-3*u2^2) + u1^4) - (x^2-x+1)*u0^2*u1^2", v);
    }
    throw PreconditionError("bad role");
}

}  // namespace holo
