#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "holo/poly.hpp"
#include "holo/rational.hpp"
#include "holo/report.hpp"

namespace holo {

using Real = boost::multiprecision::mpfr_float;

// sets the working precision (bits) for the lifetime of the object
class PrecisionScope {
public:
    explicit PrecisionScope(long bits) : saved_(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline std::string to_decimal(const Real& r, int digits) { return r.str(digits, std::ios_base::scientific); }

namespace detail {

// Richardson table on partial sums at N, 2N, 4N, ...; tails expand in powers of 1/N
inline std::pair<Real, Real> richardson(const std::vector<Real>& s) {
    std::vector<Real> prev = s;
    Real best = s.back(), err = abs(s.back() - s[s.size() - 2]);
    for (size_t j = 1; j < s.size(); ++j) {
        std::vector<Real> cur;
        Real f = pow(Real(2), static_cast<int>(j));
        for (size_t k = 1; k < prev.size(); ++k) cur.push_back((f * prev[k] - prev[k - 1]) / (f - 1));
        if (cur.size() >= 2) {
            Real e = abs(cur.back() - cur[cur.size() - 2]);
            if (e < err) {
                err = e;
                best = cur.back();
            }
        }
        prev = std::move(cur);
    }
    return {best, err};
}

}  // namespace detail

struct QsResult {
    Real x0, x1, qs;
    Real error_bound;  // on q_s
    double radius_estimate = 0;  // ratio test on the nome
    long bits = 0;
};

// x0 = sum Gamma(n+1/2)^4/(Gamma(n+1)^4 pi^2), x1 = sum 4 t_n (psi(n+1/2) - psi(n+1)), q_s = exp(x1/x0)
inline QsResult qs_sums(long bits, int levels = 0) {
    if (bits < 64) throw PreconditionError("qs_numeric: precision below 64 bits cannot certify 1e-9");
    PrecisionScope ps(bits + 32);
    if (levels <= 0) levels = static_cast<int>(std::clamp(bits / 10, 8L, 14L));
    const long N0 = 64;
    long Nmax = N0 << (levels - 1);
    std::vector<Real> s0, s1;
    Real t = 1, d = -2 * log(Real(2)), a0 = 0, a1 = 0;
    Real half = Real(1) / 2;
    long next = N0;
    for (long n = 0; n < Nmax; ++n) {
        a0 += t;
        a1 += 4 * t * d;
        if (n + 1 == next) {
            s0.push_back(a0);
            s1.push_back(a1);
            next *= 2;
        }
        Real r = (n + half) / (n + 1);
        Real r2 = r * r;
        t *= r2 * r2;
        d += 1 / (n + half) - Real(1) / (n + 1);
    }
    auto [x0, e0] = detail::richardson(s0);
    auto [x1, e1] = detail::richardson(s1);
    QsResult out;
    out.bits = bits;
    out.x0 = x0;
    out.x1 = x1;
    out.qs = exp(x1 / x0);
    // first-order propagation through exp(x1/x0)
    out.error_bound = out.qs * (e1 / abs(x0) + abs(x1) * e0 / (x0 * x0));
    return out;
}

// |c_{n-1}/c_n| for the last available n
inline double ratio_radius(const std::vector<Rational>& c) {
    for (size_t n = c.size() - 1; n > 0; --n)
        if (c[n] != 0 && c[n - 1] != 0) {
            Rational r = c[n - 1] / c[n];
            return std::fabs(r.get_d());
        }
    throw PreconditionError("ratio_radius: not enough nonzero coefficients");
}

// Gauss 2F1(a,b;c;z) for |z| < 1 by direct summation at the current precision
inline Real hyp2f1(const Real& a, const Real& b, const Real& c, const Real& z) {
    if (abs(z) >= 1) throw PreconditionError("hyp2f1: |z| < 1 required");
    Real eps = pow(Real(2), -static_cast<int>(Real::default_precision() * 3.33) - 8);
    Real s = 1, t = 1;
    for (long n = 0;; ++n) {
        t *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        s += t;
        if (abs(t) < eps * abs(s) && n > 4) break;
        if (n > 2000000) throw Error("hyp2f1: no convergence");
    }
    return s;
}

// spot-check of the c6 relation between 2F1(1/12,5/12;1;P16) and two 2F1(2/3,2/3;3/2;P+-)
struct C6Pullbacks {
    RatFun P16, Pp, Pm;
};

inline C6Pullbacks c6_pullbacks() {
    return {parse_ratfun("110592*u*(u+16)^3*(u+18)^2/((12+u)^3*(192+336*u+36*u^2+u^3)^3)", "u"),
            parse_ratfun("-(u+24)^2*(u^2+12*u-72)^2/(432*u*(u+16)*(u+18)^2)", "u"),
            parse_ratfun("-(u+12)^2*(u^2-48*u-1152)^2/(216*u^2*(u+16)^2*(u+18))", "u")};
}

inline bool inside_unit_disc(const Rational& p) { return p > -1 && p < 1; }

inline bool c6_admissible(const Rational& u) {
    if (u <= 0) return false;
    auto P = c6_pullbacks();
    return inside_unit_disc(P.P16.eval(u)) && inside_unit_disc(P.Pp.eval(u)) && inside_unit_disc(P.Pm.eval(u));
}

// residual at one admissible rational u > 0
inline Real c6_residual(const Rational& u0, long bits) {
    if (!c6_admissible(u0)) throw PreconditionError("c6 spot-check: some pull-back at u = " + to_string(u0) + " lies outside (-1,1)");
    PrecisionScope ps(bits);
    auto P = c6_pullbacks();
    Real u = to_real(u0);
    Real third = Real(1) / 3, half = Real(1) / 2;
    Real rho = Real(2) / 3 * pow(boost::math::tgamma(2 * third), 3) / pow(boost::math::constants::pi<Real>(), 2);
    Real Cp = sqrt((u + 24) * (u + 24) / u) * pow(16 * u * u / ((u + 16) * (u + 18) * (u + 18)), 2 * third) *
              (u * u + 12 * u - 72) / (64 * u);
    Real Cm = sqrt(2 * (u + 12) * (u + 12) / u) * pow(4 * u / ((u + 18) * (u + 16) * (u + 16)), 2 * third) *
              (u * u - 48 * u - 1152) / (16 * u);
    Real C6 = pow(144 * u * u / (324 * (12 + u) * (192 + 336 * u + 36 * u * u + u * u * u)), Real(1) / 4);
    Real lhs = C6 * hyp2f1(Real(1) / 12, Real(5) / 12, 1, to_real(P.P16.eval(u0)));
    Real rhs = sqrt(Real(2)) * rho * Cp * hyp2f1(2 * third, 2 * third, 3 * half, to_real(P.Pp.eval(u0))) -
               rho * Cm * hyp2f1(2 * third, 2 * third, 3 * half, to_real(P.Pm.eval(u0)));
    return abs(lhs - rhs);
}

// scan u = i/10 for an admissible point; without one the check is diagnostic only
inline VerifyReport c6_spot_check(long bits, std::optional<Rational> u = std::nullopt) {
    VerifyReport r;
    r.id = "c6-relation-spotcheck";
    r.kind = "numeric";
    if (!u) {
        for (long i = 1; i <= 3000 && !u; ++i)
            if (c6_admissible(rat(i, 10))) u = rat(i, 10);
    }
    if (!u) {
        r.status = Status::Diagnostic;
        r.detail = "no u = i/10 in (0,300] has P16, P+ and P- all inside (-1,1); series evaluation not applicable";
        return r;
    }
    Real res = c6_residual(*u, bits);
    PrecisionScope ps(bits);
    r.status = res < pow(Real(10), -40) ? Status::Pass : Status::Diagnostic;
    r.detail = "u = " + to_string(*u) + ", |residual| = " + to_decimal(res, 6);
    return r;
}

}  // namespace holo
