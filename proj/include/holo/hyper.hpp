#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holo/rational.hpp"
#include "holo/series.hpp"

namespace holo {

struct HGParams {
    std::vector<Rational> upper, lower;
    Rational scale = 1;  // argument multiplier

    void check() const {
        for (const auto& b : lower)
            if (is_integer(b) && b <= 0) throw PreconditionError("lower parameter " + to_string(b) + " is a nonpositive integer");
    }
};

// sum prod (a_i)_n / prod (b_j)_n * scale^n / n! * x^n, coefficients below x^order;
// exact when some upper parameter is a nonpositive integer (terminating series)
inline PowerSeries pfq_series(const HGParams& p, long order, const std::string& var = "x") {
    p.check();
    std::vector<Rational> c;
    Rational t = 1;
    bool terminated = false;
    for (long n = 0; n < order; ++n) {
        c.push_back(t);
        Rational num = p.scale, den = n + 1;
        for (const auto& a : p.upper) num *= a + n;
        for (const auto& b : p.lower) den *= b + n;
        t = num / den;
        t *= c.back();
        if (t == 0) {
            terminated = true;
            break;
        }
    }
    return PowerSeries::from_coeffs(std::move(c), var, terminated ? kExact : order);
}

// pFq evaluated at a series argument of positive valuation, coefficients below arg-variable^order
inline PowerSeries pfq_series(const HGParams& p, const PowerSeries& arg, long order) {
    if (arg.is_zero()) return PowerSeries::constant(1, arg.var(), order);
    if (arg.valuation() <= 0) throw PreconditionError("pfq_series: argument needs positive valuation");
    // exponents of arg are multiples of v/s; we need (v/s) * m >= order
    long need = detail::ceil_div(order * arg.scale(), arg.valuation()) + 1;
    PowerSeries f = pfq_series(p, need, arg.var());
    PowerSeries a = arg.exact() ? truncate(arg, order * arg.scale()) : arg;
    return truncate_at(compose(f, a), Rational(order));
}

// theta_2 = 2 q^(1/4) sum q^(n(n+1)), theta_3 = 1 + 2 sum q^(n^2), theta_4 = 1 + 2 sum (-1)^n q^(n^2)
inline PowerSeries theta_null(int which, long order, const std::string& var = "q") {
    if (which == 3 || which == 4) {
        std::vector<Rational> c(static_cast<size_t>(order));
        if (order > 0) c[0] = 1;
        for (long n = 1; n * n < order; ++n) c[static_cast<size_t>(n * n)] = (which == 4 && n % 2) ? -2 : 2;
        return PowerSeries::from_coeffs(std::move(c), var, order);
    }
    if (which == 2) {
        // scale 4: exponent numerators 1 + 4 n (n+1)
        long O = 4 * order;
        std::vector<Rational> c(static_cast<size_t>(std::max(0L, O - 1)));
        for (long n = 0; 1 + 4 * n * (n + 1) < O; ++n) c[static_cast<size_t>(4 * n * (n + 1))] = 2;
        return PowerSeries(var, 4, 1, std::move(c), O);
    }
    throw PreconditionError("theta_null: which must be 2, 3 or 4");
}

// prod (1 - q^n) through q^order (Euler pentagonal theorem)
inline PowerSeries euler_product(long order, const std::string& var = "q") {
    std::vector<Rational> c(static_cast<size_t>(std::max(order, 1L)));
    for (long k = 0;; ++k) {
        bool any = false;
        for (long s : {k, -k}) {
            if (k == 0 && s != 0) continue;
            long e = s * (3 * s - 1) / 2;
            if (e < order) {
                c[static_cast<size_t>(e)] += (k % 2) ? -1 : 1;
                any = true;
            }
            if (k == 0) break;
        }
        if (!any) break;
    }
    return PowerSeries::from_coeffs(std::move(c), var, order);
}

// prod eta(N tau)^e, with eta = q^(1/24) prod (1 - q^n)
struct EtaQuotient {
    std::vector<std::pair<long, long>> factors;  // (N, e)

    Rational prefactor() const {
        Rational s = 0;
        for (const auto& [N, e] : factors) s += Rational(N * e);
        return s / 24;
    }
};

inline PowerSeries eta_quotient(const EtaQuotient& eq, long order, const std::string& var = "q") {
    Rational pre = eq.prefactor();
    Rational relq = Rational(order) - pre;
    Integer rc;
    mpz_cdiv_q(rc.get_mpz_t(), relq.get_num_mpz_t(), relq.get_den_mpz_t());
    long R = std::max(1L, rc.get_si());
    PowerSeries acc = PowerSeries::constant(1, var);
    for (const auto& [N, e] : eq.factors) {
        if (N <= 0) throw PreconditionError("eta multiplier must be positive");
        if (e == 0) continue;
        long M = detail::ceil_div(R, N) + 1;
        PowerSeries E = substitute_power(euler_product(M, var), N);
        acc = truncate(mul(acc, pow_int(truncate(E, R), e)), R);
    }
    long den = pre.get_den().get_si(), num = pre.get_num().get_si();
    return truncate_at(shift(acc, num, den), Rational(order));
}

inline PowerSeries delta_series(long order, const std::string& var = "q") {
    return eta_quotient({{{1, 24}}}, order, var);
}

// Delta(q)/Delta(q^2)
inline PowerSeries j2_series(long order, const std::string& var = "q") {
    return eta_quotient({{{1, 24}, {2, -24}}}, order, var);
}

// b(k,n) = 4F3([(1+k+n)/2, (1+k+n)/2, (2+k+n)/2, (2+k+n)/2], [1+k, 1+n, 1+k+n]; 16x),
// times C(k+n,k) for a(k,n)
inline HGParams form_factor_params(long k, long n) {
    if (k < 0 || n < 0) throw PreconditionError("form factor indices must be nonnegative integers");
    Rational a = rat(1 + k + n, 2), b = rat(2 + k + n, 2);
    return HGParams{{a, a, b, b}, {Rational(1 + k), Rational(1 + n), Rational(1 + k + n)}, 16};
}

inline PowerSeries form_factor_series(long k, long n, long order, bool with_binomial, const std::string& var = "x") {
    PowerSeries b = pfq_series(form_factor_params(k, n), order, var);
    return with_binomial ? scale_by(b, Rational(binomial(k + n, k))) : b;
}

enum class PowerBase { K, Sqrt };

// Had^n of 2F1([1/2,1/2],[1];16z) or of (1-4z)^(-1/2)
inline PowerSeries hadamard_power_family(long n, PowerBase base, long order, const std::string& var = "z") {
    if (n < 1) throw PreconditionError("hadamard_power_family needs n >= 1");
    PowerSeries b = base == PowerBase::K
                        ? pfq_series(HGParams{{rat(1, 2), rat(1, 2)}, {1}, 16}, order, var)
                        : pfq_series(HGParams{{rat(1, 2)}, {}, 4}, order, var);
    PowerSeries r = b;
    for (long i = 1; i < n; ++i) r = hadamard(r, b);
    return r;
}

}  // namespace holo
