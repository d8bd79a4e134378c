#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace holo {

using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// bad input to an operation (wrong valuation, non-unit leading term, ...)
struct PreconditionError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

inline Rational rat(long n, long d = 1) {
    if (d == 0) throw PreconditionError("zero denominator");
    Rational r{Integer(n), Integer(d)};
    r.canonicalize();
    return r;
}

inline Rational rat(const Integer& n, const Integer& d) {
    if (d == 0) throw PreconditionError("zero denominator");
    Rational r{n, d};
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// always "num/den", also for integers
inline std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    Integer n, d(1);
    try {
        if (slash == std::string::npos) {
            if (n.set_str(str, 10) != 0) throw ParseError("bad rational: " + str);
        } else {
            if (n.set_str(str.substr(0, slash), 10) != 0 ||
                d.set_str(str.substr(slash + 1), 10) != 0)
                throw ParseError("bad rational: " + str);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + str);
    }
    if (d == 0) throw ParseError("zero denominator: " + str);
    return rat(n, d);
}

inline Integer binomial(long n, long k) {
    Integer r;
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Rational pow(const Rational& b, long e) {
    Rational base = b, r = 1;
    if (e < 0) {
        if (base == 0) throw PreconditionError("zero to a negative power");
        base = 1 / base;
        e = -e;
    }
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// lcm of denominators, so that v * den is integral
inline Integer common_denominator(const std::vector<Rational>& v) {
    Integer d = 1;
    for (const auto& c : v)
        if (c.get_den() != 1) d = lcm(d, c.get_den());
    return d;
}

}  // namespace holo
