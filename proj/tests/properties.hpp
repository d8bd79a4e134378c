#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "holo/diffop.hpp"
#include "holo/series.hpp"

namespace holo::props {

struct Outcome {
    std::string name;
    int passed = 0;
    int total = 0;
    std::string first_failure;
    bool ok() const { return passed == total; }
};

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational small() {
        long n = integer(-9, 9), d = integer(1, 5);
        return rat(n, d);
    }
    Rational nonzero() {
        Rational r;
        do r = small(); while (r == 0);
        return r;
    }

    // valuation v, order N, coefficient at x^v equal to lead
    PowerSeries series(long v, long N, const Rational& lead, const std::string& var = "x") {
        std::vector<Rational> c(static_cast<size_t>(N - v));
        c[0] = lead;
        for (size_t i = 1; i < c.size(); ++i) c[i] = small();
        return PowerSeries(var, 1, v, std::move(c), N);
    }

    Poly poly(long deg, bool nonzero_top = false) {
        std::vector<Rational> c;
        for (long i = 0; i <= deg; ++i) c.push_back(i == deg && nonzero_top ? nonzero() : small());
        return Poly(std::move(c), "x");
    }

    // order r, polynomial coefficients, nonzero leading coefficient
    DiffOp op(long r, long deg) {
        std::vector<RatFun> a;
        for (long j = 0; j <= r; ++j) a.emplace_back(poly(deg, j == r));
        return DiffOp(std::move(a), "x");
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// equality on the common range of validity
inline bool agree(const PowerSeries& a, const PowerSeries& b) {
    long o = std::min(a.order(), b.order());
    return truncate(a, o) == truncate(b, o);
}

inline Outcome run(const std::string& name, int count, std::uint64_t seed,
                   const std::function<bool(Gen&, std::string&)>& body) {
    Outcome out{name, 0, count, {}};
    Gen g(seed);
    for (int i = 0; i < count; ++i) {
        std::string why;
        bool ok = false;
        try {
            ok = body(g, why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        if (ok)
            ++out.passed;
        else if (out.first_failure.empty())
            out.first_failure = "instance " + std::to_string(i) + ": " + why;
    }
    return out;
}

inline Outcome reversion(int count = 100) {
    return run("reversion", count, 11, [](Gen& g, std::string& why) {
        long N = g.integer(6, 24);
        PowerSeries f = g.series(1, N, g.nonzero());
        PowerSeries r = revert(f);
        if (!agree(compose(f, r), PowerSeries::variable("x"))) return why = "f(revert f) != x", false;
        if (!agree(compose(r, f), PowerSeries::variable("x"))) return why = "revert f (f) != x", false;
        if (!agree(revert(r), f)) return why = "revert twice differs", false;
        return true;
    });
}

inline Outcome exp_log(int count = 100) {
    return run("exp-log", count, 12, [](Gen& g, std::string& why) {
        long N = g.integer(4, 24);
        PowerSeries h = g.series(g.integer(1, 3), N, g.nonzero());
        if (!agree(log(exp(h)), h)) return why = "log(exp h) != h", false;
        PowerSeries one_h = PowerSeries::constant(1, "x") + h;
        if (!agree(exp(log(one_h)), one_h)) return why = "exp(log(1+h)) != 1+h", false;
        PowerSeries k = g.series(1, N, g.nonzero());
        if (!agree(exp(h + k), exp(h) * exp(k))) return why = "exp not additive", false;
        return true;
    });
}

inline Outcome pow_roundtrip(int count = 100) {
    return run("pow", count, 13, [](Gen& g, std::string& why) {
        long N = g.integer(4, 20);
        PowerSeries f = g.series(0, N, 1);
        Rational a(g.integer(-7, 7), g.integer(1, 6));
        if (a == 0) a = rat(1, 3);
        a.canonicalize();
        Rational b(g.integer(-7, 7), g.integer(1, 6));
        b.canonicalize();
        if (!agree(pow_rational(pow_rational(f, a), 1 / a), f)) return why = "(f^a)^(1/a) != f for a=" + to_string(a), false;
        if (!agree(pow_rational(f, a) * pow_rational(f, b), pow_rational(f, a + b))) return why = "f^a f^b != f^(a+b)", false;
        long n = g.integer(-4, 6);
        if (!agree(pow_int(f, n), pow_rational(f, Rational(n)))) return why = "pow_int disagrees at n=" + std::to_string(n), false;
        // even valuation: (x^2 g)^(1/2) = x g^(1/2)
        PowerSeries m = g.series(2, N + 2, 1);
        if (!agree(pow_rational(pow_rational(m, rat(1, 2)), 2), m)) return why = "sqrt round-trip with valuation 2", false;
        return true;
    });
}

inline Outcome hadamard_identity(int count = 100) {
    return run("hadamard-identity", count, 14, [](Gen& g, std::string& why) {
        long N = g.integer(2, 30);
        PowerSeries f = g.series(0, N, g.small());
        PowerSeries geo = inv(PowerSeries::constant(1, "x") - PowerSeries::variable("x", N));
        if (!(hadamard(f, geo) == f)) return why = "f * 1/(1-x) != f", false;
        if (!(hadamard(geo, f) == f)) return why = "1/(1-x) * f != f", false;
        PowerSeries h = g.series(0, N, g.small());
        if (!(hadamard(f, h) == hadamard(h, f))) return why = "not commutative", false;
        return true;
    });
}

inline Outcome schwarzian_mobius(int count = 100) {
    return run("schwarzian-mobius", count, 15, [](Gen& g, std::string& why) {
        long N = g.integer(6, 20);
        PowerSeries f = g.series(1, N, g.nonzero());
        Rational a, b, c, d;
        do {
            a = g.small();
            b = g.small();
            c = g.small();
            d = g.nonzero();
        } while (a * d - b * c == 0);
        PowerSeries m = (a * f + b) / (c * f + d);
        if (!agree(schwarzian(m), schwarzian(f))) return why = "S(M o f) != S(f)", false;
        return true;
    });
}

inline Outcome operator_composition(int count = 100) {
    return run("operator-composition", count, 16, [](Gen& g, std::string& why) {
        DiffOp L1 = g.op(g.integer(0, 3), g.integer(0, 3));
        DiffOp L2 = g.op(g.integer(0, 3), g.integer(0, 3));
        if (g.integer(0, 1)) {
            Rational c = g.nonzero();
            L1 = RatFun(Poly({1}, "x")) / RatFun(Poly({Rational(1), c}, "x")) * L1;
        }
        PowerSeries f = g.series(0, g.integer(10, 30), g.small());
        if (!agree(apply(L1 * L2, f), apply(L1, apply(L2, f)))) return why = "(L1 L2) f != L1 (L2 f)", false;
        DiffOp L3 = g.op(g.integer(0, 2), g.integer(0, 2));
        if ((L1 * L2) * L3 != L1 * (L2 * L3)) return why = "product not associative", false;
        return true;
    });
}

inline Outcome d_theta_roundtrip(int count = 100) {
    return run("d-theta-roundtrip", count, 17, [](Gen& g, std::string& why) {
        DiffOp L = g.op(g.integer(0, 5), g.integer(0, 4));
        if (DiffOp::from_theta(L.theta_coeffs(), "x") != L) return why = "D -> theta -> D changed " + L.to_string(), false;
        std::vector<RatFun> b;
        long r = g.integer(0, 5);
        for (long j = 0; j <= r; ++j) b.emplace_back(g.poly(g.integer(0, 3), j == r));
        if (DiffOp::from_theta(b, "x").theta_coeffs() != b) return why = "theta -> D -> theta changed", false;
        return true;
    });
}

inline std::vector<Outcome> all(int count = 100) {
    return {reversion(count),           exp_log(count),
            pow_roundtrip(count),       hadamard_identity(count),
            schwarzian_mobius(count),   operator_composition(count),
            d_theta_roundtrip(count)};
}

}  // namespace holo::props
