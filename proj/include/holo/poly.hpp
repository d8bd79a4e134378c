#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holo/expr.hpp"
#include "holo/rational.hpp"
#include "holo/series.hpp"

namespace holo {

// dense univariate polynomial, coefficients from degree 0 upward
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> c, std::string var = "x") : var_(std::move(var)), c_(std::move(c)) {
        trim();
    }
    Poly(const Rational& c) : c_{c} { trim(); }  // NOLINT: constants convert implicitly
    Poly(long c) : c_{Rational(c)} { trim(); }   // NOLINT

    static Poly monomial(const Rational& c, long k, std::string var = "x") {
        std::vector<Rational> v(static_cast<size_t>(k + 1));
        v[static_cast<size_t>(k)] = c;
        return Poly(std::move(v), std::move(var));
    }
    static Poly x(std::string var = "x") { return monomial(1, 1, std::move(var)); }

    const std::string& var() const { return var_; }
    Poly with_var(std::string v) const {
        Poly p = *this;
        p.var_ = std::move(v);
        return p;
    }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(long k) const {
        if (k < 0 || k >= static_cast<long>(c_.size())) return 0;
        return c_[static_cast<size_t>(k)];
    }
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }
    // lowest exponent with a nonzero coefficient
    long low_degree() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return static_cast<long>(i);
        return -1;
    }

    Rational eval(const Rational& t) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long k = degree(); k >= 0; --k) {
            const Rational& c = c_[static_cast<size_t>(k)];
            if (c == 0) continue;
            Rational a = abs(c);
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (k == 0 || a != 1) os << a.get_str() << (k > 0 ? "*" : "");
            if (k > 0) os << var_ << (k > 1 ? "^" + std::to_string(k) : "");
            first = false;
        }
        return os.str();
    }

    PowerSeries to_series(std::string var = "") const {
        return PowerSeries::from_coeffs(c_, var.empty() ? var_ : var, kExact);
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::string var_ = "x";
    std::vector<Rational> c_;
};

namespace detail {
inline const std::string& pick_var(const Poly& a, const Poly& b) {
    return a.is_constant() ? b.var() : a.var();
}
}  // namespace detail

inline Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
    for (size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
    return Poly(std::move(c), detail::pick_var(a, b));
}
inline Poly operator-(const Poly& a) {
    std::vector<Rational> c = a.coeffs();
    for (auto& x : c) x = -x;
    return Poly(std::move(c), a.var());
}
inline Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(std::vector<Rational>{}, detail::pick_var(a, b));
    Integer da, db;
    auto A = detail::integerize(a.coeffs(), da);
    auto B = detail::integerize(b.coeffs(), db);
    std::vector<Integer> C(A.size() + B.size() - 1);
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i] == 0) continue;
        for (size_t j = 0; j < B.size(); ++j)
            mpz_addmul(C[i + j].get_mpz_t(), A[i].get_mpz_t(), B[j].get_mpz_t());
    }
    Integer den = da * db;
    std::vector<Rational> c(C.size());
    for (size_t i = 0; i < C.size(); ++i) c[i] = den == 1 ? Rational(C[i]) : rat(C[i], den);
    return Poly(std::move(c), detail::pick_var(a, b));
}
inline Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> c = a.coeffs();
    for (auto& x : c) x *= s;
    return Poly(std::move(c), a.var());
}

inline Poly pow(const Poly& p, long n) {
    if (n < 0) throw PreconditionError("negative polynomial power");
    Poly r(1), b = p;
    r = r.with_var(p.var());
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

inline Poly derivative(const Poly& p) {
    if (p.degree() < 1) return Poly(std::vector<Rational>{}, p.var());
    std::vector<Rational> c(static_cast<size_t>(p.degree()));
    for (long k = 1; k <= p.degree(); ++k) c[static_cast<size_t>(k - 1)] = p.coeff(k) * k;
    return Poly(std::move(c), p.var());
}

// a = q b + r
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    long db = b.degree();
    if (a.degree() < db) return {Poly(std::vector<Rational>{}, a.var()), a};
    std::vector<Rational> q(static_cast<size_t>(a.degree() - db + 1));
    Rational il = 1 / b.lc();
    for (long k = a.degree(); k >= db; --k) {
        Rational t = r[static_cast<size_t>(k)] * il;
        q[static_cast<size_t>(k - db)] = t;
        if (t == 0) continue;
        for (long j = 0; j <= db; ++j) r[static_cast<size_t>(k - db + j)] -= t * b.coeffs()[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(db));
    return {Poly(std::move(q), a.var()), Poly(std::move(r), a.var())};
}

inline Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    return (1 / p.lc()) * p;
}

namespace detail {

using IPoly = std::vector<Integer>;

inline void itrim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IPoly primitive_int(const Poly& p) {
    Integer d;
    IPoly r = integerize(p.coeffs(), d);
    Integer g = 0;
    for (auto& c : r) g = gcd(g, c);
    if (g > 1)
        for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

inline void make_primitive(IPoly& p) {
    Integer g = 0;
    for (auto& c : p) {
        g = gcd(g, c);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// pseudo-remainder of a by b
inline IPoly prem(IPoly a, const IPoly& b) {
    long db = static_cast<long>(b.size()) - 1;
    const Integer& lb = b.back();
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long da = static_cast<long>(a.size()) - 1;
        Integer la = a.back();
        Integer g = gcd(la, lb);
        Integer mb = lb / g, ma = la / g;
        for (auto& c : a) c *= mb;
        for (long j = 0; j <= db; ++j) a[static_cast<size_t>(da - db + j)] -= ma * b[static_cast<size_t>(j)];
        itrim(a);
        make_primitive(a);
    }
    return a;
}

}  // namespace detail

// monic gcd (primitive PRS over the integers)
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1).with_var(a.var());
    auto A = detail::primitive_int(a), B = detail::primitive_int(b);
    if (A.size() < B.size()) std::swap(A, B);
    while (!B.empty()) {
        auto R = detail::prem(A, B);
        A = std::move(B);
        B = std::move(R);
        if (B.size() == 1) return Poly(1).with_var(a.var());
    }
    std::vector<Rational> c(A.size());
    for (size_t i = 0; i < A.size(); ++i) c[i] = Rational(A[i]);
    return monic(Poly(std::move(c), a.var()));
}

inline Poly exact_quotient(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("exact_quotient: nonzero remainder");
    return q;
}

// p(q(x))
inline Poly compose(const Poly& p, const Poly& q) {
    Poly r = Poly(std::vector<Rational>{}, q.var());
    for (long k = p.degree(); k >= 0; --k) r = r * q + Poly(p.coeff(k));
    return r.with_var(q.var());
}

// squarefree part (monic)
inline Poly squarefree_part(const Poly& p) {
    if (p.degree() < 1) return Poly(1).with_var(p.var());
    return monic(exact_quotient(p, gcd(p, derivative(p))));
}

// univariate rational function, gcd-free with monic denominator
class RatFun {
public:
    RatFun() : den_(1) {}
    RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RatFun(long c) : num_(c), den_(1) {}             // NOLINT
    RatFun(Poly n) : num_(std::move(n)), den_(Poly(1).with_var(num_.var())) {}  // NOLINT
    RatFun(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFun x(std::string var = "x") { return RatFun(Poly::x(std::move(var))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const std::string& var() const { return num_.is_constant() ? den_.var() : num_.var(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.coeff(0) / den_.coeff(0); }

    Rational eval(const Rational& t) const {
        Rational d = den_.eval(t);
        if (d == 0) throw PreconditionError("rational function evaluated at a pole");
        return num_.eval(t) / d;
    }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    std::string to_string() const {
        if (is_polynomial()) return "(" + (1 / den_.coeff(0) * num_).to_string() + ")";
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

    // Laurent expansion at 0 with coefficients known below x^order;
    // exact when the denominator is a monomial
    PowerSeries to_series(const std::string& var, long order) const {
        if (num_.is_zero()) return PowerSeries::zero(var);
        long j = num_.low_degree(), k = den_.low_degree();
        std::vector<Rational> n0(num_.coeffs().begin() + j, num_.coeffs().end());
        std::vector<Rational> d0(den_.coeffs().begin() + k, den_.coeffs().end());
        if (d0.size() == 1) {
            for (auto& c : n0) c /= d0[0];
            return PowerSeries(var, 1, j - k, std::move(n0), kExact);
        }
        long rel = order - (j - k);
        if (rel <= 0) return PowerSeries::zero(var, order);
        PowerSeries a = truncate(PowerSeries::from_coeffs(std::move(n0), var, kExact), rel);
        PowerSeries b = PowerSeries::from_coeffs(std::move(d0), var, kExact);
        return shift(div(a, b), j - k);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1).with_var(den_.var());
            return;
        }
        if (!den_.is_constant()) {
            Poly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_quotient(num_, g);
                den_ = exact_quotient(den_, g);
            }
        }
        Rational l = den_.lc();
        if (l != 1) {
            num_ = (1 / l) * num_;
            den_ = (1 / l) * den_;
        }
    }
    Poly num_, den_;
};

inline RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den() == b.den()) return RatFun(a.num() + b.num(), a.den());
    if (a.is_polynomial() && b.is_polynomial())
        return RatFun((1 / a.den().coeff(0)) * a.num() + (1 / b.den().coeff(0)) * b.num());
    Poly g = gcd(a.den(), b.den());
    Poly bd = exact_quotient(b.den(), g), ad = exact_quotient(a.den(), g);
    return RatFun(a.num() * bd + b.num() * ad, a.den() * bd);
}
inline RatFun operator-(const RatFun& a) { return RatFun(-a.num(), a.den()); }
inline RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
inline RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun(0);
    if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num() * b.num(), a.den() * b.den());
    // cross-cancel first to keep sizes down
    Poly g1 = gcd(a.num(), b.den()), g2 = gcd(b.num(), a.den());
    Poly an = exact_quotient(a.num(), g1), bd = exact_quotient(b.den(), g1);
    Poly bn = exact_quotient(b.num(), g2), ad = exact_quotient(a.den(), g2);
    return RatFun(an * bn, ad * bd);
}
inline RatFun inverse(const RatFun& a) {
    if (a.is_zero()) throw PreconditionError("inverse of zero rational function");
    return RatFun(a.den(), a.num());
}
inline RatFun operator/(const RatFun& a, const RatFun& b) { return a * inverse(b); }

inline RatFun pow(const RatFun& a, long n) {
    if (n < 0) return pow(inverse(a), -n);
    return RatFun(pow(a.num(), n), pow(a.den(), n));
}

inline RatFun derivative(const RatFun& a) {
    if (a.is_polynomial()) return RatFun(derivative(a.num()), a.den());
    return RatFun(derivative(a.num()) * a.den() - a.num() * derivative(a.den()), a.den() * a.den());
}

// f(g)
inline RatFun compose(const RatFun& f, const RatFun& g) {
    if (f.is_zero()) return RatFun(0);
    const Poly &a = g.num(), &b = g.den();
    long dn = f.num().degree(), dd = f.den().degree();
    long m = std::max(dn, dd);
    std::vector<Poly> ap{Poly(1)}, bp{Poly(1)};
    for (long i = 1; i <= m; ++i) {
        ap.push_back(ap.back() * a);
        bp.push_back(bp.back() * b);
    }
    auto homog = [&](const Poly& p) {
        Poly s;
        long d = p.degree();
        for (long i = 0; i <= d; ++i)
            if (p.coeff(i) != 0) s = s + p.coeff(i) * (ap[static_cast<size_t>(i)] * bp[static_cast<size_t>(d - i)]);
        return s;
    };
    // N(a/b) = homog(N)/b^dn, D(a/b) = homog(D)/b^dd
    Poly n = homog(f.num()), d = homog(f.den());
    if (dn >= dd)
        d = d * bp[static_cast<size_t>(dn - dd)];
    else
        n = n * bp[static_cast<size_t>(dd - dn)];
    return RatFun(n.with_var(g.var()), d.with_var(g.var()));
}

// sparse multivariate polynomial
class MPoly {
public:
    using Exps = std::vector<int>;
    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MPoly constant(const Rational& c, std::vector<std::string> vars) {
        MPoly p(std::move(vars));
        p.add_term(Exps(p.vars_.size(), 0), c);
        return p;
    }
    static MPoly variable(size_t i, std::vector<std::string> vars) {
        MPoly p(std::move(vars));
        Exps e(p.vars_.size(), 0);
        e.at(i) = 1;
        p.add_term(e, 1);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exps, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t nvars() const { return vars_.size(); }

    void add_term(const Exps& e, const Rational& c) {
        if (e.size() != vars_.size()) throw PreconditionError("exponent vector arity mismatch");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int degree_in(size_t i) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
        return d;
    }
    int min_degree_in(size_t i) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = d < 0 ? e[i] : std::min(d, e[i]);
        return std::max(d, 0);
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

private:
    std::vector<std::string> vars_;
    std::map<Exps, Rational> terms_;
};

inline MPoly operator+(const MPoly& a, const MPoly& b) {
    if (a.vars() != b.vars()) throw PreconditionError("MPoly variable lists differ");
    MPoly r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r;
}
inline MPoly operator-(const MPoly& a) {
    MPoly r(a.vars());
    for (const auto& [e, c] : a.terms()) r.add_term(e, -c);
    return r;
}
inline MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
inline MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars() != b.vars()) throw PreconditionError("MPoly variable lists differ");
    MPoly r(a.vars());
    for (const auto& [e1, c1] : a.terms())
        for (const auto& [e2, c2] : b.terms()) {
            MPoly::Exps e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}
inline MPoly pow(const MPoly& a, long n) {
    if (n < 0) throw PreconditionError("negative MPoly power");
    MPoly r = MPoly::constant(1, a.vars());
    for (long i = 0; i < n; ++i) r = r * a;
    return r;
}

// content 1 (integer primitive) and positive coefficient on the lex-largest monomial
inline MPoly normalized(const MPoly& p) {
    if (p.is_zero()) return p;
    Integer den = 1, g = 0;
    for (const auto& [e, c] : p.terms()) den = lcm(den, c.get_den());
    for (const auto& [e, c] : p.terms()) g = gcd(g, Integer(c.get_num() * (den / c.get_den())));
    Rational f = rat(den, g);
    if (p.terms().rbegin()->second < 0) f = -f;
    MPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c * f);
    return r;
}

// evaluate with values in any commutative ring T given powers and scalars
template <class T, class Scalar>
T evaluate(const MPoly& p, const std::vector<T>& vals, const T& one, Scalar scalar) {
    size_t n = p.nvars();
    if (vals.size() != n) throw PreconditionError("evaluate: wrong number of values");
    std::vector<std::vector<T>> pw(n);
    for (size_t i = 0; i < n; ++i) {
        pw[i].push_back(one);
        int d = p.degree_in(i);
        for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * vals[i]);
    }
    T acc = scalar(Rational(0));
    for (const auto& [e, c] : p.terms()) {
        T t = scalar(c);
        for (size_t i = 0; i < n; ++i)
            if (e[i]) t = t * pw[i][static_cast<size_t>(e[i])];
        acc = acc + t;
    }
    return acc;
}

// P with each variable bound to a rational function; denominators cleared once
inline RatFun substitute(const MPoly& p, const std::map<std::string, RatFun>& bindings) {
    size_t n = p.nvars();
    std::vector<const RatFun*> b(n);
    for (size_t i = 0; i < n; ++i) {
        auto it = bindings.find(p.vars()[i]);
        if (it == bindings.end()) throw PreconditionError("unbound variable " + p.vars()[i]);
        b[i] = &it->second;
    }
    std::vector<int> d(n);
    std::vector<std::vector<Poly>> np(n), dp(n);
    for (size_t i = 0; i < n; ++i) {
        d[i] = p.degree_in(i);
        np[i].push_back(Poly(1));
        dp[i].push_back(Poly(1));
        for (int k = 1; k <= d[i]; ++k) {
            np[i].push_back(np[i].back() * b[i]->num());
            dp[i].push_back(dp[i].back() * b[i]->den());
        }
    }
    Poly num;
    for (const auto& [e, c] : p.terms()) {
        Poly t(c);
        for (size_t i = 0; i < n; ++i) {
            if (e[i]) t = t * np[i][static_cast<size_t>(e[i])];
            if (d[i] - e[i]) t = t * dp[i][static_cast<size_t>(d[i] - e[i])];
        }
        num = num + t;
    }
    Poly den(1);
    for (size_t i = 0; i < n; ++i) den = den * dp[i][static_cast<size_t>(d[i])];
    std::string v = n ? b[0]->var() : "x";
    return RatFun(num.with_var(v), den.with_var(v));
}

struct Verdict {
    bool holds = false;
    std::string detail;  // residual or explanation when it fails
};

inline Verdict curve_membership(const MPoly& p, const std::map<std::string, RatFun>& bindings) {
    RatFun r = substitute(p, bindings);
    if (r.is_zero()) return {true, "identically zero"};
    return {false, r.to_string()};
}

// numerator of P(1/u, 1/v) with monomial content removed
inline MPoly invert_variables(const MPoly& p) {
    MPoly r(p.vars());
    std::vector<int> d(p.nvars()), lo(p.nvars());
    for (size_t i = 0; i < p.nvars(); ++i) d[i] = p.degree_in(i);
    for (const auto& [e, c] : p.terms()) {
        MPoly::Exps f(e.size());
        for (size_t i = 0; i < e.size(); ++i) f[i] = d[i] - e[i];
        r.add_term(f, c);
    }
    for (size_t i = 0; i < r.nvars(); ++i) lo[i] = r.min_degree_in(i);
    MPoly s(p.vars());
    for (const auto& [e, c] : r.terms()) {
        MPoly::Exps f(e.size());
        for (size_t i = 0; i < e.size(); ++i) f[i] = e[i] - lo[i];
        s.add_term(f, c);
    }
    return s;
}

// Q proportional to numerator of P(1/u,1/v); variables matched by position
inline Verdict equate_under_inversion(const MPoly& p, const MPoly& q) {
    if (p.nvars() != q.nvars()) throw PreconditionError("equate_under_inversion: variable count mismatch");
    MPoly a = normalized(invert_variables(p));
    MPoly b = normalized(q);
    MPoly bb(a.vars());
    for (const auto& [e, c] : b.terms()) bb.add_term(e, c);
    if (a == bb) return {true, "proportional"};
    return {false, "normalized supports or coefficients differ"};
}

inline std::string format_mpoly(const MPoly& p) {
    std::ostringstream os;
    os << "mpoly";
    for (const auto& v : p.vars()) os << " " << v;
    os << "\n";
    for (const auto& [e, c] : p.terms()) {
        os << to_string(c);
        for (int k : e) os << " " << k;
        os << "\n";
    }
    return os.str();
}

inline MPoly parse_mpoly_text(const std::string& text) {
    std::istringstream is(text);
    std::string line, tok;
    if (!std::getline(is, line)) throw ParseError("empty mpoly file");
    std::istringstream hs(line);
    hs >> tok;
    if (tok != "mpoly") throw ParseError("mpoly header expected");
    std::vector<std::string> vars;
    while (hs >> tok) vars.push_back(tok);
    MPoly p(vars);
    long lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!(ls >> tok)) continue;
        Rational c = parse_rational(tok);
        MPoly::Exps e;
        int k;
        while (ls >> k) {
            if (k < 0) throw ParseError("negative exponent on line " + std::to_string(lineno));
            e.push_back(k);
        }
        if (!ls.eof()) throw ParseError("bad exponent on line " + std::to_string(lineno));
        if (e.size() != vars.size()) throw ParseError("arity mismatch on line " + std::to_string(lineno));
        p.add_term(e, c);
    }
    return p;
}

namespace detail {

struct RatFunAlg {
    using value = RatFun;
    std::string var;
    value number(const Integer& n) { return RatFun(Rational(n)); }
    value ident(const std::string& id) {
        if (id != var) throw ParseError("unknown identifier '" + id + "' (expected " + var + ")");
        return RatFun::x(var);
    }
    value add(const value& a, const value& b) { return a + b; }
    value sub(const value& a, const value& b) { return a - b; }
    value mul(const value& a, const value& b) { return a * b; }
    value div(const value& a, const value& b) { return a / b; }
    value neg(const value& a) { return -a; }
    value pow(const value& a, long e) { return holo::pow(a, e); }
};

struct MPolyAlg {
    using value = MPoly;
    std::vector<std::string> vars;
    value number(const Integer& n) { return MPoly::constant(Rational(n), vars); }
    value ident(const std::string& id) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == id) return MPoly::variable(i, vars);
        throw ParseError("unknown variable '" + id + "'");
    }
    value add(const value& a, const value& b) { return a + b; }
    value sub(const value& a, const value& b) { return a - b; }
    value mul(const value& a, const value& b) { return a * b; }
    value div(const value& a, const value& b) {
        if (b.terms().size() != 1 || b.terms().begin()->first != MPoly::Exps(vars.size(), 0))
            throw ParseError("polynomial expressions may only divide by constants");
        return a * MPoly::constant(1 / b.terms().begin()->second, vars);
    }
    value neg(const value& a) { return -a; }
    value pow(const value& a, long e) { return holo::pow(a, e); }
};

}  // namespace detail

inline RatFun parse_ratfun(std::string_view src, const std::string& var = "x") {
    detail::RatFunAlg alg{var};
    return read_expr(src, alg);
}

inline MPoly parse_mpoly(std::string_view src, std::vector<std::string> vars) {
    detail::MPolyAlg alg{std::move(vars)};
    return read_expr(src, alg);
}

}  // namespace holo
