#pragma once

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holo/rational.hpp"

namespace holo {

// order value meaning "no truncation" (exact polynomial / Laurent polynomial)
inline constexpr long kExact = LONG_MAX / 8;

namespace detail {

inline long ord_shift(long o, long k) { return o >= kExact ? kExact : o + k; }
inline long ord_scale(long o, long m) { return o >= kExact ? kExact : o * m; }
inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }
inline long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace detail

// Truncated series sum c_k x^(k/scale), k = valuation .. ; coefficients with
// exponent numerator >= order are unknown.
class PowerSeries {
public:
    PowerSeries() = default;

    PowerSeries(std::string var, long scale, long valuation, std::vector<Rational> coeffs,
                long order)
        : var_(std::move(var)), scale_(scale), val_(valuation), order_(order),
          c_(std::move(coeffs)) {
        if (scale_ <= 0) throw PreconditionError("series scale must be positive");
        normalize();
    }

    static PowerSeries zero(std::string var, long order = kExact) {
        return PowerSeries(std::move(var), 1, 0, {}, order);
    }
    static PowerSeries constant(const Rational& c, std::string var, long order = kExact) {
        return PowerSeries(std::move(var), 1, 0, {c}, order);
    }
    // c * x^(num/scale)
    static PowerSeries monomial(const Rational& c, long num, std::string var, long scale = 1,
                                long order = kExact) {
        return PowerSeries(std::move(var), scale, num, {c}, order);
    }
    static PowerSeries variable(std::string var, long order = kExact) {
        return monomial(1, 1, std::move(var), 1, order);
    }
    // coefficients for x^0, x^1, ...
    static PowerSeries from_coeffs(std::vector<Rational> c, std::string var, long order) {
        return PowerSeries(std::move(var), 1, 0, std::move(c), order);
    }

    const std::string& var() const { return var_; }
    long scale() const { return scale_; }
    long valuation() const { return c_.empty() ? order_ : val_; }
    long order() const { return order_; }
    bool exact() const { return order_ >= kExact; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    // one past the last stored exponent numerator
    long end() const { return c_.empty() ? val_ : val_ + static_cast<long>(c_.size()); }

    Rational order_exponent() const { return rat(order_, scale_); }

    // coefficient of x^(num/scale)
    Rational coeff(long num) const {
        if (num >= order_) throw PreconditionError("coefficient beyond truncation order");
        if (c_.empty() || num < val_ || num >= end()) return 0;
        return c_[static_cast<size_t>(num - val_)];
    }
    // coefficient of x^e for a rational exponent e
    Rational coeff_at(const Rational& e) const {
        Rational n = e * scale_;
        if (!is_integer(n)) return 0;
        return coeff(n.get_num().get_si());
    }
    // integer-exponent coefficient (convenience for scale-1 series)
    Rational operator[](long k) const { return coeff_at(Rational(k)); }

    Rational leading() const {
        if (c_.empty()) throw PreconditionError("zero series has no leading coefficient");
        return c_.front();
    }

    PowerSeries with_var(std::string v) const {
        PowerSeries r = *this;
        r.var_ = std::move(v);
        return r;
    }

    // exponents lifted to scale * m
    PowerSeries lifted(long m) const {
        if (m == 1) return *this;
        PowerSeries r;
        r.var_ = var_;
        r.scale_ = scale_ * m;
        r.val_ = val_ * m;
        r.order_ = detail::ord_scale(order_, m);
        if (!c_.empty()) {
            r.c_.assign((c_.size() - 1) * static_cast<size_t>(m) + 1, Rational(0));
            for (size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<size_t>(m)] = c_[i];
        }
        return r;  // deliberately not normalized
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.var_ == b.var_ && a.scale_ == b.scale_ && a.val_ == b.val_ &&
               a.order_ == b.order_ && a.c_ == b.c_;
    }

    std::string to_string(long max_terms = 12) const;

    // raw construction without normalization, for internal algorithms
    static PowerSeries raw(std::string var, long scale, long val, std::vector<Rational> c,
                           long order) {
        PowerSeries r;
        r.var_ = std::move(var);
        r.scale_ = scale;
        r.val_ = val;
        r.order_ = order;
        r.c_ = std::move(c);
        return r;
    }
    void renormalize() { normalize(); }

private:
    void normalize() {
        if (!exact() && end() > order_) {
            long keep = std::max(0L, order_ - val_);
            c_.resize(static_cast<size_t>(keep));
        }
        size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = 0;
            if (!exact()) order_ = detail::floor_div(order_, scale_);
            scale_ = 1;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<long>(lead);
        }
        while (c_.back() == 0) c_.pop_back();
        long g = scale_;
        g = std::gcd(g, std::labs(val_));
        for (size_t i = 1; i < c_.size() && g > 1; ++i)
            if (c_[i] != 0) g = std::gcd(g, static_cast<long>(i));
        if (g > 1) {
            std::vector<Rational> nc;
            nc.reserve(c_.size() / static_cast<size_t>(g) + 1);
            for (size_t i = 0; i < c_.size(); i += static_cast<size_t>(g)) nc.push_back(c_[i]);
            c_ = std::move(nc);
            val_ /= g;
            scale_ /= g;
            if (!exact()) order_ = detail::floor_div(order_, g);
        }
    }

    std::string var_ = "x";
    long scale_ = 1;
    long val_ = 0;
    long order_ = kExact;
    std::vector<Rational> c_;
};

inline PowerSeries truncate(const PowerSeries& f, long order) {
    if (order >= f.order()) return f;
    return PowerSeries(f.var(), f.scale(), f.valuation(), f.coeffs(), order);
}

// truncate at the rational exponent e (coefficients strictly below x^e kept)
inline PowerSeries truncate_at(const PowerSeries& f, const Rational& e) {
    Rational n = e * f.scale();
    Integer fl;
    mpz_cdiv_q(fl.get_mpz_t(), n.get_num_mpz_t(), n.get_den_mpz_t());
    return truncate(f, fl.get_si());
}

namespace detail {

inline void check_var(const PowerSeries& a, const PowerSeries& b) {
    if (a.var() != b.var())
        throw PreconditionError("series variable mismatch: " + a.var() + " vs " + b.var());
}

inline std::pair<PowerSeries, PowerSeries> unify(const PowerSeries& a, const PowerSeries& b) {
    long s = lcm_l(a.scale(), b.scale());
    return {a.lifted(s / a.scale()), b.lifted(s / b.scale())};
}

// coefficients times common denominator, as integers
inline std::vector<Integer> integerize(const std::vector<Rational>& c, Integer& den) {
    den = common_denominator(c);
    std::vector<Integer> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (den == 1)
            out[i] = c[i].get_num();
        else
            out[i] = c[i].get_num() * (den / c[i].get_den());
    }
    return out;
}

}  // namespace detail

inline PowerSeries add(const PowerSeries& a0, const PowerSeries& b0) {
    detail::check_var(a0, b0);
    auto [a, b] = detail::unify(a0, b0);
    long order = std::min(a.order(), b.order());
    if (a.is_zero() && b.is_zero()) return PowerSeries(a.var(), a.scale(), 0, {}, order);
    long lo = a.is_zero() ? b.valuation() : b.is_zero() ? a.valuation()
                                                          : std::min(a.valuation(), b.valuation());
    long hi = std::min(order, std::max(a.end(), b.end()));
    std::vector<Rational> c(static_cast<size_t>(std::max(0L, hi - lo)));
    for (long k = lo; k < hi; ++k) {
        Rational& t = c[static_cast<size_t>(k - lo)];
        if (!a.is_zero() && k >= a.valuation() && k < a.end())
            t += a.coeffs()[static_cast<size_t>(k - a.valuation())];
        if (!b.is_zero() && k >= b.valuation() && k < b.end())
            t += b.coeffs()[static_cast<size_t>(k - b.valuation())];
    }
    return PowerSeries(a.var(), a.scale(), lo, std::move(c), order);
}

inline PowerSeries scale_by(const PowerSeries& f, const Rational& c) {
    std::vector<Rational> v = f.coeffs();
    for (auto& x : v) x *= c;
    return PowerSeries(f.var(), f.scale(), f.valuation(), std::move(v), f.order());
}

inline PowerSeries neg(const PowerSeries& f) { return scale_by(f, -1); }
inline PowerSeries sub(const PowerSeries& a, const PowerSeries& b) { return add(a, neg(b)); }

// multiply by x^(num/scale) (exact shift)
inline PowerSeries shift(const PowerSeries& f, long num, long scale = 1) {
    long s = detail::lcm_l(f.scale(), scale);
    PowerSeries g = f.lifted(s / f.scale());
    long k = num * (s / scale);
    return PowerSeries(g.var(), s, g.valuation() + k, g.coeffs(), detail::ord_shift(g.order(), k));
}

inline PowerSeries mul(const PowerSeries& a0, const PowerSeries& b0) {
    detail::check_var(a0, b0);
    auto [a, b] = detail::unify(a0, b0);
    long order = std::min(detail::ord_shift(a.order(), b.valuation()),
                          detail::ord_shift(b.order(), a.valuation()));
    if (a.is_zero() || b.is_zero()) return PowerSeries(a.var(), a.scale(), 0, {}, order);
    long v = a.valuation() + b.valuation();
    long n = static_cast<long>(a.coeffs().size()), m = static_cast<long>(b.coeffs().size());
    long len = std::min(n + m - 1, order - v);
    if (len <= 0) return PowerSeries(a.var(), a.scale(), 0, {}, order);
    Integer da, db;
    auto A = detail::integerize(a.coeffs(), da);
    auto B = detail::integerize(b.coeffs(), db);
    Integer den = da * db;
    std::vector<Rational> c(static_cast<size_t>(len));
    Integer acc;
    for (long k = 0; k < len; ++k) {
        acc = 0;
        long i0 = std::max(0L, k - (m - 1)), i1 = std::min(k, n - 1);
        for (long i = i0; i <= i1; ++i) {
            const Integer& x = A[static_cast<size_t>(i)];
            const Integer& y = B[static_cast<size_t>(k - i)];
            if (x != 0 && y != 0) mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
        if (den == 1)
            c[static_cast<size_t>(k)] = Rational(acc);
        else
            c[static_cast<size_t>(k)] = rat(acc, den);
    }
    return PowerSeries(a.var(), a.scale(), v, std::move(c), order);
}

// 1/f; f must be finite order unless it is a single monomial
inline PowerSeries inv(const PowerSeries& f) {
    if (f.is_zero()) throw PreconditionError("inverse of a zero series");
    long v = f.valuation();
    const auto& c = f.coeffs();
    if (c.size() == 1)
        return PowerSeries(f.var(), f.scale(), -v, {1 / c[0]},
                           detail::ord_shift(f.order(), -2 * v));
    if (f.exact()) throw PreconditionError("inverse of an exact non-monomial needs a truncation order");
    long len = f.order() - v;  // relative precision
    Integer d;
    auto F = detail::integerize(c, d);
    std::vector<Rational> b(static_cast<size_t>(len));
    const long n = static_cast<long>(F.size());
    if (F[0] == 1 || F[0] == -1) {
        // integer recurrence, sign folded in
        std::vector<Integer> B(static_cast<size_t>(len));
        B[0] = F[0];
        Integer acc;
        for (long k = 1; k < len; ++k) {
            acc = 0;
            for (long j = 1; j <= std::min(k, n - 1); ++j)
                if (F[static_cast<size_t>(j)] != 0)
                    mpz_addmul(acc.get_mpz_t(), F[static_cast<size_t>(j)].get_mpz_t(),
                               B[static_cast<size_t>(k - j)].get_mpz_t());
            B[static_cast<size_t>(k)] = F[0] == 1 ? Integer(-acc) : acc;
        }
        for (long k = 0; k < len; ++k) b[static_cast<size_t>(k)] = Rational(B[static_cast<size_t>(k)] * d);
    } else {
        Rational i0 = 1 / c[0];
        b[0] = i0;
        for (long k = 1; k < len; ++k) {
            Rational acc = 0;
            for (long j = 1; j <= std::min(k, n - 1); ++j)
                if (c[static_cast<size_t>(j)] != 0) acc += c[static_cast<size_t>(j)] * b[static_cast<size_t>(k - j)];
            b[static_cast<size_t>(k)] = -acc * i0;
        }
    }
    return PowerSeries(f.var(), f.scale(), -v, std::move(b), -v + len);
}

inline PowerSeries div(const PowerSeries& f, const PowerSeries& g) {
    if (g.is_zero()) throw PreconditionError("division by a zero series");
    if (g.exact() && g.coeffs().size() > 1) {
        if (f.exact()) throw PreconditionError("exact / exact division needs a truncation order");
        // relative precision of f is all we can use
        auto [fu, gu] = detail::unify(f, g);
        long rel = fu.order() - fu.valuation();
        return mul(f, inv(truncate(gu, gu.valuation() + rel)));
    }
    return mul(f, inv(g));
}

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return add(a, b); }
inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return sub(a, b); }
inline PowerSeries operator-(const PowerSeries& a) { return neg(a); }
inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return mul(a, b); }
inline PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return div(a, b); }
inline PowerSeries operator*(const Rational& c, const PowerSeries& a) { return scale_by(a, c); }
inline PowerSeries operator*(const PowerSeries& a, const Rational& c) { return scale_by(a, c); }
inline PowerSeries operator+(const PowerSeries& a, const Rational& c) {
    return add(a, PowerSeries::constant(c, a.var()));
}
inline PowerSeries operator+(const Rational& c, const PowerSeries& a) { return a + c; }
inline PowerSeries operator-(const PowerSeries& a, const Rational& c) { return a + Rational(-c); }
inline PowerSeries operator-(const Rational& c, const PowerSeries& a) { return neg(a) + c; }

// d/dx
inline PowerSeries derivative(const PowerSeries& f) {
    std::vector<Rational> c = f.coeffs();
    long v = f.valuation();
    for (size_t i = 0; i < c.size(); ++i) c[i] *= rat(v + static_cast<long>(i), f.scale());
    long s = f.scale();
    return PowerSeries(f.var(), s, v - s, std::move(c), detail::ord_shift(f.order(), -s));
}

// x d/dx
inline PowerSeries theta(const PowerSeries& f) {
    std::vector<Rational> c = f.coeffs();
    long v = f.valuation();
    for (size_t i = 0; i < c.size(); ++i) c[i] *= rat(v + static_cast<long>(i), f.scale());
    return PowerSeries(f.var(), f.scale(), v, std::move(c), f.order());
}
inline PowerSeries theta_derivative(const PowerSeries& f) { return theta(f); }

inline PowerSeries pow_int(const PowerSeries& f, long n);

// f^e for rational e; leading coefficient must be 1 unless e is an integer
inline PowerSeries pow_rational(const PowerSeries& f, const Rational& e) {
    if (is_integer(e) && e.get_num().fits_slong_p()) return pow_int(f, e.get_num().get_si());
    if (f.is_zero()) {
        if (e > 0) return f;
        throw PreconditionError("non-positive power of a zero series");
    }
    if (f.leading() != 1)
        throw PreconditionError("pow_rational: leading coefficient is " + to_string(f.leading()) +
                                ", not 1; factor it out first");
    long v = f.valuation(), s = f.scale();
    Rational r = Rational(v) * e / s;
    long b = r.get_den().get_si();
    long s2 = detail::lcm_l(s, b);
    long m = s2 / s;
    long v2 = Rational(r * s2).get_num().get_si();
    if (f.coeffs().size() == 1) return PowerSeries(f.var(), s2, v2, {1}, f.order() >= kExact ? kExact : v2 + (f.order() - v) * m);
    if (f.exact()) throw PreconditionError("pow_rational of an exact series needs a truncation order");
    long len = f.order() - v;
    const auto& u = f.coeffs();
    long n_u = static_cast<long>(u.size());
    std::vector<Rational> w(static_cast<size_t>(len));
    w[0] = 1;
    Rational e1 = e + 1;
    for (long n = 1; n < len; ++n) {
        Rational acc = 0;
        for (long k = 1; k <= std::min(n, n_u - 1); ++k)
            if (u[static_cast<size_t>(k)] != 0)
                acc += (e1 * k - n) * u[static_cast<size_t>(k)] * w[static_cast<size_t>(n - k)];
        w[static_cast<size_t>(n)] = acc / n;
    }
    PowerSeries inner(f.var(), s, 0, std::move(w), len);
    PowerSeries lifted = inner.lifted(m);
    return PowerSeries(f.var(), s2, v2, lifted.coeffs(), v2 + len * m);
}

inline PowerSeries pow_int(const PowerSeries& f, long n) {
    if (n == 0) {
        if (f.is_zero() && !f.exact()) throw PreconditionError("0^0 of a truncated zero series");
        long rel = f.exact() ? kExact : f.order() - f.valuation();
        return PowerSeries::constant(1, f.var(), rel);
    }
    if (n < 0) return pow_int(inv(f), -n);
    if (f.exact() || n <= 3) {
        PowerSeries r = f, b = f;
        long k = n - 1;
        while (k > 0) {
            if (k & 1) r = mul(r, b);
            k >>= 1;
            if (k) b = mul(b, b);
        }
        return r;
    }
    if (f.is_zero()) return PowerSeries(f.var(), 1, 0, {}, f.order() > 0 ? detail::ord_scale(f.order(), n) : f.order());
    // Miller recurrence on the unit part
    Rational c = f.leading();
    PowerSeries u = scale_by(f, 1 / c);
    long v = u.valuation(), s = u.scale(), len = u.order() - v;
    const auto& uc = u.coeffs();
    long nu = static_cast<long>(uc.size());
    std::vector<Rational> w(static_cast<size_t>(len));
    w[0] = pow(c, n);
    Rational e1 = n + 1;
    for (long m = 1; m < len; ++m) {
        Rational acc = 0;
        for (long k = 1; k <= std::min(m, nu - 1); ++k)
            if (uc[static_cast<size_t>(k)] != 0)
                acc += (e1 * k - m) * uc[static_cast<size_t>(k)] * w[static_cast<size_t>(m - k)];
        w[static_cast<size_t>(m)] = acc / m;
    }
    return PowerSeries(f.var(), s, v * n, std::move(w), v * n + len);
}

inline PowerSeries exp(const PowerSeries& f) {
    if (!f.is_zero() && f.valuation() <= 0)
        throw PreconditionError("exp needs a series with zero constant term");
    if (f.is_zero()) return PowerSeries::constant(1, f.var(), f.order());
    if (f.exact()) throw PreconditionError("exp of an exact series needs a truncation order");
    long s = f.scale(), len = f.order();
    std::vector<Rational> w(static_cast<size_t>(std::max(len, 1L)));
    w[0] = 1;
    for (long n = 1; n < len; ++n) {
        Rational acc = 0;
        for (long k = f.valuation(); k <= std::min(n, f.end() - 1); ++k) {
            const Rational& fk = f.coeffs()[static_cast<size_t>(k - f.valuation())];
            if (fk != 0) acc += k * fk * w[static_cast<size_t>(n - k)];
        }
        w[static_cast<size_t>(n)] = acc / n;
    }
    return PowerSeries(f.var(), s, 0, std::move(w), len);
}

inline PowerSeries log(const PowerSeries& f) {
    if (f.is_zero() || f.valuation() != 0 || f.leading() != 1)
        throw PreconditionError("log needs constant term 1");
    if (f.exact() && f.coeffs().size() == 1) return PowerSeries::zero(f.var());
    if (f.exact()) throw PreconditionError("log of an exact series needs a truncation order");
    long s = f.scale(), len = f.order();
    std::vector<Rational> l(static_cast<size_t>(len));
    for (long n = 1; n < len; ++n) {
        Rational acc = n * f.coeff(n);
        for (long k = 1; k < n; ++k) {
            if (l[static_cast<size_t>(k)] == 0) continue;
            Rational fk = f.coeff(n - k);
            if (fk != 0) acc -= k * l[static_cast<size_t>(k)] * fk;
        }
        l[static_cast<size_t>(n)] = acc / n;
    }
    return PowerSeries(f.var(), s, 0, std::move(l), len);
}

// f(g); see comments in the body for order rules
inline PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
    if (f.scale() != 1) throw PreconditionError("compose: outer series must have integer exponents");
    if (g.is_zero()) {
        if (f.valuation() >= 0 || f.is_zero()) {
            Rational c0 = f.is_zero() ? Rational(0) : f.coeff(0);
            return PowerSeries::constant(c0, g.var(), g.order());
        }
        throw PreconditionError("compose: negative powers of a zero series");
    }
    long vg = g.valuation();
    bool poly = f.exact() && (f.is_zero() || f.valuation() >= 0);
    if (vg <= 0 && !poly)
        throw PreconditionError("compose: inner series needs positive valuation unless outer is a polynomial");
    if (vg < 0) throw PreconditionError("compose: inner series with negative valuation");
    if (f.is_zero()) return PowerSeries(g.var(), 1, 0, {}, detail::ord_scale(f.order(), vg));
    long cap = detail::ord_scale(f.order(), vg);  // terms of f beyond its order
    long vf = f.valuation();
    // f = x^vf * h(x), h with nonzero constant term
    const auto& c = f.coeffs();
    auto tr = [&](const PowerSeries& p) { return cap >= kExact ? p : truncate(p, cap); };
    PowerSeries gg = g;
    if (cap < kExact && gg.exact()) gg = truncate(gg, cap);
    PowerSeries acc = PowerSeries::constant(c.back(), g.var());
    for (long i = static_cast<long>(c.size()) - 2; i >= 0; --i) {
        acc = tr(add(mul(acc, gg), PowerSeries::constant(c[static_cast<size_t>(i)], g.var())));
    }
    if (vf != 0) {
        PowerSeries gp = pow_int(gg, vf);
        acc = tr(mul(acc, gp));
    }
    return truncate(acc, cap);
}

// compositional inverse (Lagrange inversion)
inline PowerSeries revert(const PowerSeries& f) {
    if (f.scale() != 1 || f.valuation() != 1)
        throw PreconditionError("revert needs valuation 1 and scale 1");
    PowerSeries ff = f;
    if (ff.exact()) {
        if (ff.coeffs().size() == 1)
            return PowerSeries::monomial(1 / ff.leading(), 1, f.var());
        throw PreconditionError("revert of an exact series needs a truncation order");
    }
    long O = ff.order();
    PowerSeries phi = inv(shift(ff, -1));  // x/f, order O-1
    std::vector<Rational> g(static_cast<size_t>(O));
    PowerSeries p = PowerSeries::constant(1, f.var());
    for (long n = 1; n < O; ++n) {
        p = mul(p, phi);
        g[static_cast<size_t>(n)] = p.coeff(n - 1) / n;
    }
    return PowerSeries(f.var(), 1, 0, std::move(g), O);
}

inline PowerSeries hadamard(const PowerSeries& a, const PowerSeries& b) {
    if (a.scale() != 1 || b.scale() != 1)
        throw PreconditionError("hadamard needs integer exponents");
    if ((!a.is_zero() && a.valuation() < 0) || (!b.is_zero() && b.valuation() < 0))
        throw PreconditionError("hadamard needs nonnegative valuation");
    detail::check_var(a, b);
    long order = std::min(a.order(), b.order());
    long hi = std::min(order, std::min(a.end(), b.end()));
    if (a.is_zero() || b.is_zero()) return PowerSeries(a.var(), 1, 0, {}, order);
    long lo = std::max(a.valuation(), b.valuation());
    std::vector<Rational> c;
    for (long k = lo; k < hi; ++k) c.push_back(a.coeff(k) * b.coeff(k));
    return PowerSeries(a.var(), 1, lo, std::move(c), order);
}

// {f, x} = f'''/f' - 3/2 (f''/f')^2, with a pluggable derivation
template <class Deriv>
PowerSeries schwarzian_with(const PowerSeries& f, Deriv d) {
    PowerSeries f1 = d(f);
    if (f1.is_zero()) throw PreconditionError("schwarzian: derivative vanishes to truncation");
    PowerSeries f2 = d(f1), f3 = d(f2);
    PowerSeries r = div(f2, f1);
    return sub(div(f3, f1), scale_by(mul(r, r), rat(3, 2)));
}

inline PowerSeries schwarzian(const PowerSeries& f) {
    return schwarzian_with(f, [](const PowerSeries& s) { return derivative(s); });
}

// x -> x^n
inline PowerSeries substitute_power(const PowerSeries& f, long n) {
    if (n <= 0) throw PreconditionError("substitute_power needs n >= 1");
    PowerSeries g = f.lifted(n);
    return PowerSeries(f.var(), f.scale(), g.valuation(), g.coeffs(), g.order())
        .with_var(f.var());
}

// x -> c x (integer exponents only)
inline PowerSeries rescale(const PowerSeries& f, const Rational& c) {
    if (f.scale() != 1) throw PreconditionError("rescale needs integer exponents");
    std::vector<Rational> v = f.coeffs();
    Rational p = pow(c, f.valuation());
    for (auto& x : v) {
        x *= p;
        p *= c;
    }
    return PowerSeries(f.var(), 1, f.valuation(), std::move(v), f.order());
}

// exponent (as rational) of the first nonzero coefficient
inline std::optional<Rational> first_nonzero_exponent(const PowerSeries& f) {
    if (f.is_zero()) return std::nullopt;
    return rat(f.valuation(), f.scale());
}

inline std::string PowerSeries::to_string(long max_terms) const {
    std::ostringstream os;
    long shown = 0;
    for (size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
        if (c_[i] == 0) continue;
        long e = val_ + static_cast<long>(i);
        if (shown) os << " + ";
        os << c_[i].get_str();
        Rational ex = rat(e, scale_);
        if (ex != 0) os << "*" << var_ << "^" << ex.get_str();
        ++shown;
    }
    if (shown == 0) os << "0";
    if (!exact()) os << " + O(" << var_ << "^" << order_exponent().get_str() << ")";
    return os.str();
}

// sum_j parts[j] * L^j with L = ln(var)
class LogSeries {
public:
    LogSeries() = default;
    explicit LogSeries(PowerSeries c0) : parts_{std::move(c0)} {}
    explicit LogSeries(std::vector<PowerSeries> parts) : parts_(std::move(parts)) { trim(); }

    long degree() const { return static_cast<long>(parts_.size()) - 1; }
    const std::vector<PowerSeries>& parts() const { return parts_; }
    const PowerSeries& part(long j) const { return parts_.at(static_cast<size_t>(j)); }
    const std::string& var() const { return parts_.front().var(); }

    bool is_zero() const {
        return std::all_of(parts_.begin(), parts_.end(), [](const PowerSeries& p) { return p.is_zero(); });
    }
    // smallest validity exponent over all parts
    Rational order_exponent() const {
        Rational best;
        bool any = false;
        for (const auto& p : parts_)
            if (!p.exact() && (!any || p.order_exponent() < best)) {
                best = p.order_exponent();
                any = true;
            }
        return any ? best : Rational(kExact);
    }

private:
    void trim() {
        if (parts_.empty()) parts_.push_back(PowerSeries::zero("x"));
        while (parts_.size() > 1 && parts_.back().is_zero()) {
            // keep the truncation information of a dropped part in part 0
            PowerSeries z = parts_.back();
            parts_.pop_back();
            if (!z.exact() && (parts_[0].exact() || z.order_exponent() < parts_[0].order_exponent()))
                parts_[0] = truncate_at(parts_[0], z.order_exponent());
        }
    }
    std::vector<PowerSeries> parts_{PowerSeries::zero("x")};
};

inline LogSeries add(const LogSeries& a, const LogSeries& b) {
    size_t n = std::max(a.parts().size(), b.parts().size());
    std::vector<PowerSeries> p;
    for (size_t j = 0; j < n; ++j) {
        if (j >= a.parts().size())
            p.push_back(b.parts()[j]);
        else if (j >= b.parts().size())
            p.push_back(a.parts()[j]);
        else
            p.push_back(add(a.parts()[j], b.parts()[j]));
    }
    return LogSeries(std::move(p));
}

inline LogSeries scale_by(const LogSeries& a, const Rational& c) {
    std::vector<PowerSeries> p;
    for (const auto& x : a.parts()) p.push_back(scale_by(x, c));
    return LogSeries(std::move(p));
}

inline LogSeries mul(const PowerSeries& f, const LogSeries& a) {
    std::vector<PowerSeries> p;
    for (const auto& x : a.parts()) p.push_back(mul(f, x));
    return LogSeries(std::move(p));
}

inline LogSeries sub(const LogSeries& a, const LogSeries& b) { return add(a, scale_by(b, -1)); }

inline LogSeries mul(const LogSeries& a, const LogSeries& b) {
    std::vector<PowerSeries> p(a.parts().size() + b.parts().size() - 1, PowerSeries::zero(a.var()));
    for (size_t i = 0; i < a.parts().size(); ++i)
        for (size_t j = 0; j < b.parts().size(); ++j) p[i + j] = add(p[i + j], mul(a.parts()[i], b.parts()[j]));
    return LogSeries(std::move(p));
}

// d/dx (c L^j) = c' L^j + j c L^(j-1) / x
inline LogSeries derivative(const LogSeries& a) {
    std::vector<PowerSeries> p;
    const auto& c = a.parts();
    for (size_t j = 0; j < c.size(); ++j) {
        PowerSeries t = derivative(c[j]);
        if (j + 1 < c.size()) t = add(t, scale_by(shift(c[j + 1], -1), static_cast<long>(j + 1)));
        p.push_back(std::move(t));
    }
    return LogSeries(std::move(p));
}

// x d/dx (c L^j) = (theta c) L^j + j c L^(j-1)
inline LogSeries theta(const LogSeries& a) {
    std::vector<PowerSeries> p;
    const auto& c = a.parts();
    for (size_t j = 0; j < c.size(); ++j) {
        PowerSeries t = theta(c[j]);
        if (j + 1 < c.size()) t = add(t, scale_by(c[j + 1], static_cast<long>(j + 1)));
        p.push_back(std::move(t));
    }
    return LogSeries(std::move(p));
}

}  // namespace holo
