#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holo/expr.hpp"
#include "holo/linalg.hpp"
#include "holo/poly.hpp"
#include "holo/series.hpp"

namespace holo {

namespace detail {

// signed Stirling numbers of the first kind, s[n][k]
inline std::vector<std::vector<Integer>> stirling1(long n) {
    std::vector<std::vector<Integer>> s(static_cast<size_t>(n + 1), std::vector<Integer>(static_cast<size_t>(n + 1)));
    s[0][0] = 1;
    for (long m = 0; m < n; ++m)
        for (long k = 1; k <= m + 1; ++k)
            s[static_cast<size_t>(m + 1)][static_cast<size_t>(k)] =
                s[static_cast<size_t>(m)][static_cast<size_t>(k - 1)] - m * s[static_cast<size_t>(m)][static_cast<size_t>(k)];
    return s;
}

// Stirling numbers of the second kind
inline std::vector<std::vector<Integer>> stirling2(long n) {
    std::vector<std::vector<Integer>> s(static_cast<size_t>(n + 1), std::vector<Integer>(static_cast<size_t>(n + 1)));
    s[0][0] = 1;
    for (long m = 0; m < n; ++m)
        for (long k = 1; k <= m + 1; ++k)
            s[static_cast<size_t>(m + 1)][static_cast<size_t>(k)] =
                k * s[static_cast<size_t>(m)][static_cast<size_t>(k)] + s[static_cast<size_t>(m)][static_cast<size_t>(k - 1)];
    return s;
}

inline RatFun xpow(long k, const std::string& var) {
    if (k >= 0) return RatFun(Poly::monomial(1, k, var));
    return RatFun(Poly(1).with_var(var), Poly::monomial(1, -k, var));
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_constant()) return monic(b);
    if (b.is_constant()) return monic(a);
    return monic(exact_quotient(a * b, gcd(a, b)));
}

}  // namespace detail

// sum a_i D^i, D = d/dx; the zero operator has no coefficients
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<RatFun> a, std::string var = "x") : var_(std::move(var)), a_(std::move(a)) {
        trim();
    }

    // sum b_k theta^k with theta = x D, coefficients on the left
    static DiffOp from_theta(const std::vector<RatFun>& b, const std::string& var = "x") {
        long r = static_cast<long>(b.size()) - 1;
        if (r < 0) return DiffOp({}, var);
        auto S = detail::stirling2(r);
        std::vector<RatFun> a(b.size());
        for (long j = 0; j <= r; ++j) {
            RatFun acc;
            for (long k = j; k <= r; ++k) {
                const Integer& s = S[static_cast<size_t>(k)][static_cast<size_t>(j)];
                if (s != 0 && !b[static_cast<size_t>(k)].is_zero())
                    acc = acc + RatFun(Rational(s)) * b[static_cast<size_t>(k)];
            }
            a[static_cast<size_t>(j)] = acc * detail::xpow(j, var);
        }
        return DiffOp(std::move(a), var);
    }

    static DiffOp D(const std::string& var = "x") { return DiffOp({RatFun(0), RatFun(1)}, var); }
    static DiffOp theta(const std::string& var = "x") { return DiffOp({RatFun(0), RatFun::x(var)}, var); }
    static DiffOp multiplier(const RatFun& f, const std::string& var = "x") { return DiffOp({f}, var); }

    const std::string& var() const { return var_; }
    long order() const { return static_cast<long>(a_.size()) - 1; }
    bool is_zero() const { return a_.empty(); }
    const std::vector<RatFun>& coeffs() const { return a_; }
    RatFun coeff(long i) const {
        if (i < 0 || i > order()) return RatFun(0);
        return a_[static_cast<size_t>(i)];
    }
    const RatFun& leading() const {
        if (a_.empty()) throw PreconditionError("zero operator has no leading coefficient");
        return a_.back();
    }
    bool has_polynomial_coeffs() const {
        return std::all_of(a_.begin(), a_.end(), [](const RatFun& f) { return f.is_polynomial(); });
    }

    // coefficients of theta^k
    std::vector<RatFun> theta_coeffs() const {
        long r = order();
        if (r < 0) return {};
        auto s = detail::stirling1(r);
        std::vector<RatFun> b(a_.size());
        for (long j = 0; j <= r; ++j) {
            const RatFun& aj = a_[static_cast<size_t>(j)];
            if (aj.is_zero()) continue;
            RatFun t = aj * detail::xpow(-j, var_);
            for (long k = 0; k <= j; ++k) {
                const Integer& c = s[static_cast<size_t>(j)][static_cast<size_t>(k)];
                if (c != 0) b[static_cast<size_t>(k)] = b[static_cast<size_t>(k)] + RatFun(Rational(c)) * t;
            }
        }
        return b;
    }

    friend bool operator==(const DiffOp& p, const DiffOp& q) { return p.a_ == q.a_; }
    friend bool operator!=(const DiffOp& p, const DiffOp& q) { return !(p == q); }

    std::string to_string() const {
        if (a_.empty()) return "0";
        std::string s;
        for (long i = order(); i >= 0; --i) {
            const RatFun& c = a_[static_cast<size_t>(i)];
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c.to_string();
            if (i > 0) s += "*D" + (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        return s;
    }

private:
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }
    std::string var_ = "x";
    std::vector<RatFun> a_;
};

inline DiffOp operator+(const DiffOp& p, const DiffOp& q) {
    std::vector<RatFun> c(static_cast<size_t>(std::max(p.order(), q.order()) + 1));
    for (long i = 0; i <= p.order(); ++i) c[static_cast<size_t>(i)] = p.coeff(i);
    for (long i = 0; i <= q.order(); ++i) c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] + q.coeff(i);
    return DiffOp(std::move(c), p.var());
}
inline DiffOp operator-(const DiffOp& p) {
    std::vector<RatFun> c = p.coeffs();
    for (auto& f : c) f = -f;
    return DiffOp(std::move(c), p.var());
}
inline DiffOp operator-(const DiffOp& p, const DiffOp& q) { return p + (-q); }

// left multiplication by a function
inline DiffOp operator*(const RatFun& f, const DiffOp& p) {
    std::vector<RatFun> c = p.coeffs();
    for (auto& g : c) g = f * g;
    return DiffOp(std::move(c), p.var());
}

// composition p o q, using D a = a D + a'
inline DiffOp operator*(const DiffOp& p, const DiffOp& q) {
    if (p.is_zero() || q.is_zero()) return DiffOp({}, p.var());
    long r1 = p.order(), r2 = q.order();
    // derivatives of q's coefficients
    std::vector<std::vector<RatFun>> dq(static_cast<size_t>(r2 + 1));
    for (long j = 0; j <= r2; ++j) {
        dq[static_cast<size_t>(j)].push_back(q.coeff(j));
        for (long k = 1; k <= r1; ++k) dq[static_cast<size_t>(j)].push_back(derivative(dq[static_cast<size_t>(j)].back()));
    }
    std::vector<RatFun> c(static_cast<size_t>(r1 + r2 + 1));
    for (long i = 0; i <= r1; ++i) {
        const RatFun& ai = p.coeff(i);
        if (ai.is_zero()) continue;
        for (long j = 0; j <= r2; ++j)
            for (long k = 0; k <= i; ++k) {
                const RatFun& b = dq[static_cast<size_t>(j)][static_cast<size_t>(k)];
                if (b.is_zero()) continue;
                c[static_cast<size_t>(i - k + j)] = c[static_cast<size_t>(i - k + j)] + RatFun(Rational(binomial(i, k))) * ai * b;
            }
    }
    return DiffOp(std::move(c), p.var());
}

inline DiffOp op_multiply(const DiffOp& p, const DiffOp& q) { return p * q; }

inline DiffOp pow(const DiffOp& p, long n) {
    if (n < 0) {
        if (p.order() != 0) throw PreconditionError("negative power of a non-scalar operator");
        return DiffOp::multiplier(pow(p.coeff(0), n), p.var());
    }
    DiffOp r = DiffOp::multiplier(RatFun(1), p.var());
    for (long i = 0; i < n; ++i) r = r * p;
    return r;
}

// x -> x + c (recentering at c)
inline DiffOp recenter(const DiffOp& L, const Rational& c) {
    RatFun sh(Poly({c, Rational(1)}, L.var()));
    std::vector<RatFun> a;
    for (const auto& f : L.coeffs()) a.push_back(compose(f, sh));
    return DiffOp(std::move(a), L.var());
}

// Integer polynomial coefficients with content 1; the lowest-degree term of the
// top coefficient is positive ((1-4x)D - 2 rather than (4x-1)D + 2). Same kernel as L
inline DiffOp primitive(const DiffOp& L) {
    if (L.is_zero()) return L;
    Poly den(1);
    for (const auto& f : L.coeffs()) den = detail::poly_lcm(den, f.den());
    std::vector<Poly> ps;
    for (const auto& f : L.coeffs()) ps.push_back(f.num() * exact_quotient(den, f.den()));
    Integer l = 1, g = 0;
    for (const auto& p : ps)
        for (const auto& c : p.coeffs()) l = lcm(l, c.get_den());
    for (const auto& p : ps)
        for (const auto& c : p.coeffs()) g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
    Rational f = rat(l, g);
    if (ps.back().coeff(ps.back().low_degree()) < 0) f = -f;
    std::vector<RatFun> a;
    for (const auto& p : ps) a.push_back(RatFun((f * p).with_var(L.var())));
    return DiffOp(std::move(a), L.var());
}

// L / a_r
inline DiffOp monic(const DiffOp& L) { return inverse(L.leading()) * L; }

// theta form with polynomial coefficients: rows are powers of x, columns powers of theta;
// left-multiplied by whatever clears denominators and the common power of x
inline std::vector<std::vector<Rational>> theta_matrix(const DiffOp& L) {
    auto b = L.theta_coeffs();
    Poly den(1);
    for (const auto& f : b) den = detail::poly_lcm(den, f.den());
    std::vector<Poly> ps;
    for (const auto& f : b) ps.push_back(f.num() * exact_quotient(den, f.den()));
    long lo = -1, hi = 0;
    for (const auto& p : ps) {
        if (p.is_zero()) continue;
        lo = lo < 0 ? p.low_degree() : std::min(lo, p.low_degree());
        hi = std::max(hi, p.degree());
    }
    std::vector<std::vector<Rational>> m(static_cast<size_t>(hi - lo + 1), std::vector<Rational>(ps.size()));
    for (size_t k = 0; k < ps.size(); ++k)
        for (long i = lo; i <= ps[k].degree(); ++i) m[static_cast<size_t>(i - lo)][k] = ps[k].coeff(i);
    return m;
}

// ---- application ----

namespace detail {

// expansion of a coefficient good enough to multiply g without losing precision
inline PowerSeries coeff_series(const RatFun& a, const std::string& var, bool exact_needed, long rel_needed) {
    long va = a.num().low_degree() - a.den().low_degree();
    bool laurent = a.den().coeffs().size() - static_cast<size_t>(a.den().low_degree()) == 1;
    if (laurent) return a.to_series(var, kExact);
    if (exact_needed) throw PreconditionError("apply: exact input with a non-polynomial coefficient needs a truncation order");
    return a.to_series(var, va + rel_needed);
}

inline long rel_exponent(const PowerSeries& g) {
    if (g.exact()) return 0;
    return ceil_div(g.order() - g.valuation(), g.scale());
}

}  // namespace detail

inline PowerSeries apply(const DiffOp& L, const PowerSeries& f) {
    if (!f.exact() && f.order_exponent() <= L.order())
        throw PreconditionError("apply: truncation order of the input does not exceed the operator order");
    PowerSeries acc = PowerSeries::zero(f.var());
    PowerSeries g = f;
    for (long j = 0; j <= L.order(); ++j) {
        if (j > 0) g = derivative(g);
        const RatFun& a = L.coeffs()[static_cast<size_t>(j)];
        if (a.is_zero()) continue;
        if (g.exact() && g.is_zero()) continue;
        acc = add(acc, mul(detail::coeff_series(a, f.var(), g.exact(), detail::rel_exponent(g)), g));
    }
    return acc;
}

inline LogSeries apply(const DiffOp& L, const LogSeries& f) {
    if (f.order_exponent() <= L.order())
        throw PreconditionError("apply: truncation order of the input does not exceed the operator order");
    std::vector<PowerSeries> zero_parts(1, PowerSeries::zero(f.var()));
    LogSeries acc(zero_parts);
    LogSeries g = f;
    for (long j = 0; j <= L.order(); ++j) {
        if (j > 0) g = derivative(g);
        const RatFun& a = L.coeffs()[static_cast<size_t>(j)];
        if (a.is_zero() || g.is_zero()) continue;
        bool all_exact = true;
        long rel = 0;
        for (const auto& p : g.parts())
            if (!p.exact()) {
                all_exact = false;
                rel = std::max(rel, detail::rel_exponent(p));
            }
        acc = add(acc, mul(detail::coeff_series(a, f.var(), all_exact, rel), g));
    }
    return acc;
}

// exact application to a rational function
inline RatFun apply(const DiffOp& L, const RatFun& f) {
    RatFun acc, g = f;
    for (long j = 0; j <= L.order(); ++j) {
        if (j > 0) g = derivative(g);
        acc = acc + L.coeffs()[static_cast<size_t>(j)] * g;
    }
    return acc;
}

// ---- hypergeometric operators ----

namespace detail {
// coefficients (in theta) of prod (theta + c_i)
inline std::vector<Rational> theta_product(const std::vector<Rational>& shifts) {
    std::vector<Rational> p{Rational(1)};
    for (const auto& c : shifts) {
        std::vector<Rational> q(p.size() + 1);
        for (size_t i = 0; i < p.size(); ++i) {
            q[i] += c * p[i];
            q[i + 1] += p[i];
        }
        p = std::move(q);
    }
    return p;
}
}  // namespace detail

// theta prod(theta + b_j - 1) - scale x prod(theta + a_i)
inline DiffOp hypergeometric_operator(const std::vector<Rational>& upper, const std::vector<Rational>& lower,
                                      const Rational& scale, const std::string& var = "x") {
    for (const auto& b : lower)
        if (is_integer(b) && b <= 0) throw PreconditionError("lower parameter " + to_string(b) + " is a nonpositive integer");
    std::vector<Rational> ls{Rational(0)};
    for (const auto& b : lower) ls.push_back(b - 1);
    auto left = detail::theta_product(ls);
    auto right = detail::theta_product(upper);
    size_t n = std::max(left.size(), right.size());
    std::vector<RatFun> b(n);
    for (size_t k = 0; k < n; ++k) {
        Rational l = k < left.size() ? left[k] : Rational(0);
        Rational r = k < right.size() ? right[k] : Rational(0);
        b[k] = RatFun(Poly({l, Rational(-scale * r)}, var));
    }
    return DiffOp::from_theta(b, var);
}

// ---- Frobenius solutions at a MUM point ----

struct MumSolutions {
    long r = 0;
    std::vector<PowerSeries> analytic;  // A_0 = y0, A_k = analytic part of the k-th log solution

    const PowerSeries& y0() const { return analytic.at(0); }
    const PowerSeries& t(long k) const { return analytic.at(static_cast<size_t>(k)); }

    // y_k = sum_j L^j / j! A_{k-j}
    LogSeries solution(long k) const {
        std::vector<PowerSeries> parts;
        for (long j = 0; j <= k; ++j)
            parts.push_back(scale_by(analytic.at(static_cast<size_t>(k - j)), rat(Integer(1), factorial(j))));
        return LogSeries(std::move(parts));
    }
};

inline MumSolutions frobenius_mum(const DiffOp& L, long order) {
    long r = L.order();
    if (r < 1) throw PreconditionError("frobenius_mum: operator of order >= 1 needed");
    auto m = theta_matrix(L);
    const auto& p0 = m[0];
    for (long k = 0; k < r; ++k)
        if (p0[static_cast<size_t>(k)] != 0) {
            std::ostringstream os;
            os << "frobenius_mum: indicial polynomial is not c*rho^" << r << ": ";
            Poly ind(p0, "rho");
            os << ind.to_string();
            throw PreconditionError(os.str());
        }
    Rational c = p0[static_cast<size_t>(r)];
    long nrows = static_cast<long>(m.size());
    using Trunc = std::vector<Rational>;  // Q[e]/e^r
    auto tmul = [r](const Trunc& a, const Trunc& b) {
        Trunc z(static_cast<size_t>(r));
        for (long i = 0; i < r; ++i) {
            if (a[static_cast<size_t>(i)] == 0) continue;
            for (long j = 0; i + j < r; ++j) z[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        }
        return z;
    };
    // P(s + e) as truncated polynomial in e
    auto taylor = [r](const std::vector<Rational>& p, long s) {
        Trunc z(static_cast<size_t>(r));
        long deg = static_cast<long>(p.size()) - 1;
        for (long mm = 0; mm < r; ++mm) {
            Rational acc = 0;
            for (long k = mm; k <= deg; ++k)
                if (p[static_cast<size_t>(k)] != 0) acc += p[static_cast<size_t>(k)] * Rational(binomial(k, mm)) * pow(Rational(s), k - mm);
            z[static_cast<size_t>(mm)] = acc;
        }
        return z;
    };
    std::vector<Trunc> a(static_cast<size_t>(std::max(order, 1L)), Trunc(static_cast<size_t>(r)));
    a[0][0] = 1;
    for (long n = 1; n < order; ++n) {
        Trunc rhs(static_cast<size_t>(r));
        for (long i = 1; i <= std::min(n, nrows - 1); ++i) {
            const auto& pi = m[static_cast<size_t>(i)];
            bool nz = std::any_of(pi.begin(), pi.end(), [](const Rational& q) { return q != 0; });
            if (!nz) continue;
            Trunc t = tmul(taylor(pi, n - i), a[static_cast<size_t>(n - i)]);
            for (long k = 0; k < r; ++k) rhs[static_cast<size_t>(k)] -= t[static_cast<size_t>(k)];
        }
        // 1 / (c (n+e)^r)
        Trunc inv(static_cast<size_t>(r));
        Rational nn = n;
        for (long k = 0; k < r; ++k) {
            Rational b = Rational(binomial(r + k - 1, k)) / (c * pow(nn, r + k));
            inv[static_cast<size_t>(k)] = (k % 2) ? Rational(-b) : b;
        }
        a[static_cast<size_t>(n)] = tmul(rhs, inv);
    }
    MumSolutions out;
    out.r = r;
    for (long k = 0; k < r; ++k) {
        std::vector<Rational> cs(static_cast<size_t>(order));
        for (long n = 0; n < order; ++n) cs[static_cast<size_t>(n)] = a[static_cast<size_t>(n)][static_cast<size_t>(k)];
        out.analytic.push_back(PowerSeries::from_coeffs(std::move(cs), L.var(), order));
    }
    return out;
}

// ---- guessing ----

namespace detail {

inline long available_terms(const PowerSeries& f) { return f.exact() ? f.end() : f.order(); }

inline Rational rising(long m, long j) {
    Integer r = 1;
    for (long t = 1; t <= j; ++t) r *= (m + t);
    return Rational(r);
}

inline DiffOp op_from_vector(const std::vector<Rational>& v, long r, long d, const std::string& var) {
    std::vector<RatFun> a;
    for (long j = 0; j <= r; ++j) {
        std::vector<Rational> c(v.begin() + j * (d + 1), v.begin() + (j + 1) * (d + 1));
        a.push_back(RatFun(Poly(std::move(c), var)));
    }
    return DiffOp(std::move(a), var);
}

inline bool annihilates(const DiffOp& L, const std::vector<PowerSeries>& fs) {
    for (const auto& f : fs)
        if (!apply(L, f).is_zero()) return false;
    return true;
}

// nullspace vector with the lowest-degree leading coefficient (RREF with the
// top-order block first, highest degree first)
inline std::vector<Rational> canonical_vector(const RMatrix& basis, long r, long d) {
    size_t n = static_cast<size_t>((r + 1) * (d + 1));
    std::vector<size_t> perm;
    for (long j = r; j >= 0; --j)
        for (long i = d; i >= 0; --i) perm.push_back(static_cast<size_t>(j * (d + 1) + i));
    RMatrix b;
    for (const auto& v : basis) {
        std::vector<Rational> w(n);
        for (size_t k = 0; k < n; ++k) w[k] = v[perm[k]];
        b.push_back(std::move(w));
    }
    auto red = rref(b);
    const auto& last = red.back();
    std::vector<Rational> out(n);
    for (size_t k = 0; k < n; ++k) out[perm[k]] = last[k];
    return out;
}

}  // namespace detail

struct GuessOptions {
    long margin = 8;  // equations beyond the unknown count
};

// minimal (order, then degree) operator with polynomial coefficients killing all series
inline std::optional<DiffOp> guess_min_ode(const std::vector<PowerSeries>& series, long max_order, long max_degree,
                                           GuessOptions opt = {}) {
    if (series.empty()) return std::nullopt;
    bool all_zero = true;
    for (const auto& f : series) {
        if (f.scale() != 1) throw PreconditionError("guess_min_ode needs integer exponents");
        if (!f.is_zero() && f.valuation() < 0) throw PreconditionError("guess_min_ode needs nonnegative valuation");
        if (!f.is_zero()) all_zero = false;
    }
    if (all_zero) return std::nullopt;
    const std::string& var = series[0].var();
    for (long r = 1; r <= max_order; ++r) {
        for (long d = 0; d <= max_degree; ++d) {
            long unknowns = (r + 1) * (d + 1);
            long eqs = 0;
            for (const auto& f : series) eqs += std::max(0L, detail::available_terms(f) - r);
            if (eqs < unknowns + opt.margin) break;
            RMatrix m;
            for (const auto& f : series) {
                long N = detail::available_terms(f) - r;
                for (long n = 0; n < N; ++n) {
                    std::vector<Rational> row(static_cast<size_t>(unknowns));
                    for (long j = 0; j <= r; ++j)
                        for (long i = 0; i <= d && i <= n; ++i) {
                            long mm = n - i;
                            Rational c = f.coeff(mm + j);
                            if (c != 0) row[static_cast<size_t>(j * (d + 1) + i)] = detail::rising(mm, j) * c;
                        }
                    m.push_back(std::move(row));
                }
            }
            auto mr = rank_mod_p(m, static_cast<size_t>(unknowns));
            if (mr.ok && mr.rank == static_cast<size_t>(unknowns)) continue;
            auto attempt = [&](const RMatrix& rows) -> std::optional<DiffOp> {
                auto basis = nullspace(rows, static_cast<size_t>(unknowns));
                if (basis.empty()) return std::nullopt;
                auto v = detail::canonical_vector(basis, r, d);
                DiffOp L = primitive(detail::op_from_vector(v, r, d, var));
                if (L.order() < 1 || !detail::annihilates(L, series)) return std::nullopt;
                return L;
            };
            if (mr.ok) {
                RMatrix sub;
                for (size_t i : mr.pivot_rows) sub.push_back(m[i]);
                if (auto L = attempt(sub)) return L;
            }
            if (auto L = attempt(m)) return L;
        }
    }
    return std::nullopt;
}

// ---- exterior square of an order-4 operator ----

inline DiffOp exterior_square(const DiffOp& L) {
    if (L.order() != 4) throw PreconditionError("exterior_square needs an order-4 operator");
    const std::string& var = L.var();
    std::vector<RatFun> c(4);
    RatFun inv = inverse(L.leading());
    for (long i = 0; i < 4; ++i) c[static_cast<size_t>(i)] = L.coeff(i) * inv;
    // basis index of y^(i) ^ y^(j), i < j
    auto idx = [](int i, int j) {
        static const int t[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
        return t[i][j];
    };
    using Vec = std::vector<RatFun>;
    // add k * (y^(i) ^ y^(j)) to v, reducing y^(4)
    auto add_wedge = [&](Vec& v, const RatFun& k, int i, int j) {
        auto put = [&](const RatFun& w, int a, int b) {
            if (a == b || w.is_zero()) return;
            if (a < b)
                v[static_cast<size_t>(idx(a, b))] = v[static_cast<size_t>(idx(a, b))] + w;
            else
                v[static_cast<size_t>(idx(b, a))] = v[static_cast<size_t>(idx(b, a))] - w;
        };
        if (j == 4) {
            for (int m = 0; m < 4; ++m) put(-(k * c[static_cast<size_t>(m)]), i, m);
        } else if (i == 4) {
            for (int m = 0; m < 4; ++m) put(-(k * c[static_cast<size_t>(m)]), m, j);
        } else {
            put(k, i, j);
        }
    };
    static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    auto deriv = [&](const Vec& v) {
        Vec w(6);
        for (int p = 0; p < 6; ++p) {
            const RatFun& k = v[static_cast<size_t>(p)];
            if (k.is_zero()) continue;
            w[static_cast<size_t>(p)] = w[static_cast<size_t>(p)] + derivative(k);
            add_wedge(w, k, pairs[p][0] + 1, pairs[p][1]);
            add_wedge(w, k, pairs[p][0], pairs[p][1] + 1);
        }
        return w;
    };
    std::vector<Vec> vs;
    Vec v(6);
    v[0] = RatFun(1);
    vs.push_back(v);
    for (int k = 1; k <= 6; ++k) {
        Vec next = deriv(vs.back());
        auto sol = solve_columns<RatFun>(vs, next, [](const RatFun& f) { return f.is_zero(); });
        if (sol) {
            std::vector<RatFun> a(static_cast<size_t>(k + 1));
            for (int i = 0; i < k; ++i) a[static_cast<size_t>(i)] = -(*sol)[static_cast<size_t>(i)];
            a[static_cast<size_t>(k)] = RatFun(1);
            return primitive(DiffOp(std::move(a), var));
        }
        vs.push_back(std::move(next));
    }
    throw Error("exterior_square: no dependency found (cannot happen in a 6-dimensional module)");
}

// residual of the symplectic head condition on the monic coefficients
inline RatFun symplectic_head_residual(const DiffOp& L) {
    if (L.order() != 4) throw PreconditionError("symplectic condition needs an order-4 operator");
    RatFun inv = inverse(L.leading());
    RatFun a3 = L.coeff(3) * inv, a2 = L.coeff(2) * inv, a1 = L.coeff(1) * inv;
    RatFun d3 = derivative(a3);
    RatFun rhs = RatFun(rat(1, 2)) * a2 * a3 - RatFun(rat(1, 8)) * a3 * a3 * a3 + derivative(a2) -
                 RatFun(rat(3, 4)) * a3 * d3 - RatFun(rat(1, 2)) * derivative(d3);
    return a1 - rhs;
}

inline bool symplectic_head_vanishes(const DiffOp& L) { return symplectic_head_residual(L).is_zero(); }

// ---- rational solutions ----

inline std::vector<RatFun> rational_kernel(const DiffOp& L, long bound) {
    if (L.is_zero()) throw PreconditionError("rational_kernel of the zero operator");
    const std::string& var = L.var();
    DiffOp P = primitive(L);
    Poly S = squarefree_part(P.leading().num()).with_var(var);
    // drop the constant content of S (already monic)
    Poly Dn = pow(S, bound).with_var(var);
    long nd = bound * std::max(0L, S.degree()) + bound;
    DiffOp Lt = P * DiffOp::multiplier(inverse(RatFun(Dn)), var);
    Lt = primitive(Lt);
    // sum_j p_j N^(j) = 0 with N = sum_k n_k x^k
    std::vector<Poly> cols;
    long maxdeg = 0;
    for (long k = 0; k <= nd; ++k) {
        Poly acc;
        Poly xk = Poly::monomial(1, k, var);
        Poly g = xk;
        for (long j = 0; j <= Lt.order(); ++j) {
            if (j > 0) g = derivative(g);
            if (g.is_zero()) break;
            acc = acc + Lt.coeff(j).num() * g;
        }
        maxdeg = std::max(maxdeg, acc.degree());
        cols.push_back(acc);
    }
    RMatrix m(static_cast<size_t>(maxdeg + 1), std::vector<Rational>(static_cast<size_t>(nd + 1)));
    for (long k = 0; k <= nd; ++k)
        for (long e = 0; e <= cols[static_cast<size_t>(k)].degree(); ++e) m[static_cast<size_t>(e)][static_cast<size_t>(k)] = cols[static_cast<size_t>(k)].coeff(e);
    auto basis = nullspace(m, static_cast<size_t>(nd + 1));
    if (basis.empty()) return {};
    // canonical basis: RREF from the top degree down
    RMatrix rev;
    for (const auto& v : basis) rev.push_back(std::vector<Rational>(v.rbegin(), v.rend()));
    rev = rref(rev);
    std::vector<RatFun> out;
    for (const auto& w : rev) {
        std::vector<Rational> nc(w.rbegin(), w.rend());
        RatFun f(Poly(std::move(nc), var), Dn);
        if (!apply(L, f).is_zero()) throw Error("rational_kernel: candidate failed verification");
        out.push_back(f);
    }
    return out;
}

// ---- Hadamard square at a point ----

namespace detail {

// power series basis at an ordinary point 0 of an order-2 operator
inline std::pair<PowerSeries, PowerSeries> ordinary_basis(const DiffOp& L, long terms) {
    const std::string& var = L.var();
    RatFun i2 = inverse(L.coeff(2));
    PowerSeries c1 = (L.coeff(1) * i2).to_series(var, terms), c0 = (L.coeff(0) * i2).to_series(var, terms);
    if ((!c1.is_zero() && c1.valuation() < 0) || (!c0.is_zero() && c0.valuation() < 0))
        throw PreconditionError("hadamard_square_at_point: point is not ordinary");
    auto run = [&](Rational y0, Rational y1) {
        std::vector<Rational> y(static_cast<size_t>(terms));
        y[0] = y0;
        if (terms > 1) y[1] = y1;
        for (long n = 0; n + 2 < terms; ++n) {
            Rational acc = 0;
            for (long k = 0; k <= n; ++k) {
                if (k < c1.order()) {
                    Rational a = c1.coeff(k);
                    if (a != 0) acc += a * (n - k + 1) * y[static_cast<size_t>(n - k + 1)];
                }
                if (k < c0.order()) {
                    Rational b = c0.coeff(k);
                    if (b != 0) acc += b * y[static_cast<size_t>(n - k)];
                }
            }
            y[static_cast<size_t>(n + 2)] = -acc / ((n + 2) * (n + 1));
        }
        return PowerSeries::from_coeffs(std::move(y), var, terms);
    };
    return {run(1, 0), run(0, 1)};
}

}  // namespace detail

// result is in the local variable (same name) x - c
inline std::optional<DiffOp> hadamard_square_at_point(const DiffOp& L, const Rational& c, long terms, long max_order,
                                                      long max_degree) {
    if (L.order() != 2) throw PreconditionError("hadamard_square_at_point needs an order-2 operator");
    DiffOp Lc = c == 0 ? L : recenter(L, c);
    std::vector<PowerSeries> prods;
    RatFun a2 = Lc.coeff(2);
    bool ordinary = a2.num().low_degree() == 0 && a2.den().low_degree() == 0;
    for (long i = 0; i < 2 && ordinary; ++i)
        if (Lc.coeff(i).den().low_degree() > 0) ordinary = false;
    if (ordinary) {
        auto [u, v] = detail::ordinary_basis(Lc, terms);
        prods = {hadamard(u, u), hadamard(u, v), hadamard(v, v)};
    } else {
        auto mum = frobenius_mum(Lc, terms);
        prods = {hadamard(mum.y0(), mum.y0())};
    }
    return guess_min_ode(prods, max_order, max_degree);
}

// ---- text forms ----

namespace detail {

struct DiffOpAlg {
    using value = DiffOp;
    std::string var;
    value number(const Integer& n) { return DiffOp::multiplier(RatFun(Rational(n)), var); }
    value ident(const std::string& id) {
        if (id == var) return DiffOp::multiplier(RatFun::x(var), var);
        if (id == "D") return DiffOp::D(var);
        if (id == "theta") return DiffOp::theta(var);
        throw ParseError("unknown identifier '" + id + "' in operator (expected " + var + ", D or theta)");
    }
    value add(const value& a, const value& b) { return a + b; }
    value sub(const value& a, const value& b) { return a - b; }
    value mul(const value& a, const value& b) { return a * b; }
    value div(const value& a, const value& b) {
        if (b.order() != 0) throw ParseError("operators may only be divided by functions");
        return a * DiffOp::multiplier(inverse(b.coeff(0)), var);
    }
    value neg(const value& a) { return -a; }
    value pow(const value& a, long e) { return holo::pow(a, e); }
};

inline std::string format_poly_line(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string s;
    for (long k = 0; k <= p.degree(); ++k) {
        const Rational& c = p.coeffs()[static_cast<size_t>(k)];
        if (c == 0) continue;
        if (!s.empty()) s += " ";
        s += "+ " + to_string(c) + " " + var + "^" + std::to_string(k);
    }
    return s;
}

inline Poly parse_poly_line(const std::string& line, const std::string& var, long lineno) {
    std::istringstream is(line);
    std::string sign, c, mono;
    std::vector<Rational> coeffs;
    auto bad = [&](const std::string& why) {
        return ParseError("operator line " + std::to_string(lineno) + ": " + why);
    };
    if (!(is >> sign)) throw bad("empty coefficient line");
    if (sign == "0") {
        std::string rest;
        if (is >> rest) throw bad("junk after 0");
        return Poly(std::vector<Rational>{}, var);
    }
    do {
        if (sign != "+" && sign != "-") throw bad("expected '+' or '-', got '" + sign + "'");
        if (!(is >> c >> mono)) throw bad("truncated monomial");
        Rational q = parse_rational(c);
        if (sign == "-") q = -q;
        std::string pre = var + "^";
        if (mono.rfind(pre, 0) != 0) throw bad("expected " + pre + "<k>, got '" + mono + "'");
        long k;
        try {
            size_t used = 0;
            k = std::stol(mono.substr(pre.size()), &used);
            if (used != mono.size() - pre.size() || k < 0) throw bad("bad exponent in '" + mono + "'");
        } catch (const std::logic_error&) {
            throw bad("bad exponent in '" + mono + "'");
        }
        if (static_cast<long>(coeffs.size()) <= k) coeffs.resize(static_cast<size_t>(k + 1));
        coeffs[static_cast<size_t>(k)] += q;
    } while (is >> sign);
    return Poly(std::move(coeffs), var);
}

}  // namespace detail

inline DiffOp parse_op(std::string_view src, const std::string& var = "x") {
    detail::DiffOpAlg alg{var};
    return read_expr(src, alg);
}

enum class OpForm { D, Theta };

// polynomial coefficients are written as they are; otherwise denominators are cleared first
inline std::string format_diffop(const DiffOp& L0, OpForm form = OpForm::D) {
    DiffOp L = L0;
    std::vector<RatFun> cs = form == OpForm::D ? L.coeffs() : L.theta_coeffs();
    bool poly = std::all_of(cs.begin(), cs.end(), [](const RatFun& f) { return f.is_polynomial(); });
    if (!poly) {
        L = primitive(L0);
        cs = form == OpForm::D ? L.coeffs() : L.theta_coeffs();
        // theta form of a polynomial D-form is a polynomial times x^-k; clear that too
        Poly den(1);
        for (const auto& f : cs) den = detail::poly_lcm(den, f.den());
        for (auto& f : cs) f = f * RatFun(den);
    }
    std::ostringstream os;
    os << "diffop " << L.var() << " order=" << L.order() << " form=" << (form == OpForm::D ? "D" : "theta") << "\n";
    for (const auto& f : cs) os << detail::format_poly_line((1 / f.den().coeff(0)) * f.num(), L.var()) << "\n";
    return os.str();
}

inline DiffOp parse_diffop_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty operator file");
    std::istringstream hs(line);
    std::string tag, var, ord, form;
    if (!(hs >> tag >> var >> ord >> form) || tag != "diffop") throw ParseError("operator header expected");
    if (ord.rfind("order=", 0) != 0 || form.rfind("form=", 0) != 0) throw ParseError("bad operator header: " + line);
    long r;
    try {
        r = std::stol(ord.substr(6));
    } catch (const std::logic_error&) {
        throw ParseError("bad order in header: " + ord);
    }
    std::string f = form.substr(5);
    if (f != "D" && f != "theta") throw ParseError("form must be D or theta");
    std::vector<RatFun> cs;
    long lineno = 1;
    while (static_cast<long>(cs.size()) < r + 1 && std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        cs.push_back(RatFun(detail::parse_poly_line(line, var, lineno)));
    }
    if (static_cast<long>(cs.size()) != r + 1) throw ParseError("operator file has too few coefficient lines");
    while (std::getline(is, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("extra lines after operator");
    return f == "D" ? DiffOp(std::move(cs), var) : DiffOp::from_theta(cs, var);
}

}  // namespace holo
