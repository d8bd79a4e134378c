#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "holo/rational.hpp"

namespace holo {

using RMatrix = std::vector<std::vector<Rational>>;

namespace detail {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(r & kPrime), hi = static_cast<std::uint64_t>(r >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kPrime) s -= kPrime;
    return s;
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

inline std::optional<std::uint64_t> reduce_mod(const Rational& q) {
    Integer p(std::to_string(kPrime));
    Integer n = q.get_num() % p, d = q.get_den() % p;
    if (n < 0) n += p;
    if (d == 0) return std::nullopt;
    std::uint64_t nn = std::stoull(n.get_str()), dd = std::stoull(d.get_str());
    return mulmod(nn, invmod(dd));
}

}  // namespace detail

struct ModRank {
    size_t rank = 0;
    std::vector<size_t> pivot_rows;  // original indices of independent rows
    bool ok = true;                  // false if a denominator vanished mod p
};

// rank over Z/p, p = 2^61 - 1
inline ModRank rank_mod_p(const RMatrix& m, size_t ncols) {
    using detail::kPrime;
    ModRank out;
    std::vector<std::vector<std::uint64_t>> a;
    std::vector<size_t> origin;
    a.reserve(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        std::vector<std::uint64_t> row(ncols);
        for (size_t j = 0; j < ncols; ++j) {
            auto r = detail::reduce_mod(m[i][j]);
            if (!r) {
                out.ok = false;
                return out;
            }
            row[j] = *r;
        }
        a.push_back(std::move(row));
        origin.push_back(i);
    }
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < a.size(); ++c) {
        size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        std::swap(origin[piv], origin[r]);
        std::uint64_t inv = detail::invmod(a[r][c]);
        for (size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            std::uint64_t f = detail::mulmod(a[i][c], inv);
            for (size_t j = c; j < ncols; ++j) {
                std::uint64_t t = detail::mulmod(f, a[r][j]);
                a[i][j] = a[i][j] >= t ? a[i][j] - t : a[i][j] + kPrime - t;
            }
        }
        out.pivot_rows.push_back(origin[r]);
        ++r;
    }
    out.rank = r;
    return out;
}

// basis of {v : m v = 0}, via fraction-free Gauss-Jordan on integer rows
inline RMatrix nullspace(const RMatrix& m, size_t ncols) {
    std::vector<std::vector<Integer>> a;
    for (const auto& row : m) {
        Integer den = common_denominator(row), g = 0;
        std::vector<Integer> ir(ncols);
        for (size_t j = 0; j < ncols; ++j) {
            ir[j] = row[j].get_num() * (den / row[j].get_den());
            g = gcd(g, ir[j]);
        }
        if (g == 0) continue;
        if (g != 1)
            for (auto& v : ir) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        a.push_back(std::move(ir));
    }
    std::vector<long> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < a.size(); ++c) {
        size_t piv = a.size();
        size_t best = 0;
        for (size_t i = r; i < a.size(); ++i)
            if (a[i][c] != 0) {
                size_t sz = mpz_sizeinbase(a[i][c].get_mpz_t(), 2);
                if (piv == a.size() || sz < best) {
                    piv = i;
                    best = sz;
                }
            }
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Integer g = gcd(a[i][c], a[r][c]);
            Integer fr = a[i][c] / g, fi = a[r][c] / g;
            Integer cont = 0;
            for (size_t j = 0; j < ncols; ++j) {
                a[i][j] = fi * a[i][j] - fr * a[r][j];
                if (cont != 1) cont = gcd(cont, a[i][j]);
            }
            if (cont > 1)
                for (auto& v : a[i]) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cont.get_mpz_t());
        }
        pivcol.push_back(static_cast<long>(c));
        ++r;
    }
    std::vector<bool> is_piv(ncols, false);
    for (long c : pivcol) is_piv[static_cast<size_t>(c)] = true;
    RMatrix basis;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(ncols);
        v[f] = 1;
        for (size_t i = 0; i < pivcol.size(); ++i) {
            size_t p = static_cast<size_t>(pivcol[i]);
            if (a[i][f] != 0) v[p] = -rat(a[i][f], a[i][p]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// reduced row echelon form of the rows of b (rational), zero rows dropped
inline RMatrix rref(RMatrix b) {
    size_t ncols = b.empty() ? 0 : b[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < b.size(); ++c) {
        size_t piv = r;
        while (piv < b.size() && b[piv][c] == 0) ++piv;
        if (piv == b.size()) continue;
        std::swap(b[piv], b[r]);
        Rational inv = 1 / b[r][c];
        for (auto& v : b[r]) v *= inv;
        for (size_t i = 0; i < b.size(); ++i) {
            if (i == r || b[i][c] == 0) continue;
            Rational f = b[i][c];
            for (size_t j = 0; j < ncols; ++j) b[i][j] -= f * b[r][j];
        }
        ++r;
    }
    b.resize(r);
    return b;
}

// Gaussian elimination over an arbitrary field type T: solve a c = v if
// consistent (a is n x k, column vectors)
template <class T, class IsZero>
std::optional<std::vector<T>> solve_columns(const std::vector<std::vector<T>>& cols, const std::vector<T>& v,
                                            IsZero is_zero) {
    size_t n = v.size(), k = cols.size();
    // augmented rows
    std::vector<std::vector<T>> a(n, std::vector<T>(k + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
        a[i][k] = v[i];
    }
    std::vector<size_t> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < k && r < n; ++c) {
        size_t piv = r;
        while (piv < n && is_zero(a[piv][c])) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[r]);
        T inv = T(1) / a[r][c];
        for (size_t j = c; j <= k; ++j) a[r][j] = a[r][j] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == r || is_zero(a[i][c])) continue;
            T f = a[i][c];
            for (size_t j = c; j <= k; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (size_t i = r; i < n; ++i)
        if (!is_zero(a[i][k])) return std::nullopt;
    std::vector<T> sol(k, T(0));
    for (size_t i = 0; i < pivcol.size(); ++i) sol[pivcol[i]] = a[i][k];
    return sol;
}

}  // namespace holo
