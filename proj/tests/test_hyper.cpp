#include <gtest/gtest.h>

#include "holo/diffop.hpp"
#include "holo/hyper.hpp"

using namespace holo;

namespace {

std::vector<Rational> head(const PowerSeries& f, long from, long to) {
    std::vector<Rational> v;
    for (long n = from; n < to; ++n) v.push_back(f.coeff(n));
    return v;
}

std::vector<Rational> ints(std::initializer_list<long> s) {
    std::vector<Rational> v;
    for (long t : s) v.push_back(Rational(t));
    return v;
}

const Rational h = rat(1, 2);

}  // namespace

TEST(Pfq, Values) {
    PowerSeries y = pfq_series(HGParams{{h, h, h, h}, {1, 1, 1}, 256}, 5);
    EXPECT_EQ(head(y, 0, 5), ints({1, 16, 1296, 160000, 24010000}));
    PowerSeries k = pfq_series(HGParams{{h, h}, {1}, 16}, 5);
    EXPECT_EQ(head(k, 0, 5), ints({1, 4, 36, 400, 4900}));
    PowerSeries e = pfq_series(HGParams{{}, {}, 1}, 6);
    for (long n = 0; n < 6; ++n) EXPECT_EQ(e.coeff(n), Rational(1) / Rational(factorial(n)));
}

TEST(Pfq, TerminatingIsExact) {
    PowerSeries p = pfq_series(HGParams{{-2, 1}, {1}, 1}, 10);
    EXPECT_TRUE(p.exact());
    EXPECT_EQ(head(p, 0, 4), ints({1, -2, 1, 0}));
}

TEST(Pfq, RejectsBadLowerParameter) { EXPECT_THROW(pfq_series(HGParams{{h}, {-1}, 1}, 5), PreconditionError); }

TEST(Pfq, SeriesArgument) {
    // 2F1(1/2,1/2;1;16x) at x = t/16 is 2F1(.;t)
    PowerSeries t16 = PowerSeries::monomial(rat(1, 16), 1, "t", 1, 10);
    PowerSeries a = pfq_series(HGParams{{h, h}, {1}, 16}, t16, 10);
    PowerSeries b = pfq_series(HGParams{{h, h}, {1}, 1}, 10, "t");
    EXPECT_EQ(head(a, 0, 10), head(b, 0, 10));
    EXPECT_THROW(pfq_series(HGParams{{h}, {}, 1}, PowerSeries::constant(1, "t", 5), 5), PreconditionError);
}

TEST(Pfq, SolvesItsOperator) {
    DiffOp L = hypergeometric_operator({h, h, h, h}, {1, 1, 1}, 256);
    EXPECT_TRUE(apply(L, pfq_series(HGParams{{h, h, h, h}, {1, 1, 1}, 256}, 40)).is_zero());
}

TEST(Theta, Nulls) {
    EXPECT_EQ(head(theta_null(3, 10), 0, 10), ints({1, 2, 0, 0, 2, 0, 0, 0, 0, 2}));
    EXPECT_EQ(head(theta_null(4, 10), 0, 10), ints({1, -2, 0, 0, 2, 0, 0, 0, 0, -2}));
    PowerSeries t2 = theta_null(2, 10);
    EXPECT_EQ(t2.scale(), 4);
    EXPECT_EQ(t2.coeff_at(rat(1, 4)), 2);
    EXPECT_EQ(t2.coeff_at(rat(9, 4)), 2);
    EXPECT_EQ(t2.coeff_at(rat(25, 4)), 2);
    EXPECT_THROW(theta_null(1, 5), PreconditionError);
}

TEST(Theta, LambdaAndJacobiIdentity) {
    long N = 10;
    PowerSeries t2 = theta_null(2, N), t3 = theta_null(3, N), t4 = theta_null(4, N);
    PowerSeries t2_4 = pow_int(t2, 4), t3_4 = pow_int(t3, 4), t4_4 = pow_int(t4, 4);
    // theta3^4 = theta2^4 + theta4^4
    PowerSeries jac = t3_4 - t2_4 - t4_4;
    EXPECT_TRUE(jac.is_zero()) << jac.to_string();
    PowerSeries lam = t2_4 / t3_4;
    EXPECT_EQ(lam.coeff_at(1), 16);
    EXPECT_EQ(lam.coeff_at(2), -128);
    EXPECT_EQ(lam.coeff_at(3), 704);
    PowerSeries z = Rational(4) * t2_4 * t4_4 / pow_int(t3_4, 2);
    EXPECT_EQ(z.coeff_at(1), 64);
    EXPECT_EQ(z.coeff_at(2), -1536);
    EXPECT_EQ(z.coeff_at(3), 19200);
}

TEST(Eta, Delta) {
    PowerSeries d = delta_series(10);
    EXPECT_EQ(head(d, 0, 10), ints({0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643}));
}

TEST(Eta, LevelTwoQuotient) {
    PowerSeries j = j2_series(6);
    EXPECT_EQ(j.valuation(), -1);
    EXPECT_EQ(head(j, -1, 6), ints({1, -24, 276, -2048, 11202, -49152, 184024}));
}

TEST(Eta, FractionalPrefactor) {
    PowerSeries e = eta_quotient(EtaQuotient{{{1, 1}}}, 3);
    EXPECT_EQ(e.scale(), 24);
    EXPECT_EQ(e.coeff_at(rat(1, 24)), 1);
    EXPECT_EQ(e.coeff_at(rat(25, 24)), -1);
    EXPECT_THROW(eta_quotient(EtaQuotient{{{0, 1}}}, 3), PreconditionError);
}

TEST(Eta, EulerPentagonal) {
    EXPECT_EQ(head(euler_product(13), 0, 13), ints({1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1}));
}

TEST(FormFactor, LowestCase) {
    PowerSeries b = form_factor_series(0, 0, 4, false);
    EXPECT_EQ(head(b, 0, 4), ints({1, 4, 36, 400}));
    PowerSeries a = form_factor_series(2, 1, 3, true);
    PowerSeries b21 = form_factor_series(2, 1, 3, false);
    EXPECT_EQ(a.coeff(2), 3 * b21.coeff(2));
    EXPECT_THROW(form_factor_params(-1, 0), PreconditionError);
}

TEST(HadamardPowers, Family) {
    EXPECT_EQ(head(hadamard_power_family(2, PowerBase::Sqrt, 4), 0, 4), ints({1, 4, 36, 400}));
    EXPECT_EQ(head(hadamard_power_family(3, PowerBase::Sqrt, 5), 0, 5), ints({1, 8, 216, 8000, 343000}));
    PowerSeries k = pfq_series(HGParams{{h, h}, {1}, 16}, 8, "z");
    EXPECT_EQ(hadamard_power_family(1, PowerBase::K, 8), k);
    EXPECT_THROW(hadamard_power_family(0, PowerBase::K, 8), PreconditionError);
}
