#include <gtest/gtest.h>

#include "holo/io.hpp"
#include "holo/series.hpp"

using namespace holo;

namespace {

PowerSeries X(long order = kExact) { return PowerSeries::variable("x", order); }
PowerSeries one(long order = kExact) { return PowerSeries::constant(1, "x", order); }

std::vector<Rational> head(const PowerSeries& f, long from, long to) {
    std::vector<Rational> v;
    for (long n = from; n < to; ++n) v.push_back(f.coeff(n));
    return v;
}

std::vector<Rational> qs(std::initializer_list<const char*> s) {
    std::vector<Rational> v;
    for (const char* t : s) v.push_back(parse_rational(t));
    return v;
}

}  // namespace

TEST(Series, DifferenceOfSquares) {
    PowerSeries p = (one() + X()) * (one() - X());
    EXPECT_TRUE(p.exact());
    EXPECT_EQ(head(p, 0, 4), qs({"1", "0", "-1", "0"}));
}

TEST(Series, LaurentValuationCancels) {
    PowerSeries p = PowerSeries::monomial(1, -1, "x") * X();
    EXPECT_EQ(p, PowerSeries::constant(1, "x"));
}

TEST(Series, TruncationOrderPropagates) {
    PowerSeries a = one(10) + X();
    PowerSeries b = PowerSeries::monomial(1, 2, "x", 1, 7);
    EXPECT_EQ((a * b).order(), 7);  // min(10 + 2, 7 + 0)
    EXPECT_THROW((void)(a * b).coeff(7), PreconditionError);
}

TEST(Series, InverseSqrtSquared) {
    PowerSeries s = pow_rational(one(8) - scale_by(X(8), 4), rat(-1, 2));
    EXPECT_EQ(head(s, 0, 4), qs({"1", "2", "6", "20"}));
    EXPECT_EQ(head(s * s, 0, 4), qs({"1", "4", "16", "64"}));
}

TEST(Series, VariableMismatchRejected) {
    EXPECT_THROW(add(X(), PowerSeries::variable("q")), PreconditionError);
}

TEST(Series, FractionalExponents) {
    PowerSeries a = PowerSeries::monomial(2, 1, "q", 4, 9);  // 2 q^(1/4)
    PowerSeries b = a * a * a * a;
    EXPECT_EQ(b.coeff_at(1), 16);
    EXPECT_EQ(b.order_exponent(), 3);  // 9/4 plus three times the valuation 1/4
}

TEST(Series, ComposeRational) {
    // 1/(1-g) with g = x/(1+x) is 1 + x
    PowerSeries g = X(12) / (one(12) + X(12));
    PowerSeries f = inv(one(12) - X(12));
    PowerSeries c = compose(f, g);
    EXPECT_EQ(head(c, 0, 10), qs({"1", "1", "0", "0", "0", "0", "0", "0", "0", "0"}));
}

TEST(Series, RevertCatalan) {
    PowerSeries r = revert(X(8) + X(8) * X(8));
    EXPECT_EQ(head(r, 0, 7), qs({"0", "1", "-1", "2", "-5", "14", "-42"}));
}

TEST(Series, RevertIdentity) { EXPECT_EQ(head(revert(X(6)), 0, 6), head(X(6), 0, 6)); }

TEST(Series, RevertNeedsValuationOne) { EXPECT_THROW(revert(X(6) * X(6)), PreconditionError); }

TEST(Series, BinomialPowers) {
    PowerSeries w = PowerSeries::variable("w", 10);
    PowerSeries s = pow_rational(PowerSeries::constant(1, "w", 10) - scale_by(w * w, 16), rat(1, 2));
    EXPECT_EQ(head(s, 0, 10), qs({"1", "0", "-8", "0", "-32", "0", "-256", "0", "-2560", "0"}));
    PowerSeries t = pow_rational(one(6) + X(6), rat(-1, 4));
    EXPECT_EQ(head(t, 0, 6), qs({"1", "-1/4", "5/32", "-15/128", "195/2048", "-663/8192"}));
}

TEST(Series, PrincipalSquareRoot) {
    PowerSeries s = pow_rational(PowerSeries::monomial(1, 2, "x", 1, 10), rat(1, 2));
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_EQ(s.coeff(1), 1);
}

TEST(Series, PowRejectsBadLeadingCoefficient) {
    EXPECT_THROW(pow_rational(PowerSeries::constant(2, "x", 5) + X(5), rat(1, 2)), PreconditionError);
}

TEST(Series, HadamardIdentityAndCentralBinomials) {
    PowerSeries f = PowerSeries::from_coeffs(qs({"3", "-1/2", "7"}), "x", 3);
    PowerSeries geo = inv(one(3) - X(3));
    EXPECT_EQ(hadamard(f, geo), f);
    PowerSeries c = pow_rational(one(6) - scale_by(X(6), 4), rat(-1, 2));
    EXPECT_EQ(head(hadamard(c, c), 0, 4), qs({"1", "4", "36", "400"}));
}

TEST(Series, HadamardOfEllipticE) {
    // 2E/pi = 2F1(-1/2,1/2;1;x)
    PowerSeries e = PowerSeries::from_coeffs(qs({"1", "-1/4", "-3/64", "-5/256", "-175/16384"}), "x", 5);
    EXPECT_EQ(head(hadamard(e, e), 0, 5), qs({"1", "1/16", "9/4096", "25/65536", "30625/268435456"}));
}

TEST(Series, ExpLog) {
    EXPECT_EQ(head(exp(PowerSeries::zero("x", 5)), 0, 5), qs({"1", "0", "0", "0", "0"}));
    PowerSeries l = log(inv(one(6) - X(6)));
    EXPECT_EQ(head(l, 0, 6), qs({"0", "1", "1/2", "1/3", "1/4", "1/5"}));
    PowerSeries e = exp(X(8) + X(8) * X(8));
    EXPECT_EQ(head(e, 0, 8), qs({"1", "1", "3/2", "7/6", "25/24", "27/40", "331/720", "1303/5040"}));
    EXPECT_THROW(log(PowerSeries::constant(2, "x", 4)), PreconditionError);
    EXPECT_THROW(exp(one(4)), PreconditionError);
}

TEST(Series, Theta) {
    PowerSeries f = PowerSeries::monomial(5, 7, "x");
    EXPECT_EQ(theta(f), PowerSeries::monomial(35, 7, "x"));
    EXPECT_TRUE(theta(PowerSeries::constant(3, "x")).is_zero());
}

TEST(Series, Schwarzian) {
    EXPECT_TRUE(schwarzian(X(10)).is_zero());
    PowerSeries s = schwarzian(PowerSeries::monomial(1, 2, "x", 1, 12));
    EXPECT_EQ(s.valuation(), -2);
    EXPECT_EQ(s.leading(), rat(-3, 2));
    EXPECT_TRUE(s.coeffs().size() == 1);
    PowerSeries m = (scale_by(X(10), 2) + Rational(1)) / (X(10) + Rational(3));
    EXPECT_TRUE(schwarzian(m).is_zero());
}

TEST(Series, Substitutions) {
    PowerSeries f = one(4) + X(4);
    PowerSeries g = substitute_power(f, 3);
    EXPECT_EQ(g.order(), 12);
    EXPECT_EQ(g.coeff(3), 1);
    PowerSeries h = rescale(f, 16);
    EXPECT_EQ(h.coeff(1), 16);
}

TEST(Series, FirstNonzeroExponent) {
    EXPECT_FALSE(first_nonzero_exponent(PowerSeries::zero("x", 5)).has_value());
    EXPECT_EQ(*first_nonzero_exponent(PowerSeries::monomial(1, 3, "q", 4)), rat(3, 4));
}

TEST(Series, LogSeriesDerivative) {
    // d/dx (x log x) = log x + 1
    LogSeries f(std::vector<PowerSeries>{PowerSeries::zero("x"), X()});
    LogSeries d = derivative(f);
    EXPECT_EQ(d.part(0), PowerSeries::constant(1, "x"));
    EXPECT_EQ(d.part(1), PowerSeries::constant(1, "x"));
}

TEST(Io, RoundTrip) {
    PowerSeries f("q", 4, 1, {rat(2), rat(0), rat(0), rat(0), rat(-3, 7)}, 21);
    PowerSeries g = parse_series(format_series(f));
    EXPECT_EQ(g, f);
    PowerSeries e = PowerSeries::from_coeffs(qs({"1", "1/2"}), "x", kExact);
    EXPECT_EQ(parse_series(format_series(e)), e);
}

TEST(Io, ParseErrors) {
    EXPECT_THROW(parse_series("nonsense"), ParseError);
    EXPECT_THROW(parse_series("series x scale=1 order=3\n  5 1/1\n"), ParseError);
    EXPECT_THROW(parse_series("series x scale=1 order=9\n  2 1/1\n  1 1/1\n"), ParseError);
    EXPECT_THROW(parse_series("series x scale=0 order=9\n"), ParseError);
    EXPECT_THROW(parse_series("series x scale=1 order=9\n  1 1/0\n"), ParseError);
}

TEST(Io, SeriesJson) {
    auto j = to_json(PowerSeries::from_coeffs(qs({"1", "-2/3"}), "x", 5));
    EXPECT_EQ(j["order"], 5);
    EXPECT_EQ(j["terms"][1][1], "-2/3");
}
