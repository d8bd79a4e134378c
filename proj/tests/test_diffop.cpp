#include <gtest/gtest.h>

#include "holo/diffop.hpp"
#include "holo/hyper.hpp"
#include "holo/registry.hpp"

using namespace holo;

namespace {

const DiffOp& theta4() {
    static const DiffOp L = parse_op("theta^4 - 256*x*(theta+1/2)^4");
    return L;
}

// rank test on numerators over a common denominator
bool in_span(const std::vector<RatFun>& basis, const RatFun& f) {
    Poly den = f.den();
    for (const auto& b : basis) den = den * exact_quotient(b.den(), gcd(den, b.den()));
    auto rows = [&](const std::vector<RatFun>& fs) {
        RMatrix m;
        for (const auto& g : fs) {
            Poly n = g.num() * exact_quotient(den, g.den());
            std::vector<Rational> row(static_cast<size_t>(den.degree() + 8));
            for (long k = 0; k <= n.degree(); ++k) row.at(static_cast<size_t>(k)) = n.coeff(k);
            m.push_back(row);
        }
        return rref(m).size();
    };
    std::vector<RatFun> ext = basis;
    ext.push_back(f);
    return rows(ext) == rows(basis);
}

}  // namespace

TEST(DiffOp, Leibniz) { EXPECT_EQ(parse_op("D") * parse_op("x"), parse_op("x*D + 1")); }

TEST(DiffOp, HypergeometricOperatorDForm) {
    DiffOp L = hypergeometric_operator({rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)}, {1, 1, 1}, 256);
    EXPECT_EQ(L, theta4());
    DiffOp D = parse_op("x^4*(1-256*x)*D^4 + 2*x^3*(3-1024*x)*D^3 + x^2*(7-3712*x)*D^2 + x*(1-1280*x)*D - 16*x");
    EXPECT_EQ(primitive(L), primitive(D));
}

TEST(DiffOp, HypergeometricOperatorShapes) {
    DiffOp L5 = hypergeometric_operator({rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)}, {1, 1, 1}, 3125);
    EXPECT_EQ(L5, parse_op("theta^4 - 3125*x*(theta+1/5)*(theta+2/5)*(theta+3/5)*(theta+4/5)"));
    DiffOp G = hypergeometric_operator({rat(1, 2), rat(1, 2)}, {1}, 1);
    EXPECT_EQ(G.order(), 2);
    EXPECT_EQ(G, parse_op("theta^2 - x*(theta+1/2)^2"));
}

TEST(DiffOp, ThetaRoundTrip) {
    EXPECT_EQ(DiffOp::from_theta(theta4().theta_coeffs()), theta4());
    EXPECT_EQ(parse_diffop_text(format_diffop(theta4())), theta4());
    EXPECT_EQ(parse_diffop_text(format_diffop(theta4(), OpForm::Theta)), theta4());
}

TEST(DiffOp, TextParseErrors) {
    EXPECT_THROW(parse_diffop_text(""), ParseError);
    EXPECT_THROW(parse_diffop_text("diffop x order=2 form=E\n1\n1\n1\n"), ParseError);
    EXPECT_THROW(parse_op("D^"), ParseError);
}

TEST(DiffOp, RecenterRoundTrip) {
    DiffOp L = parse_op("x*(1-x)*D^2 + (1-2*x)*D - 1/4");
    EXPECT_EQ(recenter(recenter(L, -1), 1), L);
}

TEST(Apply, AlgebraicSolution) {
    // (D - (1/2) dlog R) kills R^(1/2), R = x^2/(1-4x)^2
    DiffOp L = parse_op("D - 1/x - 4/(1-4*x)");
    PowerSeries R = parse_ratfun("x^2/(1-4*x)^2").to_series("x", 30);
    PowerSeries s = pow_rational(R, rat(1, 2));
    PowerSeries res = apply(L, s);
    EXPECT_TRUE(res.is_zero()) << res.to_string();
    EXPECT_TRUE(apply(L, parse_ratfun("x/(1-4*x)")).is_zero());
}

TEST(Apply, OrderFourKillsHadamardSquare) {
    DiffOp L = parse_op("D^4+2*(3-4*x)/((1-x)*x)*D^3+1/2*(14-29*x)/((1-x)*x^2)*D^2+(1-5*x)/((1-x)*x^3)*D-1/16/((1-x)*x^3)");
    PowerSeries f = pfq_series(HGParams{{rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)}, {1, 1, 1}, 1}, 40);
    PowerSeries res = apply(L, f);
    EXPECT_TRUE(res.is_zero()) << res.to_string();
}

TEST(Apply, ConstantsAndPreconditions) {
    EXPECT_TRUE(apply(parse_op("D"), PowerSeries::constant(1, "x")).is_zero());
    EXPECT_THROW(apply(parse_op("D^3"), PowerSeries::constant(1, "x", 3)), PreconditionError);
}

TEST(Frobenius, FourthOrderMum) {
    MumSolutions m = frobenius_mum(theta4(), 12);
    EXPECT_EQ(m.y0().coeff(1), 16);
    EXPECT_EQ(m.y0().coeff(4), 24010000);
    EXPECT_EQ(m.t(1).coeff(3), rat(2368000, 3));
    EXPECT_EQ(m.t(3).coeff(2), -4296);
    for (long k = 0; k < 4; ++k) EXPECT_TRUE(apply(theta4(), m.solution(k)).is_zero());
}

TEST(Frobenius, EulerOperator) {
    MumSolutions m = frobenius_mum(parse_op("theta^2"), 8);
    EXPECT_EQ(m.y0(), PowerSeries::constant(1, "x", 8));
    EXPECT_TRUE(m.t(1).is_zero());
    EXPECT_EQ(m.solution(1).part(1), PowerSeries::constant(1, "x", 8));
}

TEST(Frobenius, HeunOperatorSolutions) {
    MumSolutions m = frobenius_mum(reg::heunx(), 20);
    EXPECT_EQ(m.y0().coeff(0), 1);
    for (long k = 0; k < 2; ++k) EXPECT_TRUE(apply(reg::heunx(), m.solution(k)).is_zero());
}

TEST(Frobenius, RejectsNonMum) { EXPECT_THROW(frobenius_mum(parse_op("theta*(theta-1)"), 5), PreconditionError); }

TEST(Guess, CentralBinomial) {
    std::vector<Rational> c;
    for (long n = 0; n < 50; ++n) c.push_back(Rational(binomial(2 * n, n)));
    auto L = guess_min_ode({PowerSeries::from_coeffs(c, "x", 50)}, 1, 1);
    ASSERT_TRUE(L.has_value());
    EXPECT_EQ(*L, parse_op("(1-4*x)*D - 2"));
}

TEST(Guess, DegenerateAndNoise) {
    EXPECT_FALSE(guess_min_ode({PowerSeries::zero("x", 40)}, 3, 3).has_value());
    std::vector<Rational> c;
    std::uint64_t s = 12345;
    for (long n = 0; n < 40; ++n) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        c.push_back(Rational(static_cast<long>(s >> 40) % 1000 - 500));
    }
    EXPECT_FALSE(guess_min_ode({PowerSeries::from_coeffs(c, "x", 40)}, 2, 2).has_value());
}

TEST(ExteriorSquare, Orders) {
    EXPECT_EQ(exterior_square(theta4()).order(), 5);
    DiffOp screw = parse_op("theta^4 - 256*x*(theta-1/2)^4");
    DiffOp ES = exterior_square(screw);
    EXPECT_EQ(ES.order(), 6);
    EXPECT_TRUE(in_span(rational_kernel(ES, 2), parse_ratfun("(1-256*x)/x")));
    EXPECT_TRUE(symplectic_head_vanishes(theta4()));
    EXPECT_FALSE(symplectic_head_vanishes(screw));
}

TEST(ExteriorSquare, FormFactorIntertwiner) {
    DiffOp J = reg::J_op(1, 0);
    DiffOp E = exterior_square(J);
    EXPECT_EQ(E.order(), 6);
    EXPECT_FALSE(symplectic_head_vanishes(J));
    EXPECT_TRUE(in_span(rational_kernel(E, 4), parse_ratfun("1/((1-16*x)*x^2)")));
}

TEST(ExteriorSquare, KillsWronskians) {
    MumSolutions m = frobenius_mum(theta4(), 30);
    DiffOp E = exterior_square(theta4());
    LogSeries y0 = m.solution(0), y1 = m.solution(1);
    LogSeries w = sub(mul(y0, derivative(y1)), mul(y1, derivative(y0)));
    EXPECT_TRUE(apply(E, w).is_zero());
}

TEST(RationalKernel, SmallCases) {
    auto k = rational_kernel(parse_op("D + 1/((1-256*x)*x)"), 2);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_TRUE((k[0] / parse_ratfun("(1-256*x)/x")).is_constant());
    auto c = rational_kernel(parse_op("D"), 0);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(c[0].is_constant());
    EXPECT_TRUE(rational_kernel(parse_op("D - 1"), 3).empty());
}

TEST(HadamardSquare, OrdinaryPoint) {
    // basis 1 and ((1-4x)^(-1/2) - 1)/2; the squares span 1 and 2F1(1/2,1/2;1;16x),
    // which no order-2 operator kills together
    DiffOp L = parse_op("(1-4*x)*D^2 - 6*D");
    auto H = hadamard_square_at_point(L, 0, 40, 3, 3);
    ASSERT_TRUE(H.has_value());
    EXPECT_EQ(H->order(), 3);
    PowerSeries k = pfq_series(HGParams{{rat(1, 2), rat(1, 2)}, {1}, 16}, 40);
    EXPECT_TRUE(apply(*H, k).is_zero());
    EXPECT_TRUE(apply(*H, PowerSeries::constant(1, "x")).is_zero());
}

TEST(HadamardSquare, NeedsOrderTwo) { EXPECT_THROW(hadamard_square_at_point(theta4(), 0, 10, 2, 2), PreconditionError); }
