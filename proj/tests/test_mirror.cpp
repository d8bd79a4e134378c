#include <gtest/gtest.h>

#include "golden.hpp"
#include "holo/mirror.hpp"
#include "holo/numeric.hpp"
#include "holo/registry.hpp"

using namespace holo;

namespace {

const MirrorBundle& bundle() {
    static const MirrorBundle b = build_mirror_bundle(reg::L4(), 24);
    return b;
}

DiffOp lambda_op() {
    Rational h = rat(1, 2);
    return hypergeometric_operator({h, h}, {1}, 1);
}

PowerSeries lambda_nome(long order) { return nome_of(frobenius_mum(lambda_op(), order)); }

}  // namespace

TEST(Mirror, GoldenPrefixes) {
    std::string why;
    EXPECT_TRUE(golden::matches(bundle().mum.y0(), 0, golden::y0, &why)) << why;
    EXPECT_TRUE(golden::matches(bundle().nome, 1, golden::nome, &why)) << why;
    EXPECT_TRUE(golden::matches(bundle().mirror, 1, golden::mirror, &why)) << why;
    EXPECT_TRUE(golden::matches(bundle().yukawa, 0, golden::yukawa, &why)) << why;
    EXPECT_EQ(bundle().mirror.var(), "q");
}

TEST(Mirror, RejectsWrongOrder) {
    EXPECT_THROW(build_mirror_bundle(lambda_op(), 10), PreconditionError);
    EXPECT_THROW(classical_schwarzian_residual(reg::L4(), reg::rf("1"), 10), PreconditionError);
    EXPECT_THROW(nome_system_residuals(lambda_op(), 10), PreconditionError);
}

TEST(Mirror, QuantumSchwarzian) {
    PowerSeries r = quantum_schwarzian_residual(bundle(), reg::quantum_q2(), 18);
    EXPECT_TRUE(r.is_zero()) << r.to_string();
    PowerSeries wrong = quantum_schwarzian_residual(bundle(), reg::quantum_q2() + RatFun(Rational(1)), 18);
    EXPECT_FALSE(wrong.is_zero());
}

TEST(Mirror, ClassicalSchwarzian) {
    RatFun Q = reg::rf("(x^2-x+1)/(4*x^2*(x-1)^2)");
    EXPECT_TRUE(classical_schwarzian_residual(lambda_op(), Q, 20).is_zero());
    EXPECT_FALSE(classical_schwarzian_residual(lambda_op(), RatFun(Rational(2)) * Q, 20).is_zero());
}

TEST(Mirror, NomeSystem) {
    for (const auto& nr : nome_system_residuals(reg::L4(), 20)) EXPECT_TRUE(nr.value.is_zero()) << nr.name;
    MumSolutions m = frobenius_mum(reg::L4(), 20);
    PowerSeries q = nome_of(m);
    bool any = false;
    // every equation is linear in ln q, so q^2 would still pass; perturb by 1+x
    PowerSeries off = q * (PowerSeries::constant(1, "x") + PowerSeries::variable("x"));
    for (const auto& nr : nome_system_residuals(reg::L4(), m, off)) any = any || !nr.value.is_zero();
    EXPECT_TRUE(any);
}

TEST(NonlinearOde, SimplePolynomial) {
    // x f' - 2 f = 0 for f = x^2
    MPoly P = parse_mpoly("x*u1-2*u0", {"x", "u0", "u1"});
    EXPECT_TRUE(nonlinear_ode_residual(P, PowerSeries::monomial(1, 2, "x", 1, 12), OdeRole::QofZ, 10).is_zero());
    EXPECT_FALSE(nonlinear_ode_residual(P, PowerSeries::monomial(1, 3, "x", 1, 12), OdeRole::QofZ, 10).is_zero());
    EXPECT_THROW(nonlinear_ode_residual(parse_mpoly("y", {"y"}), PowerSeries::variable("x", 5), OdeRole::QofZ, 4),
                 PreconditionError);
    EXPECT_THROW(parse_role("sideways"), PreconditionError);
}

TEST(NonlinearOde, LambdaRoles) {
    PowerSeries q = lambda_nome(30);
    PowerSeries r = nonlinear_ode_residual(lambda_ode(OdeRole::QofZ), q, OdeRole::QofZ, 24);
    EXPECT_TRUE(r.is_zero()) << r.to_string();
    PowerSeries z = revert(q).with_var("q");
    PowerSeries s = nonlinear_ode_residual(lambda_ode(OdeRole::ZofTau), z, OdeRole::ZofTau, 24);
    EXPECT_TRUE(s.is_zero()) << s.to_string();
    EXPECT_THROW(nonlinear_ode_residual(lambda_ode(OdeRole::QofZ), z, OdeRole::ZofTau, 10), PreconditionError);
}

TEST(NonlinearOde, PowerFamilies) {
    PowerSeries q = lambda_nome(30);
    EXPECT_EQ(power_family_check(lambda_ode(OdeRole::QofZ), q, {2, 3, -1, -2}, 20).status, Status::Pass);
    PowerSeries z = revert(q).with_var("q");
    MPoly Z = lambda_ode(OdeRole::ZofTau);
    EXPECT_EQ(power_family_check(Z, z, {2, 3}, 20, OdeRole::ZofTau, FamilyMove::QPower).status, Status::Pass);
    EXPECT_EQ(power_family_check(Z, z, {7}, 20, OdeRole::ZofTau, FamilyMove::Scale).status, Status::Pass);
    // the cube of the mirror map is not a solution
    EXPECT_EQ(power_family_check(Z, z, {3}, 20, OdeRole::ZofTau).status, Status::Fail);
}

TEST(Integrality, NomeAndFailingWitness) {
    VerifyReport ok = integrality_report(lambda_nome(30), 16, 25);
    EXPECT_EQ(ok.status, Status::Pass) << ok.detail;
    VerifyReport bad = integrality_report(bundle().mum.t(1), 1, 10);
    EXPECT_EQ(bad.status, Status::Fail);
    ASSERT_TRUE(bad.first_nonzero_exponent.has_value());
    EXPECT_EQ(*bad.first_nonzero_exponent, 3);
    EXPECT_EQ(bad.witness->get_den(), 3);
    EXPECT_EQ(integrality_report(lambda_nome(10), 16, 40).status, Status::Fail);
}

TEST(Numeric, QsValue) {
    QsResult r = qs_sums(128);
    EXPECT_LT(abs(r.qs - Real("0.0062794754")), Real("1e-9"));
    EXPECT_LT(r.error_bound, Real("1e-12"));
    EXPECT_THROW(qs_sums(32), PreconditionError);
}

TEST(Numeric, RatioRadius) {
    EXPECT_DOUBLE_EQ(ratio_radius({1, 2, 4, 8}), 0.5);
    EXPECT_THROW(ratio_radius({1, 0}), PreconditionError);
}

TEST(Numeric, C6Preconditions) {
    EXPECT_FALSE(c6_admissible(0));
    EXPECT_FALSE(c6_admissible(-3));
    for (long i = 1; i <= 50; ++i)
        if (!c6_admissible(rat(i, 10))) {
            EXPECT_THROW(c6_residual(rat(i, 10), 128), PreconditionError);
            break;
        }
    EXPECT_EQ(c6_spot_check(128).id, "c6-relation-spotcheck");
}
