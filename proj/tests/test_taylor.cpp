#include <cmath>

#include <gtest/gtest.h>

#include "curvekit/error.hpp"
#include "curvekit/expr.hpp"
#include "curvekit/taylor.hpp"

using namespace curvekit;

TEST(Taylor, ElementaryFunctionsMatchClosedFormDerivatives) {
    const Taylor x = Taylor::variable(0.3, 6);
    const Taylor s = sin(x);
    const Taylor e = exp(2.0 * x);
    for (int k = 0; k <= 6; ++k) {
        const double dsin = std::sin(0.3 + k * M_PI / 2);
        EXPECT_NEAR(s.derivative(k), dsin, 1e-14);
        EXPECT_NEAR(e.derivative(k), std::pow(2.0, k) * std::exp(0.6), 1e-12);
    }
    const Taylor t = tan(x);
    EXPECT_NEAR(t.derivative(1), 1.0 / std::pow(std::cos(0.3), 2), 1e-14);
    const Taylor q = sqrt(1.0 + x * x);
    EXPECT_NEAR(q.derivative(1), 0.3 / std::sqrt(1.09), 1e-15);
    EXPECT_NEAR(log(exp(x))[3], 0.0, 1e-15);
}

TEST(Taylor, QuotientInvertsProduct) {
    const Taylor x = Taylor::variable(1.2, 8);
    const Taylor a = cosh(x) + x * x;
    const Taylor b = 2.0 + sin(x);
    const Taylor r = (a * b) / b;
    for (int k = 0; k <= 8; ++k) EXPECT_NEAR(r[k], a[k], 1e-13);
}

TEST(Taylor, ReversionComposesToIdentity) {
    Taylor f(7);
    f[1] = 2.0;
    f[2] = 0.5;
    f[3] = -0.25;
    f[5] = 0.1;
    const Taylor g = f.reversion();
    const Taylor id = f.compose(g);
    EXPECT_NEAR(id[1], 1.0, 1e-15);
    for (int k = 2; k <= 7; ++k) EXPECT_NEAR(id[k], 0.0, 1e-14);
}

TEST(Taylor, IntegralAndDerivativeRoundTrip) {
    const Taylor x = Taylor::variable(-0.4, 5);
    const Taylor a = exp(x) * cos(x);
    const Taylor back = a.integrated(1.0).differentiated();
    for (int k = 0; k <= 5; ++k) EXPECT_NEAR(back[k], a[k], 1e-15);
}

TEST(Expression, ParsesGrammar) {
    EXPECT_DOUBLE_EQ(Expression::parse("2*3+4").evaluate(0.0), 10.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-2^2").evaluate(0.0), -4.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2").evaluate(0.0), 512.0);
    EXPECT_NEAR(Expression::parse("tan(s/2)").evaluate(1.0), std::tan(0.5), 1e-16);
    EXPECT_NEAR(Expression::parse("exp(t) + pi").evaluate(0.0), 1.0 + M_PI, 1e-15);
    EXPECT_NEAR(Expression::parse("1/(1+s^2)").evaluate(2.0), 0.2, 1e-16);
}

TEST(Expression, TaylorEvaluationGivesDerivatives) {
    const Expression e = Expression::parse("0.8 + 0.3*sin(s)");
    const Taylor k = e.evaluate(Taylor::variable(0.7, 4));
    EXPECT_NEAR(k.derivative(1), 0.3 * std::cos(0.7), 1e-15);
    EXPECT_NEAR(k.derivative(2), -0.3 * std::sin(0.7), 1e-15);
    const Taylor p = Expression::parse("(1+s)^1.5").evaluate(Taylor::variable(1.0, 2));
    EXPECT_NEAR(p.derivative(1), 1.5 * std::sqrt(2.0), 1e-14);
}

TEST(Expression, RejectsMalformedInput) {
    for (const char* bad : {"", "1+", "sin 1", "foo(s)", "(1", "1)", "2..3"}) {
        try {
            Expression::parse(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
        }
    }
}
