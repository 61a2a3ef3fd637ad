#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "curvekit/curve.hpp"
#include "curvekit/error.hpp"
#include "curvekit/frenet.hpp"
#include "support.hpp"

using namespace curvekit;
using namespace curvekit::test;

TEST(EvalJet, HelixAtZero) {
    const Helix3 h(1, 1, {0, 10});
    const Jet j = eval_jet(h, 0.0, 1);
    EXPECT_NEAR((j.derivs[0] - vec({1, 0, 0})).norm(), 0.0, 1e-15);
    EXPECT_NEAR((j.derivs[1] - vec({0, M_SQRT1_2, M_SQRT1_2})).norm(), 0.0, 1e-15);
}

TEST(EvalJet, LinearPolynomial) {
    const PolynomialCurve p({{0, 1}, {0}, {0}}, {0, 10});
    const Jet j = eval_jet(p, 5.0, 2);
    EXPECT_EQ(j.derivs[0], vec({5, 0, 0}));
    EXPECT_EQ(j.derivs[1], vec({1, 0, 0}));
    EXPECT_EQ(j.derivs[2], vec({0, 0, 0}));
}

TEST(EvalJet, WCurveIsUnitSpeed) {
    const double r = 1 / std::sqrt(5.0);
    const WCurve4 w(r, 1, r, 2, {0, 6});
    const Jet j = eval_jet(w, 0.0, 1);
    EXPECT_NEAR((j.derivs[1] - vec({0, r, 0, 2 * r})).norm(), 0.0, 1e-15);
    EXPECT_NEAR(j.derivs[1].norm(), 1.0, 1e-15);
    EXPECT_TRUE(w.unit_speed());
}

TEST(EvalJet, AgreesWithCentralDifferences) {
    const double r = 1 / std::sqrt(5.0);
    std::vector<std::shared_ptr<Curve>> curves = {
        std::make_shared<Helix3>(1.0, 1.0, Interval{0, 8}),
        std::make_shared<Circle2>(2.0, Interval{0, 8}),
        std::make_shared<WCurve4>(r, 1.0, r, 2.0, Interval{0, 8}),
        std::make_shared<PolynomialCurve>(std::vector<std::vector<double>>{{0, 1}, {0, 0, 0.5}, {0, 0, 0, 1.0 / 6}},
                                          Interval{-1, 2}),
    };
    const double h = 1e-4;
    for (const auto& c : curves) {
        for (double t : {0.3, 0.9, 1.4}) {
            const Jet j = eval_jet(*c, t, 6);
            const Jet jm2 = eval_jet(*c, t - 2 * h, 6), jm1 = eval_jet(*c, t - h, 6);
            const Jet jp1 = eval_jet(*c, t + h, 6), jp2 = eval_jet(*c, t + 2 * h, 6);
            for (int k = 1; k <= 6; ++k) {
                const auto K = static_cast<std::size_t>(k - 1);
                const VecN fd = (-jp2.derivs[K] + 8 * jp1.derivs[K] - 8 * jm1.derivs[K] + jm2.derivs[K]) / (12 * h);
                const VecN& exact = j.derivs[static_cast<std::size_t>(k)];
                EXPECT_LE((fd - exact).norm(), 1e-6 * std::max(1.0, exact.norm())) << c->kind() << " k=" << k;
            }
        }
    }
}

TEST(EvalJet, Errors) {
    const Helix3 h(1, 1, {0, 1});
    expect_error(ErrorCode::ParamOutOfDomain, [&] { eval_jet(h, 2.0, 1); });
    expect_error(ErrorCode::OrderTooHigh, [&] { eval_jet(h, 0.5, 7); });
    const PolynomialCurve cusp({{0, 0, 1}, {0, 0, 0, 1}}, {-1, 1});
    expect_error(ErrorCode::RegularityLost, [&] { eval_jet(cusp, 0.0, 2); });
}

TEST(Arclength, UnitSpeedHelixIsIdentity) {
    const auto h = std::make_shared<Helix3>(1.0, 1.0, Interval{0, 6});
    const auto r = std::static_pointer_cast<const ReparametrizedCurve>(arclength_reparam(h));
    EXPECT_NEAR(r->length(), 6.0, 1e-12);
    for (double s : {0.0, 0.7, 3.1, 5.99}) {
        EXPECT_NEAR(r->param_of(s), s, 1e-10);
        EXPECT_LE((r->position(s) - h->position(s)).norm(), 1e-10);
    }
}

TEST(Arclength, ConstantSpeedLine) {
    const auto line = std::make_shared<PolynomialCurve>(std::vector<std::vector<double>>{{0, 2}, {0}}, Interval{0, 1});
    const CurvePtr r = arclength_reparam(line);
    EXPECT_NEAR(r->domain().lo, 0.0, 0.0);
    EXPECT_NEAR(r->domain().hi, 2.0, 1e-14);
    for (double s : {0.0, 0.5, 1.3, 2.0}) EXPECT_LE((r->position(s) - vec({s, 0})).norm(), 1e-13);
}

TEST(Arclength, ParabolaLengthMatchesClosedForm) {
    const auto p = std::make_shared<PolynomialCurve>(std::vector<std::vector<double>>{{0, 1}, {0, 0, 1}}, Interval{0, 1});
    const auto r = std::static_pointer_cast<const ReparametrizedCurve>(arclength_reparam(p));
    const double exact = std::sqrt(5.0) / 2 + std::asinh(2.0) / 4;
    EXPECT_NEAR(r->length(), exact, 1e-13);
    EXPECT_NEAR(exact, 1.4789429, 1e-7);
    for (double s : {0.1, 0.6, 1.2, 1.47}) {
        const Jet j = eval_jet(*r, s, 3);
        EXPECT_NEAR(j.derivs[1].norm(), 1.0, kTolUnit);
        EXPECT_NEAR(j.derivs[1].dot(j.derivs[2]), 0.0, 1e-12);
    }
}

TEST(Arclength, ReparametrizationIsIdempotent) {
    const auto p = std::make_shared<PolynomialCurve>(
        std::vector<std::vector<double>>{{0, 1}, {0, 0, 1}, {0, 0, 0, 1}}, Interval{0, 1.5});
    const CurvePtr once = arclength_reparam(p);
    const CurvePtr twice = arclength_reparam(once);
    EXPECT_NEAR(once->domain().hi, twice->domain().hi, kTolUnit);
    for (double s : {0.0, 0.4, 1.1, 2.0, once->domain().hi}) {
        EXPECT_LE((once->position(s) - twice->position(s)).norm(), kTolUnit);
        const Jet a = eval_jet(*once, s, 3), b = eval_jet(*twice, s, 3);
        for (int k = 1; k <= 3; ++k)
            EXPECT_LE((a.derivs[static_cast<std::size_t>(k)] - b.derivs[static_cast<std::size_t>(k)]).norm(), 1e-8);
    }
}

TEST(Synthesis, UnitCircleCloses) {
    const CurvePtr c = synthesize_from_curvatures(program(2, {"1"}), vec({0, 0}), standard_frame(2, 2), 2 * M_PI);
    EXPECT_LT((c->position(2 * M_PI) - c->position(0)).norm(), 1e-8);
    EXPECT_LT((c->position(M_PI) - vec({0, 2})).norm(), 1e-8);
}

TEST(Synthesis, ConstantCurvaturesReproduceHelix) {
    const CurvePtr c =
        synthesize_from_curvatures(program(3, {"0.5", "0.5"}), vec({0, 0, 0}), standard_frame(3, 3), 4.0);
    // congruence with the catalog helix: align the helix frame at 0 with the standard frame
    const Helix3 h(1, 1, {0, 4});
    const FrenetApparatus a0 = apparatus_at(h, 0.0, 3);
    Eigen::Matrix3d R;
    for (int i = 0; i < 3; ++i) R.row(i) = a0.frame[i].transpose();
    for (double s : {0.5, 1.7, 3.3, 4.0}) {
        const VecN mapped = R * (h.position(s) - h.position(0));
        EXPECT_LT((mapped - c->position(s)).norm(), 1e-9) << s;
        const FrenetApparatus a = apparatus_at(*c, s, 3);
        EXPECT_NEAR(a.kappa(1), 0.5, 1e-8);
        EXPECT_NEAR(a.kappa(2), 0.5, 1e-8);
    }
}

TEST(Synthesis, StepHalvingConverges) {
    const auto prog = program(3, {"1", "tan(s/2)"});
    auto at = [&](int steps) {
        return synthesize_from_curvatures(prog, vec({0, 0, 0}), standard_frame(3, 3), 1.0, 0.2, steps)->position(1.2);
    };
    // coarse grids keep the differences well above roundoff
    const VecN p128 = at(128), p256 = at(256), p512 = at(512);
    const double e1 = (p128 - p512).norm();
    const double e2 = (p256 - p512).norm();
    EXPECT_GT(e1 / e2, 14.0);  // fourth order: 17 for this pair
    EXPECT_LT(e1 / e2, 20.0);
    EXPECT_LT((at(2048) - at(4096)).norm(), 1e-13);
}

TEST(Synthesis, SalkowskiRoundTrip) {
    const CurvePtr c =
        synthesize_from_curvatures(program(3, {"1", "tan(s/2)"}), vec({0, 0, 0}), standard_frame(3, 3), 1.0, 0.2);
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i <= 20; ++i) {
        const double s = 0.2 + i * 0.05;
        const FrenetApparatus a = apparatus_at(*c, s, 3);
        EXPECT_NEAR(a.kappa(1), 1.0, 1e-7);
        EXPECT_NEAR(a.kappa(2), std::tan(s / 2), 1e-7);
        lo = std::min(lo, a.kappa(2));
        hi = std::max(hi, a.kappa(2));
    }
    EXPECT_GT(hi - lo, 0.1);
}

TEST(Synthesis, CurvaturesFromPositionsAlone) {
    // Gram-Schmidt on finite differences of positions, independent of the structure-equation jets
    const CurvePtr c = synthesize_from_curvatures(program(3, {"0.8 + 0.3*sin(s)", "1.2*(0.8 + 0.3*sin(s))"}),
                                                  vec({0, 0, 0}), standard_frame(3, 3), 4.0);
    const double h = 2e-2;
    for (double s : {1.0, 2.0, 3.0}) {
        std::vector<VecN> p;
        for (int k = -3; k <= 3; ++k) p.push_back(c->position(s + k * h));
        Jet j;
        j.param = s;
        j.derivs = {p[3], (p[1] - 8 * p[2] + 8 * p[4] - p[5]) / (12 * h),
                    (-p[1] + 16 * p[2] - 30 * p[3] + 16 * p[4] - p[5]) / (12 * h * h),
                    (p[0] - 8 * p[1] + 13 * p[2] - 13 * p[4] + 8 * p[5] - p[6]) / (8 * h * h * h)};
        const FrenetApparatus a = gram_schmidt_apparatus(j, 3);
        const double k1 = 0.8 + 0.3 * std::sin(s);
        EXPECT_NEAR(a.kappa(1), k1, 1e-6);
        EXPECT_NEAR(a.kappa(2), 1.2 * k1, 1e-5);
    }
}

TEST(Synthesis, Errors) {
    expect_error(ErrorCode::FrameNotOrthonormal, [] {
        synthesize_from_curvatures(program(2, {"1"}), vec({0, 0}), {vec({1, 0}), vec({0.1, 1})}, 1.0);
    });
    expect_error(ErrorCode::CurvatureSignViolation, [] {
        synthesize_from_curvatures(program(3, {"s - 1", "1"}), vec({0, 0, 0}), standard_frame(3, 3), 2.0);
    });
    expect_error(ErrorCode::DimensionMismatch, [] {
        synthesize_from_curvatures(program(3, {"1", "1"}), vec({0, 0}), standard_frame(2, 2), 1.0);
    });
}
