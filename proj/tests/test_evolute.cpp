#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "curvekit/curve.hpp"
#include "curvekit/error.hpp"
#include "curvekit/evolute.hpp"
#include "curvekit/frenet.hpp"
#include "support.hpp"

using namespace curvekit;
using namespace curvekit::test;

namespace {

using BasePtr = std::shared_ptr<const BasePath>;

BasePtr base_of(CurvePtr c, int steps = 512) {
    const int n = c->dim();
    return std::make_shared<const BasePath>(sample_base(c, n, focal_korder(n - 1), steps));
}

CurvePtr helix() { return std::make_shared<Helix3>(1, 1, Interval{0, 6}); }
CurvePtr wcurve() { return std::make_shared<WCurve4>(1.0, 0.6, 0.5, 1.6, Interval{0, 4}); }

CurvePtr quartic() {
    return arclength_reparam(std::make_shared<PolynomialCurve>(
        std::vector<std::vector<double>>{{0, 1, 0.3, 0, 0.1}, {0, 0, 1, 0.2}, {0, 0, 0, 1, 0.3}, {0, 0, 0, 0, 1}},
        Interval{0.3, 1.3}));
}

CurvePtr cubic3() {
    return arclength_reparam(std::make_shared<PolynomialCurve>(
        std::vector<std::vector<double>>{{0, 1, 0.2}, {0, 0, 1, 0.1}, {0, 0, 0, 1}}, Interval{0.2, 1.2}));
}

CurvePtr sphere3() {
    auto inner = std::make_shared<PolynomialCurve>(
        std::vector<std::vector<double>>{{0.2, 1, 0, 0.1}, {0, 0, 0.6}, {1}}, Interval{0, 1});
    return arclength_reparam(std::make_shared<SphericalCurve>(inner, vec({0.5, -0.2, 0.1}), 2.0));
}

CurvePtr sphere4() {
    auto inner = std::make_shared<PolynomialCurve>(
        std::vector<std::vector<double>>{{0.2, 1, 0, 0.1}, {0, 0, 0.6}, {0, 0, 0, 0.4}, {1}}, Interval{0, 1});
    return arclength_reparam(std::make_shared<SphericalCurve>(inner, vec({0.3, 0.1, -0.4, 0.2}), 1.5));
}

CurvePtr synth5() {
    return synthesize_from_curvatures(program(5, {"1 + 0.3*s", "0.8", "0.5 + 0.2*s", "0.7"}), vec({0, 0, 0, 0, 0}),
                                      standard_frame(5), 1.5);
}

// Theorem apparatus against Gram-Schmidt on the built evolute.
void expect_theorem(CurvePtr c) {
    const BasePtr b = base_of(c);
    const int m = b->dim() - 1;
    FocalPath f = focal_curvatures(*b, m);
    const SignData signs = sign_data(*b, f);
    const auto evo = build_evolute(b, f);
    EXPECT_LT(evo->build_residual(), 1e-7);
    int checked = 0;
    for (std::size_t i = 0; i < b->size(); i += b->size() / 17) {
        const PredictedApparatus p = predicted_evolute_apparatus(b->jets[i], evo->focal(), i, signs);
        const FrenetApparatus d = apparatus_at(*evo, b->grid[i], m + 1);
        for (int j = 1; j <= m; ++j) EXPECT_NEAR(p.app.kappa(j), d.kappa(j), 1e-5 * p.app.kappa(1)) << i << " " << j;
        for (int j = 0; j <= m; ++j) EXPECT_NEAR(p.app.frame[j].dot(d.frame[j]), 1.0, 1e-6) << i << " " << j;
        EXPECT_NEAR(d.speed, std::abs(evo->focal().drive[i]), 1e-8 * std::max(1.0, d.speed));
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

}  // namespace

TEST(Focal, HelixValues) {
    const BasePtr b = base_of(helix());
    const FocalPath f = focal_curvatures(*b, 2);
    for (std::size_t i = 0; i < f.size(); i += 37) {
        EXPECT_NEAR(f.cs[i][0], 2.0, 1e-12);
        EXPECT_NEAR(f.cs[i][1], 0.0, 1e-12);
        EXPECT_NEAR(f.radius[i], 2.0, 1e-12);
        EXPECT_NEAR(f.drive[i], 1.0, 1e-12);
        EXPECT_EQ(f.rho[i], f.cs[i][0]);
    }
    EXPECT_EQ(f.singular_count(), 0u);
}

TEST(Focal, WCurveDriveVanishes) {
    const BasePtr b = base_of(wcurve());
    const FocalPath f = focal_curvatures(*b, 3);
    const auto& k = b->jets[0].kappas;
    const double c3 = k[1].value() / (k[0].value() * k[2].value());
    for (std::size_t i = 0; i < f.size(); i += 37) {
        EXPECT_NEAR(f.cs[i][1], 0.0, 1e-11);
        EXPECT_NEAR(f.cs[i][2], c3, 1e-10);
        EXPECT_NEAR(f.drive[i], 0.0, 1e-10);
    }
    expect_error(ErrorCode::DegenerateEvolute, [&] { build_evolute(b, f); });
    const auto evo = build_evolute(b, f, DegeneratePolicy::Flag);
    EXPECT_TRUE(evo->degenerate());
    const auto pts = evo->node_positions();
    for (const VecN& p : pts) EXPECT_LT((p - pts.front()).norm(), 1e-10);
}

TEST(Focal, DifferencesAgreeWithJets) {
    // nested differences lose eps/h^3 in c_3', so a coarse grid and interior rows
    const BasePtr b = base_of(quartic(), 512);
    const FocalPath j = focal_curvatures(*b, 3);
    const FocalPath d = focal_curvatures(*b, 3, FocalMethod::Differences);
    double worst = 0.0;
    for (std::size_t i = 4; i + 4 < j.size(); ++i)
        worst = std::max(worst, std::abs(j.drive[i] - d.drive[i]) / std::max(1.0, std::abs(j.drive[i])));
    EXPECT_LT(worst, 1e-5);
    EXPECT_GT(worst, 1e-14);
    expect_error(ErrorCode::InvalidArgument, [&] { build_evolute(b, d); });
}

TEST(Focal, Errors) {
    const BasePtr b = base_of(helix());
    expect_error(ErrorCode::DimensionMismatch, [&] { focal_curvatures(*b, 3); });
    expect_error(ErrorCode::CmZero, [&] { scalar_frenet_residual(focal_curvatures(*b, 2)); });
    expect_error(ErrorCode::FocalZero, [&] { reconstruct_curvatures(focal_curvatures(*b, 2)); });
}

TEST(Evolute, HelixIsCoaxialHelix) {
    const BasePtr b = base_of(helix());
    const auto evo = build_evolute(b, focal_curvatures(*b, 2));
    for (std::size_t i = 0; i < b->size(); i += 50) {
        const double s = b->grid[i];
        const VecN expect = b->jets[i].position + 2.0 * b->jets[i].frame[1];
        EXPECT_LT((evo->position(s) - expect).norm(), 1e-12);
        const FrenetApparatus d = apparatus_at(*evo, s, 3);
        EXPECT_NEAR(d.kappa(1), 0.5, 1e-6);
        EXPECT_NEAR(d.kappa(2), 0.5, 1e-6);
        const auto e = explicit_evolute_kappas(b->jets[i]);
        EXPECT_NEAR(e[0], 0.5, 1e-12);
        EXPECT_NEAR(e[1], 0.5, 1e-12);
        const auto pr = printed_evolute_kappas(b->jets[i]);
        EXPECT_NEAR(pr[0], 0.5, 1e-12);
        EXPECT_NEAR(pr[1], 0.5, 1e-12);
    }
    expect_error(ErrorCode::GridMismatch, [&] { evo->position(b->grid[1] * 0.5); });
}

TEST(Evolute, TheoremMatchesDirect) {
    expect_theorem(helix());
    expect_theorem(cubic3());
    expect_theorem(quartic());
    expect_theorem(synth5());
}

TEST(Evolute, TangentAlongLastNormal) {
    const BasePtr b = base_of(quartic(), 1024);
    const auto evo = build_evolute(b, focal_curvatures(*b, 3));
    const auto pts = evo->node_positions();
    const auto dx = fd_derivative(pts, b->h);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const VecN& v = dx[i];
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(v.dot(b->jets[i].frame[j])) / v.norm());
    }
    EXPECT_LT(worst, 1e-7);
}

TEST(Evolute, ExplicitFormulasMatchTheorem) {
    for (CurvePtr c : {cubic3(), quartic()}) {
        const BasePtr b = base_of(c);
        const int m = b->dim() - 1;
        const FocalPath f = focal_curvatures(*b, m);
        const SignData signs = sign_data(*b, f);
        for (std::size_t i = 0; i < b->size(); i += 31) {
            const auto p = predicted_evolute_apparatus(b->jets[i], f, i, signs);
            const auto e = explicit_evolute_kappas(b->jets[i]);
            for (int j = 1; j <= m; ++j) EXPECT_NEAR(e[static_cast<std::size_t>(j - 1)], p.app.kappa(j), 1e-9 * e[0]);
            EXPECT_NEAR(std::abs(explicit_drive(b->jets[i])), std::abs(f.drive[i]), 1e-9);
        }
    }
}

TEST(Evolute, PrintedSpaceFormulaDiffers) {
    const BasePtr b = base_of(cubic3());
    double worst = 0.0;
    for (std::size_t i = 0; i < b->size(); i += 31) {
        const auto e = explicit_evolute_kappas(b->jets[i]);
        const auto p = printed_evolute_kappas(b->jets[i]);
        worst = std::max(worst, std::abs(p[0] - e[0]) / e[0]);
    }
    EXPECT_GT(worst, 1e-2);
}

TEST(Evolute, GeneralizedHelixRatioConstant) {
    // kappa_2 / kappa_1 = 0.5 throughout
    const CurvePtr c = synthesize_from_curvatures(program(3, {"1 + 0.4*s", "0.5 + 0.2*s"}), vec({0, 0, 0}),
                                                  standard_frame(3), 2.0);
    const BasePtr b = base_of(c);
    const auto evo = build_evolute(b, focal_curvatures(*b, 2));
    for (std::size_t i = 0; i < b->size(); i += 41) {
        const FrenetApparatus d = apparatus_at(*evo, b->grid[i], 3);
        EXPECT_NEAR(d.kappa(2) / d.kappa(1), 2.0, 1e-6);
    }
}

TEST(Evolute, SignData) {
    const BasePtr b = base_of(quartic());
    const FocalPath f = focal_curvatures(*b, 3);
    const SignData s = sign_data(*b, f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ(s.epsilon[i], f.drive[i] < 0 ? -1 : 1);
        ASSERT_EQ(s.delta[i].size(), 3u);
        EXPECT_EQ(s.delta[i][0], -s.delta[i][1]);
        EXPECT_EQ(s.delta[i][1], -s.delta[i][2]);
    }
}

TEST(ScalarFrenet, IdentityHoldsAndPrintedFormDoesNot) {
    for (CurvePtr c : {cubic3(), quartic(), synth5()}) {
        const BasePtr b = base_of(c);
        const FocalPath f = focal_curvatures(*b, b->dim() - 1);
        std::size_t excluded = 0;
        EXPECT_LT(scalar_frenet_residual(f, false, &excluded), 1e-6);
        EXPECT_LT(excluded, f.size() / 10);
        EXPECT_GT(scalar_frenet_residual(f, true), 1e-2);
    }
}

TEST(ScalarFrenet, CorruptionIsDetected) {
    const BasePtr b = base_of(cubic3());
    FocalPath f = focal_curvatures(*b, 2);
    for (auto& row : f.cs) row[1] *= 1.01;
    EXPECT_GT(scalar_frenet_residual(f), 1e-3);
}

TEST(Reconstruct, RoundTrip) {
    for (CurvePtr c : {cubic3(), quartic(), synth5()}) {
        const BasePtr b = base_of(c);
        const int m = b->dim() - 1;
        for (FocalMethod method : {FocalMethod::Jets, FocalMethod::Differences}) {
            const Reconstruction r = reconstruct_curvatures(focal_curvatures(*b, m, method));
            double worst = 0.0;
            for (std::size_t i = 0; i < b->size(); ++i) {
                if (r.excluded[i]) continue;
                for (int j = 1; j <= m; ++j) {
                    const double k = b->jets[i].kappa(j).value();
                    worst = std::max(worst, std::abs(r.kappas[i][static_cast<std::size_t>(j - 1)] - k) / std::abs(k));
                }
            }
            EXPECT_LT(worst, method == FocalMethod::Jets ? 1e-9 : 1e-6);
            EXPECT_LT(r.excluded_count, b->size() / 10);
        }
    }
}

TEST(Sphere, HelixIsNotSpherical) { EXPECT_NEAR(spherical_test(*base_of(helix())), 1.0, 1e-12); }

TEST(Sphere, ConstructedCurvesPass) {
    const BasePtr b3 = base_of(sphere3());
    EXPECT_LT(spherical_test(*b3), 1e-5);
    const FocalPath f3 = focal_curvatures(*b3, 2);
    for (std::size_t i = 0; i < f3.size(); i += 23) EXPECT_NEAR(f3.radius[i], 2.0, 1e-6);
    expect_error(ErrorCode::DegenerateEvolute, [&] { build_evolute(b3, f3); });

    const BasePtr b4 = base_of(sphere4());
    EXPECT_LT(spherical_test(*b4), 1e-5);
    const SphereFit fit = sphere_decomposition4(*b4);
    EXPECT_LT(fit.residual, 1e-5);
    EXPECT_NEAR(fit.radius, 1.5, 1e-5);
    EXPECT_LT((fit.center - vec({0.3, 0.1, -0.4, 0.2})).norm(), 1e-5);
}

TEST(Sphere, WCurveAndQuartic) {
    const BasePtr w = base_of(wcurve());
    EXPECT_LT(spherical_test(*w), 1e-9);
    const SphereFit fit = sphere_decomposition4(*w);
    EXPECT_LT(fit.residual, 1e-5);
    EXPECT_GT(sphere_decomposition4(*w, true).residual, 1e-2);

    const BasePtr q = base_of(quartic());
    EXPECT_GT(sphere_decomposition4(*q).residual, 1e-2);
    EXPECT_GT(spherical_test(*q), 1e-2);
}

TEST(Sphere, Errors) {
    expect_error(ErrorCode::CaseUnsupported, [&] { sphere_decomposition4(*base_of(helix())); });
    expect_error(ErrorCode::CaseUnsupported, [&] { spherical_test(*base_of(synth5())); });
}
