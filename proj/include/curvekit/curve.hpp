#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvekit/expr.hpp"
#include "curvekit/frenet_jet.hpp"
#include "curvekit/taylor.hpp"

namespace curvekit {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxJetOrder = 6;
inline constexpr double kTolUnit = 1e-9;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

/// derivs[j] is the j-th derivative at `param`; derivs[0] is the position.
struct Jet {
    double param = 0.0;
    std::vector<VecN> derivs;

    int order() const { return static_cast<int>(derivs.size()) - 1; }
    int dim() const { return derivs.empty() ? 0 : static_cast<int>(derivs.front().size()); }
};

class Curve {
public:
    virtual ~Curve() = default;

    virtual int dim() const = 0;
    virtual Interval domain() const = 0;
    virtual std::string_view kind() const = 0;

    /// Coordinates of x(t + u) as series in u up to `order`.
    virtual TaylorVec expand(double t, int order) const = 0;
    virtual VecN position(double t) const;

    /// True when the parameter is arclength.
    virtual bool unit_speed() const { return false; }

    /// Frame and curvature series carried by the curve itself, if any.
    virtual std::optional<FrenetJet> intrinsic_frenet(double /*s*/, int /*korder*/) const { return std::nullopt; }

    double tol_reg() const;
};

using CurvePtr = std::shared_ptr<const Curve>;

Jet jet_from_expansion(double t, const TaylorVec& x, int order);

/// Position and derivatives up to `order` (at most 6).
Jet eval_jet(const Curve& curve, double t, int order);

// Catalog ----------------------------------------------------------------

/// (a cos wt, a sin wt, b w t); w defaults to 1/sqrt(a^2+b^2), the unit-speed helix.
class Helix3 final : public Curve {
public:
    Helix3(double a, double b, Interval domain, std::optional<double> w = std::nullopt);
    int dim() const override { return 3; }
    Interval domain() const override { return domain_; }
    std::string_view kind() const override { return "helix3"; }
    TaylorVec expand(double t, int order) const override;
    bool unit_speed() const override;

    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_, b_, w_;
    Interval domain_;
};

/// Unit-speed circle of radius r.
class Circle2 final : public Curve {
public:
    Circle2(double r, Interval domain);
    int dim() const override { return 2; }
    Interval domain() const override { return domain_; }
    std::string_view kind() const override { return "circle2"; }
    TaylorVec expand(double t, int order) const override;
    bool unit_speed() const override { return true; }

private:
    double r_;
    Interval domain_;
};

/// (r1 cos w1 t, r1 sin w1 t, r2 cos w2 t, r2 sin w2 t).
class WCurve4 final : public Curve {
public:
    WCurve4(double r1, double w1, double r2, double w2, Interval domain);
    int dim() const override { return 4; }
    Interval domain() const override { return domain_; }
    std::string_view kind() const override { return "wcurve4"; }
    TaylorVec expand(double t, int order) const override;
    bool unit_speed() const override;

private:
    double r1_, w1_, r2_, w2_;
    Interval domain_;
};

/// coeffs[i][k] multiplies t^k in component i.
class PolynomialCurve final : public Curve {
public:
    PolynomialCurve(std::vector<std::vector<double>> coeffs, Interval domain);
    int dim() const override { return static_cast<int>(coeffs_.size()); }
    Interval domain() const override { return domain_; }
    std::string_view kind() const override { return "polynomial"; }
    TaylorVec expand(double t, int order) const override;

private:
    std::vector<std::vector<double>> coeffs_;
    Interval domain_;
};

/// center + radius * p(t)/|p(t)|: an inner curve pushed onto a sphere.
class SphericalCurve final : public Curve {
public:
    SphericalCurve(CurvePtr inner, VecN center, double radius);
    int dim() const override { return inner_->dim(); }
    Interval domain() const override { return inner_->domain(); }
    std::string_view kind() const override { return "spherical"; }
    TaylorVec expand(double t, int order) const override;

    const VecN& center() const { return center_; }
    double radius() const { return radius_; }

private:
    CurvePtr inner_;
    VecN center_;
    double radius_;
};

// Arclength ----------------------------------------------------------------

/// The base curve traversed by arclength: s(t) from adaptive quadrature of
/// |x'|, t(s) from a monotone interpolant polished by Newton.
class ReparametrizedCurve final : public Curve {
public:
    explicit ReparametrizedCurve(CurvePtr base, int panels = 256);

    int dim() const override { return base_->dim(); }
    Interval domain() const override { return {0.0, length_}; }
    std::string_view kind() const override { return "reparametrized"; }
    TaylorVec expand(double s, int order) const override;
    VecN position(double s) const override;
    bool unit_speed() const override { return true; }

    const CurvePtr& base() const { return base_; }
    double length() const { return length_; }
    double arclength_of(double t) const;
    double param_of(double s) const;

private:
    double speed(double t) const;
    double integrate(double t0, double t1, int depth) const;

    CurvePtr base_;
    std::vector<double> knots_t_, knots_s_;
    double length_ = 0.0;
    struct Inverse;
    std::shared_ptr<const Inverse> inverse_;
};

CurvePtr arclength_reparam(CurvePtr curve);

// Synthesis ----------------------------------------------------------------

/// Rank d and curvature functions kappa_1..kappa_{d-1} of arclength.
struct CurvatureProgram {
    int d = 2;
    std::vector<Expression> kappas;

    Taylor kappa(int i, const Taylor& s) const { return kappas[static_cast<std::size_t>(i - 1)].evaluate(s); }
};

/// Unit-speed curve integrated from the structure equations with RK4 and a
/// Gram-Schmidt re-orthonormalisation after every step. Off-node positions
/// take one RK4 step from the nearest node.
class SynthesizedCurve final : public Curve {
public:
    SynthesizedCurve(CurvatureProgram prog, VecN x0, std::vector<VecN> frame0, Interval domain, int steps = 4096);

    int dim() const override { return static_cast<int>(x0_.size()); }
    Interval domain() const override { return domain_; }
    std::string_view kind() const override { return "synthesized"; }
    TaylorVec expand(double s, int order) const override;
    VecN position(double s) const override;
    bool unit_speed() const override { return true; }
    std::optional<FrenetJet> intrinsic_frenet(double s, int korder) const override;

    const CurvatureProgram& program() const { return prog_; }
    int steps() const { return steps_; }

private:
    struct State {
        VecN x;
        std::vector<VecN> v;
    };
    State derivative(double s, const State& y) const;
    State step(double s, const State& y, double h) const;
    State state_at(double s) const;

    CurvatureProgram prog_;
    VecN x0_;
    Interval domain_;
    int steps_;
    double h_;
    std::vector<State> nodes_;
};

/// Curve of length L starting at x0 with frame frame0 and the given curvatures.
CurvePtr synthesize_from_curvatures(const CurvatureProgram& prog, const VecN& x0, const std::vector<VecN>& frame0,
                                    double L, double s0 = 0.0, int steps = 4096);

}  // namespace curvekit
