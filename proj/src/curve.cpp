#include "curvekit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/fpclassify.hpp>
using boost::math::isnan;  // boost 1.74 pchip calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "curvekit/error.hpp"

namespace curvekit {

namespace {

TaylorVec to_series(const std::vector<VecN>& coeffs, int dim) {
    const int order = static_cast<int>(coeffs.size()) - 1;
    TaylorVec out(static_cast<std::size_t>(dim), Taylor(order));
    for (int k = 0; k <= order; ++k)
        for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i)][k] = coeffs[static_cast<std::size_t>(k)](i);
    return out;
}

VecN values(const TaylorVec& x) {
    VecN v(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i].value();
    return v;
}

// Modified Gram-Schmidt in place; returns the largest correction applied.
double reorthonormalize(std::vector<VecN>& v) {
    double worst = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) v[a] -= v[a].dot(v[b]) * v[b];
        const double n = v[a].norm();
        worst = std::max(worst, std::abs(n - 1.0));
        v[a] /= n;
    }
    return worst;
}

}  // namespace

VecN Curve::position(double t) const { return values(expand(t, 0)); }

double Curve::tol_reg() const { return 1e-9 * std::max(1.0, domain().length()); }

Jet jet_from_expansion(double t, const TaylorVec& x, int order) {
    Jet jet;
    jet.param = t;
    const auto n = static_cast<Eigen::Index>(x.size());
    double factorial = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) factorial *= k;
        VecN d(n);
        for (Eigen::Index i = 0; i < n; ++i) d(i) = x[static_cast<std::size_t>(i)][k] * factorial;
        jet.derivs.push_back(std::move(d));
    }
    return jet;
}

Jet eval_jet(const Curve& curve, double t, int order) {
    if (order < 0 || order > kMaxJetOrder)
        throw Error(ErrorCode::OrderTooHigh, "jet order " + std::to_string(order) + " exceeds 6");
    const Interval dom = curve.domain();
    if (!dom.contains(t, 1e-12 * std::max(1.0, dom.length())))
        throw Error(ErrorCode::ParamOutOfDomain, "t = " + std::to_string(t) + " outside [" + std::to_string(dom.lo) +
                                                     ", " + std::to_string(dom.hi) + "]");
    Jet jet = jet_from_expansion(t, curve.expand(t, std::max(order, 1)), std::max(order, 1));
    if (jet.derivs[1].norm() < curve.tol_reg())
        throw Error(ErrorCode::RegularityLost, "|x'| below tolerance at t = " + std::to_string(t));
    jet.derivs.resize(static_cast<std::size_t>(order) + 1);
    return jet;
}

// Catalog ----------------------------------------------------------------

Helix3::Helix3(double a, double b, Interval domain, std::optional<double> w)
    : a_(a), b_(b), w_(w.value_or(1.0 / std::hypot(a, b))), domain_(domain) {}

TaylorVec Helix3::expand(double t, int order) const {
    const Taylor u = Taylor::variable(t, order) * w_;
    return {a_ * cos(u), a_ * sin(u), b_ * u};
}

bool Helix3::unit_speed() const { return std::abs(w_ * w_ * (a_ * a_ + b_ * b_) - 1.0) < 1e-12; }

Circle2::Circle2(double r, Interval domain) : r_(r), domain_(domain) {}

TaylorVec Circle2::expand(double t, int order) const {
    const Taylor u = Taylor::variable(t, order) / r_;
    return {r_ * cos(u), r_ * sin(u)};
}

WCurve4::WCurve4(double r1, double w1, double r2, double w2, Interval domain)
    : r1_(r1), w1_(w1), r2_(r2), w2_(w2), domain_(domain) {}

TaylorVec WCurve4::expand(double t, int order) const {
    const Taylor s = Taylor::variable(t, order);
    const Taylor u1 = s * w1_, u2 = s * w2_;
    return {r1_ * cos(u1), r1_ * sin(u1), r2_ * cos(u2), r2_ * sin(u2)};
}

bool WCurve4::unit_speed() const {
    return std::abs(r1_ * r1_ * w1_ * w1_ + r2_ * r2_ * w2_ * w2_ - 1.0) < 1e-12;
}

PolynomialCurve::PolynomialCurve(std::vector<std::vector<double>> coeffs, Interval domain)
    : coeffs_(std::move(coeffs)), domain_(domain) {
    if (coeffs_.size() < 2 || coeffs_.size() > static_cast<std::size_t>(kMaxDim))
        throw Error(ErrorCode::DimensionMismatch, "polynomial curve needs 2..8 components");
}

TaylorVec PolynomialCurve::expand(double t, int order) const {
    const Taylor s = Taylor::variable(t, order);
    TaylorVec out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        Taylor acc(order);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
        out.push_back(std::move(acc));
    }
    return out;
}

SphericalCurve::SphericalCurve(CurvePtr inner, VecN center, double radius)
    : inner_(std::move(inner)), center_(std::move(center)), radius_(radius) {
    if (center_.size() != inner_->dim())
        throw Error(ErrorCode::DimensionMismatch, "sphere center dimension differs from curve dimension");
}

TaylorVec SphericalCurve::expand(double t, int order) const {
    TaylorVec p = inner_->expand(t, order);
    const Taylor scale = radius_ / sqrt(dot(p, p));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = center_(static_cast<Eigen::Index>(i)) + p[i] * scale;
    return p;
}

// Arclength ----------------------------------------------------------------

struct ReparametrizedCurve::Inverse {
    boost::math::interpolators::pchip<std::vector<double>> s_to_t;
};

ReparametrizedCurve::ReparametrizedCurve(CurvePtr base, int panels) : base_(std::move(base)) {
    const Interval dom = base_->domain();
    knots_t_.resize(static_cast<std::size_t>(panels) + 1);
    knots_s_.assign(static_cast<std::size_t>(panels) + 1, 0.0);
    for (int i = 0; i <= panels; ++i) knots_t_[static_cast<std::size_t>(i)] = dom.lo + dom.length() * i / panels;
    knots_t_.back() = dom.hi;
    const double reg = base_->tol_reg();
    for (int i = 0; i <= panels; ++i)
        if (speed(knots_t_[static_cast<std::size_t>(i)]) < reg)
            throw Error(ErrorCode::RegularityLost,
                        "|x'| below tolerance at t = " + std::to_string(knots_t_[static_cast<std::size_t>(i)]));
    for (int i = 1; i <= panels; ++i) {
        const auto k = static_cast<std::size_t>(i);
        knots_s_[k] = knots_s_[k - 1] + integrate(knots_t_[k - 1], knots_t_[k], 12);
    }
    length_ = knots_s_.back();
    inverse_ = std::make_shared<const Inverse>(Inverse{{std::vector<double>(knots_s_), std::vector<double>(knots_t_)}});
}

double ReparametrizedCurve::speed(double t) const {
    const TaylorVec x = base_->expand(t, 1);
    double acc = 0.0;
    for (const Taylor& c : x) acc += c[1] * c[1];
    return std::sqrt(acc);
}

double ReparametrizedCurve::integrate(double t0, double t1, int depth) const {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    if (t0 == t1) return 0.0;
    auto f = [this](double t) { return speed(t); };
    double err = 0.0;
    const double v = GK::integrate(f, t0, t1, 0, 0.0, &err);
    // boost floors its estimate at 4 eps |v| / (t1 - t0), so its own recursion never stops on short panels
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(v) / std::abs(t1 - t0);
    if (depth == 0 || err <= 1e-14 * std::abs(v) + floor) return v;
    const double mid = 0.5 * (t0 + t1);
    return integrate(t0, mid, depth - 1) + integrate(mid, t1, depth - 1);
}

double ReparametrizedCurve::arclength_of(double t) const {
    const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
    const auto k = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - knots_t_.begin() - 1, 0,
                                                                         static_cast<std::ptrdiff_t>(knots_t_.size()) - 2));
    return knots_s_[k] + integrate(knots_t_[k], t, 0);
}

double ReparametrizedCurve::param_of(double s) const {
    const Interval dom = base_->domain();
    if (s <= 0.0) return dom.lo;
    if (s >= length_) return dom.hi;
    double t = std::clamp(inverse_->s_to_t(s), dom.lo, dom.hi);
    for (int iter = 0; iter < 6; ++iter) {
        const double dt = (arclength_of(t) - s) / speed(t);
        t = std::clamp(t - dt, dom.lo, dom.hi);
        if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) break;
    }
    return t;
}

TaylorVec ReparametrizedCurve::expand(double s, int order) const {
    const double t0 = param_of(s);
    TaylorVec x = base_->expand(t0, order);
    if (order == 0) return x;
    const TaylorVec dx = differentiated(x);
    const Taylor arc = sqrt(dot(dx, dx)).integrated(0.0);
    const Taylor tau = arc.reversion();
    for (Taylor& c : x) c = c.compose(tau);
    return x;
}

VecN ReparametrizedCurve::position(double s) const { return base_->position(param_of(s)); }

CurvePtr arclength_reparam(CurvePtr curve) { return std::make_shared<ReparametrizedCurve>(std::move(curve)); }

// Synthesis ----------------------------------------------------------------

SynthesizedCurve::SynthesizedCurve(CurvatureProgram prog, VecN x0, std::vector<VecN> frame0, Interval domain, int steps)
    : prog_(std::move(prog)), x0_(std::move(x0)), domain_(domain), steps_(steps), h_(domain.length() / steps) {
    const int n = static_cast<int>(x0_.size());
    const int d = prog_.d;
    if (n < 2 || n > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "ambient dimension must be 2..8");
    if (d < 2 || d > n) throw Error(ErrorCode::DimensionMismatch, "rank d must satisfy 2 <= d <= n");
    if (static_cast<int>(prog_.kappas.size()) != d - 1)
        throw Error(ErrorCode::DimensionMismatch, "program needs d-1 curvature functions");
    if (static_cast<int>(frame0.size()) != d) throw Error(ErrorCode::DimensionMismatch, "initial frame needs d vectors");
    if (!(domain_.length() > 0.0)) throw Error(ErrorCode::InvalidArgument, "empty synthesis domain");
    if (steps_ < 8) throw Error(ErrorCode::InvalidArgument, "synthesis needs at least 8 steps");
    for (int a = 0; a < d; ++a) {
        if (frame0[static_cast<std::size_t>(a)].size() != n)
            throw Error(ErrorCode::DimensionMismatch, "frame vector dimension differs from x0");
        for (int b = 0; b < d; ++b) {
            const double g = frame0[static_cast<std::size_t>(a)].dot(frame0[static_cast<std::size_t>(b)]);
            if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-12)
                throw Error(ErrorCode::FrameNotOrthonormal, "initial frame Gram matrix deviates from identity");
        }
    }

    nodes_.reserve(static_cast<std::size_t>(steps_) + 1);
    nodes_.push_back({x0_, std::move(frame0)});
    for (int i = 0; i <= steps_; ++i) {
        const double s = domain_.lo + h_ * i;
        for (int j = 1; j <= d - 2; ++j) {
            const double k = prog_.kappas[static_cast<std::size_t>(j - 1)].evaluate(s);
            if (!(k > 0.0))
                throw Error(ErrorCode::CurvatureSignViolation,
                            "kappa" + std::to_string(j) + " = " + std::to_string(k) + " at s = " + std::to_string(s));
        }
        if (i == steps_) break;
        State next = step(s, nodes_.back(), h_);
        reorthonormalize(next.v);
        nodes_.push_back(std::move(next));
    }
}

SynthesizedCurve::State SynthesizedCurve::derivative(double s, const State& y) const {
    const int d = prog_.d;
    std::vector<double> k(static_cast<std::size_t>(d - 1));
    for (int i = 0; i < d - 1; ++i) k[static_cast<std::size_t>(i)] = prog_.kappas[static_cast<std::size_t>(i)].evaluate(s);
    State dy{y.v[0], std::vector<VecN>(static_cast<std::size_t>(d))};
    for (int i = 0; i < d; ++i) {
        VecN acc = VecN::Zero(y.x.size());
        if (i > 0) acc -= k[static_cast<std::size_t>(i - 1)] * y.v[static_cast<std::size_t>(i - 1)];
        if (i + 1 < d) acc += k[static_cast<std::size_t>(i)] * y.v[static_cast<std::size_t>(i + 1)];
        dy.v[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return dy;
}

SynthesizedCurve::State SynthesizedCurve::step(double s, const State& y, double h) const {
    auto axpy = [](const State& a, double c, const State& b) {
        State r{a.x + c * b.x, a.v};
        for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += c * b.v[i];
        return r;
    };
    const State k1 = derivative(s, y);
    const State k2 = derivative(s + h / 2, axpy(y, h / 2, k1));
    const State k3 = derivative(s + h / 2, axpy(y, h / 2, k2));
    const State k4 = derivative(s + h, axpy(y, h, k3));
    State r = y;
    r.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += h / 6 * (k1.v[i] + 2 * k2.v[i] + 2 * k3.v[i] + k4.v[i]);
    return r;
}

SynthesizedCurve::State SynthesizedCurve::state_at(double s) const {
    if (!domain_.contains(s, 1e-9 * std::max(1.0, domain_.length())))
        throw Error(ErrorCode::ParamOutOfDomain, "s = " + std::to_string(s) + " outside synthesized domain");
    const double u = (s - domain_.lo) / h_;
    const auto i = static_cast<std::size_t>(std::clamp<long>(std::lround(u), 0, steps_));
    const double si = domain_.lo + h_ * static_cast<double>(i);
    if (s == si) return nodes_[i];
    State y = step(si, nodes_[i], s - si);
    reorthonormalize(y.v);
    return y;
}

VecN SynthesizedCurve::position(double s) const { return state_at(s).x; }

std::optional<FrenetJet> SynthesizedCurve::intrinsic_frenet(double s, int korder) const {
    State y = state_at(s);
    FrenetJet f;
    f.param = s;
    f.position = std::move(y.x);
    f.frame = std::move(y.v);
    const Taylor var = Taylor::variable(s, korder);
    for (int i = 1; i < prog_.d; ++i) f.kappas.push_back(prog_.kappa(i, var));
    return f;
}

TaylorVec SynthesizedCurve::expand(double s, int order) const {
    const FrenetJet f = *intrinsic_frenet(s, std::max(order - 1, 0));
    const std::vector<Taylor> zero(static_cast<std::size_t>(prog_.d), Taylor(order));
    return to_series(offset_expansion(f, zero, order), dim());
}

CurvePtr synthesize_from_curvatures(const CurvatureProgram& prog, const VecN& x0, const std::vector<VecN>& frame0,
                                    double L, double s0, int steps) {
    return std::make_shared<SynthesizedCurve>(prog, x0, frame0, Interval{s0, s0 + L}, steps);
}

}  // namespace curvekit
