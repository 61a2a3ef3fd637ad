#include "curvekit/involute.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvekit/error.hpp"

namespace curvekit {

namespace {

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

template <typename T>
std::vector<T> rhs_impl(std::span<const T> lam, std::span<const T> kap, const T& one) {
    const std::size_t k = lam.size();
    std::vector<T> out;
    out.reserve(k);
    for (std::size_t a = 0; a < k; ++a) {
        T r = one * 0.0;
        if (a + 1 < k) r += lam[a + 1] * kap[a];
        if (a > 0) r -= lam[a - 1] * kap[a - 1];
        if (a == 0) r -= one;
        out.push_back(std::move(r));
    }
    return out;
}

template <typename T>
std::vector<T> salkowski(double k1, double c1, double c2, const T& s, bool printed) {
    using std::cos, std::sin;
    const T sn = sin(s * k1), cs = cos(s * k1);
    return {sn * c1 + cs * c2, cs * c1 - sn * c2 + (printed ? -1.0 : 1.0) / k1};
}

template <typename T>
std::vector<T> wcurve3(double k1, double k2, double c1, double c2, double c3, const T& s, bool printed) {
    using std::cos, std::sin;
    const double kk = k1 * k1 + k2 * k2;
    if (printed) {
        // frequency kappa = k1^2 + k2^2 mixed with sqrt(kappa), as published
        const T osc = sin(s * kk) * c2 - cos(s * kk) * c3;
        return {osc * (k1 / std::sqrt(kk)) + (c1 * kk - s * (k2 * k2)) / kk,
                cos(s * kk) * c2 - sin(s * kk) * c3 + k1 / kk,
                osc * (k2 / std::sqrt(kk)) - (c1 * k1 * kk - s * (k1 * k2 * k2)) / (kk * k2)};
    }
    const double w = std::sqrt(kk);
    const T osc = sin(s * w) * c2 + cos(s * w) * c3;
    return {osc * (k1 / w) + c1 - s * (k2 * k2 / kk),
            cos(s * w) * c2 - sin(s * w) * c3 + k1 / kk,
            osc * (-k2 / w) - s * (k1 * k2 / kk) + k1 * c1 / k2};
}

template <typename T>
std::vector<T> closed_form_impl(ClosedFormCase c, std::span<const double> kappa, std::span<const double> consts,
                                const T& s, bool printed) {
    switch (c) {
    case ClosedFormCase::Salkowski_k2:
        if (kappa.size() < 1 || consts.size() != 2)
            throw Error(ErrorCode::InvalidArgument, "Salkowski offsets need kappa_1 and c1, c2");
        return salkowski(kappa[0], consts[0], consts[1], s, printed);
    case ClosedFormCase::WCurve4_k3:
        if (kappa.size() < 2 || consts.size() != 3)
            throw Error(ErrorCode::InvalidArgument, "W-curve offsets need kappa_1, kappa_2 and c1, c2, c3");
        return wcurve3(kappa[0], kappa[1], consts[0], consts[1], consts[2], s, printed);
    }
    throw Error(ErrorCode::CaseUnsupported, "unknown closed-form case");
}

std::vector<double> node_kappas(const FrenetJet& j) {
    std::vector<double> out;
    for (const Taylor& k : j.kappas) out.push_back(k.value());
    return out;
}

}  // namespace

std::vector<double> offset_rhs(std::span<const double> lambda, std::span<const double> kappa) {
    return rhs_impl<double>(lambda, kappa, 1.0);
}

std::vector<Taylor> offset_series(const FrenetJet& base, std::span<const double> lambda0, int order) {
    const std::size_t k = lambda0.size();
    if (k > base.kappas.size()) throw Error(ErrorCode::OrderExceedsRank, "order exceeds d - 1");
    std::vector<Taylor> lam;
    for (double v : lambda0) lam.emplace_back(order, v);
    const Taylor one(order, 1.0);
    // each sweep fixes one more coefficient
    for (int it = 0; it <= order; ++it) {
        const auto r = rhs_impl<Taylor>(lam, base.kappas, one);
        for (std::size_t a = 0; a < k; ++a) lam[a] = r[a].integrated(lambda0[a]).truncated(order);
    }
    return lam;
}

std::vector<double> closed_form_offsets(ClosedFormCase c, std::span<const double> kappa, std::span<const double> consts,
                                        double s) {
    return closed_form_impl<double>(c, kappa, consts, s, false);
}

std::vector<double> printed_closed_form_offsets(ClosedFormCase c, std::span<const double> kappa,
                                                std::span<const double> consts, double s) {
    return closed_form_impl<double>(c, kappa, consts, s, true);
}

double closed_form_residual(ClosedFormCase c, std::span<const double> kappa, std::span<const double> consts,
                            std::span<const double> samples, bool printed) {
    double worst = 0.0;
    for (double s : samples) {
        const auto lam = closed_form_impl<Taylor>(c, kappa, consts, Taylor::variable(s, 1), printed);
        std::vector<double> v, dv;
        for (const Taylor& t : lam) {
            v.push_back(t.value());
            dv.push_back(t[1]);
        }
        const auto r = offset_rhs(v, kappa);
        for (std::size_t a = 0; a < v.size(); ++a) worst = std::max(worst, std::abs(dv[a] - r[a]));
    }
    return worst;
}

std::vector<double> closed_form_offsets(ClosedFormCase c, const BasePath& base, std::span<const double> consts,
                                        double s) {
    const int need = c == ClosedFormCase::Salkowski_k2 ? 1 : 3;
    if (c == ClosedFormCase::WCurve4_k3 && base.d != 4)
        throw Error(ErrorCode::HypothesisViolated, "W-curve offsets need a base of rank 4");
    if (base.d - 1 < need) throw Error(ErrorCode::HypothesisViolated, "base rank too small");
    const std::vector<double> k0 = node_kappas(base.jets.front());
    for (const FrenetJet& j : base.jets)
        for (int i = 0; i < need; ++i) {
            const double ki = j.kappas[static_cast<std::size_t>(i)].value();
            if (std::abs(ki - k0[static_cast<std::size_t>(i)]) > 1e-8 * std::max(1.0, std::abs(k0[static_cast<std::size_t>(i)])))
                throw Error(ErrorCode::HypothesisViolated,
                            "kappa_" + std::to_string(i + 1) + " is not constant at s = " + std::to_string(j.param));
        }
    std::vector<double> samples;
    for (int i = 0; i <= 8; ++i) samples.push_back(base.grid.front() + (base.grid.back() - base.grid.front()) * i / 8.0);
    const double r = closed_form_residual(c, k0, consts, samples);
    if (!(r < 1e-9))
        throw Error(ErrorCode::ClosedFormResidualFailure, "closed-form offsets leave residual " + std::to_string(r));
    return closed_form_offsets(c, k0, consts, s);
}

std::vector<double> resolve_init(const BasePath& base, int k, const InitConditions& init) {
    if (init.kind == InitConditions::Kind::Values) {
        if (static_cast<int>(init.v.size()) != k)
            throw Error(ErrorCode::InvalidArgument, "need " + std::to_string(k) + " initial offsets");
        return init.v;
    }
    const double s0 = base.grid.front();
    switch (k) {
    case 1:
        if (init.v.size() != 1) throw Error(ErrorCode::InvalidArgument, "order 1 takes one constant c");
        return {init.v[0] - s0};
    case 2: return closed_form_offsets(ClosedFormCase::Salkowski_k2, base, init.v, s0);
    case 3: return closed_form_offsets(ClosedFormCase::WCurve4_k3, base, init.v, s0);
    default: throw Error(ErrorCode::CaseUnsupported, "no closed form for order " + std::to_string(k));
    }
}

OffsetPath offsets_ode(const BasePath& base, int k, const InitConditions& init) {
    if (!base.curve->unit_speed()) throw Error(ErrorCode::NotUnitSpeed, "offsets need an arclength base");
    if (k < 1 || k > base.d - 1)
        throw Error(ErrorCode::OrderExceedsRank, "order " + std::to_string(k) + " with rank " + std::to_string(base.d));
    OffsetPath out;
    out.k = k;
    out.grid = base.grid;
    const std::size_t n = base.size();
    out.lambdas.reserve(n);
    out.derivs.reserve(n);

    auto axpy = [](const std::vector<double>& y, double a, const std::vector<double>& x) {
        std::vector<double> r = y;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * x[i];
        return r;
    };
    std::vector<double> y = resolve_init(base, k, init);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> ki = node_kappas(base.jets[i]);
        out.lambdas.push_back(y);
        out.derivs.push_back(offset_rhs(y, ki));
        if (i + 1 == n) break;
        const double h = base.grid[i + 1] - base.grid[i];
        std::vector<double> km;
        for (const Taylor& t : base.jets[i].kappas) km.push_back(t.evaluate(0.5 * h));
        const std::vector<double> k2 = node_kappas(base.jets[i + 1]);
        const auto f1 = out.derivs.back();
        const auto f2 = offset_rhs(axpy(y, 0.5 * h, f1), km);
        const auto f3 = offset_rhs(axpy(y, 0.5 * h, f2), km);
        const auto f4 = offset_rhs(axpy(y, h, f3), k2);
        for (int a = 0; a < k; ++a) {
            const auto j = static_cast<std::size_t>(a);
            y[j] += h / 6.0 * (f1[j] + 2.0 * f2[j] + 2.0 * f3[j] + f4[j]);
        }
    }

    double lam_k_max = 0.0, lam_max = 0.0;
    for (int a = 0; a < k; ++a) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = out.lambdas[i][static_cast<std::size_t>(a)];
            lam_max = std::max(lam_max, std::abs(col[i]));
            if (a == k - 1) lam_k_max = std::max(lam_k_max, std::abs(col[i]));
        }
        const auto fd = fd_derivative(col, base.h);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = out.derivs[i][static_cast<std::size_t>(a)];
            out.ode_residual = std::max(out.ode_residual, std::abs(fd[i] - d) / std::max(1.0, std::abs(d)));
        }
    }
    out.degenerate = lam_k_max <= 1e-12 * std::max(1.0, lam_max);
    return out;
}

OffsetCurve::OffsetCurve(std::shared_ptr<const BasePath> base, OffsetPath offsets)
    : base_(std::move(base)), offsets_(std::move(offsets)) {
    if (offsets_.grid.size() != base_->grid.size())
        throw Error(ErrorCode::GridMismatch, "offsets and base have different grids");
    for (std::size_t i = 0; i < offsets_.grid.size(); ++i)
        if (std::abs(offsets_.grid[i] - base_->grid[i]) > 1e-12 * std::max(1.0, std::abs(base_->grid[i])))
            throw Error(ErrorCode::GridMismatch, "offset grid differs from base grid at node " + std::to_string(i));
}

std::vector<Taylor> OffsetCurve::lambda_series(std::size_t i, int order) const {
    return offset_series(base_->jets[i], offsets_.lambdas[i], order);
}

TaylorVec OffsetCurve::expand(double s, int order) const {
    const std::size_t i = base_->node(s);
    const FrenetJet& j = base_->jets[i];
    std::vector<Taylor> coords = lambda_series(i, order);
    coords.resize(static_cast<std::size_t>(j.rank()), Taylor(order, 0.0));
    const std::vector<VecN> c = offset_expansion(j, coords, order);
    TaylorVec out(static_cast<std::size_t>(dim()), Taylor(order, 0.0));
    for (int k = 0; k <= order; ++k)
        for (int a = 0; a < dim(); ++a) out[static_cast<std::size_t>(a)][k] = c[static_cast<std::size_t>(k)](a);
    return out;
}

VecN OffsetCurve::position(double s) const {
    const std::size_t i = base_->node(s);
    return base_->jets[i].position + base_->jets[i].to_ambient(offsets_.lambdas[i]);
}

std::vector<VecN> OffsetCurve::node_positions() const {
    std::vector<VecN> p;
    p.reserve(base_->size());
    for (std::size_t i = 0; i < base_->size(); ++i)
        p.push_back(base_->jets[i].position + base_->jets[i].to_ambient(offsets_.lambdas[i]));
    return p;
}

std::shared_ptr<const OffsetCurve> build_involute(std::shared_ptr<const BasePath> base, OffsetPath offsets) {
    return std::make_shared<const OffsetCurve>(std::move(base), std::move(offsets));
}

double tangency_residual(std::span<const VecN> positions, const BasePath& base, int k, std::size_t* excluded) {
    if (positions.size() != base.size()) throw Error(ErrorCode::GridMismatch, "positions and base differ in length");
    const auto dx = fd_derivative(positions, base.h);
    double top = 0.0;
    for (const VecN& v : dx) top = std::max(top, v.norm());
    double worst = 0.0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < dx.size(); ++i) {
        const double n = dx[i].norm();
        if (n <= 1e-4 * top) {
            ++skipped;
            continue;
        }
        for (int j = 0; j < k && j < base.jets[i].rank(); ++j)
            worst = std::max(worst, std::abs(dx[i].dot(base.jets[i].frame[static_cast<std::size_t>(j)])) / n);
    }
    if (excluded) *excluded = skipped;
    return worst;
}

double tangency_residual(const OffsetCurve& inv, int k, std::size_t* excluded) {
    return tangency_residual(inv.node_positions(), inv.base(), k, excluded);
}

// Predicted apparatus ---------------------------------------------------------

namespace {

struct Ctx {
    const FrenetJet& b;
    double tol;
    PredictedApparatus out;

    VecN amb(std::initializer_list<double> c) const {
        std::vector<double> v(c);
        return b.to_ambient(v);
    }
    void flag(double x, double scale) {
        if (!(std::abs(x) > tol * scale)) out.singular = true;
    }
};

double kscale(const FrenetJet& b) {
    double m = 0.0;
    for (const Taylor& k : b.kappas) m = std::max(m, std::abs(k.value()));
    return m;
}

void order1_e3(Ctx& c, const Taylor& lam1) {
    const Taylor& k1 = c.b.kappa(1);
    const Taylor& k2 = c.b.kappa(2);
    const double K1 = k1.value(), K2 = k2.value();
    const double phi = lam1.value() * K1;
    const double w = std::hypot(K1, K2);
    const double T = K1 * k2.derivative(1) - K2 * k1.derivative(1);
    const double ks = kscale(c.b);
    c.flag(phi, (1.0 + std::abs(lam1.value())) * ks);
    c.flag(w, ks);
    c.out.aux.phi = phi;
    const double s = sgn(phi);
    c.out.app.speed = std::abs(phi);
    c.out.app.frame.vectors = {s * c.b.frame[1], c.amb({-s * K1 / w, 0.0, s * K2 / w}),
                               c.amb({sgn(phi * T) * K2 / w, 0.0, sgn(phi * T) * K1 / w})};
    c.out.app.kappas = {w / std::abs(phi), std::abs(T) / (std::abs(phi) * w * w)};
    c.out.printed_kappas = {w / (std::abs(K1) * std::abs(lam1.value())), T / (w * w * lam1.value())};
}

void order2_e3(Ctx& c, const Taylor& lam2) {
    const double K1 = c.b.kappa(1).value(), K2 = c.b.kappa(2).value();
    const double l2 = lam2.value();
    const double psi = l2 * K2;
    c.flag(psi, (1.0 + std::abs(l2)) * kscale(c.b));
    c.flag(K1, kscale(c.b));
    c.out.aux.psi2 = psi;
    c.out.app.speed = std::abs(psi);
    c.out.app.frame.vectors = {sgn(psi) * c.b.frame[2], -sgn(psi * K2) * c.b.frame[1], sgn(psi * K1 * K2) * c.b.frame[0]};
    c.out.app.kappas = {std::abs(K2) / std::abs(psi), std::abs(K1) / std::abs(psi)};
    c.out.printed_kappas = {sgn(K2) / std::abs(l2), (K2 / K1) / l2};
}

void order1_e4(Ctx& c, const Taylor& lam1, bool w_curve) {
    const Taylor& k1 = c.b.kappa(1);
    const Taylor& k2 = c.b.kappa(2);
    const Taylor& k3 = c.b.kappa(3);
    const Taylor phi = lam1 * k1;
    const Taylor dphi = phi.differentiated();
    const Taylor A = k1.differentiated() * phi + 2.0 * k1 * dphi;
    const Taylor B = dphi.differentiated() - (k1 * k1 + k2 * k2) * phi;
    const Taylor C = k2.differentiated() * phi + 2.0 * k2 * dphi;
    const Taylor D = phi * k2 * k3;
    const double K1 = k1.value(), K2 = k2.value(), K3 = k3.value(), ph = phi.value();
    const double a = A.value(), cc = C.value(), dd = D.value();
    const double Q = K2 * a - K1 * cc;
    const double w = std::hypot(K1, K2);
    const double W = std::sqrt(dd * dd * w * w + Q * Q);
    const double T = K1 * k2.derivative(1) - K2 * k1.derivative(1);
    const double P = Q * (K3 * cc + D.derivative(1)) - dd * (K2 * A.derivative(1) - K1 * C.derivative(1)) -
                     dd * dd * K1 * K3;
    const double P_printed = Q * (K3 * cc + D.derivative(1)) + dd * (K2 * A.derivative(1) - K1 * C.derivative(1)) +
                             dd * dd * K1 * K3;
    AuxiliaryTerms& x = c.out.aux;
    x.phi = ph;
    x.A = a;
    x.B = B.value();
    x.C = cc;
    x.D = dd;
    x.W = W;
    x.W_factored = std::abs(ph) * std::sqrt(K2 * K2 * K3 * K3 * w * w + T * T);

    const double ks = kscale(c.b);
    c.flag(ph, (1.0 + std::abs(lam1.value())) * ks);
    c.flag(w, ks);
    c.flag(W, std::abs(ph) * ks * ks * ks);
    const double s = sgn(ph);
    c.out.app.speed = std::abs(ph);
    const double k1bar = w / std::abs(ph);
    const double k2bar = W / (ph * ph * w * w);
    if (w_curve) {
        c.out.app.frame.vectors = {s * c.b.frame[1], c.amb({-s * K1 / w, 0.0, s * K2 / w, 0.0}), sgn(dd) * c.b.frame[3],
                                   c.amb({K2 / w, 0.0, K1 / w, 0.0})};
        c.out.app.kappas = {k1bar, std::abs(K2 * K3) / (std::abs(ph) * w), std::abs(K1 * K3) / (std::abs(ph) * w)};
        c.out.printed_kappas = {k1bar, K2 * K3 / (std::abs(ph) * w), -K1 * K3 / (std::abs(ph) * w)};
        return;
    }
    c.out.app.frame.vectors = {s * c.b.frame[1], c.amb({-s * K1 / w, 0.0, s * K2 / w, 0.0}),
                               c.amb({-K2 * Q / (W * w), 0.0, -K1 * Q / (W * w), dd * w / W}),
                               c.amb({sgn(P) * dd * K2 / W, 0.0, sgn(P) * dd * K1 / W, sgn(P) * Q / W})};
    c.out.app.kappas = {k1bar, k2bar, std::abs(P) * w / (W * W * std::abs(ph))};
    const double ph4 = ph * ph * ph * ph;
    c.out.printed_kappas = {k1bar, k2bar, -P_printed / (W * ph4 * k1bar * k2bar)};
    Frame pf;
    pf.vectors = {c.b.frame[1], c.amb({-K1 / w, 0.0, K2 / w, 0.0}), c.out.app.frame.vectors[2],
                  c.amb({dd * K2 / W, 0.0, dd * K1 / W, -Q / W})};
    c.out.printed_frame = std::move(pf);
}

void order2_e4(Ctx& c, const Taylor& lam2, bool w_curve) {
    const Taylor& k1 = c.b.kappa(1);
    const Taylor& k2 = c.b.kappa(2);
    const Taylor& k3 = c.b.kappa(3);
    const Taylor phi = lam2 * k2;
    const Taylor dphi = phi.differentiated();
    const Taylor K = k1 * k2 * phi;
    const Taylor L = 2.0 * k2 * dphi + k2.differentiated() * phi;
    const Taylor M = dphi.differentiated() - (k2 * k2 + k3 * k3) * phi;
    const Taylor N = 2.0 * k3 * dphi + k3.differentiated() * phi;
    const double K1 = k1.value(), K2 = k2.value(), K3 = k3.value(), ph = phi.value();
    const double kk = K.value(), ll = L.value(), nn = N.value();
    const double R = K2 * nn - K3 * ll;
    const double w = std::hypot(K2, K3);
    const double W = std::sqrt(kk * kk * w * w + R * R);
    const double T = K2 * k3.derivative(1) - K3 * k2.derivative(1);
    const double P = R * (K1 * ll + K.derivative(1)) - kk * (K2 * N.derivative(1) - K3 * L.derivative(1)) -
                     K1 * K3 * kk * kk;
    const double P_printed = R * (K1 * ll + K.derivative(1)) + (K2 * N.derivative(1) - K3 * L.derivative(1)) * kk +
                             K1 * K3 * kk * kk;
    AuxiliaryTerms& x = c.out.aux;
    x.psi2 = ph;
    x.K = kk;
    x.L = ll;
    x.M = M.value();
    x.N = nn;
    x.W = W;
    x.W_factored = std::abs(ph) * std::sqrt(K1 * K1 * K2 * K2 * w * w + T * T);

    const double ks = kscale(c.b);
    c.flag(ph, (1.0 + std::abs(lam2.value())) * ks);
    c.flag(w, ks);
    c.flag(W, std::abs(ph) * ks * ks * ks);
    const double s = sgn(ph);
    c.out.app.speed = std::abs(ph);
    const double k1bar = w / std::abs(ph);
    const double k2bar = W / (ph * ph * w * w);
    if (w_curve) {
        c.out.app.frame.vectors = {s * c.b.frame[2], c.amb({0.0, -s * K2 / w, 0.0, s * K3 / w}), sgn(kk) * c.b.frame[0],
                                   c.amb({0.0, K3 / w, 0.0, K2 / w})};
        c.out.app.kappas = {k1bar, std::abs(K1 * K2) / (std::abs(ph) * w), std::abs(K1 * K3) / (std::abs(ph) * w)};
        c.out.printed_kappas = {k1bar, K1 * K2 / (std::abs(ph) * w), K1 * K3 / (std::abs(ph) * w)};
        return;
    }
    c.out.app.frame.vectors = {s * c.b.frame[2], c.amb({0.0, -s * K2 / w, 0.0, s * K3 / w}),
                               c.amb({kk * w / W, K3 * R / (W * w), 0.0, K2 * R / (W * w)}),
                               c.amb({sgn(P) * R / W, -sgn(P) * K3 * kk / W, 0.0, -sgn(P) * K2 * kk / W})};
    c.out.app.kappas = {k1bar, k2bar, std::abs(P) * w / (W * W * std::abs(ph))};
    const double ph4 = ph * ph * ph * ph;
    c.out.printed_kappas = {k1bar, k2bar, P_printed / (W * ph4 * k1bar * k2bar)};
    Frame pf;
    pf.vectors = {c.b.frame[2], c.amb({0.0, -K2 / w, 0.0, K3 / w}), c.out.app.frame.vectors[2],
                  c.amb({R / W, K3 * kk / W, 0.0, K2 * kk / W})};
    c.out.printed_frame = std::move(pf);
}

void order3_e4(Ctx& c, const Taylor& lam2, const Taylor& lam3) {
    const Taylor& k2 = c.b.kappa(2);
    const Taylor& k3 = c.b.kappa(3);
    const Taylor psi = lam3 * k3;
    const Taylor dpsi = psi.differentiated();
    const double K1 = c.b.kappa(1).value(), K2 = k2.value(), K3 = k3.value(), ps = psi.value();
    AuxiliaryTerms& x = c.out.aux;
    x.psi3 = ps;
    x.E = K2 * K3 * ps;
    x.F = 2.0 * K3 * dpsi.value() + k3.derivative(1) * ps;
    x.F_printed = 2.0 * k3.derivative(1) * ps + k3.derivative(1) * (lam2.value() * K2);
    x.G = dpsi.derivative(1) - K3 * K3 * ps;

    const double ks = kscale(c.b);
    c.flag(ps, (1.0 + std::abs(lam3.value())) * ks);
    for (double k : {K1, K2, K3}) c.flag(k, ks);
    c.out.app.speed = std::abs(ps);
    c.out.app.frame.vectors = {sgn(ps) * c.b.frame[3], -sgn(ps * K3) * c.b.frame[2], sgn(x.E) * c.b.frame[1],
                               -sgn(K1 * x.E) * c.b.frame[0]};
    const double ap = std::abs(ps);
    c.out.app.kappas = {std::abs(K3) / ap, std::abs(K2) / ap, std::abs(K1) / ap};
    c.out.printed_kappas = {K3 / ap, K2 / ap, -K1 / ap};
    Frame pf;
    pf.vectors = {c.b.frame[3], -c.b.frame[2], c.b.frame[1], c.b.frame[0]};
    c.out.printed_frame = std::move(pf);
}

}  // namespace

PredictedApparatus predicted_involute_apparatus(const FrenetJet& base, std::span<const Taylor> lambda, int k,
                                                bool w_curve, double tol_sing) {
    const int n = base.dim();
    if (!((n == 3 && base.rank() == 3 && (k == 1 || k == 2)) || (n == 4 && base.rank() == 4 && k >= 1 && k <= 3)))
        throw Error(ErrorCode::CaseUnsupported,
                    "no predicted apparatus for dim " + std::to_string(n) + ", order " + std::to_string(k));
    if (static_cast<int>(lambda.size()) != k) throw Error(ErrorCode::InvalidArgument, "need k offset series");
    if (min_order(lambda) < 4 || base.kappa_order() < 3)
        throw Error(ErrorCode::JetTooShort, "predicted apparatus needs offset series of order 4");
    Ctx c{base, tol_sing, {}};
    c.out.dim = n;
    c.out.k = k;
    c.out.w_curve = w_curve && n == 4 && k < 3;
    c.out.app.param = base.param;
    c.out.app.source = ApparatusSource::Predicted;
    if (n == 3 && k == 1) order1_e3(c, lambda[0]);
    if (n == 3 && k == 2) order2_e3(c, lambda[1]);
    if (n == 4 && k == 1) order1_e4(c, lambda[0], c.out.w_curve);
    if (n == 4 && k == 2) order2_e4(c, lambda[1], c.out.w_curve);
    if (n == 4 && k == 3) order3_e4(c, lambda[1], lambda[2]);
    return c.out;
}

}  // namespace curvekit
