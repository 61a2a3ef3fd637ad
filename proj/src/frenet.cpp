#include "curvekit/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curvekit/error.hpp"

namespace curvekit {

namespace {

constexpr double kTolRank = 1e-10;

bool rank_fails(double e_alpha, double e1, const VecN& x_alpha) { return e_alpha <= kTolRank * e1 * (x_alpha.norm() + 1.0); }

double det4(const Eigen::Matrix4d& m) { return m.determinant(); }

// unit vector v with det[V_1..V_{n-1}, v] = +1
VecN orientation_completion(const std::vector<VecN>& V) {
    const Eigen::Index n = V.front().size();
    VecN best;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        VecN e = VecN::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass)
            for (const VecN& v : V) e -= e.dot(v) * v;
        if (e.norm() > best_norm) {
            best_norm = e.norm();
            best = e;
        }
    }
    best /= best_norm;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) m.col(j) = V[static_cast<std::size_t>(j)];
    m.col(n - 1) = best;
    return m.determinant() < 0.0 ? VecN(-best) : best;
}

}  // namespace

double Frame::orthonormality_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j)
            worst = std::max(worst, std::abs(vectors[i].dot(vectors[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

std::string_view to_string(ApparatusSource source) {
    switch (source) {
    case ApparatusSource::GramSchmidt: return "gram-schmidt";
    case ApparatusSource::ClosedForm3: return "closed-form-3";
    case ApparatusSource::ClosedForm4: return "closed-form-4";
    case ApparatusSource::Intrinsic: return "intrinsic";
    case ApparatusSource::Predicted: return "predicted";
    }
    return "unknown";
}

FrenetApparatus gram_schmidt_apparatus(const Jet& jet, int d, RankPolicy policy) {
    if (jet.order() < d)
        throw Error(ErrorCode::JetTooShort, "jet order " + std::to_string(jet.order()) + " < d = " + std::to_string(d));
    if (d < 1 || jet.dim() < d)
        throw Error(ErrorCode::DimensionMismatch, "rank " + std::to_string(d) + " exceeds dimension " + std::to_string(jet.dim()));

    FrenetApparatus out;
    out.param = jet.param;
    out.source = ApparatusSource::GramSchmidt;
    std::vector<VecN>& V = out.frame.vectors;
    const double e1 = jet.derivs[1].norm();
    if (!(e1 > 0.0)) throw Error(ErrorCode::RankDeficient, "x' vanishes");
    for (int a = 1; a <= d; ++a) {
        const VecN& xa = jet.derivs[static_cast<std::size_t>(a)];
        VecN e = xa;
        // two passes keep the frame orthonormal even for nearly dependent jets
        for (int pass = 0; pass < 2; ++pass)
            for (const VecN& v : V) e -= e.dot(v) * v;
        const double n = e.norm();
        if (a > 1 && a == d && d == jet.dim() && policy == RankPolicy::CompleteLast && rank_fails(n, e1, xa)) {
            out.gs_norms.push_back(n);
            V.push_back(orientation_completion(V));
            continue;
        }
        if (a > 1 && rank_fails(n, e1, xa))
            throw Error(ErrorCode::RankDeficient, "|E" + std::to_string(a) + "| = " + std::to_string(n) +
                                                      " at t = " + std::to_string(jet.param));
        out.gs_norms.push_back(n);
        V.push_back(e / n);
    }
    out.speed = e1;
    for (int k = 1; k < d; ++k)
        out.kappas.push_back(out.gs_norms[static_cast<std::size_t>(k)] /
                             (out.gs_norms[static_cast<std::size_t>(k - 1)] * e1));
    return out;
}

VecN cross3(const VecN& u, const VecN& v) {
    if (u.size() != 3 || v.size() != 3) throw Error(ErrorCode::DimensionMismatch, "cross3 needs vectors in E^3");
    const Eigen::Vector3d a = u, b = v;
    return a.cross(b);
}

VecN cross4(const VecN& u, const VecN& v, const VecN& w) {
    if (u.size() != 4 || v.size() != 4 || w.size() != 4)
        throw Error(ErrorCode::DimensionMismatch, "cross4 needs vectors in E^4");
    VecN r(4);
    Eigen::Matrix4d m;
    m.row(0) = u.transpose();
    m.row(1) = v.transpose();
    m.row(2) = w.transpose();
    for (int i = 0; i < 4; ++i) {
        m.row(3) = Eigen::RowVector4d::Unit(i);
        r(i) = det4(m);
    }
    return r;
}

FrenetApparatus closed_form_apparatus3(const Jet& jet) {
    if (jet.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "closed form E^3 path needs a curve in E^3");
    if (jet.order() < 3) throw Error(ErrorCode::JetTooShort, "closed form E^3 path needs order 3");
    const VecN& x1 = jet.derivs[1];
    const VecN& x2 = jet.derivs[2];
    const VecN& x3 = jet.derivs[3];
    const double v = x1.norm();
    const VecN b = cross3(x1, x2);
    const double bn = b.norm();
    if (!(v > 0.0) || rank_fails(bn / v, v, x2))
        throw Error(ErrorCode::RankDeficient, "x' x x'' vanishes at t = " + std::to_string(jet.param));

    FrenetApparatus out;
    out.param = jet.param;
    out.speed = v;
    out.source = ApparatusSource::ClosedForm3;
    const VecN V1 = x1 / v;
    const VecN V3 = b / bn;
    const double e3 = std::abs(V3.dot(x3));
    if (rank_fails(e3, v, x3))
        throw Error(ErrorCode::RankDeficient, "x''' lies in the osculating plane at t = " + std::to_string(jet.param));
    out.frame.vectors = {V1, cross3(V3, V1), V3};
    out.kappas = {bn / (v * v * v), b.dot(x3) / (bn * bn)};
    out.gs_norms = {v, bn / v, e3};
    return out;
}

FrenetApparatus closed_form_apparatus4(const Jet& jet) {
    if (jet.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "closed form E^4 path needs a curve in E^4");
    if (jet.order() < 4) throw Error(ErrorCode::JetTooShort, "closed form E^4 path needs order 4");
    const VecN& x1 = jet.derivs[1];
    const VecN& x2 = jet.derivs[2];
    const VecN& x3 = jet.derivs[3];
    const VecN& x4 = jet.derivs[4];
    const double v = x1.norm();
    const VecN w = cross4(x1, x2, x3);
    const double wn = w.norm();
    // |x' ^ x'' ^ x'''| = |E1||E2||E3|; compare |E3| against the Gram-Schmidt threshold
    const double e2 = (x2 - x2.dot(x1) / (v * v) * x1).norm();
    if (!(v > 0.0) || !(e2 > 0.0) || rank_fails(wn / (v * e2), v, x3))
        throw Error(ErrorCode::RankDeficient, "x' ^ x'' ^ x''' vanishes at t = " + std::to_string(jet.param));

    FrenetApparatus out;
    out.param = jet.param;
    out.speed = v;
    out.source = ApparatusSource::ClosedForm4;
    const VecN V1 = x1 / v;
    const VecN V4 = w / wn;
    const double e3 = wn / (v * e2);
    const double e4 = std::abs(V4.dot(x4));
    if (rank_fails(e4, v, x4))
        throw Error(ErrorCode::RankDeficient, "x'''' lies in span(x', x'', x''') at t = " + std::to_string(jet.param));
    VecN V3 = cross4(V4, x1, x2);
    V3 /= V3.norm();
    VecN V2 = cross4(V3, V4, x1);
    V2 /= V2.norm();
    out.frame.vectors = {V1, V2, V3, V4};
    const double k1 = V2.dot(x2) / (v * v);
    const double k2 = V3.dot(x3) / (v * v * v * k1);
    const double k3 = V4.dot(x4) / (v * v * v * v * k1 * k2);
    out.kappas = {k1, k2, k3};
    out.gs_norms = {v, e2, e3, e4};
    return out;
}

int infer_rank(const Jet& jet) {
    int best = 1;
    for (int d = 2; d <= std::min(jet.order(), jet.dim()); ++d) {
        try {
            gram_schmidt_apparatus(jet, d);
            best = d;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RankDeficient) throw;
            break;
        }
    }
    return best;
}

FrenetApparatus apparatus_at(const Curve& curve, double t, int d, RankPolicy policy) {
    return gram_schmidt_apparatus(eval_jet(curve, t, d), d, policy);
}

FrenetJet frenet_jet(const Curve& curve, double s, int d, int korder) {
    if (auto f = curve.intrinsic_frenet(s, korder)) {
        if (f->rank() < d) throw Error(ErrorCode::RankDeficient, "curve carries a frame of rank " + std::to_string(f->rank()));
        f->frame.resize(static_cast<std::size_t>(d));
        f->kappas.resize(static_cast<std::size_t>(d - 1));
        return *f;
    }
    if (!curve.unit_speed()) throw Error(ErrorCode::NotUnitSpeed, "series frame needs an arclength-parametrized curve");
    if (d > curve.dim()) throw Error(ErrorCode::DimensionMismatch, "rank exceeds ambient dimension");

    const TaylorVec x = curve.expand(s, korder + d);
    std::vector<TaylorVec> derivs;
    derivs.push_back(differentiated(x));
    for (int a = 2; a <= d; ++a) derivs.push_back(differentiated(derivs.back()));

    FrenetJet f;
    f.param = s;
    f.position.resize(curve.dim());
    for (int i = 0; i < curve.dim(); ++i) f.position(i) = x[static_cast<std::size_t>(i)].value();

    std::vector<TaylorVec> V;
    std::vector<Taylor> norms;
    double e1 = 0.0;
    for (int a = 1; a <= d; ++a) {
        TaylorVec e = derivs[static_cast<std::size_t>(a - 1)];
        for (const TaylorVec& v : V) {
            const Taylor c = dot(e, v);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] -= c * v[i];
        }
        const Taylor n = sqrt(dot(e, e));
        VecN xa(curve.dim());
        for (int i = 0; i < curve.dim(); ++i) xa(i) = derivs[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i)].value();
        if (a == 1) e1 = n.value();
        if (a > 1 && rank_fails(n.value(), e1, xa))
            throw Error(ErrorCode::RankDeficient, "|E" + std::to_string(a) + "| = " + std::to_string(n.value()) +
                                                      " at s = " + std::to_string(s));
        for (Taylor& c : e) c /= n;
        V.push_back(std::move(e));
        norms.push_back(n);
    }
    for (const TaylorVec& v : V) {
        VecN val(curve.dim());
        for (int i = 0; i < curve.dim(); ++i) val(i) = v[static_cast<std::size_t>(i)].value();
        f.frame.push_back(std::move(val));
    }
    for (int k = 1; k < d; ++k) {
        const Taylor kappa = norms[static_cast<std::size_t>(k)] / (norms[static_cast<std::size_t>(k - 1)] * norms[0]);
        f.kappas.push_back(kappa.truncated(korder));
    }
    return f;
}

FrenetApparatus apparatus_from(const FrenetJet& f) {
    FrenetApparatus out;
    out.param = f.param;
    out.speed = 1.0;
    out.frame.vectors = f.frame;
    for (const Taylor& k : f.kappas) out.kappas.push_back(k.value());
    out.source = ApparatusSource::Intrinsic;
    return out;
}

std::string_view to_string(CurveClass c) {
    switch (c) {
    case CurveClass::WCurve: return "WCurve";
    case CurveClass::Salkowski: return "Salkowski";
    case CurveClass::CcrCurve: return "CcrCurve";
    case CurveClass::Generic: return "Generic";
    }
    return "Generic";
}

double relative_dispersion(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    if (mean == 0.0) return sd == 0.0 ? 0.0 : INFINITY;
    return sd / std::abs(mean);
}

ClassificationReport classify(std::span<const FrenetApparatus> samples, double tol_class) {
    if (samples.size() < 8) throw Error(ErrorCode::InsufficientSamples, "classification needs at least 8 samples");
    const int d = samples.front().rank();
    for (const auto& a : samples)
        if (a.rank() != d) throw Error(ErrorCode::DimensionMismatch, "samples mix frame ranks");

    ClassificationReport r;
    std::vector<double> col(samples.size());
    for (int i = 1; i < d; ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) col[j] = std::abs(samples[j].kappa(i));
        r.kappa_dispersion.push_back(relative_dispersion(col));
    }
    for (int i = 1; i + 1 < d; ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) col[j] = std::abs(samples[j].kappa(i + 1) / samples[j].kappa(i));
        r.ratio_dispersion.push_back(relative_dispersion(col));
    }
    auto below = [tol_class](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [tol_class](double x) { return x < tol_class; });
    };
    r.w_curve = below(r.kappa_dispersion);
    r.salkowski = !r.kappa_dispersion.empty() && r.kappa_dispersion.front() < tol_class;
    r.ccr = below(r.ratio_dispersion);
    r.cls = r.w_curve ? CurveClass::WCurve
            : r.salkowski ? CurveClass::Salkowski
            : r.ccr ? CurveClass::CcrCurve
                    : CurveClass::Generic;
    return r;
}

}  // namespace curvekit
