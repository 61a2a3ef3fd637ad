#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "curvekit/curve.hpp"
#include "curvekit/frenet_jet.hpp"

namespace curvekit {

struct Frame {
    std::vector<VecN> vectors;

    int rank() const { return static_cast<int>(vectors.size()); }
    int dim() const { return vectors.empty() ? 0 : static_cast<int>(vectors.front().size()); }
    const VecN& operator[](int i) const { return vectors[static_cast<std::size_t>(i)]; }
    /// max |<V_i,V_j> - delta_ij|
    double orthonormality_residual() const;
};

enum class ApparatusSource { GramSchmidt, ClosedForm3, ClosedForm4, Intrinsic, Predicted };

std::string_view to_string(ApparatusSource source);

struct FrenetApparatus {
    double param = 0.0;
    double speed = 0.0;
    Frame frame;
    std::vector<double> kappas;  // kappa_1..kappa_{d-1}
    std::vector<double> gs_norms;
    ApparatusSource source = ApparatusSource::GramSchmidt;

    int rank() const { return frame.rank(); }
    double kappa(int i) const { return kappas[static_cast<std::size_t>(i - 1)]; }
};

/// CompleteLast: when d equals the ambient dimension and only E_d vanishes,
/// V_d completes a positively oriented frame and kappa_{d-1} is |E_d|-small
/// instead of raising RankDeficient.
enum class RankPolicy { Strict, CompleteLast };

FrenetApparatus gram_schmidt_apparatus(const Jet& jet, int d, RankPolicy policy = RankPolicy::Strict);

VecN cross3(const VecN& u, const VecN& v);
/// r_i = det[u; v; w; e_i], so cross4(e1, e2, e3) = e4.
VecN cross4(const VecN& u, const VecN& v, const VecN& w);

FrenetApparatus closed_form_apparatus3(const Jet& jet);
FrenetApparatus closed_form_apparatus4(const Jet& jet);

/// Largest d for which the jet passes the rank test.
int infer_rank(const Jet& jet);

/// Gram-Schmidt apparatus of `curve` at t.
FrenetApparatus apparatus_at(const Curve& curve, double t, int d, RankPolicy policy = RankPolicy::Strict);

/// Frame and curvature series of a unit-speed curve at s. Curves carrying
/// their own frame supply it; otherwise Gram-Schmidt runs on series.
FrenetJet frenet_jet(const Curve& curve, double s, int d, int korder);

FrenetApparatus apparatus_from(const FrenetJet& f);

enum class CurveClass { WCurve, Salkowski, CcrCurve, Generic };

std::string_view to_string(CurveClass c);

struct ClassificationReport {
    CurveClass cls = CurveClass::Generic;
    bool w_curve = false;
    bool salkowski = false;
    bool ccr = false;
    std::vector<double> kappa_dispersion;  // per kappa_i, relative standard deviation
    std::vector<double> ratio_dispersion;  // per kappa_{i+1}/kappa_i
};

ClassificationReport classify(std::span<const FrenetApparatus> samples, double tol_class);

/// Relative standard deviation, std/|mean|.
double relative_dispersion(std::span<const double> values);

}  // namespace curvekit
