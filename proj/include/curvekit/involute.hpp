#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvekit/frenet.hpp"
#include "curvekit/path.hpp"

namespace curvekit {

/// Initial offsets at the first grid node, either explicit or through the
/// constants of a closed-form family.
struct InitConditions {
    enum class Kind { Values, ClosedForm };
    Kind kind = Kind::Values;
    /// Values: lambda_1..lambda_k at s0. ClosedForm: c (k=1), c1,c2 (k=2), c1,c2,c3 (k=3).
    std::vector<double> v;

    static InitConditions values(std::vector<double> v) { return {Kind::Values, std::move(v)}; }
    static InitConditions closed_form(std::vector<double> c) { return {Kind::ClosedForm, std::move(c)}; }
};

struct OffsetPath {
    int k = 0;
    std::vector<double> grid;
    std::vector<std::vector<double>> lambdas;
    std::vector<std::vector<double>> derivs;
    /// max |lambda' (right-hand side) - lambda' (differences)| / max(1, |lambda'|)
    double ode_residual = 0.0;
    /// lambda_k vanishes at every node
    bool degenerate = false;
};

/// Right-hand side of the offset system at one point.
std::vector<double> offset_rhs(std::span<const double> lambda, std::span<const double> kappa);

/// The offset system solved as series around a node with lambda(s) = lambda0.
std::vector<Taylor> offset_series(const FrenetJet& base, std::span<const double> lambda0, int order);

/// lambda(s0) implied by `init` for an order-k involute of `base`.
std::vector<double> resolve_init(const BasePath& base, int k, const InitConditions& init);

OffsetPath offsets_ode(const BasePath& base, int k, const InitConditions& init);

enum class ClosedFormCase { Salkowski_k2, WCurve4_k3 };

/// Closed-form offset families. The printed variants reproduce the published
/// expressions verbatim and exist only to measure their residual.
std::vector<double> closed_form_offsets(ClosedFormCase c, std::span<const double> kappa, std::span<const double> consts,
                                        double s);
std::vector<double> printed_closed_form_offsets(ClosedFormCase c, std::span<const double> kappa,
                                                std::span<const double> consts, double s);

/// max |lambda' - rhs(lambda)| over `samples`, lambda' from series differentiation.
double closed_form_residual(ClosedFormCase c, std::span<const double> kappa, std::span<const double> consts,
                            std::span<const double> samples, bool printed = false);

/// Checked closed form: HypothesisViolated unless the base curvatures are
/// constant as the case requires, ClosedFormResidualFailure unless the
/// accepted form satisfies the offset system.
std::vector<double> closed_form_offsets(ClosedFormCase c, const BasePath& base, std::span<const double> consts,
                                        double s);

/// x + sum lambda_a V_a on the base grid; jets come from the structure
/// equations, so only grid nodes are valid parameters.
class OffsetCurve final : public Curve {
public:
    OffsetCurve(std::shared_ptr<const BasePath> base, OffsetPath offsets);

    int dim() const override { return base_->dim(); }
    Interval domain() const override { return {base_->grid.front(), base_->grid.back()}; }
    std::string_view kind() const override { return "involute"; }
    TaylorVec expand(double s, int order) const override;
    VecN position(double s) const override;

    const BasePath& base() const { return *base_; }
    const OffsetPath& offsets() const { return offsets_; }
    /// Offset series at node i, order `order`.
    std::vector<Taylor> lambda_series(std::size_t i, int order) const;
    std::vector<VecN> node_positions() const;

private:
    std::shared_ptr<const BasePath> base_;
    OffsetPath offsets_;
};

std::shared_ptr<const OffsetCurve> build_involute(std::shared_ptr<const BasePath> base, OffsetPath offsets);

/// max over nodes and j <= k of |<x', V_j>| / |x'| with x' from fourth-order
/// differences of the node positions. Nodes where |x'| < 1e-4 max |x'| sit on
/// a cusp (lambda_k kappa_k = 0); they are skipped and counted in `excluded`.
double tangency_residual(const OffsetCurve& inv, int k, std::size_t* excluded = nullptr);
double tangency_residual(std::span<const VecN> positions, const BasePath& base, int k,
                         std::size_t* excluded = nullptr);

struct AuxiliaryTerms {
    double phi = 0.0;  // order 1: lambda_1 kappa_1
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    double psi2 = 0.0;  // order 2: lambda_2 kappa_2
    double K = 0.0, L = 0.0, M = 0.0, N = 0.0;
    double psi3 = 0.0;  // order 3: lambda_3 kappa_3
    double E = 0.0, F = 0.0, G = 0.0;
    double F_printed = 0.0;
    /// W from its definition and from the factored second form
    double W = 0.0, W_factored = 0.0;
};

struct PredictedApparatus {
    FrenetApparatus app;  // corrected formulas, Gram-Schmidt sign convention
    int dim = 0;
    int k = 0;
    bool w_curve = false;
    bool singular = false;
    AuxiliaryTerms aux;
    /// Curvatures as published, signs included.
    std::vector<double> printed_kappas;
    /// Published frame where it differs from the corrected one.
    std::optional<Frame> printed_frame;
};

/// Predicted Frenet apparatus of the order-k involute of a base in E^3 or E^4
/// from the base frame, curvature series and offset series at one node.
/// With `w_curve` the constant-curvature specializations are evaluated.
PredictedApparatus predicted_involute_apparatus(const FrenetJet& base, std::span<const Taylor> lambda, int k,
                                                bool w_curve = false, double tol_sing = 1e-8);

}  // namespace curvekit
