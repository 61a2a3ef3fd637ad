#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "curvekit/involute.hpp"
#include "curvekit/path.hpp"

namespace curvekit {

/// Jets: c_i and c_i' from the curvature series at each node.
/// Differences: c_i' from fourth-order differences of the c_i samples.
enum class FocalMethod { Jets, Differences };

struct FocalPath {
    int m = 0;  // ambient dimension m+1
    FocalMethod method = FocalMethod::Jets;
    std::vector<double> grid;
    std::vector<std::vector<double>> cs;   // c_1..c_m per row
    std::vector<std::vector<double>> dcs;  // c_1'..c_m' per row
    std::vector<double> rho;
    std::vector<double> radius;
    std::vector<double> drive;
    /// Rows where some kappa_i (i <= m) vanishes; all values there are NaN.
    std::vector<char> singular;
    /// Jets only: c_1..c_m as series at every node.
    std::vector<std::vector<Taylor>> series;

    std::size_t size() const { return grid.size(); }
    std::size_t singular_count() const;
};

/// Focal curvature series c_1..c_m at one node; c_m has order korder-m+1.
std::vector<Taylor> focal_series(const FrenetJet& jet, int m);

/// Needs a base of rank m+1 in E^{m+1}.
FocalPath focal_curvatures(const BasePath& base, int m, FocalMethod method = FocalMethod::Jets);
/// Curvature order the jet method needs for evolute jets of order m+1.
int focal_korder(int m);

struct SignData {
    std::vector<int> epsilon;
    std::vector<std::vector<int>> delta;  // delta_1..delta_m per row
    /// Rows where epsilon or the sign of kappa_m changes from the previous row.
    std::size_t flips = 0;
};

/// Rows with drive = 0 get epsilon = +1; a delta flip without an epsilon or
/// kappa_m flip raises CurvatureSignViolation.
SignData sign_data(const BasePath& base, const FocalPath& focal);

/// x + sum c_i N_i on the base grid.
class EvoluteCurve final : public Curve {
public:
    EvoluteCurve(std::shared_ptr<const BasePath> base, FocalPath focal, bool degenerate);

    int dim() const override { return base_->dim(); }
    Interval domain() const override { return {base_->grid.front(), base_->grid.back()}; }
    std::string_view kind() const override { return "evolute"; }
    TaylorVec expand(double s, int order) const override;
    VecN position(double s) const override;

    const BasePath& base() const { return *base_; }
    const FocalPath& focal() const { return focal_; }
    /// drive vanishes everywhere: every node maps to one center point
    bool degenerate() const { return degenerate_; }
    std::vector<VecN> node_positions() const;
    /// Max of |<x', V_j>| (j <= m) over |x'| from the structure equations,
    /// the value asserted at construction.
    double build_residual() const { return build_residual_; }

private:
    std::shared_ptr<const BasePath> base_;
    FocalPath focal_;
    bool degenerate_;
    double build_residual_ = 0.0;
};

/// Strict raises DegenerateEvolute when the drive vanishes everywhere; Flag
/// returns the constant curve with degenerate() set.
enum class DegeneratePolicy { Strict, Flag };

std::shared_ptr<const EvoluteCurve> build_evolute(std::shared_ptr<const BasePath> base, FocalPath focal,
                                                  DegeneratePolicy policy = DegeneratePolicy::Strict);

/// Max of |(R_m^2)'/(2 c_m) - drive| over rows with |c_m| > 1e-6 R_m; CmZero when
/// no row qualifies. With `printed`, R_m^2/(2 c_m) - drive as published.
double scalar_frenet_residual(const FocalPath& focal, bool printed = false, std::size_t* excluded = nullptr);

struct Reconstruction {
    std::vector<std::vector<double>> kappas;  // kappa_1..kappa_m, NaN where excluded
    std::vector<char> excluded;
    std::size_t excluded_count = 0;
};

/// kappa_i = (c_1 c_1' + ... + c_{i-1} c_{i-1}') / (c_{i-1} c_i); rows with
/// |c_{i-1} c_i| < 1e-6 R_m^2 are excluded, FocalZero when all are.
Reconstruction reconstruct_curvatures(const FocalPath& focal);

/// Theorem frame and curvatures of the evolute at `row`. printed_kappas holds
/// the explicit published values in E^3 and E^4; printed_frame the fixed E^4 frame.
PredictedApparatus predicted_evolute_apparatus(const FrenetJet& base, const FocalPath& focal, std::size_t row,
                                               const SignData& signs, double tol_sing = 1e-8);

/// E^3 and E^4 drive from the explicit rho formulas, independent of the
/// recursion: rho kappa_2 + (rho'/kappa_2)' and c_3' + rho' kappa_3/kappa_2.
double explicit_drive(const FrenetJet& jet);
/// Evolute curvatures from the explicit E^3/E^4 formulas, corrected.
std::vector<double> explicit_evolute_kappas(const FrenetJet& jet);
/// Published E^3/E^4 explicit values, signs included.
std::vector<double> printed_evolute_kappas(const FrenetJet& jet);

/// max |explicit_drive| over the path; CurvatureZero where kappa_2 (or
/// kappa_3) vanishes.
double spherical_test(const BasePath& base);

struct SphereFit {
    VecN center;
    double radius = 0.0;
    double residual = 0.0;
    double center_spread = 0.0;
    double radius_error = 0.0;  // max | |x - center| - radius |
};

/// Center x + c_1 N_1 + c_2 N_2 + c_3 N_3 per node in E^4, averaged. With
/// `printed`, the published decomposition with R = R_3 is inverted instead.
SphereFit sphere_decomposition4(const BasePath& base, bool printed = false);

}  // namespace curvekit
