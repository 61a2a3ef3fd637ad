#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curvekit/curve.hpp"
#include "curvekit/frenet.hpp"
#include "curvekit/involute.hpp"
#include "curvekit/path.hpp"

namespace curvekit {

struct Tolerances {
    double kappa = 1e-5;      // relative |kappa| error, predicted vs direct
    double frame = 1e-6;      // frame cosine > 1 - frame
    double identity = 1e-9;   // closed-form offset residuals
    double ode = 1e-8;        // offset system audit
    double path_kappa = 1e-8;
    double path_frame = 1e-10;
    double orthonormal = 1e-9;
    double tangency = 1e-7;
    double aux_identity = 1e-12;
    double planar = 1e-7;
    double dispersion = 1e-6;
    double orthogonality = 1e-7;
    double alignment = 1e-8;
    double reconstruct = 1e-6;
    double scalar_frenet = 1e-6;
    double sphere = 1e-5;
    double helix = 1e-6;  // helix evolute curvatures and sphere residual

    /// Every threshold set to `t`.
    static Tolerances uniform(double t);
};

struct ComparisonReport {
    std::string case_id;
    /// How the checked quantity is obtained: jets, differences or integration.
    std::string basis = "jets";
    bool pass = false;
    std::size_t total = 0;
    std::size_t compared = 0;
    std::optional<double> max_rel_kappa_err;
    std::optional<double> min_frame_cos;
    std::vector<double> singular;  // parameters of excluded samples
    std::vector<int> sign_pattern;
    std::size_t sign_flips = 0;    // flips not separated by a singular sample
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> notes;

    double metric(const std::string& name) const;
};

/// Relative |kappa| error with the scale max |kappa_pred| standing in for
/// predicted values below 1e-6 of it; frames compared up to per-vector sign.
/// A direct apparatus with an empty frame, or a singular prediction, marks the
/// sample singular. GridMismatch on length or parameter mismatch.
ComparisonReport compare_apparatus(std::span<const FrenetApparatus> direct,
                                   std::span<const PredictedApparatus> predicted, double tol, double tol_frame);
ComparisonReport compare_apparatus(std::span<const FrenetApparatus> direct, std::span<const FrenetApparatus> predicted,
                                   double tol, double tol_frame);

nlohmann::ordered_json to_json(const ComparisonReport& r);
std::string reports_to_json(std::span<const ComparisonReport> reports);

struct CorpusCurve {
    std::string name;
    std::string cls;
    nlohmann::json spec;
    CurvePtr curve;
};

struct Corpus {
    std::vector<CorpusCurve> curves;
    const CorpusCurve* find(const std::string& cls) const;
};

/// Hypothesis classes a complete corpus covers.
const std::vector<std::string>& corpus_classes();
/// Report ids that need `cls`.
std::vector<std::string> cases_needing(const std::string& cls);

/// {"curves":[{"name":..,"class":..,"curve":{spec}}]}
Corpus corpus_from_json(const nlohmann::json& j);
nlohmann::json default_corpus_json();
Corpus default_corpus();

/// CorpusIncomplete naming the missing classes and the cases they feed.
void check_corpus(const Corpus& corpus);

std::vector<ComparisonReport> run_suite(const Corpus& corpus, const Tolerances& tol, int grid = default_grid());

}  // namespace curvekit
