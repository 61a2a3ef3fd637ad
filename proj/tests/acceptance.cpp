// One line per acceptance criterion. Thresholds are the published ones,
// applied to the raw metrics rather than to the report pass flags.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "curvekit/evolute.hpp"
#include "curvekit/path.hpp"
#include "curvekit/verify.hpp"

using namespace curvekit;

namespace {

const std::vector<ComparisonReport>* g_reports = nullptr;

const ComparisonReport& rep(const std::string& id) {
    for (const auto& r : *g_reports)
        if (r.case_id == id) return r;
    std::fprintf(stderr, "missing report %s\n", id.c_str());
    std::exit(2);
}

double kerr(const std::string& id) { return rep(id).max_rel_kappa_err.value_or(INFINITY); }
double fcos(const std::string& id) { return rep(id).min_frame_cos.value_or(-INFINITY); }

bool has_note(const ComparisonReport& r, const std::string& text) {
    return std::any_of(r.notes.begin(), r.notes.end(), [&](const auto& n) { return n.find(text) != std::string::npos; });
}

struct Line {
    int id;
    bool pass;
    bool known = false;
    std::string detail;
};

std::vector<Line> lines;

void line(int id, bool pass, const std::string& detail, bool known = false) { lines.push_back({id, pass, known, detail}); }

std::string e(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", x);
    return b;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const Corpus corpus = default_corpus();
    const auto reports = run_suite(corpus, Tolerances{});
    g_reports = &reports;

    {
        const auto& r = rep("FrameValidity");
        const double gs = r.metric("gram_schmidt_max_residual"), cf = r.metric("closed_form_max_residual");
        line(1, gs < 1e-9 && cf < 1e-9, "orthonormality gram-schmidt " + e(gs) + ", closed form " + e(cf) + " (< 1e-9)");
    }
    line(2, kerr("PathEquivalence") < 1e-8 && fcos("PathEquivalence") > 1 - 1e-10,
         "rel kappa " + e(kerr("PathEquivalence")) + " (< 1e-8), 1-cos " + e(1 - fcos("PathEquivalence")) +
             " (< 1e-10)");
    {
        const auto& r = rep("Def1");
        double worst = 0.0;
        int cases = 0;
        for (const auto& [k, v] : r.metrics)
            if (k.rfind("tangency_", 0) == 0) {
                worst = std::max(worst, v);
                ++cases;
            }
        line(3, cases == 9 && worst < 1e-7,
             std::to_string(cases) + " (n,k) cases incl. E5 k=1..4, max tangency " + e(worst) + " (< 1e-7)");
    }
    {
        bool ok = true;
        double k = 0.0, c = 1.0;
        for (const char* id : {"Prop2", "Prop3", "Prop5", "Prop7", "Prop8"}) {
            k = std::max(k, kerr(id));
            c = std::min(c, fcos(id));
        }
        ok = k < 1e-5 && c > 1 - 1e-6;
        const double w1 = rep("Ident-b1.22").metric("max_rel_W_gap"), w2 = rep("Ident-b1.34").metric("max_rel_W_gap");
        ok = ok && w1 < 1e-12 && w2 < 1e-12;
        line(4, ok,
             "Props 2,3,5,7,8 rel kappa " + e(k) + " (< 1e-5), 1-cos " + e(1 - c) + " (< 1e-6); identities " + e(w1) +
                 ", " + e(w2) + " (< 1e-12)");
    }
    {
        const double k2 = rep("Cor1").metric("max_kappa2");
        const double disp = rep("Cor2").metric("ratio_dispersion");
        bool ccr = true;
        for (const char* id : {"Cor5", "Cor7", "Cor9"}) ccr = ccr && rep(id).pass && has_note(rep(id), "CcrCurve");
        line(5, k2 < 1e-7 && disp < 1e-6 && ccr,
             "Cor1 kappa2 " + e(k2) + " (< 1e-7), Cor2 dispersion " + e(disp) + " (< 1e-6), Cor5/7/9 ccr " +
                 (ccr ? "yes" : "no"));
    }
    {
        const double r3 = rep("Cor3").metric("residual"), r8 = rep("Cor8").metric("residual");
        const double p3 = rep("Cor3").metric("printed_residual"), p8 = rep("Cor8").metric("printed_residual");
        const bool warned = has_note(rep("Cor3"), "erratum b1.13") && has_note(rep("Cor8"), "erratum b1.44");
        line(6, r3 < 1e-9 && r8 < 1e-9 && warned,
             "accepted residuals " + e(r3) + ", " + e(r8) + " (< 1e-9); printed " + e(p3) + ", " + e(p8) +
                 (warned ? " reported as errata" : " NOT reported"));
    }
    {
        const double orth = rep("Evolute-c1.3").metric("max_rel_inner_product");
        const double tan = rep("Evolute-c1.5").metric("min_tangent_cos");
        const double thm = std::max(kerr("Thm-c1.8"), rep("Thm-c1.8").metric("max_ratio_err"));
        const double p10 = kerr("Prop10"), p11 = kerr("Prop11");
        const double helix = rep("Prop10").metric("helix_max_abs_err");
        line(7, orth < 1e-7 && tan > 1 - 1e-8 && thm < 1e-5 && p10 < 1e-5 && p11 < 1e-5 && helix < 1e-6,
             "orthogonality " + e(orth) + ", 1-cos " + e(1 - tan) + ", theorem " + e(thm) + " (E3,E4,E5), Prop10 " +
                 e(p10) + ", Prop11 " + e(p11) + ", helix (0.5,0.5) err " + e(helix));
    }
    {
        const double rec = rep("Prop9").metric("max_rel_err"), sf = rep("Ident-c1.4*").metric("max_residual");
        line(8, rec < 1e-6 && sf < 1e-6, "reconstruction " + e(rec) + " (< 1e-6), scalar identity " + e(sf) + " (< 1e-6)");
    }
    {
        const double s3 = rep("Cor12").metric("spherical_residual"), s4 = rep("Cor14").metric("spherical_residual");
        const double rad = rep("Prop12").metric("radius_err");
        const double helix = rep("Cor12").metric("helix_residual");
        const bool parts = s3 < 1e-5 && s4 < 1e-5 && rad < 1e-5 && std::abs(helix - 1.0) < 1e-6;
        // literal three-way agreement, computed here without the suite's exception
        std::string disagree;
        bool only_cm_zero = true;
        for (const auto& c : corpus.curves) {
            const int n = c.curve->dim();
            const BasePath b = sample_base(c.curve, n, std::max(8, focal_korder(n - 1)));
            const FocalPath f = focal_curvatures(b, n - 1);
            const auto [rmin, rmax] = std::minmax_element(f.radius.begin(), f.radius.end());
            double dmax = 0.0, cm = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                dmax = std::max(dmax, std::abs(f.drive[i]));
                cm = std::max(cm, std::abs(f.cs[i].back()));
            }
            const bool r_const = *rmax - *rmin < 1e-6 * *rmax;
            const bool drive_zero = dmax < 1e-6 * std::max(1.0, *rmax);
            const bool resid_zero = n <= 4 ? spherical_test(b) < 1e-5 : drive_zero;
            if (r_const == drive_zero && drive_zero == resid_zero) continue;
            disagree += (disagree.empty() ? "" : ",") + c.name;
            if (!(cm < 1e-9 * *rmax)) only_cm_zero = false;
        }
        const bool three_way = disagree.empty();
        std::string detail = "spherical residual " + e(s3) + "/" + e(s4) + ", radius err " + e(rad) + ", helix " +
                             e(helix) + "; three-way agreement ";
        detail += three_way ? "on all curves" : "fails on " + disagree + " (R_m constant since c_m = 0, drive != 0)";
        line(9, parts && three_way, detail, parts && !three_way && only_cm_zero);
    }
    {
        const auto& r = rep("Sensitivity");
        line(10, r.pass && r.compared == r.total,
             std::to_string(r.compared) + "/" + std::to_string(r.total) + " corruptions flip their check, weakest margin " +
                 e(r.metric("weakest_flip_ratio")) + "x");
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int unexpected = 0;
    for (const auto& l : lines) {
        const char* verdict = l.pass ? "PASS" : l.known ? "FAIL (known, ledger)" : "FAIL";
        std::printf("criterion %2d: %s  %s\n", l.id, verdict, l.detail.c_str());
        if (!l.pass && !l.known) ++unexpected;
    }
    std::printf("runtime %.1f s at grid %d (< 60 s)\n", secs, default_grid());
    if (secs >= 60.0) ++unexpected;
    return unexpected ? 1 : 0;
}
