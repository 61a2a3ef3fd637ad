#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "curvekit/error.hpp"
#include "curvekit/frenet.hpp"
#include "curvekit/io.hpp"
#include "curvekit/verify.hpp"
#include "support.hpp"

using namespace curvekit;
using namespace curvekit::test;
using nlohmann::json;

namespace {

FrenetApparatus app(double s, std::vector<double> kappas, std::vector<VecN> frame) {
    FrenetApparatus a;
    a.param = s;
    a.speed = 1.0;
    a.kappas = std::move(kappas);
    a.frame.vectors = std::move(frame);
    return a;
}

std::vector<FrenetApparatus> samples(int count, double scale = 1.0, double flip_from = 1e9) {
    std::vector<FrenetApparatus> out;
    for (int i = 0; i < count; ++i) {
        std::vector<VecN> f = standard_frame(3);
        if (i >= flip_from) f[1] = -f[1];
        out.push_back(app(0.1 * i, {scale * (1.0 + 0.1 * i), scale * 0.5}, f));
    }
    return out;
}

// one suite run shared by the tests below
const std::vector<ComparisonReport>& suite() {
    static const std::vector<ComparisonReport> r = run_suite(default_corpus(), Tolerances{});
    return r;
}

const ComparisonReport& report(const std::string& id) {
    for (const auto& r : suite())
        if (r.case_id == id) return r;
    throw std::runtime_error("no report " + id);
}

}  // namespace

TEST(Compare, IdenticalPasses) {
    const auto a = samples(10);
    const ComparisonReport r = compare_apparatus(a, a, 1e-5, 1e-6);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.compared, 10u);
    EXPECT_EQ(*r.max_rel_kappa_err, 0.0);
    EXPECT_EQ(r.sign_pattern, (std::vector<int>{1, 1, 1}));
}

TEST(Compare, RelativeErrorAndSignsUpToOrientation) {
    const auto a = samples(10);
    const ComparisonReport scaled = compare_apparatus(a, samples(10, 1.001), 1e-5, 1e-6);
    EXPECT_FALSE(scaled.pass);
    EXPECT_NEAR(*scaled.max_rel_kappa_err, 0.001 / 1.001, 1e-12);

    const ComparisonReport flipped = compare_apparatus(a, samples(10, 1.0, 5), 1e-5, 1e-6);
    EXPECT_TRUE(flipped.pass);
    EXPECT_EQ(flipped.sign_flips, 1u);
}

TEST(Compare, FrameMismatchFails) {
    auto a = samples(4);
    auto b = samples(4);
    const double t = 3e-3;
    b[2].frame.vectors[0] = vec({std::cos(t), std::sin(t), 0});
    const ComparisonReport r = compare_apparatus(a, b, 1e-5, 1e-6);
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(*r.min_frame_cos, std::cos(t), 1e-15);
}

TEST(Compare, SingularSamplesAreListed) {
    auto a = samples(6);
    std::vector<PredictedApparatus> p;
    for (const auto& x : a) {
        PredictedApparatus q;
        q.app = x;
        p.push_back(q);
    }
    p[3].singular = true;
    p[3].app.kappas[0] = 99.0;
    a[4].frame.vectors.clear();
    const ComparisonReport r = compare_apparatus(a, p, 1e-5, 1e-6);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.compared, 4u);
    EXPECT_EQ(r.singular, (std::vector<double>{0.1 * 3, 0.1 * 4}));
}

TEST(Compare, NearZeroPredictionUsesScale) {
    auto a = samples(2);
    auto b = samples(2);
    a[0].kappas[1] = 1e-9;
    b[0].kappas[1] = 2e-9;
    EXPECT_TRUE(compare_apparatus(a, b, 1e-5, 1e-6).pass);
}

TEST(Compare, Mismatches) {
    const auto a = samples(3);
    expect_error(ErrorCode::GridMismatch, [&] { compare_apparatus(a, samples(4), 1e-5, 1e-6); });
    auto shifted = samples(3);
    shifted[1].param += 0.01;
    expect_error(ErrorCode::GridMismatch, [&] { compare_apparatus(a, shifted, 1e-5, 1e-6); });
}

TEST(Corpus, ShippedFileMatchesBuiltIn) {
    EXPECT_EQ(load_json(CURVEKIT_SOURCE_DIR "/corpus/default.json"), default_corpus_json());
}

TEST(Corpus, CoversEveryClass) {
    const Corpus c = default_corpus();
    EXPECT_NO_THROW(check_corpus(c));
    for (const auto& cls : corpus_classes()) {
        EXPECT_NE(c.find(cls), nullptr) << cls;
        EXPECT_FALSE(cases_needing(cls).empty()) << cls;
    }
}

TEST(Corpus, MissingWCurveNamesItsCases) {
    Corpus c = default_corpus();
    c.curves.erase(std::remove_if(c.curves.begin(), c.curves.end(), [](const auto& x) { return x.cls == "wcurve-e4"; }),
                   c.curves.end());
    try {
        run_suite(c, Tolerances{}, 256);
        FAIL() << "expected CorpusIncomplete";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CorpusIncomplete);
        const std::string what = e.what();
        EXPECT_NE(what.find("wcurve-e4"), std::string::npos);
        EXPECT_NE(what.find("Cor4"), std::string::npos);
        EXPECT_NE(what.find("Cor5"), std::string::npos);
    }
}

TEST(Corpus, Malformed) {
    expect_error(ErrorCode::ParseError, [] { corpus_from_json(json::parse(R"({"curve":[]})")); });
    expect_error(ErrorCode::ParseError, [] { corpus_from_json(json::parse(R"({"curves":[{"class":"x"}]})")); });
}

TEST(Suite, EveryCasePassesWithDefaultTolerances) {
    std::set<std::string> ids;
    for (const auto& r : suite()) {
        EXPECT_TRUE(r.pass) << r.case_id << ": " << to_json(r).dump();
        EXPECT_TRUE(ids.insert(r.case_id).second) << "duplicate " << r.case_id;
    }
    EXPECT_EQ(suite().size(), 34u);
    for (const char* id : {"Prop2", "Prop3", "Prop5", "Prop7", "Prop8", "Cor1", "Cor2", "Cor5", "Cor7", "Cor9",
                           "Thm-c1.8", "Prop10", "Prop11", "Prop12", "Sensitivity"})
        EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Suite, PrintedFormsCarryErrataNotes) {
    auto has_note = [](const ComparisonReport& r, const std::string& tag) {
        return std::any_of(r.notes.begin(), r.notes.end(),
                           [&](const std::string& n) { return n.find("erratum " + tag) != std::string::npos; });
    };
    EXPECT_TRUE(has_note(report("Cor3"), "b1.13"));
    EXPECT_TRUE(has_note(report("Cor8"), "b1.44"));
    EXPECT_TRUE(has_note(report("Prop10"), "c1.11"));
    EXPECT_TRUE(has_note(report("Prop12"), "c1.18"));
    EXPECT_TRUE(has_note(report("Ident-c1.4*"), "c1.4*"));
    EXPECT_GT(report("Cor3").metric("printed_residual"), 1e-9);
    EXPECT_LT(report("Cor3").metric("residual"), 1e-9);
}

TEST(Suite, JsonShape) {
    const json j = json::parse(reports_to_json(suite()));
    ASSERT_TRUE(j.is_array());
    for (const auto& r : j) {
        for (const char* key : {"case", "pass", "basis", "samples", "max_rel_kappa_err", "min_frame_cos", "singular",
                                "sign_pattern", "metrics", "notes"})
            EXPECT_TRUE(r.contains(key)) << key;
        const std::string basis = r["basis"];
        EXPECT_TRUE(basis == "jets" || basis == "differences" || basis == "integration") << basis;
    }
    EXPECT_EQ(j[3]["case"], "Prop2");
    EXPECT_TRUE(j[3]["max_rel_kappa_err"].is_number());
    EXPECT_TRUE(j[4]["max_rel_kappa_err"].is_null());
}

TEST(Suite, Deterministic) {
    EXPECT_EQ(reports_to_json(run_suite(default_corpus(), Tolerances{})), reports_to_json(suite()));
}

TEST(Suite, TightUniformToleranceSplitsByBasis) {
    const auto tight = run_suite(default_corpus(), Tolerances::uniform(1e-12));
    std::size_t failed = 0;
    for (const auto& r : tight) {
        if (r.pass) continue;
        ++failed;
        EXPECT_NE(r.basis, "jets") << r.case_id;
    }
    EXPECT_GT(failed, 0u);
    EXPECT_LT(failed, tight.size());
}
