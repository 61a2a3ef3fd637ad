#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvekit/error.hpp"
#include "curvekit/evolute.hpp"
#include "curvekit/frenet.hpp"
#include "curvekit/involute.hpp"
#include "curvekit/io.hpp"
#include "curvekit/path.hpp"
#include "curvekit/verify.hpp"

using namespace curvekit;
using nlohmann::ordered_json;

namespace {

struct Config {
    std::string curve;
    int samples = 256;
    int order = 1;
    std::string init;
    std::optional<double> c;
    std::optional<double> c1, c2, c3;
    std::string closed_form;
    std::string out;
    std::string format = "csv";
    std::optional<double> tol;
    std::string corpus;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit(const Table& t, const Config& cfg) {
    std::ostringstream os;
    if (cfg.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& r : t.rows) {
            ordered_json o;
            for (std::size_t i = 0; i < r.size(); ++i)
                o[t.columns[i]] = std::isfinite(r[i]) ? ordered_json(r[i]) : ordered_json(nullptr);
            rows.push_back(o);
        }
        os << rows.dump(2) << '\n';
    } else {
        write_csv_header(os, t.columns);
        for (const auto& r : t.rows) write_csv_row(os, r);
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
    f << os.str();
}

std::vector<std::string> apparatus_columns(int n, int d) {
    std::vector<std::string> c{"s", "v"};
    for (int i = 1; i < d; ++i) c.push_back("kappa" + std::to_string(i));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= n; ++j) c.push_back("V" + std::to_string(i) + "_" + std::to_string(j));
    return c;
}

void append_apparatus(std::vector<double>& row, const FrenetApparatus& a, int n, int d) {
    const bool ok = a.rank() == d;
    for (int i = 0; i < d - 1; ++i)
        row.push_back(ok && static_cast<int>(a.kappas.size()) > i ? a.kappas[static_cast<std::size_t>(i)] : NAN);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) row.push_back(ok ? a.frame[i](j) : NAN);
}

std::vector<double> sample_params(Interval dom, int samples) {
    std::vector<double> t;
    for (int i = 0; i < samples; ++i) t.push_back(i + 1 == samples ? dom.hi : dom.lo + dom.length() * i / (samples - 1));
    return t;
}

std::vector<std::size_t> sample_nodes(std::size_t size, int samples) {
    std::vector<std::size_t> idx;
    const double last = static_cast<double>(size - 1);
    for (int i = 0; i < samples; ++i) idx.push_back(static_cast<std::size_t>(std::llround(last * i / (samples - 1))));
    return idx;
}

CurvePtr unit_speed(CurvePtr c) { return c->unit_speed() ? c : arclength_reparam(c); }

std::shared_ptr<const BasePath> base_path(CurvePtr c, int samples, int korder) {
    const int steps = std::max(default_grid(), samples - 1);
    return std::make_shared<const BasePath>(sample_base(unit_speed(c), c->dim(), korder, steps));
}

int cmd_eval(const Config& cfg) {
    const CurvePtr c = load_curve(cfg.curve);
    const int n = c->dim();
    Table t;
    t.columns.push_back("t");
    for (int r = 0; r <= n; ++r)
        for (int j = 1; j <= n; ++j) t.columns.push_back("D" + std::to_string(r) + "_" + std::to_string(j));
    for (double p : sample_params(c->domain(), cfg.samples)) {
        const Jet jet = eval_jet(*c, p, n);
        std::vector<double> row{p};
        for (const VecN& v : jet.derivs) row.insert(row.end(), v.data(), v.data() + v.size());
        t.rows.push_back(std::move(row));
    }
    emit(t, cfg);
    return 0;
}

int cmd_frame(const Config& cfg) {
    const CurvePtr c = load_curve(cfg.curve);
    const int n = c->dim();
    Table t{apparatus_columns(n, n), {}};
    for (double p : sample_params(c->domain(), cfg.samples)) {
        const FrenetApparatus a = apparatus_at(*c, p, n, RankPolicy::CompleteLast);
        std::vector<double> row{p, a.speed};
        append_apparatus(row, a, n, n);
        t.rows.push_back(std::move(row));
    }
    emit(t, cfg);
    return 0;
}

InitConditions init_from(const Config& cfg, int k, const BasePath& base) {
    const int given = !cfg.init.empty() + cfg.c.has_value() + !cfg.closed_form.empty();
    if (given > 1) throw UsageError("use one of --init, --c, --closed-form");
    if (!cfg.init.empty()) return InitConditions::values(parse_indexed_list(cfg.init, 'l'));
    if (cfg.c) {
        if (k != 1) throw UsageError("--c applies to --order 1");
        return InitConditions::closed_form({*cfg.c});
    }
    if (!cfg.closed_form.empty()) {
        const int want = cfg.closed_form == "salkowski" ? 2 : 3;
        if (want != k) throw UsageError("--closed-form " + cfg.closed_form + " needs --order " + std::to_string(want));
        std::vector<double> cs;
        for (const auto& v : {cfg.c1, cfg.c2, cfg.c3}) {
            if (v) cs.push_back(*v);
        }
        if (static_cast<int>(cs.size()) != k) throw UsageError("closed form needs --c1.. --c" + std::to_string(k));
        return InitConditions::closed_form(cs);
    }
    if (k == 1) return InitConditions::closed_form({base.grid.back() + 1.0});
    std::vector<double> v(static_cast<std::size_t>(k), 0.0);
    v.back() = 1.0;
    return InitConditions::values(v);
}

int cmd_involute(const Config& cfg) {
    const CurvePtr c = load_curve(cfg.curve);
    const int n = c->dim();
    if (cfg.order < 1 || cfg.order > n - 1) throw UsageError("--order must be within 1.." + std::to_string(n - 1));
    const auto base = base_path(c, cfg.samples, 8);
    const int k = cfg.order;
    const auto inv = build_involute(base, offsets_ode(*base, k, init_from(cfg, k, *base)));
    Table t{apparatus_columns(n, n), {}};
    for (int a = 1; a <= k; ++a) t.columns.push_back("lambda" + std::to_string(a));
    for (std::size_t i : sample_nodes(base->size(), cfg.samples)) {
        const double s = base->grid[i];
        FrenetApparatus app;
        try {
            app = gram_schmidt_apparatus(eval_jet(*inv, s, n), n, RankPolicy::CompleteLast);
        } catch (const Error&) {
            app.speed = 0.0;
        }
        std::vector<double> row{s, app.speed};
        append_apparatus(row, app, n, n);
        for (double l : inv->offsets().lambdas[i]) row.push_back(l);
        t.rows.push_back(std::move(row));
    }
    emit(t, cfg);
    return 0;
}

int cmd_evolute(const Config& cfg) {
    const CurvePtr c = load_curve(cfg.curve);
    const int n = c->dim();
    const int m = n - 1;
    const auto base = base_path(c, cfg.samples, std::max(8, focal_korder(m)));
    const auto evo = build_evolute(base, focal_curvatures(*base, m), DegeneratePolicy::Flag);
    if (evo->degenerate()) std::cerr << "warning: DegenerateEvolute: the evolute collapses to a point\n";
    const FocalPath& f = evo->focal();
    Table t{apparatus_columns(n, n), {}};
    for (int a = 1; a <= m; ++a) t.columns.push_back("c" + std::to_string(a));
    t.columns.push_back("R");
    t.columns.push_back("drive");
    for (std::size_t i : sample_nodes(base->size(), cfg.samples)) {
        const double s = base->grid[i];
        FrenetApparatus app;
        if (!evo->degenerate()) {
            try {
                app = apparatus_at(*evo, s, n);
            } catch (const Error&) {
            }
        }
        std::vector<double> row{s, app.rank() == n ? app.speed : NAN};
        append_apparatus(row, app, n, n);
        row.insert(row.end(), f.cs[i].begin(), f.cs[i].end());
        row.push_back(f.radius[i]);
        row.push_back(f.drive[i]);
        t.rows.push_back(std::move(row));
    }
    emit(t, cfg);
    return 0;
}

int cmd_classify(const Config& cfg) {
    const CurvePtr c = load_curve(cfg.curve);
    const auto base = base_path(c, cfg.samples, 8);
    std::vector<FrenetApparatus> apps;
    for (std::size_t i : sample_nodes(base->size(), cfg.samples)) apps.push_back(apparatus_from(base->jets[i]));
    const ClassificationReport r = classify(apps, cfg.tol.value_or(1e-6));
    ordered_json j;
    j["class"] = std::string(to_string(r.cls));
    j["w_curve"] = r.w_curve;
    j["salkowski"] = r.salkowski;
    j["ccr"] = r.ccr;
    j["kappa_dispersion"] = r.kappa_dispersion;
    j["ratio_dispersion"] = r.ratio_dispersion;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_verify(const Config& cfg) {
    const Corpus corpus = cfg.corpus.empty() ? default_corpus() : corpus_from_json(load_json(cfg.corpus));
    const Tolerances tol = cfg.tol ? Tolerances::uniform(*cfg.tol) : Tolerances{};
    const auto reports = run_suite(corpus, tol);
    const std::string text = reports_to_json(reports);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
        f << text;
    }
    bool ok = true;
    for (const auto& r : reports) {
        if (!r.pass) {
            std::cerr << "FAIL " << r.case_id << '\n';
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvekit: Frenet apparatus, involutes and evolutes of curves in E^n"};
    app.require_subcommand(1);
    Config cfg;

    auto curve_opts = [&](CLI::App* sub) {
        sub->add_option("--curve", cfg.curve, "curve spec JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--samples", cfg.samples, "output rows")->check(CLI::Range(8, 1 << 24));
        sub->add_option("--out", cfg.out, "output file");
        sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App* eval = app.add_subcommand("eval", "derivative jets");
    curve_opts(eval);
    CLI::App* frame = app.add_subcommand("frame", "Frenet apparatus CSV");
    curve_opts(frame);
    CLI::App* inv = app.add_subcommand("involute", "involute of order k");
    curve_opts(inv);
    inv->add_option("--order,-k", cfg.order, "order k")->check(CLI::PositiveNumber);
    inv->add_option("--init", cfg.init, "initial offsets, e.g. l1=0,l2=1");
    inv->add_option("--c", cfg.c, "order-1 constant: lambda1 = c - s");
    inv->add_option("--closed-form", cfg.closed_form)->check(CLI::IsMember({"salkowski", "wcurve"}));
    inv->add_option("--c1", cfg.c1);
    inv->add_option("--c2", cfg.c2);
    inv->add_option("--c3", cfg.c3);
    CLI::App* evo = app.add_subcommand("evolute", "generalized evolute");
    curve_opts(evo);
    CLI::App* cls = app.add_subcommand("classify", "W-curve / Salkowski / ccr classification");
    curve_opts(cls);
    cls->add_option("--tol", cfg.tol, "classification tolerance");
    CLI::App* ver = app.add_subcommand("verify", "run the verification suite");
    ver->add_option("--corpus", cfg.corpus, "corpus JSON (default: built-in)")->check(CLI::ExistingFile);
    ver->add_option("--out", cfg.out, "report JSON file");
    ver->add_option("--tol", cfg.tol, "uniform tolerance override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(cfg);
        if (*frame) return cmd_frame(cfg);
        if (*inv) return cmd_involute(cfg);
        if (*evo) return cmd_evolute(cfg);
        if (*cls) return cmd_classify(cfg);
        return cmd_verify(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
