#include "curvekit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "curvekit/error.hpp"
#include "curvekit/expr.hpp"

namespace curvekit {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

VecN vector_of(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail(std::string(what) + " must be a non-empty array");
    VecN v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(std::string(what) + " entries must be numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Interval domain_of(const json& spec) {
    const VecN d = vector_of(field(spec, "domain"), "domain");
    if (d.size() != 2 || !(d(0) < d(1))) fail("domain must be [lo, hi] with lo < hi");
    return {d(0), d(1)};
}

const json& params_of(const json& spec) { return spec.contains("params") ? spec.at("params") : spec; }

CurvePtr synthesized(const json& spec) {
    CurvatureProgram prog;
    const json& d = field(spec, "d");
    if (!d.is_number_integer() || d.get<int>() < 2) fail("synthesized 'd' must be an integer >= 2");
    prog.d = d.get<int>();
    const json& ks = field(spec, "kappas");
    if (!ks.is_array() || static_cast<int>(ks.size()) != prog.d - 1) fail("synthesized needs d-1 kappas");
    for (const json& k : ks) {
        const json& e = k.is_object() ? field(k, "expr") : k;
        if (e.is_number()) {
            prog.kappas.push_back(Expression::constant(e.get<double>()));
        } else if (e.is_string()) {
            prog.kappas.push_back(Expression::parse(e.get<std::string>()));
        } else {
            fail("kappa expressions must be strings or numbers");
        }
    }
    const Interval dom = domain_of(spec);
    const int n = spec.contains("dim") ? spec.at("dim").get<int>() : prog.d;
    if (n < prog.d) fail("dim below d");
    VecN x0 = spec.contains("x0") ? vector_of(spec.at("x0"), "x0") : VecN::Zero(n);
    std::vector<VecN> frame0;
    if (spec.contains("frame0")) {
        for (const json& v : spec.at("frame0")) frame0.push_back(vector_of(v, "frame0"));
    } else {
        for (int i = 0; i < prog.d; ++i) frame0.push_back(VecN::Unit(n, i));
    }
    const int steps = spec.contains("steps") ? spec.at("steps").get<int>() : 4096;
    return synthesize_from_curvatures(prog, x0, frame0, dom.length(), dom.lo, steps);
}

CurvePtr build(const json& spec) {
    const json& kind = field(spec, "kind");
    if (!kind.is_string()) fail("'kind' must be a string");
    const std::string k = kind.get<std::string>();
    const json& p = params_of(spec);
    if (k == "helix3") {
        std::optional<double> w;
        if (p.contains("w")) w = number(p, "w");
        return std::make_shared<Helix3>(number(p, "a"), number(p, "b"), domain_of(spec), w);
    }
    if (k == "circle2") return std::make_shared<Circle2>(number(p, "r"), domain_of(spec));
    if (k == "wcurve4")
        return std::make_shared<WCurve4>(number(p, "r1"), number(p, "w1"), number(p, "r2"), number(p, "w2"),
                                         domain_of(spec));
    if (k == "polynomial") {
        const json& c = field(p, "coeffs");
        if (!c.is_array() || c.empty()) fail("coeffs must be a non-empty array of arrays");
        std::vector<std::vector<double>> coeffs;
        for (const json& row : c) {
            const VecN r = vector_of(row, "coeffs row");
            coeffs.emplace_back(r.data(), r.data() + r.size());
        }
        return std::make_shared<PolynomialCurve>(std::move(coeffs), domain_of(spec));
    }
    if (k == "synthesized") return synthesized(spec);
    if (k == "spherical") {
        CurvePtr inner = curve_from_json(field(p, "inner"));
        return std::make_shared<SphericalCurve>(inner, vector_of(field(p, "center"), "center"), number(p, "radius"));
    }
    fail("unknown curve kind '" + k + "'");
}

}  // namespace

CurvePtr curve_from_json(const json& spec) {
    CurvePtr c;
    try {
        c = build(spec);
    } catch (const json::exception& e) {
        fail(e.what());
    }
    if (spec.is_object() && spec.contains("arclength") && spec.at("arclength").is_boolean() &&
        spec.at("arclength").get<bool>())
        c = arclength_reparam(c);
    return c;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(path + ": " + e.what());
    }
}

CurvePtr load_curve(const std::string& path) { return curve_from_json(load_json(path)); }

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 16);
    return std::string(buf, r.ptr);
}

double parse_real(std::string_view text) {
    if (text == "nan") return std::nan("");
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) fail("not a number: " + std::string(text));
    return v;
}

void write_csv_header(std::ostream& out, std::span<const std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
}

void write_csv_row(std::ostream& out, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_real(values[i]);
    out << '\n';
}

std::vector<double> parse_indexed_list(std::string_view text, char prefix) {
    std::vector<double> out;
    std::vector<bool> seen;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        const std::size_t eq = item.find('=');
        if (item.size() < 3 || item[0] != prefix || eq == std::string_view::npos)
            fail("expected " + std::string(1, prefix) + "<i>=<value>, got '" + std::string(item) + "'");
        int idx = 0;
        const auto r = std::from_chars(item.data() + 1, item.data() + eq, idx);
        if (r.ec != std::errc() || r.ptr != item.data() + eq || idx < 1) fail("bad index in '" + std::string(item) + "'");
        const auto i = static_cast<std::size_t>(idx - 1);
        if (out.size() <= i) {
            out.resize(i + 1, 0.0);
            seen.resize(i + 1, false);
        }
        if (seen[i]) fail("duplicate entry " + std::string(item));
        out[i] = parse_real(item.substr(eq + 1));
        seen[i] = true;
        pos = comma + 1;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) fail("missing " + std::string(1, prefix) + std::to_string(i + 1));
    return out;
}

}  // namespace curvekit
