#include <cmath>
#include <limits>
#include <cstring>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "curvekit/error.hpp"
#include "curvekit/io.hpp"
#include "support.hpp"

using namespace curvekit;
using namespace curvekit::test;
using nlohmann::json;

TEST(Json, HelixFromParams) {
    const CurvePtr c = curve_from_json(json::parse(R"({"kind":"helix3","params":{"a":2,"b":1},"domain":[0,3]})"));
    EXPECT_EQ(c->dim(), 3);
    EXPECT_EQ(c->kind(), "helix3");
    EXPECT_DOUBLE_EQ(c->domain().hi, 3.0);
    EXPECT_NEAR(c->position(0.0)(0), 2.0, 1e-15);
}

TEST(Json, FieldsAtTopLevelAndArclength) {
    const CurvePtr c = curve_from_json(
        json::parse(R"({"kind":"polynomial","coeffs":[[0,1],[0,0,1],[0,0,0,1]],"domain":[0,1],"arclength":true})"));
    EXPECT_TRUE(c->unit_speed());
    EXPECT_EQ(c->dim(), 3);
}

TEST(Json, SynthesizedAcceptsStringsNumbersAndObjects) {
    const CurvePtr c = curve_from_json(
        json::parse(R"js({"kind":"synthesized","d":4,"kappas":["1 + 0.5*s", 0.8, {"expr":"cos(s)"}],"domain":[0,1]})js"));
    EXPECT_EQ(c->dim(), 4);
    EXPECT_TRUE(c->unit_speed());
}

TEST(Json, SphericalWrapsInner) {
    const CurvePtr c = curve_from_json(json::parse(R"({"kind":"spherical","params":{
        "inner":{"kind":"polynomial","params":{"coeffs":[[0.2,1],[0,0,0.6],[1]]},"domain":[0,1]},
        "center":[1,2,3],"radius":2}})"));
    EXPECT_NEAR((c->position(0.4) - vec({1, 2, 3})).norm(), 2.0, 1e-13);
}

TEST(Json, MalformedSpecs) {
    for (const char* text : {
             R"({"kind":"helix3","params":{"a":1},"domain":[0,1]})",
             R"({"kind":"helix3","params":{"a":"x","b":1},"domain":[0,1]})",
             R"({"kind":"circle2","params":{"r":1},"domain":[1,0]})",
             R"({"kind":"teapot","domain":[0,1]})",
             R"({"domain":[0,1]})",
             R"({"kind":"synthesized","d":3,"kappas":["1"],"domain":[0,1]})",
             R"({"kind":"synthesized","d":3,"kappas":["1","2*"],"domain":[0,1]})",
             R"({"kind":"polynomial","params":{"coeffs":[]},"domain":[0,1]})",
             R"([1,2])",
         }) {
        SCOPED_TRACE(text);
        expect_error(ErrorCode::ParseError, [&] { curve_from_json(json::parse(text)); });
    }
    expect_error(ErrorCode::ParseError, [] { load_json("/nonexistent/curve.json"); });
}

TEST(Csv, SeventeenDigitsRoundTripBitExact) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> ex(-300, 300);
    for (int i = 0; i < 20000; ++i) {
        const double x = std::ldexp(mant(rng), ex(rng));
        const std::string s = format_real(x);
        const double y = parse_real(s);
        ASSERT_EQ(std::memcmp(&x, &y, sizeof x), 0) << s;
    }
    EXPECT_EQ(format_real(0.5), "5.0000000000000000e-01");
    EXPECT_EQ(format_real(std::numeric_limits<double>::denorm_min()), "4.9406564584124654e-324");
    EXPECT_TRUE(std::isnan(parse_real(format_real(NAN))));
}

TEST(Csv, RowsParseBack) {
    std::ostringstream os;
    const std::vector<std::string> cols{"s", "v"};
    write_csv_header(os, cols);
    const std::vector<double> row{0.1, 1.0 / 3.0};
    write_csv_row(os, row);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "s,v");
    std::getline(in, line);
    const auto comma = line.find(',');
    EXPECT_EQ(parse_real(line.substr(0, comma)), 0.1);
    EXPECT_EQ(parse_real(line.substr(comma + 1)), 1.0 / 3.0);
    EXPECT_EQ(os.str().find('\r'), std::string::npos);
}

TEST(Csv, BadNumbers) {
    for (const char* s : {"", "1.0x", "abc", "1,0"}) expect_error(ErrorCode::ParseError, [&] { parse_real(s); });
}

TEST(InitList, ParsesIndexedOffsets) {
    EXPECT_EQ(parse_indexed_list("l1=0,l2=1", 'l'), (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(parse_indexed_list("l2=3, l1=-0.5", 'l'), (std::vector<double>{-0.5, 3.0}));
    for (const char* s : {"l1=0,l1=1", "l2=1", "x1=0", "l0=1", "l1=", "l1=0,"})
        expect_error(ErrorCode::ParseError, [&] { parse_indexed_list(s, 'l'); });
}
