#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "curvekit/curve.hpp"
#include "curvekit/error.hpp"

namespace curvekit::test {

template <typename F>
void expect_error(ErrorCode code, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

inline VecN vec(std::initializer_list<double> v) {
    VecN out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

inline std::vector<VecN> standard_frame(int n, int d = 0) {
    if (d == 0) d = n;
    std::vector<VecN> f;
    for (int i = 0; i < d; ++i) f.push_back(VecN::Unit(n, i));
    return f;
}

inline CurvatureProgram program(int d, std::vector<std::string> exprs) {
    CurvatureProgram p;
    p.d = d;
    for (const auto& e : exprs) p.kappas.push_back(Expression::parse(e));
    return p;
}

}  // namespace curvekit::test
