#include "curvekit/path.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "curvekit/error.hpp"
#include "curvekit/frenet.hpp"

namespace curvekit {

int default_grid() {
    if (const char* env = std::getenv("CURVEKIT_GRID")) {
        const int n = std::atoi(env);
        if (n >= 8) return n;
    }
    return 4096;
}

std::size_t BasePath::node(double s) const {
    if (grid.empty()) throw Error(ErrorCode::GridMismatch, "empty grid");
    const double x = (s - grid.front()) / h;
    const double r = std::round(x);
    if (r < 0 || r >= static_cast<double>(grid.size()) || std::abs(x - r) > 1e-6)
        throw Error(ErrorCode::GridMismatch, "s = " + std::to_string(s) + " is not a grid node");
    return static_cast<std::size_t>(r);
}

BasePath sample_base(CurvePtr curve, int d, int korder, int steps) {
    if (!curve->unit_speed()) throw Error(ErrorCode::NotUnitSpeed, "base path needs an arclength-parametrized curve");
    if (steps < 8) throw Error(ErrorCode::InsufficientSamples, "grid needs at least 8 steps");
    BasePath p;
    p.curve = curve;
    p.d = d;
    const Interval dom = curve->domain();
    p.h = dom.length() / steps;
    p.grid.resize(static_cast<std::size_t>(steps) + 1);
    p.jets.reserve(p.grid.size());
    for (int i = 0; i <= steps; ++i) {
        const double s = i == steps ? dom.hi : dom.lo + i * p.h;
        p.grid[static_cast<std::size_t>(i)] = s;
        p.jets.push_back(frenet_jet(*curve, s, d, korder));
    }
    return p;
}

namespace {

template <typename T>
std::vector<T> fd_impl(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw Error(ErrorCode::InsufficientSamples, "fourth-order differences need 5 samples");
    std::vector<T> out(n);
    const double c = 1.0 / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i) out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * c;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * c;
    out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * c;
    out[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * c;
    return out;
}

}  // namespace

std::vector<double> fd_derivative(std::span<const double> f, double h) { return fd_impl(f, h); }
std::vector<VecN> fd_derivative(std::span<const VecN> f, double h) { return fd_impl(f, h); }

}  // namespace curvekit
