#pragma once

#include <span>
#include <vector>

#include "curvekit/curve.hpp"
#include "curvekit/frenet_jet.hpp"

namespace curvekit {

/// Grid density from CURVEKIT_GRID, else 4096.
int default_grid();

/// A unit-speed curve sampled on a uniform arclength grid, with the Frenet
/// jet (frame plus curvature series) at every node.
struct BasePath {
    CurvePtr curve;
    int d = 0;
    double h = 0.0;
    std::vector<double> grid;
    std::vector<FrenetJet> jets;

    std::size_t size() const { return grid.size(); }
    int dim() const { return jets.empty() ? 0 : jets.front().dim(); }
    /// Node index of s; GridMismatch when s is not a node.
    std::size_t node(double s) const;
};

BasePath sample_base(CurvePtr curve, int d, int korder, int steps = default_grid());

/// Fourth-order differences on a uniform grid, one-sided at the ends.
std::vector<double> fd_derivative(std::span<const double> f, double h);
std::vector<VecN> fd_derivative(std::span<const VecN> f, double h);

}  // namespace curvekit
