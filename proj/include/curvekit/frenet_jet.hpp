#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "curvekit/taylor.hpp"

namespace curvekit {

using VecN = Eigen::VectorXd;

/// Frenet data of a unit-speed curve at one arclength value: position and
/// frame V_1..V_d there, plus each curvature kappa_i(s + sigma) as a series in
/// the arclength offset sigma.
///
/// This is everything the structure equations need to differentiate any field
/// written in frame coordinates, so involutes and evolutes derive their jets
/// from it instead of differencing samples.
struct FrenetJet {
    double param = 0.0;
    VecN position;
    std::vector<VecN> frame;
    std::vector<Taylor> kappas;

    int rank() const { return static_cast<int>(frame.size()); }
    int dim() const { return static_cast<int>(position.size()); }
    int kappa_order() const { return min_order(kappas); }
    /// kappa_i for 1 <= i <= rank-1.
    const Taylor& kappa(int i) const { return kappas[static_cast<std::size_t>(i - 1)]; }
    /// Ambient vector of frame coordinates a_1..a_d.
    VecN to_ambient(std::span<const double> coords) const;
};

/// Arclength derivative of the field sum a_i V_i in frame coordinates:
/// a_i' + a_{i-1} kappa_{i-1} - a_{i+1} kappa_i.
std::vector<Taylor> frame_derivative(std::span<const Taylor> coords, std::span<const Taylor> kappas);

/// Taylor coefficients (0..order) of p(s) = x(s) + sum a_i(s) V_i(s).
///
/// `coords` holds a_1..a_d as series in the arclength offset and must have
/// order >= `order`; the curvature series need order >= order-1.
std::vector<VecN> offset_expansion(const FrenetJet& base, std::span<const Taylor> coords, int order);

/// Frame-coordinate series of the derivatives p', p'', ..., p^(count) at the
/// base point (element j-1 holds p^(j)), for the same offset field as above.
std::vector<std::vector<Taylor>> offset_derivative_coords(const FrenetJet& base,
                                                          std::span<const Taylor> coords, int count);

}  // namespace curvekit
