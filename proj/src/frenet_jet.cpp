#include "curvekit/frenet_jet.hpp"

#include <algorithm>

namespace curvekit {

VecN FrenetJet::to_ambient(std::span<const double> coords) const {
    VecN v = VecN::Zero(dim());
    for (std::size_t i = 0; i < coords.size() && i < frame.size(); ++i) v += coords[i] * frame[i];
    return v;
}

std::vector<Taylor> frame_derivative(std::span<const Taylor> coords, std::span<const Taylor> kappas) {
    const std::size_t d = coords.size();
    std::vector<Taylor> out;
    out.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        Taylor t = coords[j].differentiated();
        if (j > 0) t += coords[j - 1] * kappas[j - 1];
        if (j + 1 < d) t -= coords[j + 1] * kappas[j];
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<std::vector<Taylor>> offset_derivative_coords(const FrenetJet& base,
                                                          std::span<const Taylor> coords, int count) {
    std::vector<std::vector<Taylor>> out;
    if (count <= 0) return out;
    std::vector<Taylor> b = frame_derivative(coords, base.kappas);
    b[0] += 1.0;  // x' = V_1
    out.push_back(b);
    for (int j = 2; j <= count; ++j) {
        b = frame_derivative(b, base.kappas);
        out.push_back(b);
    }
    return out;
}

std::vector<VecN> offset_expansion(const FrenetJet& base, std::span<const Taylor> coords, int order) {
    std::vector<VecN> coeffs;
    coeffs.reserve(static_cast<std::size_t>(order) + 1);
    std::vector<double> values(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) values[i] = coords[i].value();
    coeffs.push_back(base.position + base.to_ambient(values));
    const auto derivs = offset_derivative_coords(base, coords, order);
    double factorial = 1.0;
    for (int j = 1; j <= order; ++j) {
        factorial *= j;
        const auto& b = derivs[static_cast<std::size_t>(j - 1)];
        for (std::size_t i = 0; i < b.size(); ++i) values[i] = b[i].value();
        coeffs.push_back(base.to_ambient(values) / factorial);
    }
    return coeffs;
}

}  // namespace curvekit
