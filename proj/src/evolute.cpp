#include "curvekit/evolute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvekit/error.hpp"

namespace curvekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZero = 1e-8;

int sgn(double x) { return x < 0.0 ? -1 : 1; }

void check_kappas(const FrenetJet& jet, int upto) {
    for (int i = 1; i <= upto; ++i)
        if (std::abs(jet.kappa(i).value()) < kZero)
            throw Error(ErrorCode::CurvatureZero, "kappa_" + std::to_string(i) + " vanishes at s = " +
                                                      std::to_string(jet.param));
}

// rho, c_2 = rho'/kappa_2 and c_3 = (rho kappa_2 + c_2')/kappa_3 written out
// from rho alone.
struct Explicit {
    Taylor rho, c2, c3;
};

Explicit explicit_focal(const FrenetJet& jet) {
    const int d = jet.rank();
    Explicit e{1.0 / jet.kappa(1), Taylor(0), Taylor(0)};
    e.c2 = e.rho.differentiated() / jet.kappa(2);
    if (d >= 4) e.c3 = (e.rho * jet.kappa(2) + e.c2.differentiated()) / jet.kappa(3);
    return e;
}

void require_dim34(const FrenetJet& jet) {
    const int d = jet.rank();
    if (d != 3 && d != 4) throw Error(ErrorCode::CaseUnsupported, "explicit evolute formulas exist in E^3 and E^4");
    if (jet.kappa_order() < d - 1) throw Error(ErrorCode::JetTooShort, "explicit formulas need kappa order >= d-1");
    check_kappas(jet, d - 1);
}

}  // namespace

std::size_t FocalPath::singular_count() const {
    return static_cast<std::size_t>(std::count(singular.begin(), singular.end(), char{1}));
}

int focal_korder(int m) { return 2 * m + 1; }

std::vector<Taylor> focal_series(const FrenetJet& jet, int m) {
    if (m < 1 || jet.rank() < m + 1)
        throw Error(ErrorCode::OrderExceedsRank, "focal curvatures need rank m+1 = " + std::to_string(m + 1));
    if (jet.kappa_order() < m) throw Error(ErrorCode::JetTooShort, "focal recursion needs kappa order >= m");
    std::vector<Taylor> c;
    c.reserve(static_cast<std::size_t>(m));
    c.push_back(1.0 / jet.kappa(1));
    if (m >= 2) c.push_back(c[0].differentiated() / jet.kappa(2));
    for (int i = 2; i <= m - 1; ++i) {
        const Taylor& prev = c[static_cast<std::size_t>(i - 2)];
        const Taylor& cur = c[static_cast<std::size_t>(i - 1)];
        c.push_back((prev * jet.kappa(i) + cur.differentiated()) / jet.kappa(i + 1));
    }
    return c;
}

namespace {

Taylor drive_series(const std::vector<Taylor>& c, const FrenetJet& jet, int m) {
    Taylor d = c.back().differentiated();
    if (m >= 2) d += c[static_cast<std::size_t>(m - 2)] * jet.kappa(m);
    return d;
}

void finish_row(FocalPath& f, std::size_t i) {
    double r2 = 0.0;
    for (double c : f.cs[i]) r2 += c * c;
    f.radius[i] = std::sqrt(r2);
    f.rho[i] = f.cs[i][0];
}

}  // namespace

FocalPath focal_curvatures(const BasePath& base, int m, FocalMethod method) {
    if (base.dim() != m + 1) throw Error(ErrorCode::DimensionMismatch, "evolute needs ambient dimension m+1");
    if (base.d < m + 1) throw Error(ErrorCode::OrderExceedsRank, "base rank below m+1");
    const std::size_t n = base.size();
    const auto mm = static_cast<std::size_t>(m);
    FocalPath f;
    f.m = m;
    f.method = method;
    f.grid = base.grid;
    f.cs.assign(n, std::vector<double>(mm, kNaN));
    f.dcs.assign(n, std::vector<double>(mm, kNaN));
    f.rho.assign(n, kNaN);
    f.radius.assign(n, kNaN);
    f.drive.assign(n, kNaN);
    f.singular.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 1; a <= m; ++a)
            if (std::abs(base.jets[i].kappa(a).value()) < kZero) f.singular[i] = 1;
    if (f.singular_count() == n) throw Error(ErrorCode::CurvatureZero, "a curvature vanishes at every node");

    if (method == FocalMethod::Jets) {
        f.series.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (f.singular[i]) continue;
            const FrenetJet& j = base.jets[i];
            std::vector<Taylor> c = focal_series(j, m);
            for (std::size_t a = 0; a < mm; ++a) {
                f.cs[i][a] = c[a].value();
                f.dcs[i][a] = c[a].derivative(1);
            }
            f.drive[i] = drive_series(c, j, m).value();
            finish_row(f, i);
            f.series[i] = std::move(c);
        }
        return f;
    }

    std::vector<double> kap(n);
    std::vector<double> col(n), prev(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) col[i] = 1.0 / base.jets[i].kappa(1).value();
    for (int a = 1; a <= m; ++a) {
        const std::vector<double> dcol = fd_derivative(col, base.h);
        for (std::size_t i = 0; i < n; ++i) {
            f.cs[i][static_cast<std::size_t>(a - 1)] = col[i];
            f.dcs[i][static_cast<std::size_t>(a - 1)] = dcol[i];
        }
        if (a == m) {
            for (std::size_t i = 0; i < n; ++i) {
                const double km = m >= 2 ? base.jets[i].kappa(m).value() : 0.0;
                f.drive[i] = prev[i] * km + dcol[i];
            }
            break;
        }
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            const FrenetJet& j = base.jets[i];
            next[i] = (prev[i] * (a >= 2 ? j.kappa(a).value() : 0.0) + dcol[i]) / j.kappa(a + 1).value();
        }
        prev = col;
        col = std::move(next);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (f.singular[i]) {
            std::fill(f.cs[i].begin(), f.cs[i].end(), kNaN);
            std::fill(f.dcs[i].begin(), f.dcs[i].end(), kNaN);
            f.drive[i] = kNaN;
            continue;
        }
        finish_row(f, i);
    }
    return f;
}

SignData sign_data(const BasePath& base, const FocalPath& focal) {
    if (focal.size() != base.size()) throw Error(ErrorCode::GridMismatch, "focal path and base differ in length");
    const int m = focal.m;
    SignData s;
    s.epsilon.resize(focal.size());
    s.delta.resize(focal.size());
    int last_eps = 0, last_km = 0;
    std::vector<int> last_delta;
    for (std::size_t i = 0; i < focal.size(); ++i) {
        const double dr = focal.drive[i];
        const int eps = std::isnan(dr) || dr == 0.0 ? 1 : sgn(dr);
        const int km = sgn(base.jets[i].kappa(m).value());
        s.epsilon[i] = eps;
        auto& delta = s.delta[i];
        for (int k = 1; k <= m; ++k) delta.push_back(sgn((k % 2 ? -1.0 : 1.0) * eps * km));
        if (i > 0) {
            const bool flip = eps != last_eps || km != last_km;
            if (flip) ++s.flips;
            if (!flip && delta != last_delta)
                throw Error(ErrorCode::CurvatureSignViolation, "delta changed without an epsilon or kappa_m flip");
        }
        last_eps = eps;
        last_km = km;
        last_delta = delta;
    }
    return s;
}

namespace {

std::vector<Taylor> evolute_coords(const FocalPath& f, std::size_t i, int order) {
    if (f.series.empty()) throw Error(ErrorCode::InvalidArgument, "evolute jets need the jet focal method");
    if (f.singular[i]) throw Error(ErrorCode::SingularPoint, "a base curvature vanishes at this node");
    const auto& c = f.series[i];
    if (min_order(c) < order) throw Error(ErrorCode::JetTooShort, "focal series too short for the requested order");
    std::vector<Taylor> coords;
    coords.reserve(c.size() + 1);
    coords.emplace_back(order, 0.0);
    for (const Taylor& t : c) coords.push_back(t.truncated(order));
    return coords;
}

}  // namespace

EvoluteCurve::EvoluteCurve(std::shared_ptr<const BasePath> base, FocalPath focal, bool degenerate)
    : base_(std::move(base)), focal_(std::move(focal)), degenerate_(degenerate) {
    if (focal_.size() != base_->size()) throw Error(ErrorCode::GridMismatch, "focal path and base differ in length");
    for (std::size_t i = 0; i < focal_.size(); ++i)
        if (std::abs(focal_.grid[i] - base_->grid[i]) > 1e-9 * std::max(1.0, std::abs(base_->grid[i])))
            throw Error(ErrorCode::GridMismatch, "focal grid differs from the base grid");
    if (focal_.series.empty()) throw Error(ErrorCode::InvalidArgument, "evolute jets need the jet focal method");
    const auto m = static_cast<std::size_t>(focal_.m);
    for (std::size_t i = 0; i < focal_.size(); ++i) {
        if (focal_.singular[i]) continue;
        const auto coords = evolute_coords(focal_, i, 1);
        const auto d1 = offset_derivative_coords(base_->jets[i], coords, 1).front();
        double norm2 = 0.0, off = 0.0;
        for (std::size_t a = 0; a < d1.size(); ++a) {
            const double v = d1[a].value();
            norm2 += v * v;
            if (a < m) off = std::max(off, std::abs(v));
        }
        const double dr = focal_.drive[i];
        const double err = std::max(off, std::abs(d1[m].value() - dr));
        if (err > 1e-7 * std::max(1.0, std::abs(dr)))
            throw Error(ErrorCode::RegularityLost, "evolute tangent is not drive * N_m at s = " +
                                                       std::to_string(focal_.grid[i]));
        if (std::abs(dr) > kZero) build_residual_ = std::max(build_residual_, off / std::sqrt(norm2));
    }
}

TaylorVec EvoluteCurve::expand(double s, int order) const {
    const std::size_t i = base_->node(s);
    const FrenetJet& j = base_->jets[i];
    const std::vector<Taylor> coords = evolute_coords(focal_, i, order);
    const std::vector<VecN> c = offset_expansion(j, coords, order);
    TaylorVec out(static_cast<std::size_t>(dim()), Taylor(order, 0.0));
    for (int k = 0; k <= order; ++k)
        for (int a = 0; a < dim(); ++a) out[static_cast<std::size_t>(a)][k] = c[static_cast<std::size_t>(k)](a);
    return out;
}

VecN EvoluteCurve::position(double s) const {
    const std::size_t i = base_->node(s);
    std::vector<double> coords{0.0};
    coords.insert(coords.end(), focal_.cs[i].begin(), focal_.cs[i].end());
    return base_->jets[i].position + base_->jets[i].to_ambient(coords);
}

std::vector<VecN> EvoluteCurve::node_positions() const {
    std::vector<VecN> p;
    p.reserve(base_->size());
    for (std::size_t i = 0; i < base_->size(); ++i) p.push_back(position(base_->grid[i]));
    return p;
}

std::shared_ptr<const EvoluteCurve> build_evolute(std::shared_ptr<const BasePath> base, FocalPath focal,
                                                  DegeneratePolicy policy) {
    double top = 0.0, rmax = 0.0;
    for (std::size_t i = 0; i < focal.size(); ++i) {
        if (focal.singular[i]) continue;
        top = std::max(top, std::abs(focal.drive[i]));
        rmax = std::max(rmax, focal.radius[i]);
    }
    const bool degenerate = top <= kZero * std::max(1.0, rmax);
    if (degenerate && policy == DegeneratePolicy::Strict)
        throw Error(ErrorCode::DegenerateEvolute, "drive vanishes everywhere, the evolute is one point");
    return std::make_shared<const EvoluteCurve>(std::move(base), std::move(focal), degenerate);
}

double scalar_frenet_residual(const FocalPath& f, bool printed, std::size_t* excluded) {
    const auto m = static_cast<std::size_t>(f.m);
    double worst = 0.0;
    std::size_t used = 0, skipped = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double cm = f.cs[i][m - 1];
        if (f.singular[i] || std::abs(cm) <= 1e-6 * f.radius[i]) {
            ++skipped;
            continue;
        }
        double lhs;
        if (printed) {
            lhs = f.radius[i] * f.radius[i] / (2.0 * cm);
        } else {
            double half = 0.0;  // (R_m^2)'/2
            for (std::size_t a = 0; a < m; ++a) half += f.cs[i][a] * f.dcs[i][a];
            lhs = half / cm;
        }
        worst = std::max(worst, std::abs(lhs - f.drive[i]));
        ++used;
    }
    if (excluded) *excluded = skipped;
    if (used == 0) throw Error(ErrorCode::CmZero, "c_m vanishes at every node");
    return worst;
}

Reconstruction reconstruct_curvatures(const FocalPath& f) {
    const auto m = static_cast<std::size_t>(f.m);
    Reconstruction r;
    r.kappas.assign(f.size(), std::vector<double>(m, kNaN));
    r.excluded.assign(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& c = f.cs[i];
        const auto& dc = f.dcs[i];
        bool bad = f.singular[i] != 0;
        for (std::size_t a = 1; a < m && !bad; ++a)
            if (std::abs(c[a - 1] * c[a]) < 1e-6 * f.radius[i] * f.radius[i]) bad = true;
        if (bad) {
            r.excluded[i] = 1;
            ++r.excluded_count;
            continue;
        }
        r.kappas[i][0] = 1.0 / c[0];
        double sum = 0.0;
        for (std::size_t a = 1; a < m; ++a) {
            sum += c[a - 1] * dc[a - 1];
            r.kappas[i][a] = sum / (c[a - 1] * c[a]);
        }
    }
    if (r.excluded_count == f.size()) throw Error(ErrorCode::FocalZero, "a focal curvature vanishes at every node");
    return r;
}

double explicit_drive(const FrenetJet& jet) {
    require_dim34(jet);
    const Explicit e = explicit_focal(jet);
    if (jet.rank() == 3) return (e.rho * jet.kappa(2) + e.c2.differentiated()).value();
    return e.c3.derivative(1) + (e.rho.differentiated() * jet.kappa(3) / jet.kappa(2)).value();
}

std::vector<double> explicit_evolute_kappas(const FrenetJet& jet) {
    const double dr = std::abs(explicit_drive(jet));
    if (dr < kZero) throw Error(ErrorCode::SingularPoint, "drive vanishes");
    std::vector<double> out;
    for (int i = jet.rank() - 1; i >= 1; --i) out.push_back(std::abs(jet.kappa(i).value()) / dr);
    return out;
}

std::vector<double> printed_evolute_kappas(const FrenetJet& jet) {
    require_dim34(jet);
    const double k1 = jet.kappa(1).value(), k2 = jet.kappa(2).value();
    if (jet.rank() == 3) {
        const Taylor rho = 1.0 / jet.kappa(1);
        const double den = std::abs(rho.value() * k2 * k2 + rho.derivative(1));
        return {k2 * k2 / den, k1 * k2 / den};
    }
    const double psi = std::abs(explicit_drive(jet));
    return {jet.kappa(3).value() / psi, k2 / psi, -k1 / psi};
}

PredictedApparatus predicted_evolute_apparatus(const FrenetJet& base, const FocalPath& focal, std::size_t row,
                                               const SignData& signs, double tol_sing) {
    const int m = focal.m;
    if (row >= focal.size() || row >= signs.epsilon.size()) throw Error(ErrorCode::GridMismatch, "row out of range");
    if (base.rank() < m + 1) throw Error(ErrorCode::OrderExceedsRank, "base rank below m+1");
    if (focal.singular[row]) throw Error(ErrorCode::SingularPoint, "a base curvature vanishes at this node");
    const double dr = focal.drive[row];
    if (std::abs(dr) < tol_sing) throw Error(ErrorCode::SingularPoint, "drive vanishes at this node");

    PredictedApparatus p;
    p.dim = m + 1;
    p.k = 0;
    p.app.param = base.param;
    p.app.speed = std::abs(dr);
    p.app.source = ApparatusSource::Predicted;
    const auto& V = base.frame;
    const auto& delta = signs.delta[row];
    auto& fr = p.app.frame.vectors;
    fr.push_back(static_cast<double>(signs.epsilon[row]) * V[static_cast<std::size_t>(m)]);
    for (int k = 1; k <= m; ++k)
        fr.push_back(static_cast<double>(delta[static_cast<std::size_t>(k - 1)]) * V[static_cast<std::size_t>(m - k)]);
    for (int j = 1; j <= m; ++j) p.app.kappas.push_back(std::abs(base.kappa(m + 1 - j).value()) / std::abs(dr));

    if (m + 1 == 3 || m + 1 == 4) {
        try {
            p.printed_kappas = printed_evolute_kappas(base);
        } catch (const Error&) {
            p.singular = true;
        }
        if (m + 1 == 4) p.printed_frame = Frame{{V[3], -V[2], V[1], V[0]}};
    }
    return p;
}

double spherical_test(const BasePath& base) {
    double worst = 0.0;
    for (const FrenetJet& j : base.jets) worst = std::max(worst, std::abs(explicit_drive(j)));
    return worst;
}

SphereFit sphere_decomposition4(const BasePath& base, bool printed) {
    if (base.dim() != 4 || base.d != 4) throw Error(ErrorCode::CaseUnsupported, "sphere decomposition is for E^4");
    const std::size_t n = base.size();
    std::vector<VecN> centers;
    centers.reserve(n);
    double rsum = 0.0;
    for (const FrenetJet& j : base.jets) {
        require_dim34(j);
        const Explicit e = explicit_focal(j);
        const double c1 = e.rho.value(), c2 = e.c2.value(), c3 = e.c3.value();
        const double R = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
        rsum += R;
        std::vector<double> coords{0.0, c1, c2, c3};
        if (printed) {
            // x = m - (R/k1) N1 + (R k1'/(k2 k1^2)) N2 + (R/k3) (k1'/(k2 k1^2))' N3
            const Taylor q = j.kappa(1).differentiated() / (j.kappa(2) * j.kappa(1) * j.kappa(1));
            coords = {0.0, R / j.kappa(1).value(), -R * q.value(), -R / j.kappa(3).value() * q.derivative(1)};
        }
        centers.push_back(j.position + j.to_ambient(coords));
    }
    SphereFit fit;
    fit.center = VecN::Zero(4);
    for (const VecN& c : centers) fit.center += c;
    fit.center /= static_cast<double>(n);
    fit.radius = rsum / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        fit.center_spread = std::max(fit.center_spread, (centers[i] - fit.center).norm());
        fit.radius_error =
            std::max(fit.radius_error, std::abs((base.jets[i].position - fit.center).norm() - fit.radius));
    }
    fit.residual = fit.center_spread + fit.radius_error;
    return fit;
}

}  // namespace curvekit
