#include "sdpls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace sdpls {

namespace {

double column_trace(const ScalarField& phi, int i, int k) {
    return (15.0 * phi.at({i, 0, k}) - 10.0 * phi.at({i, 1, k}) + 3.0 * phi.at({i, 2, k})) / 8.0;
}

Vec3 wall_gradient(const ScalarField& phi, const Vec3& x) {
    return wall_value<Vec3>(phi.grid(), x, [&](const CellIndex& c) { return gradient_at(phi, c); });
}

Vec3 on_wall(const Grid& g, Vec3 x) {
    x[1] = g.origin()[1];
    return x;
}

}  // namespace

double wall_trace(const ScalarField& phi, const Vec3& x) {
    const Grid& g = phi.grid();
    Vec3 p = x;
    p[1] = g.origin()[1] + 0.5 * g.spacing();
    return interpolate_cells<double>(
        g, p, [&](const CellIndex& c) { return column_trace(phi, c[0], c[2]); });
}

std::optional<Vec3> find_contact_point(const ScalarField& phi, CrossingSelector selector) {
    const Grid& g = phi.grid();
    const int nx = g.cells(0);
    std::vector<double> trace(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) trace[i] = column_trace(phi, i, 0);

    auto crossing = [&](int i) -> std::optional<Vec3> {
        const double a = trace[i];
        const double b = trace[i + 1];
        if (a == 0.0 && b == 0.0) return std::nullopt;
        if ((a < 0.0) == (b < 0.0) && a != 0.0 && b != 0.0) return std::nullopt;
        Vec3 x = g.cell_center(i, 0, 0);
        x[0] += g.spacing() * a / (a - b);
        return on_wall(g, x);
    };
    if (selector == CrossingSelector::rightmost) {
        for (int i = nx - 2; i >= 0; --i)
            if (auto x = crossing(i)) return x;
    } else {
        for (int i = 0; i + 1 < nx; ++i)
            if (auto x = crossing(i)) return x;
    }
    return std::nullopt;
}

std::optional<Vec3> find_contact_point(const ScalarField& phi, const Vec3& seed,
                                       double search_radius) {
    const Grid& g = phi.grid();
    const Vec3 origin = on_wall(g, seed);
    Vec3 dir = wall_gradient(phi, origin);
    dir[1] = 0.0;
    const double len = dir.norm();
    if (!(len > 0.0)) return std::nullopt;
    dir /= len;

    auto f = [&](double s) { return wall_trace(phi, origin + s * dir); };
    const double ds = 0.25 * g.spacing();
    const int k_max = std::max(1, static_cast<int>(std::ceil(search_radius / ds)));

    // Walk outward from the seed and take the bracket nearest to it.
    std::optional<std::pair<double, double>> bracket;
    const double f0 = f(0.0);
    if (f0 == 0.0) return origin;
    double prev_pos = f0, prev_neg = f0;
    for (int k = 1; k <= k_max && !bracket; ++k) {
        const double fp = f(k * ds);
        if ((fp < 0.0) != (prev_pos < 0.0) || fp == 0.0) {
            bracket = std::make_pair((k - 1) * ds, k * ds);
            break;
        }
        prev_pos = fp;
        const double fn = f(-k * ds);
        if ((fn < 0.0) != (prev_neg < 0.0) || fn == 0.0) {
            bracket = std::make_pair(-k * ds, -(k - 1) * ds);
            break;
        }
        prev_neg = fn;
    }
    if (!bracket) return std::nullopt;

    auto [lo, hi] = *bracket;
    double f_lo = f(lo);
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return on_wall(g, origin + 0.5 * (lo + hi) * dir);
}

double contact_angle(const ScalarField& phi, const Vec3& x, double eps) {
    const Vec3 grad = wall_gradient(phi, x);
    const double norm = grad.norm();
    if (!(norm > 1e-10)) {
        throw DegenerateGradientError("level set gradient vanishes at the contact point");
    }
    const Vec3 n = grad / (norm + eps);
    return std::acos(std::clamp(n[1], -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

double contact_curvature(const ScalarField& phi, const Vec3& x, double eps) {
    if (!(wall_gradient(phi, x).norm() > 1e-10)) {
        throw DegenerateGradientError("level set gradient vanishes at the contact point");
    }
    return wall_value<double>(phi.grid(), x,
                              [&](const CellIndex& c) { return curvature_at(phi, c, eps); });
}

double contact_grad_norm(const ScalarField& phi, const Vec3& x) {
    return wall_value<double>(phi.grid(), x,
                              [&](const CellIndex& c) { return gradient_at(phi, c).norm(); });
}

ContactRecord measure_contact(const ScalarField& phi, double t, const Vec3& x, double eps) {
    ContactRecord rec;
    rec.t = t;
    rec.x = on_wall(phi.grid(), x);
    rec.theta_deg = contact_angle(phi, rec.x, eps);
    rec.kappa = contact_curvature(phi, rec.x, eps);
    rec.grad_norm = contact_grad_norm(phi, rec.x);
    return rec;
}

double max_sdf_deviation(std::span<const ContactRecord> records) {
    if (records.empty()) throw std::invalid_argument("no contact records");
    double dev = 0.0;
    for (const auto& r : records) dev = std::max(dev, std::abs(1.0 - r.grad_norm));
    return dev;
}

ContactTracker::ContactTracker(bool marked, CrossingSelector selector, const Vec3& seed)
    : marked_(marked), selector_(selector), position_(seed) {}

ContactTracker ContactTracker::select(CrossingSelector selector) {
    return ContactTracker(false, selector, Vec3::Zero());
}

ContactTracker ContactTracker::marked(const Vec3& seed) {
    return ContactTracker(true, CrossingSelector::rightmost, seed);
}

std::optional<Vec3> ContactTracker::locate(const ScalarField& phi, const AnalyticVelocity& v,
                                           double t_prev, double t) {
    if (!marked_) return find_contact_point(phi, selector_);

    const Grid& g = phi.grid();
    Vec3 predicted = position_;
    if (initialized_ && t > t_prev) {
        // Classical RK4 along the wall; the wall-normal component vanishes
        // for impermeable fields and is dropped otherwise.
        const int substeps = 4;
        const double dt = (t - t_prev) / substeps;
        double s = t_prev;
        for (int m = 0; m < substeps; ++m, s += dt) {
            const Vec3 k1 = v.eval(s, predicted);
            const Vec3 k2 = v.eval(s + 0.5 * dt, predicted + 0.5 * dt * k1);
            const Vec3 k3 = v.eval(s + 0.5 * dt, predicted + 0.5 * dt * k2);
            const Vec3 k4 = v.eval(s + dt, predicted + dt * k3);
            predicted += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            predicted = on_wall(g, predicted);
        }
    }
    auto found = find_contact_point(phi, predicted, 3.0 * g.spacing());
    if (found) {
        position_ = *found;
        initialized_ = true;
    }
    return found;
}

}  // namespace sdpls
