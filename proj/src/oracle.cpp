#include "sdpls/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sdpls {

namespace {

CharacteristicState axpy(const CharacteristicState& s, double a, const CharacteristicState& d) {
    return {s.x + a * d.x, s.g + a * d.g, s.hessian + a * d.hessian};
}

void rk4(const AnalyticVelocity& v, double t, double dt, CharacteristicState& s) {
    const auto k1 = characteristic_rhs(v, t, s);
    const auto k2 = characteristic_rhs(v, t + 0.5 * dt, axpy(s, 0.5 * dt, k1));
    const auto k3 = characteristic_rhs(v, t + 0.5 * dt, axpy(s, 0.5 * dt, k2));
    const auto k4 = characteristic_rhs(v, t + dt, axpy(s, dt, k3));
    s.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.g += dt / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
    s.hessian += dt / 6.0 * (k1.hessian + 2.0 * k2.hessian + 2.0 * k3.hessian + k4.hessian);
}

ReferenceSample make_sample(double t, const CharacteristicState& s) {
    const double norm = s.g.norm();
    if (!(norm > 1e-300) || !std::isfinite(norm)) {
        throw OracleError("gradient norm collapsed along the reference characteristic");
    }
    ReferenceSample out;
    out.t = t;
    out.x = s.x;
    out.n = s.g / norm;
    out.grad_norm_standard = norm;
    out.hessian = s.hessian;
    out.theta_deg = std::acos(std::clamp(out.n[1], -1.0, 1.0)) * 180.0 / std::numbers::pi;
    out.kappa = -(s.hessian.trace() - out.n.dot(s.hessian * out.n)) / norm;
    return out;
}

}  // namespace

CharacteristicState characteristic_rhs(const AnalyticVelocity& v, double t,
                                       const CharacteristicState& s) {
    const Mat3 jac = v.eval_gradient(t, s.x);
    const VelocityHessian hv = v.eval_hessian(t, s.x);
    CharacteristicState d;
    d.x = v.eval(t, s.x);
    d.g = -jac.transpose() * s.g;
    d.hessian = -jac.transpose() * s.hessian - s.hessian * jac;
    for (int k = 0; k < 3; ++k) d.hessian -= s.g[k] * hv[k];
    return d;
}

ReferenceTrajectory integrate_reference(const AnalyticVelocity& v, const Vec3& x0,
                                        const Vec3& n0, const Mat3& sdf_hessian, double grad0,
                                        std::span<const double> times, double dt_ref) {
    if (!(dt_ref > 0.0)) throw std::invalid_argument("dt_ref must be positive");
    if (std::abs(n0.norm() - 1.0) > 1e-12) throw std::invalid_argument("n0 must be a unit vector");
    if (!(grad0 > 0.0)) throw std::invalid_argument("grad0 must be positive");
    if (!times.empty() && times.front() < 0.0) throw std::invalid_argument("negative sample time");

    CharacteristicState s{x0, grad0 * n0, grad0 * sdf_hessian};
    double t = 0.0;
    ReferenceTrajectory traj;
    traj.samples.reserve(times.size());
    for (double target : times) {
        if (!traj.samples.empty() && !(target > traj.samples.back().t)) {
            throw std::invalid_argument("reference sample times must be strictly increasing");
        }
        const double span = target - t;
        if (span > 0.0) {
            const auto substeps = static_cast<long>(std::ceil(span / dt_ref - 1e-9));
            const double dt = span / static_cast<double>(substeps);
            for (long m = 0; m < substeps; ++m) rk4(v, t + m * dt, dt, s);
            t = target;
        }
        traj.samples.push_back(make_sample(t, s));
    }
    return traj;
}

ReferenceTrajectory integrate_reference(const AnalyticVelocity& v, const Vec3& x0,
                                        const Vec3& n0, const Mat3& sdf_hessian, double grad0,
                                        double t_end, double dt_ref) {
    if (!(dt_ref > 0.0)) throw std::invalid_argument("dt_ref must be positive");
    std::vector<double> times;
    const auto n = static_cast<long>(std::floor(t_end / dt_ref + 1e-9));
    for (long m = 0; m <= n; ++m) times.push_back(m * dt_ref);
    if (t_end - times.back() > 1e-12 * std::max(1.0, t_end)) times.push_back(t_end);
    else times.back() = t_end;
    return integrate_reference(v, x0, n0, sdf_hessian, grad0, times, dt_ref);
}

Mat3 initial_hessian_sphere(const Vec3& center, const Vec3& x0, int dim) {
    Vec3 d = x0 - center;
    if (dim == 2) d[2] = 0.0;
    const double r = d.norm();
    if (!(r > 0.0)) throw std::invalid_argument("hessian of the distance is undefined at the center");
    const Vec3 e = d / r;
    Mat3 proj = Mat3::Identity();
    if (dim == 2) proj(2, 2) = 0.0;
    return (proj - e * e.transpose()) / r;
}

}  // namespace sdpls
