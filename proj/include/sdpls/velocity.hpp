#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sdpls/types.hpp"

namespace sdpls {

// Closed-form velocity fields. Each provides the value, the Jacobian
// J(i, j) = d v_i / d x_j and the second derivatives, all divergence free.

/// v = v0 (-sin(pi x) cos(pi y), cos(pi x) sin(pi y))
struct VortexBox {
    double v0 = -0.2;

    Vec3 eval(double t, const Vec3& x) const;
    Mat3 jacobian(double t, const Vec3& x) const;
    VelocityHessian hessian(double t, const Vec3& x) const;
};

/// v = cos(pi t / tau) (v0 + c1 x + c2 y, -c1 y)
struct TimePeriodic {
    double v0 = -0.2;
    double c1 = 0.1;
    double c2 = -2.0;
    double tau = 0.4;

    Vec3 eval(double t, const Vec3& x) const;
    Mat3 jacobian(double t, const Vec3& x) const;
    VelocityHessian hessian(double t, const Vec3& x) const;
};

/// Affine 3D field, incompressible and tangential to y = 0.
struct Linear3d {
    double v1_0 = 0.3;
    double v3_0 = 0.4;
    double c1 = 0.1;
    double c2 = 0.1;
    double c3 = -0.2;
    double c4 = 0.3;
    double c5 = -0.1;
    double c6 = 0.1;

    Vec3 eval(double t, const Vec3& x) const;
    Mat3 jacobian(double t, const Vec3& x) const;
    VelocityHessian hessian(double t, const Vec3& x) const;
};

/// Uniform translation by a constant vector.
struct Translation {
    Vec3 c = Vec3::Zero();

    Vec3 eval(double t, const Vec3& x) const;
    Mat3 jacobian(double t, const Vec3& x) const;
    VelocityHessian hessian(double t, const Vec3& x) const;
};

/// Rigid rotation with angular velocity omega about (xc, yc).
struct Rotation2d {
    double omega = 1.0;
    double xc = 0.5;
    double yc = 0.5;

    Vec3 eval(double t, const Vec3& x) const;
    Mat3 jacobian(double t, const Vec3& x) const;
    VelocityHessian hessian(double t, const Vec3& x) const;
};

class UnknownFieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using ParamMap = std::map<std::string, double>;

class AnalyticVelocity {
public:
    using Variant = std::variant<VortexBox, TimePeriodic, Linear3d, Translation, Rotation2d>;

    AnalyticVelocity(Variant field, int dim);

    /**
     * Builds a catalog field by id with the default parameters overridden by
     * params. Throws UnknownFieldError for an unknown id and
     * std::invalid_argument for unknown parameter names or a dimension the
     * field does not support.
     *
     * Parameter names: vortex_box {v0}; time_periodic {v0, c1, c2, tau};
     * linear3d {v1_0, v3_0, c1..c6}; translation {cx, cy, cz};
     * rotation2d {omega, xc, yc}.
     */
    static AnalyticVelocity from_id(std::string_view id, int dim, const ParamMap& params = {});

    static const std::vector<std::string>& ids();

    std::string id() const;
    int dim() const { return dim_; }

    /// True for fields without explicit time dependence.
    bool steady() const;

    /// True for the fields taken from the benchmark cases, which satisfy
    /// v_y = 0 at y = 0. Translation and rotation are test fields.
    bool wall_impermeable() const;

    Vec3 eval(double t, const Vec3& x) const;
    Mat3 eval_gradient(double t, const Vec3& x) const;
    VelocityHessian eval_hessian(double t, const Vec3& x) const;

    /// Dispatches to the concrete field; hot loops use this to avoid
    /// per-call variant dispatch.
    template <class Fn>
    decltype(auto) visit(Fn&& fn) const {
        return std::visit(std::forward<Fn>(fn), field_);
    }

private:
    Variant field_;
    int dim_;
};

struct FieldValidationReport {
    double max_abs_divergence = 0.0;
    double max_abs_wall_normal_velocity = 0.0;
};

/// Space-time points at which a field is validated. Wall samples use the
/// same (t, x) with y replaced by 0.
struct ValidationSamples {
    std::vector<double> times;
    std::vector<Vec3> points;
};

/// Deterministic n^dim lattice over the field's reference box at 11 equally
/// spaced times in [0, 1] (plus tau/2 for the time-periodic field).
ValidationSamples lattice_samples(const AnalyticVelocity& v, int n_per_axis = 50);

/// Throws std::invalid_argument for an empty sample set.
FieldValidationReport validate(const AnalyticVelocity& v, const ValidationSamples& samples);

}  // namespace sdpls
