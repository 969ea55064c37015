#include "sdpls/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sdpls {

namespace {

constexpr double pi = std::numbers::pi;

VelocityHessian zero_hessian() { return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}; }

[[noreturn]] void unknown_param(std::string_view field, const std::string& name) {
    std::ostringstream msg;
    msg << "unknown parameter '" << name << "' for velocity field " << field;
    throw std::invalid_argument(msg.str());
}

template <class Field>
struct FieldTraits;

template <>
struct FieldTraits<VortexBox> {
    static constexpr std::string_view id = "vortex_box";
};
template <>
struct FieldTraits<TimePeriodic> {
    static constexpr std::string_view id = "time_periodic";
};
template <>
struct FieldTraits<Linear3d> {
    static constexpr std::string_view id = "linear3d";
};
template <>
struct FieldTraits<Translation> {
    static constexpr std::string_view id = "translation";
};
template <>
struct FieldTraits<Rotation2d> {
    static constexpr std::string_view id = "rotation2d";
};

}  // namespace

// ---------------------------------------------------------------- VortexBox

Vec3 VortexBox::eval(double, const Vec3& x) const {
    const double sx = std::sin(pi * x[0]), cx = std::cos(pi * x[0]);
    const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
    return {-v0 * sx * cy, v0 * cx * sy, 0.0};
}

Mat3 VortexBox::jacobian(double, const Vec3& x) const {
    const double sx = std::sin(pi * x[0]), cx = std::cos(pi * x[0]);
    const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
    const double a = v0 * pi;
    Mat3 j = Mat3::Zero();
    j(0, 0) = -a * cx * cy;
    j(0, 1) = a * sx * sy;
    j(1, 0) = -a * sx * sy;
    j(1, 1) = a * cx * cy;
    return j;
}

VelocityHessian VortexBox::hessian(double, const Vec3& x) const {
    const double sx = std::sin(pi * x[0]), cx = std::cos(pi * x[0]);
    const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
    const double b = v0 * pi * pi;
    VelocityHessian h = zero_hessian();
    h[0](0, 0) = b * sx * cy;
    h[0](0, 1) = h[0](1, 0) = b * cx * sy;
    h[0](1, 1) = b * sx * cy;
    h[1](0, 0) = -b * cx * sy;
    h[1](0, 1) = h[1](1, 0) = -b * sx * cy;
    h[1](1, 1) = -b * cx * sy;
    return h;
}

// ------------------------------------------------------------- TimePeriodic

Vec3 TimePeriodic::eval(double t, const Vec3& x) const {
    const double s = std::cos(pi * t / tau);
    return {s * (v0 + c1 * x[0] + c2 * x[1]), -s * c1 * x[1], 0.0};
}

Mat3 TimePeriodic::jacobian(double t, const Vec3&) const {
    const double s = std::cos(pi * t / tau);
    Mat3 j = Mat3::Zero();
    j(0, 0) = s * c1;
    j(0, 1) = s * c2;
    j(1, 1) = -s * c1;
    return j;
}

VelocityHessian TimePeriodic::hessian(double, const Vec3&) const { return zero_hessian(); }

// ----------------------------------------------------------------- Linear3d

Vec3 Linear3d::eval(double, const Vec3& x) const {
    return {v1_0 + c1 * x[0] + c2 * x[1] + c3 * x[2], -(c1 + c6) * x[1],
            v3_0 + c4 * x[0] + c5 * x[1] + c6 * x[2]};
}

Mat3 Linear3d::jacobian(double, const Vec3&) const {
    Mat3 j;
    j << c1, c2, c3, 0.0, -(c1 + c6), 0.0, c4, c5, c6;
    return j;
}

VelocityHessian Linear3d::hessian(double, const Vec3&) const { return zero_hessian(); }

// -------------------------------------------------------------- Translation

Vec3 Translation::eval(double, const Vec3&) const { return c; }
Mat3 Translation::jacobian(double, const Vec3&) const { return Mat3::Zero(); }
VelocityHessian Translation::hessian(double, const Vec3&) const { return zero_hessian(); }

// --------------------------------------------------------------- Rotation2d

Vec3 Rotation2d::eval(double, const Vec3& x) const {
    return {-omega * (x[1] - yc), omega * (x[0] - xc), 0.0};
}

Mat3 Rotation2d::jacobian(double, const Vec3&) const {
    Mat3 j = Mat3::Zero();
    j(0, 1) = -omega;
    j(1, 0) = omega;
    return j;
}

VelocityHessian Rotation2d::hessian(double, const Vec3&) const { return zero_hessian(); }

// -------------------------------------------------------- AnalyticVelocity

AnalyticVelocity::AnalyticVelocity(Variant field, int dim) : field_(std::move(field)), dim_(dim) {
    const bool planar = std::holds_alternative<VortexBox>(field_) ||
                        std::holds_alternative<TimePeriodic>(field_) ||
                        std::holds_alternative<Rotation2d>(field_);
    if (dim != 2 && dim != 3) throw std::invalid_argument("velocity dimension must be 2 or 3");
    if (planar && dim != 2) {
        throw std::invalid_argument("velocity field " + id() + " is two-dimensional");
    }
    if (std::holds_alternative<Linear3d>(field_) && dim != 3) {
        throw std::invalid_argument("velocity field linear3d is three-dimensional");
    }
    if (auto* tr = std::get_if<Translation>(&field_); tr && dim == 2 && tr->c[2] != 0.0) {
        throw std::invalid_argument("2D translation must have cz = 0");
    }
}

AnalyticVelocity AnalyticVelocity::from_id(std::string_view id, int dim, const ParamMap& params) {
    auto bind = [&](const std::map<std::string, double*>& slots) {
        for (const auto& [name, value] : params) {
            auto it = slots.find(name);
            if (it == slots.end()) unknown_param(id, name);
            *it->second = value;
        }
    };
    if (id == "vortex_box") {
        VortexBox f;
        bind({{"v0", &f.v0}});
        return {f, dim};
    }
    if (id == "time_periodic") {
        TimePeriodic f;
        bind({{"v0", &f.v0}, {"c1", &f.c1}, {"c2", &f.c2}, {"tau", &f.tau}});
        if (!(f.tau > 0.0)) throw std::invalid_argument("time_periodic: tau must be positive");
        return {f, dim};
    }
    if (id == "linear3d") {
        Linear3d f;
        bind({{"v1_0", &f.v1_0}, {"v3_0", &f.v3_0}, {"c1", &f.c1}, {"c2", &f.c2},
              {"c3", &f.c3}, {"c4", &f.c4}, {"c5", &f.c5}, {"c6", &f.c6}});
        return {f, dim};
    }
    if (id == "translation") {
        Translation f;
        bind({{"cx", &f.c[0]}, {"cy", &f.c[1]}, {"cz", &f.c[2]}});
        return {f, dim};
    }
    if (id == "rotation2d") {
        Rotation2d f;
        bind({{"omega", &f.omega}, {"xc", &f.xc}, {"yc", &f.yc}});
        return {f, dim};
    }
    throw UnknownFieldError("unknown velocity field id '" + std::string(id) + "'");
}

const std::vector<std::string>& AnalyticVelocity::ids() {
    static const std::vector<std::string> all{"vortex_box", "time_periodic", "linear3d",
                                              "translation", "rotation2d"};
    return all;
}

std::string AnalyticVelocity::id() const {
    return visit([](const auto& f) {
        return std::string(FieldTraits<std::decay_t<decltype(f)>>::id);
    });
}

bool AnalyticVelocity::steady() const { return !std::holds_alternative<TimePeriodic>(field_); }

bool AnalyticVelocity::wall_impermeable() const {
    return std::holds_alternative<VortexBox>(field_) ||
           std::holds_alternative<TimePeriodic>(field_) ||
           std::holds_alternative<Linear3d>(field_);
}

Vec3 AnalyticVelocity::eval(double t, const Vec3& x) const {
    return visit([&](const auto& f) { return f.eval(t, x); });
}

Mat3 AnalyticVelocity::eval_gradient(double t, const Vec3& x) const {
    return visit([&](const auto& f) { return f.jacobian(t, x); });
}

VelocityHessian AnalyticVelocity::eval_hessian(double t, const Vec3& x) const {
    return visit([&](const auto& f) { return f.hessian(t, x); });
}

// --------------------------------------------------------------- validation

ValidationSamples lattice_samples(const AnalyticVelocity& v, int n_per_axis) {
    Vec3 lo = Vec3::Zero();
    Vec3 hi(1.0, 1.0, 1.0);
    const std::string id = v.id();
    if (id == "vortex_box" || id == "time_periodic") hi = Vec3(1.0, 0.5, 0.0);
    if (id == "linear3d") hi = Vec3(2.0, 0.6, 2.0);
    if (v.dim() == 2) hi[2] = 0.0;

    ValidationSamples s;
    for (int m = 0; m <= 10; ++m) s.times.push_back(0.1 * m);
    v.visit([&](const auto& f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, TimePeriodic>) {
            s.times.push_back(0.5 * f.tau);
        }
    });

    const int n = std::max(n_per_axis, 2);
    const int nz = v.dim() == 3 ? n : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Vec3 x;
                x[0] = lo[0] + (hi[0] - lo[0]) * i / (n - 1);
                x[1] = lo[1] + (hi[1] - lo[1]) * j / (n - 1);
                x[2] = nz > 1 ? lo[2] + (hi[2] - lo[2]) * k / (n - 1) : 0.0;
                s.points.push_back(x);
            }
    return s;
}

FieldValidationReport validate(const AnalyticVelocity& v, const ValidationSamples& samples) {
    if (samples.times.empty() || samples.points.empty()) {
        throw std::invalid_argument("validation sample set is empty");
    }
    FieldValidationReport report;
    for (double t : samples.times) {
        for (const Vec3& x : samples.points) {
            report.max_abs_divergence =
                std::max(report.max_abs_divergence, std::abs(v.eval_gradient(t, x).trace()));
            Vec3 wall = x;
            wall[1] = 0.0;
            report.max_abs_wall_normal_velocity =
                std::max(report.max_abs_wall_normal_velocity, std::abs(v.eval(t, wall)[1]));
        }
    }
    return report;
}

}  // namespace sdpls
