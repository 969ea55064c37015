#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sdpls/velocity.hpp"

using namespace sdpls;

namespace {

constexpr double pi = std::numbers::pi;

AnalyticVelocity catalog(const std::string& id) {
    if (id == "linear3d") return AnalyticVelocity::from_id(id, 3);
    if (id == "translation") return AnalyticVelocity::from_id(id, 2, {{"cx", 0.3}, {"cy", -0.1}});
    if (id == "rotation2d") return AnalyticVelocity::from_id(id, 2, {{"omega", 2 * pi}});
    return AnalyticVelocity::from_id(id, 2);
}

Vec3 random_point(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec3 x(u(rng), 0.5 * u(rng), 0.0);
    if (dim == 3) x = Vec3(2 * u(rng), 0.6 * u(rng), 2 * u(rng));
    return x;
}

bool close(double fd, double exact) {
    return std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact));
}

}  // namespace

TEST_CASE("finite differences agree with analytic derivatives") {
    const double step = 1e-5;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> time(0.0, 1.0);
    for (const std::string& id : AnalyticVelocity::ids()) {
        const AnalyticVelocity v = catalog(id);
        CAPTURE(id);
        for (int s = 0; s < 100; ++s) {
            const double t = time(rng);
            const Vec3 x = random_point(rng, v.dim());
            const Mat3 jac = v.eval_gradient(t, x);
            const VelocityHessian hess = v.eval_hessian(t, x);
            for (int a = 0; a < v.dim(); ++a) {
                Vec3 dx = Vec3::Zero();
                dx[a] = step;
                const Vec3 dv = (v.eval(t, x + dx) - v.eval(t, x - dx)) / (2 * step);
                const Mat3 dj =
                    (v.eval_gradient(t, x + dx) - v.eval_gradient(t, x - dx)) / (2 * step);
                for (int k = 0; k < v.dim(); ++k) {
                    // jac(k, a) = d v_k / d x_a
                    CHECK(close(dv[k], jac(k, a)));
                    for (int b = 0; b < v.dim(); ++b) CHECK(close(dj(k, b), hess[k](b, a)));
                }
            }
        }
    }
}

TEST_CASE("catalog fields are divergence free") {
    std::mt19937_64 rng(7);
    for (const std::string& id : AnalyticVelocity::ids()) {
        const AnalyticVelocity v = catalog(id);
        for (int s = 0; s < 200; ++s) {
            const Vec3 x = random_point(rng, v.dim());
            CHECK(std::abs(v.eval_gradient(0.01 * s, x).trace()) <= 1e-12);
        }
    }
}

TEST_CASE("paper fields do not cross the wall") {
    std::mt19937_64 rng(11);
    for (const std::string& id : {"vortex_box", "time_periodic", "linear3d"}) {
        const AnalyticVelocity v = catalog(id);
        CHECK(v.wall_impermeable());
        for (int s = 0; s < 200; ++s) {
            Vec3 x = random_point(rng, v.dim());
            x[1] = 0.0;
            CHECK(std::abs(v.eval(0.013 * s, x)[1]) <= 1e-14);
        }
    }
    CHECK_FALSE(catalog("rotation2d").wall_impermeable());
}

TEST_CASE("jacobian examples") {
    const AnalyticVelocity lin = AnalyticVelocity::from_id("linear3d", 3);
    const Mat3 a = lin.eval_gradient(0.0, Vec3(1.0, 0.3, 0.7));
    Mat3 expected;
    expected << 0.1, 0.1, -0.2, 0.0, -0.2, 0.0, 0.3, -0.1, 0.1;
    CHECK((a - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.trace() == doctest::Approx(0.0));

    const AnalyticVelocity rot = AnalyticVelocity::from_id("rotation2d", 2, {{"omega", 1.5}});
    const Mat3 r = rot.eval_gradient(0.0, Vec3(0.2, 0.9, 0));
    CHECK(r(0, 1) == -1.5);
    CHECK(r(1, 0) == 1.5);
    CHECK(r(0, 0) == 0.0);
    CHECK(r(1, 1) == 0.0);

    const AnalyticVelocity vortex = AnalyticVelocity::from_id("vortex_box", 2);
    const Mat3 j = vortex.eval_gradient(0.0, Vec3::Zero());
    CHECK(j(0, 0) == doctest::Approx(0.2 * pi).epsilon(1e-15));
    CHECK(j(1, 1) == doctest::Approx(-0.2 * pi).epsilon(1e-15));
    CHECK(j(0, 1) == 0.0);
    CHECK(j(1, 0) == 0.0);
}

TEST_CASE("hessian examples") {
    const AnalyticVelocity lin = AnalyticVelocity::from_id("linear3d", 3);
    const AnalyticVelocity tr = AnalyticVelocity::from_id("translation", 3, {{"cx", 1}});
    for (const auto* v : {&lin, &tr}) {
        for (const Mat3& h : v->eval_hessian(0.4, Vec3(0.3, 0.2, 0.1))) CHECK(h.isZero(0.0));
    }
    const AnalyticVelocity vortex = AnalyticVelocity::from_id("vortex_box", 2);
    const Vec3 x(0.3, 0.15, 0);
    const double expected = -0.2 * pi * pi * std::sin(pi * x[0]) * std::cos(pi * x[1]);
    CHECK(vortex.eval_hessian(0, x)[0](0, 0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("time periodic field stops at half period") {
    const AnalyticVelocity v = AnalyticVelocity::from_id("time_periodic", 2);
    CHECK_FALSE(v.steady());
    CHECK(v.eval(0.2, Vec3(0.4, 0.3, 0)).norm() < 1e-16);
    ValidationSamples s;
    s.times = {0.2};
    s.points = {Vec3(0.1, 0.1, 0), Vec3(0.9, 0.4, 0)};
    const FieldValidationReport r = validate(v, s);
    CHECK(r.max_abs_divergence < 1e-16);
    CHECK(r.max_abs_wall_normal_velocity < 1e-16);
}

TEST_CASE("lattice validation of the paper fields") {
    for (const std::string& id : {"vortex_box", "time_periodic", "linear3d"}) {
        const AnalyticVelocity v = catalog(id);
        const FieldValidationReport r = validate(v, lattice_samples(v, id == "linear3d" ? 12 : 50));
        CAPTURE(id);
        CHECK(r.max_abs_divergence <= 1e-12);
        CHECK(r.max_abs_wall_normal_velocity <= 1e-12);
    }
    CHECK_THROWS_AS(validate(catalog("vortex_box"), ValidationSamples{}), std::invalid_argument);
}

TEST_CASE("field construction errors") {
    CHECK_THROWS_AS(AnalyticVelocity::from_id("hurricane", 2), UnknownFieldError);
    CHECK_THROWS_AS(AnalyticVelocity::from_id("vortex_box", 2, {{"speed", 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(AnalyticVelocity::from_id("linear3d", 2), std::invalid_argument);
    CHECK_THROWS_AS(AnalyticVelocity::from_id("vortex_box", 3), std::invalid_argument);
    const AnalyticVelocity v = AnalyticVelocity::from_id("vortex_box", 2, {{"v0", -0.5}});
    CHECK(v.id() == "vortex_box");
    CHECK(v.eval(0, Vec3(0.5, 0, 0))[0] == doctest::Approx(0.5));
}
