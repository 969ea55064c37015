#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sdpls/fields.hpp"
#include "sdpls/grid.hpp"
#include "sdpls/stencils.hpp"

using namespace sdpls;

namespace {

Grid unit_grid(int n) { return Grid(2, Vec3(0, 0, 0), Vec3(1, 0.5, 0), {n, n / 2, 1}); }

double order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

}  // namespace

TEST_CASE("grid spacing for the bundled domains") {
    const std::vector<double> o2{0, 0}, e2{1, 0.5};
    const std::vector<int> c2{100, 50};
    CHECK(make_grid(2, o2, e2, c2).spacing() == doctest::Approx(0.01).epsilon(1e-14));

    const std::vector<double> o3{0, 0, 0}, e3{2, 0.6, 2};
    const std::vector<int> c3{50, 15, 50};
    const Grid g3 = make_grid(3, o3, e3, c3);
    CHECK(g3.spacing() == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(g3.size() == 50u * 15u * 50u);
}

TEST_CASE("grid rejects inconsistent input") {
    const std::vector<double> o2{0, 0}, e2{1, 0.5};
    const std::vector<int> mismatch{100, 40};
    CHECK_THROWS_AS(make_grid(2, o2, e2, mismatch), std::invalid_argument);

    const std::vector<int> too_few{3, 2};
    const std::vector<double> e_small{0.3, 0.2};
    CHECK_THROWS_AS(make_grid(2, o2, e_small, too_few), std::invalid_argument);

    const std::vector<double> e_neg{-1, 0.5};
    const std::vector<int> c_ok{100, 50};
    CHECK_THROWS_AS(make_grid(2, o2, e_neg, c_ok), std::invalid_argument);

    const std::vector<double> o3{0, 0, 0};
    CHECK_THROWS_AS(make_grid(2, o3, e2, c_ok), std::invalid_argument);
    CHECK_THROWS_AS(Grid(4, Vec3::Zero(), Vec3(1, 1, 1), {10, 10, 10}), std::invalid_argument);
}

TEST_CASE("grid indexing is x-fastest") {
    const Grid g(3, Vec3::Zero(), Vec3(1, 1.25, 1.5), {4, 5, 6});
    CHECK(g.index(1, 0, 0) == 1);
    CHECK(g.index(0, 1, 0) == 4);
    CHECK(g.index(0, 0, 1) == 20);
    CHECK(g.stride(2) == 20);
    const Vec3 c = g.cell_center(0, 0, 0);
    CHECK(c[0] == doctest::Approx(0.125));
    const Vec3 f = g.lower_face_center({1, 2, 3}, 1);
    CHECK(f[1] == doctest::Approx(0.5));
    CHECK(f[0] == doctest::Approx(0.375));
}

TEST_CASE("gradient is exact for affine fields") {
    const Grid g = unit_grid(20);
    const ScalarField f = sample_field(g, [](const Vec3& x) { return 3 * x[0] - 2 * x[1]; });
    const VectorField grad = gradient(f);
    for_each_cell(g, [&](const CellIndex& c) {
        CHECK(grad.at(c)[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(grad.at(c)[1] == doctest::Approx(-2.0).epsilon(1e-12));
    });

    const Grid g3(3, Vec3::Zero(), Vec3(1, 1, 1), {6, 6, 6});
    const ScalarField f3 =
        sample_field(g3, [](const Vec3& x) { return 0.5 * x[0] + x[1] - 4 * x[2] + 1; });
    const VectorField grad3 = gradient(f3);
    for_each_cell(g3, [&](const CellIndex& c) {
        CHECK(grad3.at(c)[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(grad3.at(c)[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(grad3.at(c)[2] == doctest::Approx(-4.0).epsilon(1e-12));
    });
}

TEST_CASE("gradient is exact for quadratics including boundary layers") {
    const Grid g = unit_grid(16);
    const ScalarField f = sample_field(g, [](const Vec3& x) { return x[0] * x[0]; });
    const VectorField grad = gradient(f);
    for_each_cell(g, [&](const CellIndex& c) {
        CHECK(grad.at(c)[0] == doctest::Approx(2 * g.cell_center(c)[0]).epsilon(1e-12));
    });
}

TEST_CASE("central stencil remainder for a cubic is h squared") {
    const Grid g = unit_grid(40);
    const double h = g.spacing();
    const ScalarField f = sample_field(g, [](const Vec3& x) { return x[0] * x[0] * x[0]; });
    for (int i = 1; i < g.cells(0) - 1; ++i) {
        const double x = g.cell_center(i, 3, 0)[0];
        const double err = gradient_at(f, {i, 3, 0})[0] - 3 * x * x;
        CHECK(err == doctest::Approx(h * h).epsilon(1e-8));
    }
}

TEST_CASE("gradient of sin(pi x) converges at second order") {
    std::vector<double> errors;
    for (int n : {20, 40, 80}) {
        const Grid g = unit_grid(n);
        const ScalarField f =
            sample_field(g, [](const Vec3& x) { return std::sin(std::numbers::pi * x[0]); });
        const VectorField grad = gradient(f);
        double e = 0;
        for_each_cell(g, [&](const CellIndex& c) {
            const double exact =
                std::numbers::pi * std::cos(std::numbers::pi * g.cell_center(c)[0]);
            e = std::max(e, std::abs(grad.at(c)[0] - exact));
        });
        errors.push_back(e);
    }
    CHECK(order(errors[0], errors[1]) >= 1.9);
    CHECK(order(errors[1], errors[2]) >= 1.9);
}

TEST_CASE("curvature of circle and sphere converges on the zero contour") {
    for (int dim : {2, 3}) {
        const double R = dim == 2 ? 0.3 : 0.25;
        const Vec3 center(0.5, 0.5, dim == 3 ? 0.5 : 0.0);
        std::vector<double> errors;
        for (int n : dim == 2 ? std::vector<int>{40, 80, 160} : std::vector<int>{20, 40, 80}) {
            const Grid g(dim, Vec3::Zero(), Vec3(1, 1, dim == 3 ? 1 : 0),
                         {n, n, dim == 3 ? n : 1});
            const ScalarField phi = sphere_sdf(g, center, R);
            const ScalarField kappa = curvature(phi, 1e-12);
            double e = 0;
            for (double a : {0.1, 0.9, 1.7, 2.9, 4.4, 5.6}) {
                const Vec3 probe =
                    center + R * Vec3(std::cos(a), std::sin(a), 0) * (dim == 3 ? 1.0 : 1.0);
                const double k = interpolate_cells<double>(
                    g, probe, [&](const CellIndex& c) { return kappa.at(c); });
                e = std::max(e, std::abs(k + (dim - 1) / R));
            }
            errors.push_back(e);
        }
        CAPTURE(dim);
        CHECK(errors[2] < errors[1]);
        CHECK(errors[1] < errors[0]);
        CHECK(order(errors[0], errors[2]) / 2 >= 1.0);
    }
}

TEST_CASE("curvature of a planar interface vanishes") {
    const Grid g = unit_grid(20);
    const ScalarField f = sample_field(g, [](const Vec3& x) { return 0.6 * x[0] + 0.8 * x[1] - 0.3; });
    const ScalarField kappa = curvature(f, 1e-12);
    for (double k : kappa.values()) CHECK(std::abs(k) < 1e-10);
}

TEST_CASE("bilinear sampling") {
    // centers at multiples of h along x
    const Grid shifted(2, Vec3(-0.005, 0, 0), Vec3(1, 0.5, 0), {100, 50, 1});
    const ScalarField sq = sample_field(shifted, [](const Vec3& x) { return x[0] * x[0]; });
    CHECK(sample_bilinear(sq, Vec3(0.105, 0.25, 0)) == doctest::Approx(0.01105).epsilon(1e-12));

    const Grid g = unit_grid(100);

    const ScalarField constant(g, 4.5);
    CHECK(sample_bilinear(constant, Vec3(0.3337, 0.1234, 0)) == doctest::Approx(4.5));

    const ScalarField affine = sample_field(g, [](const Vec3& x) { return 2 * x[0] - x[1] + 1; });
    const Vec3 p(0.4321, 0.2468, 0);
    CHECK(sample_bilinear(affine, p) == doctest::Approx(2 * p[0] - p[1] + 1).epsilon(1e-12));

    const ScalarField wave =
        sample_field(g, [](const Vec3& x) { return std::sin(7 * x[0]) * std::cos(3 * x[1]); });
    for (CellIndex c : {CellIndex{0, 0, 0}, CellIndex{13, 7, 0}, CellIndex{99, 49, 0}}) {
        CHECK(sample_bilinear(wave, g.cell_center(c)) == wave.at(c));
    }
}

TEST_CASE("sphere_sdf and all_finite") {
    const Grid g = unit_grid(10);
    ScalarField phi = sphere_sdf(g, Vec3(0.5, 0.25, 0), 0.1);
    CHECK(all_finite(phi));
    const Vec3 x = g.cell_center(2, 2, 0);
    CHECK(phi.at({2, 2, 0}) == doctest::Approx((x - Vec3(0.5, 0.25, 0)).norm() - 0.1));
    phi[3] = std::nan("");
    CHECK_FALSE(all_finite(phi));
}
