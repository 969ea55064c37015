#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "sdpls/fields.hpp"

namespace sdpls {

/**
 * Second-order derivative along one axis at cell c of a cell-centered
 * quantity given by value_at(CellIndex).
 *
 * Interior cells use the central stencil (f[+1] - f[-1]) / 2h. The first
 * and last cell layer use the three-point one-sided stencils
 *   (-3 f[0] + 4 f[+1] - f[+2]) / 2h   and   (3 f[0] - 4 f[-1] + f[-2]) / 2h.
 * The result type follows value_at, so vector quantities are differentiated
 * component-wise.
 */
template <class ValueAt>
auto axis_derivative(const Grid& g, const CellIndex& c, int axis, ValueAt&& value_at) {
    // Explicit result type keeps Eigen expressions from outliving their operands.
    using Result = std::decay_t<decltype(value_at(c))>;
    const double inv2h = 0.5 / g.spacing();
    const int n = g.cells(axis);
    const int p = c[axis];
    auto shifted = [&](int offset) {
        CellIndex nb = c;
        nb[axis] += offset;
        return value_at(nb);
    };
    if (p == 0) {
        return Result((-3.0 * shifted(0) + 4.0 * shifted(1) - shifted(2)) * inv2h);
    }
    if (p == n - 1) {
        return Result((3.0 * shifted(0) - 4.0 * shifted(-1) + shifted(-2)) * inv2h);
    }
    return Result((shifted(1) - shifted(-1)) * inv2h);
}

inline Vec3 gradient_at(const ScalarField& f, const CellIndex& c) {
    const Grid& g = f.grid();
    Vec3 grad = Vec3::Zero();
    const auto value = [&](const CellIndex& nb) { return f.at(nb); };
    for (int a = 0; a < g.dim(); ++a) grad[a] = axis_derivative(g, c, a, value);
    return grad;
}

/// Regularized unit normal grad f / (|grad f| + eps).
inline Vec3 normal_at(const ScalarField& f, const CellIndex& c, double eps) {
    const Vec3 grad = gradient_at(f, c);
    return grad / (grad.norm() + eps);
}

/// -div(grad f / (|grad f| + eps)) at one cell, same stencils as gradient().
inline double curvature_at(const ScalarField& f, const CellIndex& c, double eps) {
    const Grid& g = f.grid();
    double div = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        div += axis_derivative(g, c, a, [&](const CellIndex& nb) { return normal_at(f, nb, eps)[a]; });
    }
    return -div;
}

VectorField gradient(const ScalarField& f);

/// Sum of principal curvatures, kappa = -div(n_eps). Negative for a convex
/// region where f < 0 inside.
ScalarField curvature(const ScalarField& f, double eps);

/**
 * Multilinear interpolation of a cell-centered quantity at point x.
 *
 * Points outside the hull of cell centers are clamped to the nearest point
 * of the hull. value_at(CellIndex) supplies the corner values, so this also
 * interpolates quantities that are only evaluated on demand.
 */
template <class T, class ValueAt>
T interpolate_cells(const Grid& g, const Vec3& x, ValueAt&& value_at) {
    CellIndex base{0, 0, 0};
    double w[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) {
        const int n = g.cells(a);
        double s = (x[a] - g.origin()[a]) / g.spacing() - 0.5;
        s = std::clamp(s, 0.0, static_cast<double>(n - 1));
        int i0 = std::min(static_cast<int>(std::floor(s)), n - 2);
        base[a] = i0;
        w[a] = s - i0;
    }
    const int corners = g.dim() == 2 ? 4 : 8;
    T acc{};
    bool first = true;
    for (int m = 0; m < corners; ++m) {
        CellIndex c = base;
        double weight = 1.0;
        for (int a = 0; a < g.dim(); ++a) {
            const int bit = (m >> a) & 1;
            c[a] += bit;
            weight *= bit ? w[a] : 1.0 - w[a];
        }
        if (weight == 0.0) continue;
        if (first) {
            acc = weight * value_at(c);
            first = false;
        } else {
            acc += weight * value_at(c);
        }
    }
    if (first) acc = value_at(base);
    return acc;
}

double sample_bilinear(const ScalarField& f, const Vec3& x);

}  // namespace sdpls
