#include "sdpls/stencils.hpp"

namespace sdpls {

VectorField gradient(const ScalarField& f) {
    VectorField out(f.grid(), Vec3::Zero());
    for_each_cell(f.grid(), [&](const CellIndex& c) { out.at(c) = gradient_at(f, c); });
    return out;
}

ScalarField curvature(const ScalarField& f, double eps) {
    const Grid& g = f.grid();
    VectorField normals(g, Vec3::Zero());
    for_each_cell(g, [&](const CellIndex& c) { normals.at(c) = normal_at(f, c, eps); });
    ScalarField out(g);
    for_each_cell(g, [&](const CellIndex& c) {
        double div = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            div += axis_derivative(g, c, a, [&](const CellIndex& nb) { return normals.at(nb)[a]; });
        }
        out.at(c) = -div;
    });
    return out;
}

double sample_bilinear(const ScalarField& f, const Vec3& x) {
    return interpolate_cells<double>(f.grid(), x, [&](const CellIndex& c) { return f.at(c); });
}

}  // namespace sdpls
