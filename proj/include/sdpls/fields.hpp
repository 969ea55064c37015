#pragma once

#include <span>
#include <vector>

#include "sdpls/grid.hpp"
#include "sdpls/types.hpp"

namespace sdpls {

/// Cell-centered container bound to a grid. T is double, Vec3 or Mat3.
template <class T>
class CellField {
public:
    explicit CellField(Grid grid, const T& fill = T{})
        : grid_(std::move(grid)), values_(grid_.size(), fill) {}

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    T& operator[](std::size_t idx) { return values_[idx]; }
    const T& operator[](std::size_t idx) const { return values_[idx]; }
    T& at(const CellIndex& c) { return values_[grid_.index(c)]; }
    const T& at(const CellIndex& c) const { return values_[grid_.index(c)]; }

    std::span<T> values() { return values_; }
    std::span<const T> values() const { return values_; }

private:
    Grid grid_;
    std::vector<T> values_;
};

using ScalarField = CellField<double>;
using VectorField = CellField<Vec3>;
using TensorField = CellField<Mat3>;

/// True if every value is finite.
bool all_finite(const ScalarField& f);

/// Calls fn(CellIndex) for every cell in x-fastest order.
template <class Fn>
void for_each_cell(const Grid& g, Fn&& fn) {
    for (int k = 0; k < g.cells(2); ++k)
        for (int j = 0; j < g.cells(1); ++j)
            for (int i = 0; i < g.cells(0); ++i) fn(CellIndex{i, j, k});
}

/// Samples fn(cell center) into a new scalar field.
template <class Fn>
ScalarField sample_field(const Grid& g, Fn&& fn) {
    ScalarField f(g);
    for_each_cell(g, [&](const CellIndex& c) { f.at(c) = fn(g.cell_center(c)); });
    return f;
}

/// Exact signed distance to a circle (2D) or sphere (3D), negative inside.
ScalarField sphere_sdf(const Grid& g, const Vec3& center, double radius);

}  // namespace sdpls
