#include "sdpls/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdpls {

Grid::Grid(int dim, const Vec3& origin, const Vec3& extent, const std::array<int, 3>& cells)
    : dim_(dim), origin_(origin), extent_(extent), cells_(cells), spacing_(0.0) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("grid dimension must be 2 or 3");
    }
    for (int a = 0; a < dim; ++a) {
        if (!(extent[a] > 0.0) || !std::isfinite(extent[a])) {
            throw std::invalid_argument("grid extent must be positive on every axis");
        }
        if (cells[a] < 4) {
            throw std::invalid_argument("grid needs at least 4 cells per axis");
        }
    }
    spacing_ = extent[0] / cells[0];
    for (int a = 1; a < dim; ++a) {
        const double h = extent[a] / cells[a];
        if (std::abs(h - spacing_) > 1e-12 * spacing_) {
            std::ostringstream msg;
            msg << "non-uniform spacing: axis 0 gives " << spacing_ << ", axis " << a
                << " gives " << h;
            throw std::invalid_argument(msg.str());
        }
    }
    if (dim == 2) {
        cells_[2] = 1;
        origin_[2] = 0.0;
        extent_[2] = spacing_;
    }
}

double Grid::cell_volume() const { return std::pow(spacing_, dim_); }

std::size_t Grid::stride(int axis) const {
    switch (axis) {
        case 0: return 1;
        case 1: return static_cast<std::size_t>(cells_[0]);
        default: return static_cast<std::size_t>(cells_[0]) * cells_[1];
    }
}

Vec3 Grid::cell_center(int i, int j, int k) const {
    Vec3 x = origin_ + spacing_ * Vec3(i + 0.5, j + 0.5, k + 0.5);
    if (dim_ == 2) x[2] = 0.0;
    return x;
}

Vec3 Grid::lower_face_center(const CellIndex& c, int axis) const {
    Vec3 x = cell_center(c);
    x[axis] -= 0.5 * spacing_;
    return x;
}

bool Grid::operator==(const Grid& other) const {
    return dim_ == other.dim_ && origin_ == other.origin_ && cells_ == other.cells_ &&
           spacing_ == other.spacing_;
}

Grid make_grid(int dim, std::span<const double> origin, std::span<const double> extent,
               std::span<const int> cells) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("grid dimension must be 2 or 3");
    }
    const auto n = static_cast<std::size_t>(dim);
    if (origin.size() != n || extent.size() != n || cells.size() != n) {
        throw std::invalid_argument("origin, extent and cells must each have dim components");
    }
    Vec3 o = Vec3::Zero();
    Vec3 e = Vec3::Zero();
    std::array<int, 3> c{1, 1, 1};
    for (std::size_t a = 0; a < n; ++a) {
        o[a] = origin[a];
        e[a] = extent[a];
        c[a] = cells[a];
    }
    return Grid(dim, o, e, c);
}

}  // namespace sdpls
