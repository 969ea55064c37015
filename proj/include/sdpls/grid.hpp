#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "sdpls/types.hpp"

namespace sdpls {

/**
 * Uniform Cartesian mesh with identical spacing on every axis.
 *
 * Values live at cell centers. In 2D the z-axis has a single cell and
 * carries no geometric meaning; all loops over axes stop at dim().
 */
class Grid {
public:
    /// Throws std::invalid_argument if the implied spacing is not uniform,
    /// any axis has fewer than 4 cells, or any extent is non-positive.
    Grid(int dim, const Vec3& origin, const Vec3& extent, const std::array<int, 3>& cells);

    int dim() const { return dim_; }
    const Vec3& origin() const { return origin_; }
    const Vec3& extent() const { return extent_; }
    const std::array<int, 3>& cells() const { return cells_; }
    int cells(int axis) const { return cells_[axis]; }
    double spacing() const { return spacing_; }
    double cell_volume() const;

    std::size_t size() const {
        return static_cast<std::size_t>(cells_[0]) * cells_[1] * cells_[2];
    }

    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(cells_[0]) * (static_cast<std::size_t>(j) +
                                                      static_cast<std::size_t>(cells_[1]) * k);
    }
    std::size_t index(const CellIndex& c) const { return index(c[0], c[1], c[2]); }

    /// Linear stride between neighbours along an axis.
    std::size_t stride(int axis) const;

    Vec3 cell_center(int i, int j, int k) const;
    Vec3 cell_center(const CellIndex& c) const { return cell_center(c[0], c[1], c[2]); }

    /// Centroid of the face of cell c that lies on its low side along axis.
    Vec3 lower_face_center(const CellIndex& c, int axis) const;

    bool operator==(const Grid& other) const;

private:
    int dim_;
    Vec3 origin_;
    Vec3 extent_;
    std::array<int, 3> cells_;
    double spacing_;
};

/// Builds a grid from per-axis vectors of length dim.
Grid make_grid(int dim, std::span<const double> origin, std::span<const double> extent,
               std::span<const int> cells);

}  // namespace sdpls
