#pragma once

#include <array>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "sdpls/fields.hpp"

namespace sdpls {

/**
 * Legacy VTK STRUCTURED_POINTS, ASCII. Points are the cell centers, values
 * in x-fastest order, one scalar array. Numbers are printed with 17
 * significant digits in the classic locale.
 */
void write_vtk_structured_points(std::ostream& out, const std::string& title,
                                 const std::array<int, 3>& dims, const Vec3& origin,
                                 const Vec3& spacing, const std::string& array_name,
                                 std::span<const double> values);

/// Writes phi as an array named "phi". Throws std::runtime_error on I/O failure.
void write_vtk_snapshot(const ScalarField& phi, const std::filesystem::path& path,
                        const std::string& title = "phi");

}  // namespace sdpls
