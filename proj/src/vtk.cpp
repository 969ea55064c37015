#include "sdpls/vtk.hpp"

#include <fstream>
#include <locale>
#include <stdexcept>

namespace sdpls {

void write_vtk_structured_points(std::ostream& out, const std::string& title,
                                 const std::array<int, 3>& dims, const Vec3& origin,
                                 const Vec3& spacing, const std::string& array_name,
                                 std::span<const double> values) {
    const std::size_t count = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (values.size() != count) throw std::invalid_argument("value count does not match dimensions");
    out.imbue(std::locale::classic());
    out.precision(17);
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << dims[0] << ' ' << dims[1] << ' ' << dims[2] << '\n';
    out << "ORIGIN " << origin[0] << ' ' << origin[1] << ' ' << origin[2] << '\n';
    out << "SPACING " << spacing[0] << ' ' << spacing[1] << ' ' << spacing[2] << '\n';
    out << "POINT_DATA " << count << '\n';
    out << "SCALARS " << array_name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << v << '\n';
}

void write_vtk_snapshot(const ScalarField& phi, const std::filesystem::path& path,
                        const std::string& title) {
    const Grid& g = phi.grid();
    const Vec3 first = g.cell_center(0, 0, 0);
    const double h = g.spacing();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_vtk_structured_points(out, title, g.cells(), first, Vec3(h, h, h), "phi", phi.values());
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace sdpls
