#include "sdpls/fields.hpp"

#include <algorithm>
#include <cmath>

namespace sdpls {

bool all_finite(const ScalarField& f) {
    const auto v = f.values();
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

ScalarField sphere_sdf(const Grid& g, const Vec3& center, double radius) {
    return sample_field(g, [&](const Vec3& x) {
        Vec3 d = x - center;
        if (g.dim() == 2) d[2] = 0.0;
        return d.norm() - radius;
    });
}

}  // namespace sdpls
