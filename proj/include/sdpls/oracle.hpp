#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "sdpls/types.hpp"
#include "sdpls/velocity.hpp"

namespace sdpls {

/**
 * Reference values along the characteristic through the initial contact
 * point, for the plain level set equation phi_t + v.grad phi = 0.
 *
 * Along dx/dt = v the gradient g = grad phi and Hessian H = grad grad phi
 * obey
 *   dg/dt = -J^T g,
 *   dH/dt = -J^T H - H J - sum_k g_k hess(v_k),
 * with J(i, j) = d v_i / d x_j. Direction, angle and curvature of the zero
 * contour are the same with or without the source term; |g| is the
 * gradient norm of the plain equation.
 */
struct ReferenceSample {
    double t = 0.0;
    Vec3 x = Vec3::Zero();
    Vec3 n = Vec3::Zero();  // g / |g|
    double grad_norm_standard = 0.0;
    Mat3 hessian = Mat3::Zero();
    double theta_deg = 0.0;  // angle between n and e_y
    double kappa = 0.0;      // -(tr H - n^T H n) / |g|
};

struct ReferenceTrajectory {
    std::vector<ReferenceSample> samples;
};

struct CharacteristicState {
    Vec3 x = Vec3::Zero();
    Vec3 g = Vec3::Zero();
    Mat3 hessian = Mat3::Zero();
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Right-hand side of the characteristic system.
CharacteristicState characteristic_rhs(const AnalyticVelocity& v, double t,
                                       const CharacteristicState& s);

/**
 * Classical RK4 integration of the characteristic system, sampled at each
 * requested time (strictly increasing, first >= 0). Each interval is split
 * into equal substeps of at most dt_ref.
 *
 * n0 must be a unit vector; g0 = grad0 * n0 and H0 = grad0 * sdf_hessian,
 * where sdf_hessian is the Hessian of the initial signed distance function.
 * Throws OracleError if |g| collapses along the path.
 */
ReferenceTrajectory integrate_reference(const AnalyticVelocity& v, const Vec3& x0,
                                        const Vec3& n0, const Mat3& sdf_hessian, double grad0,
                                        std::span<const double> times, double dt_ref);

/// Samples every dt_ref from 0 up to and including t_end.
ReferenceTrajectory integrate_reference(const AnalyticVelocity& v, const Vec3& x0,
                                        const Vec3& n0, const Mat3& sdf_hessian, double grad0,
                                        double t_end, double dt_ref);

/// Hessian of the distance to a circle/sphere, (P - e_r e_r^T) / r, where P
/// projects onto the first dim axes. Throws std::invalid_argument if x0 is
/// the center.
Mat3 initial_hessian_sphere(const Vec3& center, const Vec3& x0, int dim);

/// |grad phi| of the plain level set equation along the path.
inline double reference_gradient_norm_standard(const ReferenceSample& s) {
    return s.grad_norm_standard;
}

}  // namespace sdpls
