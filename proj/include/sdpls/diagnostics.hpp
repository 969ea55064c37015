#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "sdpls/fields.hpp"
#include "sdpls/stencils.hpp"
#include "sdpls/velocity.hpp"

namespace sdpls {

// Contact-line diagnostics on the wall y = origin_y of the grid. Values at
// the wall are obtained from cell-center quantities: the level set itself
// is extrapolated quadratically from the first three cell layers, derived
// quantities (gradient, curvature) linearly from the first two.

struct ContactRecord {
    double t = 0.0;
    Vec3 x = Vec3::Zero();   // on the wall, y = 0
    double theta_deg = 0.0;  // angle between n and the inward wall normal
    double kappa = 0.0;      // -div n
    double grad_norm = 0.0;  // |grad phi|
};

class DegenerateGradientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CrossingSelector { rightmost, leftmost };

/// Level set value on the wall below x.
double wall_trace(const ScalarField& phi, const Vec3& x);

/// Wall value of a cell quantity, linear extrapolation in the wall-normal
/// direction followed by interpolation along the wall.
template <class T, class ValueAt>
T wall_value(const Grid& g, const Vec3& x, ValueAt&& value_at) {
    Vec3 p = x;
    p[1] = g.origin()[1] + 0.5 * g.spacing();
    return interpolate_cells<T>(g, p, [&](const CellIndex& c) {
        CellIndex first = c;
        first[1] = 0;
        CellIndex second = c;
        second[1] = 1;
        return T(1.5 * value_at(first) - 0.5 * value_at(second));
    });
}

/**
 * 2D: scans the wall trace of phi for sign changes between neighbouring
 * columns and returns the selected crossing, located by linear
 * interpolation. nullopt when the interface has detached from the wall.
 */
std::optional<Vec3> find_contact_point(const ScalarField& phi, CrossingSelector selector);

/**
 * Marked crossing near seed: brackets the zero of the wall trace along the
 * line through seed in the direction of the wall-projected gradient,
 * within search_radius, and refines the root by bisection. Works in 2D and
 * 3D. nullopt if no sign change is found.
 */
std::optional<Vec3> find_contact_point(const ScalarField& phi, const Vec3& seed,
                                       double search_radius);

/// Contact angle in degrees. Throws DegenerateGradientError if the
/// gradient at x vanishes.
double contact_angle(const ScalarField& phi, const Vec3& x, double eps);

/// curvature() evaluated at the contact point.
double contact_curvature(const ScalarField& phi, const Vec3& x, double eps);

/// |grad phi| evaluated at the contact point.
double contact_grad_norm(const ScalarField& phi, const Vec3& x);

/// All four diagnostics at x.
ContactRecord measure_contact(const ScalarField& phi, double t, const Vec3& x, double eps);

/// max_n |1 - |grad phi|(t_n)|. Throws std::invalid_argument if empty.
double max_sdf_deviation(std::span<const ContactRecord> records);

/**
 * Follows one contact point through a run.
 *
 * In 2D the tracker picks the selected crossing on every call. The marked
 * mode (required in 3D) follows a single material-like point: the previous
 * position is advected with the analytic velocity over the step and then
 * projected onto the discrete contact line within 3h.
 */
class ContactTracker {
public:
    static ContactTracker select(CrossingSelector selector);
    static ContactTracker marked(const Vec3& seed);

    /// Locates the contact point in phi at time t, given the velocity and
    /// the time of the previous call.
    std::optional<Vec3> locate(const ScalarField& phi, const AnalyticVelocity& v, double t_prev,
                               double t);

    bool is_marked() const { return marked_; }

private:
    ContactTracker(bool marked, CrossingSelector selector, const Vec3& seed);

    bool marked_;
    CrossingSelector selector_;
    Vec3 position_;
    bool initialized_ = false;
};

}  // namespace sdpls
