#pragma once

#include <array>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdpls/fields.hpp"
#include "sdpls/velocity.hpp"

namespace sdpls {

struct SourceParams {
    double epsilon = 1e-12;  // normal regularization
    double w1 = 0.05;        // half-width of the plateau where the cut-off is 1
    double w2 = 0.15;        // distance at which the cut-off reaches 1e-3
    bool enabled = true;

    /// Throws std::invalid_argument unless epsilon > 0 and 0 < w1 < w2.
    void validate() const;
};

struct StepControl {
    double cfl = 0.5;  // advective limit, in (0, 1]
    double c_r = 0.5;  // bound on |r| dt, in (0, 1)

    void validate() const;
};

struct SolverState {
    ScalarField phi;
    double t = 0.0;
    long step_index = 0;
};

/// Raised when an update produces non-finite values.
class SolverInstability : public std::runtime_error {
public:
    SolverInstability(long step_index, double t, const std::string& what);
    long step_index() const { return step_index_; }
    double time() const { return t_; }

private:
    long step_index_;
    double t_;
};

/**
 * Symmetric C1 cut-off: 1 on |x| <= w1, Gaussian decay beyond with
 * G(w2) = 1e-3. Throws std::invalid_argument unless 0 < w1 < w2.
 */
double mollifier(double x, double w1, double w2);

/**
 * Discrete interface generation rate with cut-off,
 *   r = -<J n_eps, n_eps> G(phi),   n_eps = grad phi / (|grad phi| + eps),
 * with J the analytic velocity Jacobian at the cell center at time t and
 * grad phi from gradient(). Zero everywhere when the source is disabled.
 */
ScalarField source_field(const ScalarField& phi, double t, const AnalyticVelocity& v,
                         const SourceParams& p);

/**
 * Upwind face values on the domain boundary.
 *
 * Faces with v.n_out < 0 (inflow) take the adjacent interior value, which
 * is a homogeneous Neumann condition; outflow faces take the interior
 * upstream value. Either way the face value is that of the boundary cell,
 * and walls with v.n_out = 0 carry no flux.
 */
class BoundaryClosure {
public:
    struct Face {
        double value = 0.0;
        double outward_velocity = 0.0;
        bool inflow = false;
    };

    explicit BoundaryClosure(const Grid& g);

    /// Face on the low (high = false) or high side of axis, addressed by
    /// the boundary cell adjacent to it.
    Face& face(int axis, bool high, const CellIndex& cell);
    const Face& face(int axis, bool high, const CellIndex& cell) const;

    std::size_t inflow_count() const;

private:
    std::size_t slot(int axis, const CellIndex& cell) const;

    Grid grid_;
    std::array<std::vector<Face>, 6> sides_;
};

BoundaryClosure fill_inflow_ghosts(const ScalarField& phi, double t, const AnalyticVelocity& v);

/**
 * Donor-cell advective rate of change per cell,
 *   F = -(1/|V|) sum_faces (v.n_out) phi_upwind |A|,
 * with v sampled at face centroids at time t and boundary faces closed by
 * fill_inflow_ghosts().
 */
ScalarField upwind_rhs(const ScalarField& phi, double t, const AnalyticVelocity& v);

/// max over cell centers of sum_a |v_a| at time t.
double max_speed_l1(const Grid& g, const AnalyticVelocity& v, double t);

/**
 * dt = min(cfl h / max sum_a |v_a|, c_r / max |r|). A bound whose
 * denominator is zero is skipped; +infinity if both are.
 */
double compute_dt(const ScalarField& phi, double t, const AnalyticVelocity& v,
                  const StepControl& ctl, const ScalarField& r);

struct StepInfo {
    double dt = 0.0;
    double max_abs_r = 0.0;
    double max_speed = 0.0;
};

/**
 * Explicit integrator for phi_t + v.grad phi = -r phi, one step being
 *   phi^{n+1} = phi^n (1 - r^n dt) + dt F^n,
 * with r^n recomputed from phi^n every step. Holds the work buffers so
 * repeated steps do not allocate.
 */
class Stepper {
public:
    Stepper(AnalyticVelocity velocity, SourceParams source, StepControl control);

    /// Advances state by one step that does not pass t_stop; lands exactly
    /// on t_stop when the stable step reaches it. Throws SolverInstability
    /// on non-finite output and std::invalid_argument if t_stop <= state.t.
    StepInfo advance(SolverState& state, double t_stop);

    const AnalyticVelocity& velocity() const { return velocity_; }
    const SourceParams& source() const { return source_; }
    const StepControl& control() const { return control_; }

private:
    double speed_at(const Grid& g, double t);

    AnalyticVelocity velocity_;
    SourceParams source_;
    StepControl control_;
    std::vector<double> rate_;
    std::vector<double> rhs_;
    double cached_speed_ = -1.0;
};

SolverState step(const SolverState& state, const AnalyticVelocity& v, const SourceParams& p,
                 const StepControl& ctl,
                 double t_stop = std::numeric_limits<double>::infinity());

}  // namespace sdpls
