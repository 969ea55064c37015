#include "sdpls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdpls/stencils.hpp"

namespace sdpls {

namespace {

const double kLn1000 = std::log(1000.0);

// Precondition check hoisted out of the per-cell mollifier.
double mollifier_unchecked(double x, double w1, double w2) {
    const double d = std::abs(x);
    if (d <= w1) return 1.0;
    const double s = (d - w1) / (w2 - w1);
    return std::exp(-kLn1000 * s * s);
}

template <class Field>
void fill_source(const Field& field, const ScalarField& phi, double t, const SourceParams& p,
                 std::span<double> out) {
    const Grid& g = phi.grid();
    for_each_cell(g, [&](const CellIndex& c) {
        const std::size_t idx = g.index(c);
        const double cutoff = mollifier_unchecked(phi[idx], p.w1, p.w2);
        if (cutoff == 0.0) {
            out[idx] = 0.0;
            return;
        }
        const Vec3 n = normal_at(phi, c, p.epsilon);
        const Mat3 jac = field.jacobian(t, g.cell_center(c));
        out[idx] = -n.dot(jac * n) * cutoff;
    });
}

// Tangential cell indices of a face line along axis.
std::array<int, 2> tangential_axes(int axis) {
    switch (axis) {
        case 0: return {1, 2};
        case 1: return {0, 2};
        default: return {0, 1};
    }
}

template <class Field>
void fill_closure(const Field& field, const ScalarField& phi, double t, BoundaryClosure& bc) {
    const Grid& g = phi.grid();
    for (int a = 0; a < g.dim(); ++a) {
        const auto [ta, tb] = tangential_axes(a);
        for (int q = 0; q < g.cells(tb); ++q) {
            for (int p = 0; p < g.cells(ta); ++p) {
                for (int side = 0; side < 2; ++side) {
                    CellIndex c{0, 0, 0};
                    c[ta] = p;
                    c[tb] = q;
                    c[a] = side == 0 ? 0 : g.cells(a) - 1;
                    Vec3 x = g.lower_face_center(c, a);
                    if (side == 1) x[a] += g.spacing();
                    const double un = field.eval(t, x)[a];
                    auto& f = bc.face(a, side == 1, c);
                    f.outward_velocity = side == 0 ? -un : un;
                    f.inflow = f.outward_velocity < 0.0;
                    // Zero-gradient ghost on inflow; interior upstream value otherwise.
                    f.value = phi.at(c);
                }
            }
        }
    }
}

template <class Field>
void accumulate_fluxes(const Field& field, const ScalarField& phi, double t,
                       const BoundaryClosure& bc, std::span<double> rhs) {
    const Grid& g = phi.grid();
    const double inv_h = 1.0 / g.spacing();
    const double h = g.spacing();
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (int a = 0; a < g.dim(); ++a) {
        const auto [ta, tb] = tangential_axes(a);
        const int n = g.cells(a);
        const std::size_t stride = g.stride(a);
        for (int q = 0; q < g.cells(tb); ++q) {
            for (int p = 0; p < g.cells(ta); ++p) {
                CellIndex first{0, 0, 0};
                first[ta] = p;
                first[tb] = q;
                CellIndex last = first;
                last[a] = n - 1;
                const std::size_t base = g.index(first);
                Vec3 x = g.lower_face_center(first, a);
                const double x0 = x[a];
                for (int f = 0; f <= n; ++f) {
                    x[a] = x0 + f * h;
                    const double u = field.eval(t, x)[a];
                    double face_value;
                    if (f == 0) {
                        face_value = bc.face(a, false, first).value;
                    } else if (f == n) {
                        face_value = bc.face(a, true, last).value;
                    } else {
                        face_value = u > 0.0 ? phi[base + (f - 1) * stride] : phi[base + f * stride];
                    }
                    const double flux = u * face_value * inv_h;
                    if (f > 0) rhs[base + (f - 1) * stride] -= flux;
                    if (f < n) rhs[base + f * stride] += flux;
                }
            }
        }
    }
}

double max_abs(std::span<const double> values) {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
}

double dt_from_bounds(double cfl, double h, double speed, double c_r, double max_r) {
    double dt = std::numeric_limits<double>::infinity();
    if (speed > 0.0) dt = cfl * h / speed;
    if (max_r > 0.0) dt = std::min(dt, c_r / max_r);
    return dt;
}

}  // namespace

void SourceParams::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(w1 > 0.0)) throw std::invalid_argument("w1 must be positive");
    if (!(w2 > w1)) throw std::invalid_argument("w2 must be greater than w1");
}

void StepControl::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(c_r > 0.0 && c_r < 1.0)) throw std::invalid_argument("c_r must lie in (0, 1)");
}

SolverInstability::SolverInstability(long step_index, double t, const std::string& what)
    : std::runtime_error(what), step_index_(step_index), t_(t) {}

double mollifier(double x, double w1, double w2) {
    if (!(w1 > 0.0 && w2 > w1)) {
        throw std::invalid_argument("mollifier requires 0 < w1 < w2");
    }
    return mollifier_unchecked(x, w1, w2);
}

ScalarField source_field(const ScalarField& phi, double t, const AnalyticVelocity& v,
                         const SourceParams& p) {
    p.validate();
    ScalarField r(phi.grid(), 0.0);
    if (!p.enabled) return r;
    v.visit([&](const auto& field) { fill_source(field, phi, t, p, r.values()); });
    return r;
}

BoundaryClosure::BoundaryClosure(const Grid& g) : grid_(g) {
    for (int a = 0; a < g.dim(); ++a) {
        const auto [ta, tb] = tangential_axes(a);
        const std::size_t count = static_cast<std::size_t>(g.cells(ta)) * g.cells(tb);
        sides_[2 * a].resize(count);
        sides_[2 * a + 1].resize(count);
    }
}

std::size_t BoundaryClosure::slot(int axis, const CellIndex& cell) const {
    const auto [ta, tb] = tangential_axes(axis);
    return static_cast<std::size_t>(cell[ta]) +
           static_cast<std::size_t>(grid_.cells(ta)) * static_cast<std::size_t>(cell[tb]);
}

BoundaryClosure::Face& BoundaryClosure::face(int axis, bool high, const CellIndex& cell) {
    return sides_[2 * axis + (high ? 1 : 0)][slot(axis, cell)];
}

const BoundaryClosure::Face& BoundaryClosure::face(int axis, bool high,
                                                   const CellIndex& cell) const {
    return sides_[2 * axis + (high ? 1 : 0)][slot(axis, cell)];
}

std::size_t BoundaryClosure::inflow_count() const {
    std::size_t n = 0;
    for (const auto& side : sides_)
        for (const auto& f : side) n += f.inflow ? 1 : 0;
    return n;
}

BoundaryClosure fill_inflow_ghosts(const ScalarField& phi, double t, const AnalyticVelocity& v) {
    BoundaryClosure bc(phi.grid());
    v.visit([&](const auto& field) { fill_closure(field, phi, t, bc); });
    return bc;
}

ScalarField upwind_rhs(const ScalarField& phi, double t, const AnalyticVelocity& v) {
    const BoundaryClosure bc = fill_inflow_ghosts(phi, t, v);
    ScalarField rhs(phi.grid(), 0.0);
    v.visit([&](const auto& field) { accumulate_fluxes(field, phi, t, bc, rhs.values()); });
    return rhs;
}

double max_speed_l1(const Grid& g, const AnalyticVelocity& v, double t) {
    double speed = 0.0;
    v.visit([&](const auto& field) {
        for_each_cell(g, [&](const CellIndex& c) {
            const Vec3 u = field.eval(t, g.cell_center(c));
            double s = 0.0;
            for (int a = 0; a < g.dim(); ++a) s += std::abs(u[a]);
            speed = std::max(speed, s);
        });
    });
    return speed;
}

double compute_dt(const ScalarField& phi, double t, const AnalyticVelocity& v,
                  const StepControl& ctl, const ScalarField& r) {
    ctl.validate();
    const Grid& g = phi.grid();
    return dt_from_bounds(ctl.cfl, g.spacing(), max_speed_l1(g, v, t), ctl.c_r,
                          max_abs(r.values()));
}

Stepper::Stepper(AnalyticVelocity velocity, SourceParams source, StepControl control)
    : velocity_(std::move(velocity)), source_(source), control_(control) {
    source_.validate();
    control_.validate();
}

double Stepper::speed_at(const Grid& g, double t) {
    if (!velocity_.steady()) return max_speed_l1(g, velocity_, t);
    if (cached_speed_ < 0.0) cached_speed_ = max_speed_l1(g, velocity_, t);
    return cached_speed_;
}

StepInfo Stepper::advance(SolverState& state, double t_stop) {
    if (!(t_stop > state.t)) {
        throw std::invalid_argument("step target time must exceed the current time");
    }
    ScalarField& phi = state.phi;
    const Grid& g = phi.grid();
    const std::size_t n = g.size();
    rate_.assign(n, 0.0);
    rhs_.resize(n);

    const double t = state.t;
    if (source_.enabled) {
        velocity_.visit([&](const auto& field) { fill_source(field, phi, t, source_, rate_); });
    }
    const BoundaryClosure bc = fill_inflow_ghosts(phi, t, velocity_);
    velocity_.visit([&](const auto& field) { accumulate_fluxes(field, phi, t, bc, rhs_); });

    StepInfo info;
    info.max_abs_r = max_abs(rate_);
    info.max_speed = speed_at(g, t);
    double dt = dt_from_bounds(control_.cfl, g.spacing(), info.max_speed, control_.c_r,
                               info.max_abs_r);
    dt = std::min(dt, t_stop - t);
    if (!std::isfinite(dt)) {
        throw std::invalid_argument("no finite time step: velocity and source vanish and no stop time");
    }
    if (!velocity_.steady()) {
        // The speed at t^n alone can miss growth within the step, e.g. just
        // after a zero crossing of the time factor. Shrink until the bound
        // also holds at the end of the step.
        for (int iter = 0; iter < 50; ++iter) {
            const double end_speed = speed_at(g, t + dt);
            if (end_speed <= 0.0) break;
            const double dt_end = control_.cfl * g.spacing() / end_speed;
            if (dt_end >= dt) break;
            dt = dt_end;
            info.max_speed = std::max(info.max_speed, end_speed);
        }
    }
    info.dt = dt;

    auto values = phi.values();
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = values[i] * (1.0 - rate_[i] * dt) + dt * rhs_[i];
        finite = finite && std::isfinite(values[i]);
    }
    state.t = (dt == t_stop - t) ? t_stop : t + dt;
    ++state.step_index;
    if (!finite) {
        std::ostringstream msg;
        msg << "non-finite level set value after step " << state.step_index << " (t = " << state.t
            << ", dt = " << dt << ")";
        throw SolverInstability(state.step_index, state.t, msg.str());
    }
    return info;
}

SolverState step(const SolverState& state, const AnalyticVelocity& v, const SourceParams& p,
                 const StepControl& ctl, double t_stop) {
    SolverState next = state;
    Stepper stepper(v, p, ctl);
    stepper.advance(next, t_stop);
    return next;
}

}  // namespace sdpls
