#include "sdpls/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace sdpls {

Vec3 initial_contact_point(const SolverConfig& cfg) {
    if (cfg.contact_point) return *cfg.contact_point;
    const double wall_y = cfg.origin[1];
    const double dy = wall_y - cfg.surface.center[1];
    const double half_chord = std::sqrt(cfg.surface.radius * cfg.surface.radius - dy * dy);
    const double sign = cfg.selector == CrossingSelector::rightmost ? 1.0 : -1.0;
    return {cfg.surface.center[0] + sign * half_chord, wall_y, 0.0};
}

SolverState initial_state(const SolverConfig& cfg) {
    return SolverState{sphere_sdf(cfg.grid(), cfg.surface.center, cfg.surface.radius), 0.0, 0};
}

RunResult run(const SolverConfig& cfg, const StepObserver& observer) {
    cfg.validate();
    const AnalyticVelocity velocity = cfg.velocity();
    Stepper stepper(velocity, cfg.source, cfg.control);
    ContactTracker tracker = cfg.dim == 3 || cfg.contact_point
                                 ? ContactTracker::marked(initial_contact_point(cfg))
                                 : ContactTracker::select(cfg.selector);

    std::vector<double> stops = cfg.snapshot_times;
    stops.push_back(cfg.t_end);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    std::vector<TimeseriesRow> rows;
    std::vector<Snapshot> snapshots;
    long detached = 0;
    SolverState state = initial_state(cfg);
    const double eps = cfg.source.epsilon;

    auto record = [&](double t_prev, double dt) {
        const auto x = tracker.locate(state.phi, velocity, t_prev, state.t);
        if (!x) {
            ++detached;
            return;
        }
        try {
            rows.push_back({state.step_index, dt, measure_contact(state.phi, state.t, *x, eps)});
        } catch (const DegenerateGradientError& e) {
            ++detached;
            std::cerr << "warning: step " << state.step_index << ": " << e.what() << '\n';
        }
    };

    record(0.0, 0.0);
    std::size_t next_stop = 0;
    auto take_snapshots = [&] {
        while (next_stop < stops.size() && stops[next_stop] <= state.t) {
            snapshots.push_back({state.t, state.phi});
            ++next_stop;
        }
    };
    take_snapshots();

    while (state.t < cfg.t_end) {
        const double t_prev = state.t;
        const double target = stops[next_stop];
        StepInfo info;
        if (observer) {
            const SolverState before = state;
            info = stepper.advance(state, target);
            observer(before, state, info);
        } else {
            info = stepper.advance(state, target);
        }
        record(t_prev, info.dt);
        take_snapshots();
    }
    return RunResult{std::move(rows), std::move(snapshots), std::move(state), detached};
}

}  // namespace sdpls
