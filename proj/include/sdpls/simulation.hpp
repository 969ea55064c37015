#pragma once

#include <functional>
#include <vector>

#include "sdpls/config.hpp"
#include "sdpls/diagnostics.hpp"
#include "sdpls/solver.hpp"

namespace sdpls {

struct TimeseriesRow {
    long step = 0;
    double dt = 0.0;  // step that produced this record; 0 for the initial one
    ContactRecord record;
};

struct Snapshot {
    double t = 0.0;
    ScalarField phi;
};

struct RunResult {
    std::vector<TimeseriesRow> rows;
    std::vector<Snapshot> snapshots;
    SolverState final_state;
    long detached_steps = 0;  // steps without a contact point on the wall
};

/// Called after every step with the state before and after it.
using StepObserver =
    std::function<void(const SolverState& before, const SolverState& after, const StepInfo& info)>;

/// Exact initial contact point: the configured point, or in 2D the selected
/// intersection of the initial circle with the wall.
Vec3 initial_contact_point(const SolverConfig& cfg);

SolverState initial_state(const SolverConfig& cfg);

/**
 * Runs the configured case from t = 0 to t_end. Diagnostics are recorded
 * after every step; field snapshots at each snapshot time and at t_end.
 * Steps are shortened to land exactly on those times. Deterministic for a
 * given configuration.
 */
RunResult run(const SolverConfig& cfg, const StepObserver& observer = {});

}  // namespace sdpls
