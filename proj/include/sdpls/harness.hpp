#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

#include "sdpls/config.hpp"
#include "sdpls/oracle.hpp"
#include "sdpls/simulation.hpp"

namespace sdpls {

/// Maximum deviations of a run from its reference over all recorded times.
struct ErrorSummary {
    double max_err_x = 0.0;
    double max_err_theta = 0.0;
    double max_err_kappa = 0.0;
    double max_sdf_dev = 0.0;        // max_n |1 - |grad phi||
    double max_err_grad_norm = 0.0;  // vs 1 with source on, vs the plain-equation curve otherwise
    double final_err_grad_norm = 0.0;
};

/// Oracle for the configured case sampled at the given times.
ReferenceTrajectory reference_for(const SolverConfig& cfg, std::span<const double> times);

ErrorSummary compare_to_reference(std::span<const TimeseriesRow> rows,
                                  const ReferenceTrajectory& reference, bool source_enabled);

struct CaseResult {
    RunResult run;
    ReferenceTrajectory reference;
    ErrorSummary errors;
};

/**
 * Runs a case and its oracle. With an output directory, writes
 * timeseries.csv, reference.csv and snapshot_<k>.vtk files there.
 */
CaseResult run_case(const SolverConfig& cfg, const std::filesystem::path& output_dir = {});

struct ConvergenceRow {
    int cells_x = 0;
    double h = 0.0;
    ErrorSummary errors;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    // orders[m] compares rows m and m + 1
    std::vector<double> order_x, order_theta, order_kappa, order_sdf_dev;
};

/// log(e_coarse / e_fine) / log(h_coarse / h_fine) for consecutive entries.
std::vector<double> observed_orders(std::span<const double> h, std::span<const double> errors);

/**
 * Runs the case on each mesh (cells along x, strictly increasing) with the
 * source switched as requested. With an output directory, each mesh writes
 * to mesh_<n>/ and the table goes to convergence.csv.
 */
ConvergenceReport run_convergence(const SolverConfig& cfg, std::span<const int> meshes,
                                  bool source_enabled,
                                  const std::filesystem::path& output_dir = {});

void write_timeseries_csv(std::ostream& out, const RunResult& result, int dim);
void write_reference_csv(std::ostream& out, const ReferenceTrajectory& reference);
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

}  // namespace sdpls
