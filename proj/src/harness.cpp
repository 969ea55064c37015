#include "sdpls/harness.hpp"

#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <stdexcept>

#include "sdpls/vtk.hpp"

namespace sdpls {

namespace {

void prepare(std::ostream& out) {
    out.imbue(std::locale::classic());
    out.precision(17);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

ReferenceTrajectory reference_for(const SolverConfig& cfg, std::span<const double> times) {
    const Vec3 x0 = initial_contact_point(cfg);
    Vec3 d = x0 - cfg.surface.center;
    if (cfg.dim == 2) d[2] = 0.0;
    const Vec3 n0 = d.normalized();
    const Mat3 h0 = initial_hessian_sphere(cfg.surface.center, x0, cfg.dim);
    return integrate_reference(cfg.velocity(), x0, n0, h0, 1.0, times, cfg.dt_ref);
}

ErrorSummary compare_to_reference(std::span<const TimeseriesRow> rows,
                                  const ReferenceTrajectory& reference, bool source_enabled) {
    if (rows.size() != reference.samples.size()) {
        throw std::invalid_argument("reference must be sampled at the record times");
    }
    ErrorSummary e;
    for (std::size_t m = 0; m < rows.size(); ++m) {
        const ContactRecord& r = rows[m].record;
        const ReferenceSample& ref = reference.samples[m];
        if (r.t != ref.t) throw std::invalid_argument("reference and record times differ");
        const double grad_ref = source_enabled ? 1.0 : ref.grad_norm_standard;
        e.max_err_x = std::max(e.max_err_x, (r.x - ref.x).norm());
        e.max_err_theta = std::max(e.max_err_theta, std::abs(r.theta_deg - ref.theta_deg));
        e.max_err_kappa = std::max(e.max_err_kappa, std::abs(r.kappa - ref.kappa));
        e.max_sdf_dev = std::max(e.max_sdf_dev, std::abs(1.0 - r.grad_norm));
        e.max_err_grad_norm = std::max(e.max_err_grad_norm, std::abs(r.grad_norm - grad_ref));
        e.final_err_grad_norm = std::abs(r.grad_norm - grad_ref);
    }
    return e;
}

CaseResult run_case(const SolverConfig& cfg, const std::filesystem::path& output_dir) {
    RunResult result = run(cfg);
    std::vector<double> times;
    times.reserve(result.rows.size());
    for (const auto& row : result.rows) times.push_back(row.record.t);
    ReferenceTrajectory reference = reference_for(cfg, times);
    const ErrorSummary errors = compare_to_reference(result.rows, reference, cfg.source.enabled);
    CaseResult out{std::move(result), std::move(reference), errors};

    if (!output_dir.empty()) {
        std::filesystem::create_directories(output_dir);
        auto ts = open_output(output_dir / "timeseries.csv");
        write_timeseries_csv(ts, out.run, cfg.dim);
        auto ref = open_output(output_dir / "reference.csv");
        write_reference_csv(ref, out.reference);
        for (std::size_t k = 0; k < out.run.snapshots.size(); ++k) {
            const auto& snap = out.run.snapshots[k];
            std::ostringstream title;
            prepare(title);
            title << "phi t=" << snap.t;
            write_vtk_snapshot(snap.phi, output_dir / ("snapshot_" + std::to_string(k) + ".vtk"),
                               title.str());
        }
    }
    return out;
}

std::vector<double> observed_orders(std::span<const double> h, std::span<const double> errors) {
    if (h.size() != errors.size()) throw std::invalid_argument("mesh and error counts differ");
    std::vector<double> orders;
    for (std::size_t m = 0; m + 1 < h.size(); ++m) {
        orders.push_back(std::log(errors[m] / errors[m + 1]) / std::log(h[m] / h[m + 1]));
    }
    return orders;
}

ConvergenceReport run_convergence(const SolverConfig& cfg, std::span<const int> meshes,
                                  bool source_enabled, const std::filesystem::path& output_dir) {
    for (std::size_t m = 1; m < meshes.size(); ++m) {
        if (meshes[m] <= meshes[m - 1]) throw std::invalid_argument("meshes must be strictly refining");
    }
    ConvergenceReport report;
    std::vector<double> h, ex, et, ek, es;
    for (int n : meshes) {
        SolverConfig mesh_cfg = cfg.with_mesh(n);
        mesh_cfg.source.enabled = source_enabled;
        const auto dir = output_dir.empty() ? output_dir : output_dir / ("mesh_" + std::to_string(n));
        const CaseResult res = run_case(mesh_cfg, dir);
        ConvergenceRow row{n, mesh_cfg.grid().spacing(), res.errors};
        report.rows.push_back(row);
        h.push_back(row.h);
        ex.push_back(row.errors.max_err_x);
        et.push_back(row.errors.max_err_theta);
        ek.push_back(row.errors.max_err_kappa);
        es.push_back(row.errors.max_sdf_dev);
    }
    report.order_x = observed_orders(h, ex);
    report.order_theta = observed_orders(h, et);
    report.order_kappa = observed_orders(h, ek);
    report.order_sdf_dev = observed_orders(h, es);
    if (!output_dir.empty()) {
        std::filesystem::create_directories(output_dir);
        auto out = open_output(output_dir / "convergence.csv");
        write_convergence_csv(out, report);
    }
    return report;
}

void write_timeseries_csv(std::ostream& out, const RunResult& result, int dim) {
    prepare(out);
    out << (dim == 3 ? "step,t,x,z,theta_deg,kappa,grad_norm,dt\n"
                     : "step,t,x,theta_deg,kappa,grad_norm,dt\n");
    for (const auto& row : result.rows) {
        const auto& r = row.record;
        out << row.step << ',' << r.t << ',' << r.x[0] << ',';
        if (dim == 3) out << r.x[2] << ',';
        out << r.theta_deg << ',' << r.kappa << ',' << r.grad_norm << ',' << row.dt << '\n';
    }
}

void write_reference_csv(std::ostream& out, const ReferenceTrajectory& reference) {
    prepare(out);
    out << "t,x,y,z,nx,ny,nz,grad_norm,theta_deg,kappa\n";
    for (const auto& s : reference.samples) {
        out << s.t << ',' << s.x[0] << ',' << s.x[1] << ',' << s.x[2] << ',' << s.n[0] << ','
            << s.n[1] << ',' << s.n[2] << ',' << s.grad_norm_standard << ',' << s.theta_deg << ','
            << s.kappa << '\n';
    }
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
    prepare(out);
    out << "cells,h,max_err_x,max_err_theta,max_err_kappa,max_sdf_dev,"
           "order_x,order_theta,order_kappa,order_sdf_dev\n";
    for (std::size_t m = 0; m < report.rows.size(); ++m) {
        const auto& r = report.rows[m];
        out << r.cells_x << ',' << r.h << ',' << r.errors.max_err_x << ',' << r.errors.max_err_theta
            << ',' << r.errors.max_err_kappa << ',' << r.errors.max_sdf_dev;
        // Orders are reported on the finer row of each pair.
        if (m == 0) {
            out << ",,,,\n";
        } else {
            out << ',' << report.order_x[m - 1] << ',' << report.order_theta[m - 1] << ','
                << report.order_kappa[m - 1] << ',' << report.order_sdf_dev[m - 1] << '\n';
        }
    }
}

}  // namespace sdpls
