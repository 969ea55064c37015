#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "sdpls/config.hpp"
#include "sdpls/harness.hpp"
#include "sdpls/simulation.hpp"
#include "sdpls/vtk.hpp"

using namespace sdpls;
namespace fs = std::filesystem;

namespace {

const fs::path config_dir = SDPLS_CONFIG_DIR;

const char* small_vortex = R"(
dim: 2
origin: [0, 0]
extent: [1, 0.5]
cells: [40, 20]
velocity: vortex_box
surface_center: [0.5, -0.15]
surface_radius: 0.3
t_end: 0.2
snapshot_times: [0.1]
)";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("sdpls_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string error_key(const std::string& text) {
    try {
        parse_config_string(text).validate();
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("bundled configurations") {
    const SolverConfig vortex = parse_config(config_dir / "vortex2d.cfg");
    CHECK_NOTHROW(vortex.validate());
    CHECK(vortex.dim == 2);
    CHECK(vortex.grid().spacing() == doctest::Approx(0.01));
    CHECK(vortex.surface.center == Vec3(0.5, -0.15, 0));
    CHECK(vortex.surface.radius == 0.3);
    CHECK(vortex.control.cfl == 0.5);
    CHECK(vortex.source.w1 == 0.05);
    CHECK(vortex.source.w2 == 0.15);
    CHECK(vortex.source.epsilon == 1e-12);
    CHECK(vortex.t_end == 0.875);
    CHECK(vortex.velocity().id() == "vortex_box");

    const SolverConfig cap = parse_config(config_dir / "linear3d.cfg");
    CHECK_NOTHROW(cap.validate());
    CHECK(cap.grid().spacing() == doctest::Approx(0.04));
    CHECK(cap.control.cfl == 0.2);
    CHECK(cap.surface.center == Vec3(0, -0.2, 0));
    CHECK(cap.surface.radius == 0.6);
    REQUIRE(cap.contact_point.has_value());
    CHECK(*cap.contact_point == Vec3(0.4, 0, 0.4));
    CHECK(cap.t_end == 1.93);
    CHECK(cap.source.w1 == 0.2);
    CHECK(cap.source.w2 == 0.6);

    // 3D widths default to the same resolution in cells as the 2D case
    const SolverConfig bare = parse_config_string(
        "dim: 3\norigin: [0, 0, 0]\nextent: [2, 0.6, 2]\ncells: [50, 15, 50]\n"
        "velocity: linear3d\nsurface_center: [0, -0.2, 0]\nsurface_radius: 0.6\n"
        "contact_point: [0.4, 0, 0.4]\nt_end: 1\n");
    CHECK(bare.source.w1 == 0.2);
    CHECK(bare.source.w2 == 0.6);
    CHECK(parse_config_string(small_vortex).source.w1 == 0.05);

    for (const char* name : {"periodic2d.cfg", "vortex2d_fine.cfg"}) {
        CHECK_NOTHROW(parse_config(config_dir / name).validate());
    }
}

TEST_CASE("configuration errors name the offending key") {
    const std::string base = small_vortex;
    CHECK(error_key(base) == "<none>");
    CHECK(error_key(base + "w1: 0.2\nw2: 0.1\n") == "w2");
    CHECK(error_key(base + "cfl: 1.5\n") == "cfl");
    CHECK(error_key(base + "colour: blue\n") == "colour");
    CHECK(error_key(base + "velocity_params: {speed: 1}\n") == "velocity_params");
    CHECK(error_key("dim: 2\norigin: [0, 0]\n") == "extent");

    std::string wrong_field = base;
    wrong_field.replace(wrong_field.find("vortex_box"), 10, "tornado");
    CHECK(error_key(wrong_field) == "velocity");

    std::string detached = base;
    detached.replace(detached.find("-0.15"), 5, "0.35");
    CHECK(error_key(detached) == "surface_radius");

    CHECK_THROWS_AS(parse_config(config_dir / "missing.cfg"), ConfigError);
}

TEST_CASE("mesh scaling keeps the spacing uniform") {
    const SolverConfig cap = parse_config(config_dir / "linear3d.cfg");
    const SolverConfig fine = cap.with_mesh(200);
    CHECK(fine.cells == std::array<int, 3>{200, 60, 200});
    CHECK_THROWS_AS(cap.with_mesh(33), std::invalid_argument);
}

TEST_CASE("observed orders") {
    const std::vector<double> h{0.04, 0.02, 0.01};
    const std::vector<double> e{4e-2, 2e-2, 1e-2};
    const auto orders = observed_orders(h, e);
    REQUIRE(orders.size() == 2);
    CHECK(orders[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(orders[1] == doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<double> quad{1.6e-3, 4e-4, 1e-4};
    CHECK(observed_orders(h, quad)[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("zero end time records only the initial state") {
    SolverConfig cfg = parse_config_string(small_vortex);
    cfg.t_end = 0.0;
    cfg.snapshot_times.clear();
    const RunResult r = run(cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].step == 0);
    CHECK(r.rows[0].dt == 0.0);
    CHECK(r.rows[0].record.theta_deg == doctest::Approx(60.0).epsilon(1e-2));
    REQUIRE(r.snapshots.size() == 1);
    const ScalarField phi0 = initial_state(cfg).phi;
    for (std::size_t i = 0; i < phi0.size(); ++i) CHECK(r.snapshots[0].phi[i] == phi0[i]);

    const fs::path dir = scratch("tzero");
    run_case(cfg, dir);
    std::ifstream ts(dir / "timeseries.csv");
    std::string line;
    int lines = 0;
    while (std::getline(ts, line)) ++lines;
    CHECK(lines == 2);
    fs::remove_all(dir);
}

TEST_CASE("run records every step and the requested snapshots") {
    const SolverConfig cfg = parse_config_string(small_vortex);
    const RunResult r = run(cfg);
    CHECK(r.rows.back().record.t == 0.2);
    CHECK(r.final_state.t == 0.2);
    CHECK(r.rows.size() == static_cast<std::size_t>(r.final_state.step_index + 1));
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0].t == 0.1);
    CHECK(r.snapshots[1].t == 0.2);
    CHECK(r.detached_steps == 0);
    for (std::size_t m = 1; m < r.rows.size(); ++m) CHECK(r.rows[m].record.t > r.rows[m - 1].record.t);
}

TEST_CASE("reruns are bit identical") {
    const SolverConfig cfg = parse_config_string(small_vortex);
    const fs::path a = scratch("rerun_a");
    const fs::path b = scratch("rerun_b");
    run_case(cfg, a);
    run_case(cfg, b);
    for (const char* f : {"timeseries.csv", "reference.csv", "snapshot_0.vtk", "snapshot_1.vtk"}) {
        CAPTURE(f);
        const std::string sa = slurp(a / f);
        CHECK(!sa.empty());
        CHECK(sa == slurp(b / f));
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("csv headers") {
    const SolverConfig cfg = parse_config_string(small_vortex);
    const CaseResult res = run_case(cfg);
    std::ostringstream ts, ref, conv;
    write_timeseries_csv(ts, res.run, 2);
    write_reference_csv(ref, res.reference);
    CHECK(ts.str().rfind("step,t,x,theta_deg,kappa,grad_norm,dt\n", 0) == 0);
    CHECK(ref.str().rfind("t,x,y,z,nx,ny,nz,grad_norm,theta_deg,kappa\n", 0) == 0);

    ConvergenceReport report;
    report.rows.push_back({100, 0.01, res.errors});
    write_convergence_csv(conv, report);
    CHECK(conv.str().rfind("cells,h,max_err_x,max_err_theta,max_err_kappa,max_sdf_dev", 0) == 0);
}

TEST_CASE("errors against the reference are small on a coarse mesh") {
    const CaseResult res = run_case(parse_config_string(small_vortex));
    CHECK(res.errors.max_err_x < 5e-3);
    CHECK(res.errors.max_err_theta < 2.0);
    CHECK(res.errors.max_sdf_dev < 2e-2);
    CHECK(res.reference.samples.size() == res.run.rows.size());
}

TEST_CASE("vtk golden file") {
    std::ostringstream out;
    const std::vector<double> values{1, 2, 3, 4};
    write_vtk_structured_points(out, "phi", {2, 2, 1}, Vec3(0.25, 0.25, 0), Vec3(0.5, 0.5, 0.5),
                                "phi", values);
    const std::string expected =
        "# vtk DataFile Version 3.0\n"
        "phi\n"
        "ASCII\n"
        "DATASET STRUCTURED_POINTS\n"
        "DIMENSIONS 2 2 1\n"
        "ORIGIN 0.25 0.25 0\n"
        "SPACING 0.5 0.5 0.5\n"
        "POINT_DATA 4\n"
        "SCALARS phi double 1\n"
        "LOOKUP_TABLE default\n"
        "1\n2\n3\n4\n";
    CHECK(out.str() == expected);
    CHECK_THROWS_AS(write_vtk_structured_points(out, "x", {2, 2, 2}, Vec3::Zero(), Vec3::Ones(),
                                                "phi", values),
                    std::invalid_argument);
}

TEST_CASE("vtk snapshot of a grid") {
    const Grid g(2, Vec3::Zero(), Vec3(1, 0.5, 0), {8, 4, 1});
    const ScalarField phi = sample_field(g, [](const Vec3& x) { return x[0]; });
    const fs::path dir = scratch("vtk");
    fs::create_directories(dir);
    write_vtk_snapshot(phi, dir / "s.vtk");
    const std::string text = slurp(dir / "s.vtk");
    CHECK(text.find("DIMENSIONS 8 4 1\n") != std::string::npos);
    CHECK(text.find("ORIGIN 0.0625 0.0625 0\n") != std::string::npos);
    CHECK(text.find("SCALARS phi double 1\n") != std::string::npos);
    fs::remove_all(dir);
}
