// Command-line front end: single runs, mesh studies and field validation.

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdpls/config.hpp"
#include "sdpls/harness.hpp"
#include "sdpls/velocity.hpp"

namespace {

using nlohmann::json;

int fail(const std::string& kind, const std::string& message, const std::string& key = {}) {
    json err{{"error", kind}, {"message", message}};
    if (!key.empty()) err["key"] = key;
    std::cerr << err.dump() << '\n';
    return 1;
}

std::vector<int> parse_meshes(const std::string& text) {
    std::vector<int> meshes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) meshes.push_back(std::stoi(item));
    return meshes;
}

void print_errors(const sdpls::ErrorSummary& e) {
    std::cout << std::setprecision(6) << "max |x - x_ref|       " << e.max_err_x << '\n'
              << "max |theta - ref| deg " << e.max_err_theta << '\n'
              << "max |kappa - ref|     " << e.max_err_kappa << '\n'
              << "max |1 - |grad phi||  " << e.max_sdf_dev << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signed-distance-preserving level set advection"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run one case and write CSV/VTK output");
    run_cmd->add_option("config", config_path, "Configuration file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");

    std::string meshes_text;
    std::string source = "on";
    auto* conv_cmd = app.add_subcommand("convergence", "Mesh refinement study against the oracle");
    conv_cmd->add_option("config", config_path, "Configuration file")->required();
    conv_cmd->add_option("--meshes", meshes_text, "Cells along x, e.g. 100,200,400");
    conv_cmd->add_option("--source", source, "Source term on|off")
        ->check(CLI::IsMember({"on", "off"}));
    conv_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");

    std::string field_id;
    auto* val_cmd = app.add_subcommand("validate-field", "Check incompressibility and impermeability");
    val_cmd->add_option("id", field_id, "Velocity field id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail("usage", e.what());
    }

    try {
        if (*val_cmd) {
            const int dim = field_id == "linear3d" ? 3 : 2;
            const auto v = sdpls::AnalyticVelocity::from_id(field_id, dim);
            const auto report = sdpls::validate(v, sdpls::lattice_samples(v));
            json out{{"field", field_id},
                     {"max_abs_divergence", report.max_abs_divergence},
                     {"max_abs_wall_normal_velocity", report.max_abs_wall_normal_velocity}};
            std::cout << out.dump() << '\n';
            const bool ok = report.max_abs_divergence <= 1e-12 &&
                            (!v.wall_impermeable() || report.max_abs_wall_normal_velocity <= 1e-12);
            return ok ? 0 : fail("validation", "field violates incompressibility or impermeability");
        }

        sdpls::SolverConfig cfg = sdpls::parse_config(config_path);
        const std::filesystem::path dir = out_dir.empty() ? cfg.output_dir : out_dir;

        if (*run_cmd) {
            const auto res = sdpls::run_case(cfg, dir);
            std::cout << "steps " << res.run.final_state.step_index << ", records "
                      << res.run.rows.size() << ", output " << dir.string() << '\n';
            print_errors(res.errors);
            return 0;
        }

        std::vector<int> meshes = meshes_text.empty() ? cfg.meshes : parse_meshes(meshes_text);
        if (meshes.size() < 2) return fail("usage", "at least two meshes are required", "meshes");
        const auto report = sdpls::run_convergence(cfg, meshes, source == "on", dir);
        sdpls::write_convergence_csv(std::cout, report);
        return 0;
    } catch (const sdpls::ConfigError& e) {
        return fail("config", e.what(), e.key());
    } catch (const sdpls::SolverInstability& e) {
        return fail("instability", e.what(), "step=" + std::to_string(e.step_index()));
    } catch (const sdpls::UnknownFieldError& e) {
        return fail("unknown_field", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
}
