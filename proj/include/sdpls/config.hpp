#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdpls/diagnostics.hpp"
#include "sdpls/grid.hpp"
#include "sdpls/solver.hpp"
#include "sdpls/velocity.hpp"

namespace sdpls {

/// Initial interface: circle (2D) or sphere (3D); phi0 is its signed distance.
struct SphereSurface {
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
};

/**
 * Complete description of one run.
 *
 * File schema (YAML mapping, unknown keys rejected):
 *
 *   dim             2 | 3                                   required
 *   origin          [x, y(, z)]                             required
 *   extent          [Lx, Ly(, Lz)]                          required
 *   cells           [nx, ny(, nz)]                          required
 *   velocity        vortex_box | time_periodic | linear3d | translation | rotation2d
 *                                                           required
 *   velocity_params {name: value, ...}                      field defaults
 *   surface_center  [x, y(, z)]                             required
 *   surface_radius  R                                       required
 *   t_end           end time >= 0                           required
 *   cfl             (0, 1]                                  0.5
 *   c_r             (0, 1)                                  0.5
 *   epsilon         > 0                                     1e-12
 *   w1, w2          0 < w1 < w2                             0.05, 0.15 (2D); 0.2, 0.6 (3D)
 *   source          on | off                                on
 *   contact_point   tracked wall point [x, 0, z]            required in 3D
 *   contact_selector rightmost | leftmost                   rightmost (2D)
 *   snapshot_times  [t, ...] within [0, t_end]              []
 *   output_dir      path                                    "out"
 *   dt_ref          oracle step                             1e-4
 *   meshes          [nx, ...] for convergence studies       []
 */
struct SolverConfig {
    int dim = 2;
    Vec3 origin = Vec3::Zero();
    Vec3 extent = Vec3::Zero();
    std::array<int, 3> cells{1, 1, 1};

    StepControl control;
    SourceParams source;

    std::string velocity_id;
    ParamMap velocity_params;

    SphereSurface surface;
    std::optional<Vec3> contact_point;
    CrossingSelector selector = CrossingSelector::rightmost;

    double t_end = 0.0;
    std::vector<double> snapshot_times;
    std::string output_dir = "out";
    double dt_ref = 1e-4;
    std::vector<int> meshes;

    Grid grid() const;
    AnalyticVelocity velocity() const;

    /// Same case on a mesh with cells_x cells along x; the other axes are
    /// scaled to keep the spacing uniform. Throws std::invalid_argument if
    /// that is impossible.
    SolverConfig with_mesh(int cells_x) const;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

SolverConfig parse_config(const std::filesystem::path& file);
SolverConfig parse_config_string(const std::string& text);

}  // namespace sdpls
