#include "sdpls/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace sdpls {

namespace {

const std::set<std::string> kKnownKeys{
    "dim",      "origin",          "extent",          "cells",         "velocity",
    "velocity_params", "surface_center", "surface_radius", "t_end",   "cfl",
    "c_r",      "epsilon",         "w1",              "w2",            "source",
    "contact_point", "contact_selector", "snapshot_times", "output_dir", "dt_ref",
    "meshes"};

template <class T>
T scalar(const YAML::Node& root, const std::string& key) {
    try {
        return root[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(key, "malformed value");
    }
}

template <class T>
std::vector<T> sequence(const YAML::Node& root, const std::string& key) {
    const YAML::Node node = root[key];
    if (!node.IsSequence()) throw ConfigError(key, "expected a list");
    std::vector<T> out;
    try {
        for (const auto& item : node) out.push_back(item.as<T>());
    } catch (const YAML::Exception&) {
        throw ConfigError(key, "malformed list entry");
    }
    return out;
}

Vec3 point(const YAML::Node& root, const std::string& key, int dim) {
    const auto v = sequence<double>(root, key);
    if (v.size() != static_cast<std::size_t>(dim)) {
        throw ConfigError(key, "expected " + std::to_string(dim) + " components");
    }
    Vec3 p = Vec3::Zero();
    for (int a = 0; a < dim; ++a) p[a] = v[a];
    return p;
}

void require(const YAML::Node& root, const std::string& key) {
    if (!root[key]) throw ConfigError(key, "missing required key");
}

SolverConfig from_yaml(const YAML::Node& root) {
    if (!root.IsMap()) throw ConfigError("", "configuration must be a key-value mapping");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
    }
    for (const char* key : {"dim", "origin", "extent", "cells", "velocity", "surface_center",
                            "surface_radius", "t_end"}) {
        require(root, key);
    }

    SolverConfig cfg;
    cfg.dim = scalar<int>(root, "dim");
    if (cfg.dim != 2 && cfg.dim != 3) throw ConfigError("dim", "must be 2 or 3");
    cfg.origin = point(root, "origin", cfg.dim);
    cfg.extent = point(root, "extent", cfg.dim);
    const auto cells = sequence<int>(root, "cells");
    if (cells.size() != static_cast<std::size_t>(cfg.dim)) {
        throw ConfigError("cells", "expected " + std::to_string(cfg.dim) + " components");
    }
    for (int a = 0; a < cfg.dim; ++a) cfg.cells[a] = cells[a];

    cfg.velocity_id = scalar<std::string>(root, "velocity");
    if (const auto params = root["velocity_params"]) {
        if (!params.IsMap()) throw ConfigError("velocity_params", "expected a mapping");
        for (const auto& kv : params) {
            const auto name = kv.first.as<std::string>();
            try {
                cfg.velocity_params[name] = kv.second.as<double>();
            } catch (const YAML::Exception&) {
                throw ConfigError("velocity_params", "malformed value for " + name);
            }
        }
    }
    cfg.surface.center = point(root, "surface_center", cfg.dim);
    cfg.surface.radius = scalar<double>(root, "surface_radius");
    cfg.t_end = scalar<double>(root, "t_end");

    if (cfg.dim == 3) {
        cfg.source.w1 = 0.2;
        cfg.source.w2 = 0.6;
    }
    if (root["cfl"]) cfg.control.cfl = scalar<double>(root, "cfl");
    if (root["c_r"]) cfg.control.c_r = scalar<double>(root, "c_r");
    if (root["epsilon"]) cfg.source.epsilon = scalar<double>(root, "epsilon");
    if (root["w1"]) cfg.source.w1 = scalar<double>(root, "w1");
    if (root["w2"]) cfg.source.w2 = scalar<double>(root, "w2");
    if (root["source"]) cfg.source.enabled = scalar<bool>(root, "source");
    if (root["contact_point"]) cfg.contact_point = point(root, "contact_point", cfg.dim);
    if (root["contact_selector"]) {
        const auto sel = scalar<std::string>(root, "contact_selector");
        if (sel == "rightmost") cfg.selector = CrossingSelector::rightmost;
        else if (sel == "leftmost") cfg.selector = CrossingSelector::leftmost;
        else throw ConfigError("contact_selector", "must be rightmost or leftmost");
    }
    if (root["snapshot_times"]) cfg.snapshot_times = sequence<double>(root, "snapshot_times");
    if (root["output_dir"]) cfg.output_dir = scalar<std::string>(root, "output_dir");
    if (root["dt_ref"]) cfg.dt_ref = scalar<double>(root, "dt_ref");
    if (root["meshes"]) cfg.meshes = sequence<int>(root, "meshes");

    cfg.validate();
    return cfg;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

Grid SolverConfig::grid() const { return Grid(dim, origin, extent, cells); }

AnalyticVelocity SolverConfig::velocity() const {
    return AnalyticVelocity::from_id(velocity_id, dim, velocity_params);
}

SolverConfig SolverConfig::with_mesh(int cells_x) const {
    SolverConfig out = *this;
    const double h = extent[0] / cells_x;
    out.cells[0] = cells_x;
    for (int a = 1; a < dim; ++a) {
        const double n = extent[a] / h;
        const long rounded = std::lround(n);
        if (std::abs(n - static_cast<double>(rounded)) > 1e-9 * n) {
            std::ostringstream msg;
            msg << cells_x << " cells along x do not give a uniform mesh on axis " << a;
            throw std::invalid_argument(msg.str());
        }
        out.cells[a] = static_cast<int>(rounded);
    }
    return out;
}

void SolverConfig::validate() const {
    try {
        (void)grid();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("cells", e.what());
    }
    try {
        (void)velocity();
    } catch (const UnknownFieldError& e) {
        throw ConfigError("velocity", e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("velocity_params", e.what());
    }
    if (!(control.cfl > 0.0 && control.cfl <= 1.0)) throw ConfigError("cfl", "must lie in (0, 1]");
    if (!(control.c_r > 0.0 && control.c_r < 1.0)) throw ConfigError("c_r", "must lie in (0, 1)");
    if (!(source.epsilon > 0.0)) throw ConfigError("epsilon", "must be positive");
    if (!(source.w1 > 0.0)) throw ConfigError("w1", "must be positive");
    if (!(source.w2 > source.w1)) throw ConfigError("w2", "must be greater than w1");
    if (!(surface.radius > 0.0)) throw ConfigError("surface_radius", "must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end", "must be >= 0");
    if (!(dt_ref > 0.0)) throw ConfigError("dt_ref", "must be positive");
    for (double ts : snapshot_times) {
        if (ts < 0.0 || ts > t_end) throw ConfigError("snapshot_times", "must lie within [0, t_end]");
    }
    for (std::size_t m = 1; m < meshes.size(); ++m) {
        if (meshes[m] <= meshes[m - 1]) throw ConfigError("meshes", "must be strictly refining");
    }
    const double wall_y = origin[1];
    const double depth = std::abs(surface.center[1] - wall_y);
    if (!(depth < surface.radius)) {
        throw ConfigError("surface_radius", "initial surface does not intersect the wall y = origin_y");
    }
    if (dim == 3 && !contact_point) throw ConfigError("contact_point", "required in 3D");
    if (contact_point) {
        if (std::abs((*contact_point)[1] - wall_y) > 1e-12) {
            throw ConfigError("contact_point", "must lie on the wall y = origin_y");
        }
        Vec3 d = *contact_point - surface.center;
        if (dim == 2) d[2] = 0.0;
        if (std::abs(d.norm() - surface.radius) > 1e-9 * surface.radius) {
            throw ConfigError("contact_point", "must lie on the initial surface");
        }
    }
}

SolverConfig parse_config_string(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("", std::string("malformed configuration: ") + e.what());
    }
    return from_yaml(root);
}

SolverConfig parse_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("", "cannot open configuration file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_string(buf.str());
}

}  // namespace sdpls
