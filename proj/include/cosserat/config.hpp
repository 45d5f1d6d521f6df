#pragma once

// Line-oriented run configuration:
//
//   # comment
//   section.key = value
//
// Sections: domain, grid, material, boundary, dirichlet, loads, minimize.
// Relative file paths are resolved against the directory of the config file.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "cosserat/functional.hpp"
#include "cosserat/minimizer.hpp"

namespace cosserat {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PhiData { Identity, File };
enum class RotationData { Identity, Twist, File };

struct DirichletSettings {
    PhiData phi = PhiData::Identity;
    std::string phi_file;
    RotationData rotation = RotationData::Identity;
    std::string rotation_file;
    int twist_axis = 2;       // rotation axis e_(axis+1)
    int twist_direction = 0;  // angle grows along x_(direction+1)
    double twist_rate = 0.0;  // radians per unit length
};

struct LoadSettings {
    Vec3 f, N;
    Mat3 M, M_c;
    std::string f_file, N_file, M_file, M_c_file;
};

struct RunConfig {
    Vec3 origin{{0.0, 0.0, 0.0}};
    Vec3 extent{{1.0, 1.0, 1.0}};
    std::array<int, 3> counts{8, 8, 8};
    MaterialParams material;
    BoundaryPartition boundary;
    DirichletSettings dirichlet;
    LoadSettings loads;
    MinimizeConfig minimize;
    std::map<std::string, std::string> entries;  // raw key/value pairs

    Grid grid() const { return Grid(origin, extent, counts); }
};

/// Parses and checks types, ranges, referenced files and (when
/// `require_definite`) the definiteness of the material. Throws ConfigError.
RunConfig parse_config(std::istream& in, const std::string& base_dir = ".", bool require_definite = true);
RunConfig load_config(const std::string& path, bool require_definite = true);

/// Builds loads and Dirichlet data on the configured grid. Throws ConfigError.
Problem build_problem(const RunConfig& cfg);

}  // namespace cosserat
