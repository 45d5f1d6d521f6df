#include "cosserat/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "cosserat/field_io.hpp"

namespace cosserat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

double to_double(const std::string& key, const std::string& tok) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + tok + "'");
    return v;
}

long long to_integer(const std::string& key, const std::string& tok) {
    long long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ConfigError(key + ": expected an integer, got '" + tok + "'");
    return v;
}

std::vector<double> numbers(const std::string& key, const std::string& value, std::size_t count) {
    const auto toks = split_ws(value);
    if (toks.size() != count)
        throw ConfigError(key + ": expected " + std::to_string(count) + " numbers, got " + std::to_string(toks.size()));
    std::vector<double> out;
    for (const auto& t : toks) out.push_back(to_double(key, t));
    return out;
}

Vec3 vec3(const std::string& key, const std::string& value) {
    const auto v = numbers(key, value, 3);
    return {{v[0], v[1], v[2]}};
}

Mat3 mat3(const std::string& key, const std::string& value) {
    const auto toks = split_ws(value);
    if (toks.size() == 1) return to_double(key, toks[0]) * Mat3::identity();
    const auto v = numbers(key, value, 9);
    Mat3 m;
    std::copy(v.begin(), v.end(), m.c.begin());
    return m;
}

bool boolean(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

int axis(const std::string& key, const std::string& value) {
    if (value == "1" || value == "x") return 0;
    if (value == "2" || value == "y") return 1;
    if (value == "3" || value == "z") return 2;
    throw ConfigError(key + ": expected 1, 2, 3 (or x, y, z), got '" + value + "'");
}

std::string existing_file(const std::string& key, const std::string& value, const std::string& base) {
    std::filesystem::path p(value);
    if (p.is_relative()) p = std::filesystem::path(base) / p;
    if (!std::filesystem::is_regular_file(p)) throw ConfigError(key + ": file not found: " + p.string());
    return p.string();
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value, const std::string& base)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["domain.origin"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.origin = vec3(k, v); };
        t["domain.extent"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) {
            c.extent = vec3(k, v);
            for (double e : c.extent.c)
                if (!(e > 0.0)) throw ConfigError(k + ": extents must be positive");
        };
        t["grid.n"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) {
            const auto toks = split_ws(v);
            if (toks.size() != 1 && toks.size() != 3) throw ConfigError(k + ": expected 1 or 3 node counts");
            for (std::size_t a = 0; a < 3; ++a) {
                const long long n = to_integer(k, toks[toks.size() == 1 ? 0 : a]);
                if (n < 2 || n > 4096) throw ConfigError(k + ": node counts must lie in [2, 4096]");
                c.counts[a] = static_cast<int>(n);
            }
        };

        auto material = [&t](const std::string& name, auto getter) {
            t["material." + name] = [getter](RunConfig& c, const std::string& k, const std::string& v, const std::string&) {
                getter(c.material) = to_double(k, v);
            };
        };
        material("mu", [](MaterialParams& m) -> double& { return m.moduli.mu; });
        material("kappa", [](MaterialParams& m) -> double& { return m.moduli.kappa; });
        material("mu_c", [](MaterialParams& m) -> double& { return m.moduli.mu_c; });
        material("a1", [](MaterialParams& m) -> double& { return m.curvature.a1; });
        material("a2", [](MaterialParams& m) -> double& { return m.curvature.a2; });
        material("a3", [](MaterialParams& m) -> double& { return m.curvature.a3; });
        material("L_c", [](MaterialParams& m) -> double& { return m.curvature.L_c; });
        material("p", [](MaterialParams& m) -> double& { return m.curvature.p; });
        material("beta1", [](MaterialParams& m) -> double& { return m.chiral.beta1; });
        material("beta2", [](MaterialParams& m) -> double& { return m.chiral.beta2; });
        material("beta3", [](MaterialParams& m) -> double& { return m.chiral.beta3; });

        for (Face f : kAllFaces) {
            t[std::string("boundary.") + face_name(f)] = [f](RunConfig& c, const std::string& k, const std::string& v, const std::string&) {
                if (v == "dirichlet") c.boundary[f] = BoundaryTag::Dirichlet;
                else if (v == "traction") c.boundary[f] = BoundaryTag::Traction;
                else throw ConfigError(k + ": expected dirichlet or traction, got '" + v + "'");
            };
        }

        t["dirichlet.phi"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) {
            if (v == "identity") c.dirichlet.phi = PhiData::Identity;
            else if (v == "file") c.dirichlet.phi = PhiData::File;
            else throw ConfigError(k + ": expected identity or file, got '" + v + "'");
        };
        t["dirichlet.phi_file"] = [](RunConfig& c, const auto& k, const auto& v, const auto& b) { c.dirichlet.phi_file = existing_file(k, v, b); };
        t["dirichlet.rotation"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) {
            if (v == "identity") c.dirichlet.rotation = RotationData::Identity;
            else if (v == "twist") c.dirichlet.rotation = RotationData::Twist;
            else if (v == "file") c.dirichlet.rotation = RotationData::File;
            else throw ConfigError(k + ": expected identity, twist or file, got '" + v + "'");
        };
        t["dirichlet.rotation_file"] = [](RunConfig& c, const auto& k, const auto& v, const auto& b) {
            c.dirichlet.rotation_file = existing_file(k, v, b);
        };
        t["dirichlet.twist_axis"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.dirichlet.twist_axis = axis(k, v); };
        t["dirichlet.twist_direction"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.dirichlet.twist_direction = axis(k, v); };
        t["dirichlet.twist_rate"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.dirichlet.twist_rate = to_double(k, v); };

        t["loads.f"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.loads.f = vec3(k, v); };
        t["loads.N"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.loads.N = vec3(k, v); };
        t["loads.M"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.loads.M = mat3(k, v); };
        t["loads.M_c"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.loads.M_c = mat3(k, v); };
        t["loads.f_file"] = [](RunConfig& c, const auto& k, const auto& v, const auto& b) { c.loads.f_file = existing_file(k, v, b); };
        t["loads.N_file"] = [](RunConfig& c, const auto& k, const auto& v, const auto& b) { c.loads.N_file = existing_file(k, v, b); };
        t["loads.M_file"] = [](RunConfig& c, const auto& k, const auto& v, const auto& b) { c.loads.M_file = existing_file(k, v, b); };
        t["loads.M_c_file"] = [](RunConfig& c, const auto& k, const auto& v, const auto& b) { c.loads.M_c_file = existing_file(k, v, b); };

        auto count = [](const std::string& k, const std::string& v) {
            const long long n = to_integer(k, v);
            if (n <= 0 || n > 100000000) throw ConfigError(k + ": must be a positive count");
            return static_cast<int>(n);
        };
        t["minimize.max_iterations"] = [count](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.max_iterations = count(k, v); };
        t["minimize.max_backtracks"] = [count](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.max_backtracks = count(k, v); };
        t["minimize.grad_tolerance"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.grad_tolerance = to_double(k, v); };
        t["minimize.initial_step"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.initial_step = to_double(k, v); };
        t["minimize.armijo_c"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.armijo_c = to_double(k, v); };
        t["minimize.backtrack_factor"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.backtrack_factor = to_double(k, v); };
        t["minimize.relaxed_rotations"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.relaxed_rotations = boolean(k, v); };
        t["minimize.random_seed"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) {
            const long long s = to_integer(k, v);
            if (s < 0) throw ConfigError(k + ": must be non-negative");
            c.minimize.random_seed = static_cast<std::uint64_t>(s);
        };
        t["minimize.initial_perturbation"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.initial_perturbation = to_double(k, v); };
        t["minimize.max_rotation_step"] = [](RunConfig& c, const auto& k, const auto& v, const auto&) { c.minimize.max_rotation_step = to_double(k, v); };
        return t;
    }();
    return table;
}

void require_definite(const MaterialParams& m) {
    const DefinitenessReport report = check_definiteness(m);
    if (report.definite) return;
    std::string failed;
    for (const auto& c : report.conditions)
        if (!c.satisfied) failed += (failed.empty() ? "" : ", ") + c.expression;
    throw ConfigError("material parameters violate: " + failed);
}

template <class F>
F load_on_grid(const std::string& path, const Grid& g) {
    F f = [&] {
        try {
            return load_field_as<F>(path);
        } catch (const FieldFormatError& e) {
            throw ConfigError(e.what());
        }
    }();
    if (!(f.grid == g)) throw ConfigError(path + ": field grid does not match the configured grid");
    return f;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& base_dir, bool require_definite_material) {
    RunConfig cfg;
    const auto& table = setters();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected 'section.key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError(where + "unknown key '" + key + "'");
        if (cfg.entries.count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(where + key + ": missing value");
        try {
            it->second(cfg, key, value, base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
        cfg.entries[key] = value;
    }

    const DirichletSettings& d = cfg.dirichlet;
    if (d.phi == PhiData::File && d.phi_file.empty()) throw ConfigError("dirichlet.phi = file needs dirichlet.phi_file");
    if (d.rotation == RotationData::File && d.rotation_file.empty())
        throw ConfigError("dirichlet.rotation = file needs dirichlet.rotation_file");
    try {
        cfg.minimize.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (require_definite_material) require_definite(cfg.material);
    return cfg;
}

RunConfig load_config(const std::string& path, bool require_definite_material) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    const std::string base = std::filesystem::path(path).parent_path().string();
    return parse_config(in, base.empty() ? "." : base, require_definite_material);
}

Problem build_problem(const RunConfig& cfg) {
    require_definite(cfg.material);
    const Grid g = cfg.grid();
    Problem prob(g, cfg.boundary, cfg.material);

    const LoadSettings& l = cfg.loads;
    prob.loads.body_force = l.f_file.empty() ? VectorField(g, l.f) : load_on_grid<VectorField>(l.f_file, g);
    prob.loads.traction = l.N_file.empty() ? VectorField(g, l.N) : load_on_grid<VectorField>(l.N_file, g);
    prob.loads.body_couple = l.M_file.empty() ? Mat3Field(g, l.M) : load_on_grid<Mat3Field>(l.M_file, g);
    prob.loads.surface_couple = l.M_c_file.empty() ? Mat3Field(g, l.M_c) : load_on_grid<Mat3Field>(l.M_c_file, g);

    const DirichletSettings& d = cfg.dirichlet;
    const VectorField phi = d.phi == PhiData::File ? load_on_grid<VectorField>(d.phi_file, g) : reference_map(g);
    RotationField r(g);
    if (d.rotation == RotationData::File) {
        r = load_on_grid<RotationField>(d.rotation_file, g);
    } else if (d.rotation == RotationData::Twist) {
        for (std::size_t n = 0; n < g.node_count(); ++n)
            r[n] = exp_so3((d.twist_rate * g.position(n)[d.twist_direction]) * Vec3::unit(d.twist_axis));
    }
    prob.dirichlet = DirichletData::from_fields(phi, r, cfg.boundary);
    return prob;
}

}  // namespace cosserat
