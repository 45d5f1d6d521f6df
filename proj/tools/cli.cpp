#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cosserat/config.hpp"
#include "cosserat/curvature_atlas.hpp"
#include "cosserat/field_io.hpp"
#include "cosserat/identities.hpp"
#include "cosserat/minimizer.hpp"
#include "cosserat/parallel.hpp"

namespace cosserat::cli {

namespace {

struct Options {
    std::string config;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 0;
    std::string out_dir = ".";
    bool relaxed = false;

    int samples = 200;
    int grid_n = 9;

    std::string input, output, from, to;
    std::string phi_file, rotation_file;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Machine-readable line, 17 significant digits.
void kv(std::ostream& out, const std::string& key, double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    out << key << " = " << s.str() << '\n';
}
void kv(std::ostream& out, const std::string& key, const std::string& v) { out << key << " = " << v << '\n'; }

std::string human(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

RunConfig require_config(const Options& o, bool require_definite) {
    if (o.config.empty()) throw UsageError("--config is required");
    return load_config(o.config, require_definite);
}

int cmd_identities(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.samples < 1) throw UsageError("--samples must be positive");
    if (o.grid_n < 3) throw UsageError("--grid-n must be at least 3");
    const auto results = run_identity_suite(o.seed, o.samples, o.grid_n);
    std::size_t width = 8;
    for (const auto& r : results) width = std::max(width, r.name.size());
    out << std::left << std::setw(static_cast<int>(width)) << "identity" << "  " << std::setw(12) << "max_error" << "  "
        << std::setw(12) << "tolerance" << "  status\n";
    int failures = 0;
    for (const auto& r : results) {
        out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(12) << human(r.max_error) << "  "
            << std::setw(12) << human(r.tolerance) << "  " << (r.passed ? "ok" : "VIOLATED") << '\n';
        if (!r.passed) {
            ++failures;
            err << "identity violated: " << r.name << " (max error " << human(r.max_error) << " > " << human(r.tolerance) << ")\n";
        }
    }
    for (const auto& r : results) kv(out, "identity." + r.name + ".max_error", r.max_error);
    kv(out, "identities.failed", static_cast<double>(failures));
    return failures == 0 ? 0 : 1;
}

int cmd_check(const Options& o, std::ostream& out) {
    const RunConfig cfg = require_config(o, false);
    const DefinitenessReport report = check_definiteness(cfg.material);
    std::size_t width = 10;
    for (const auto& c : report.conditions) width = std::max(width, c.expression.size());
    out << std::left << std::setw(static_cast<int>(width)) << "condition" << "  " << std::setw(12) << "margin" << "  status\n";
    for (const auto& c : report.conditions)
        out << std::left << std::setw(static_cast<int>(width)) << c.expression << "  " << std::setw(12) << human(c.margin) << "  "
            << (c.satisfied ? "ok" : "FAIL") << '\n';
    out << "verdict: " << (report.definite ? "definite" : "not definite") << '\n';
    for (const auto& c : report.conditions) {
        kv(out, "check." + c.key + ".margin", c.margin);
        kv(out, "check." + c.key + ".satisfied", c.satisfied ? "true" : "false");
    }
    kv(out, "check.definite", report.definite ? "true" : "false");
    if (report.definite) {
        const CoercivityConstants k = coercivity_constants(cfg.material.moduli, cfg.material.curvature);
        kv(out, "coercivity.c1", k.c1);
        kv(out, "coercivity.c2", k.c2);
        kv(out, "coercivity.c3", k.c3);
    }
    return report.definite ? 0 : 1;
}

Representation require_representation(const std::string& flag, const std::string& name) {
    const auto r = parse_representation(name);
    if (!r) throw UsageError(flag + ": unknown representation '" + name + "' (frak, ktilde, gamma, dislocation, torsion)");
    return *r;
}

int cmd_convert(const Options& o, std::ostream& out) {
    const Representation from = require_representation("--from", o.from);
    const Representation to = require_representation("--to", o.to);
    const AnyField in = load_field(o.input);
    const Grid& g = grid_of(in);

    auto measure_at = [&](std::size_t n) -> CurvatureMeasure {
        if (is_second_order(from)) {
            const auto* f = std::get_if<Mat3Field>(&in);
            if (!f) throw UsageError(o.input + ": --from " + o.from + " needs a mat3 field");
            return {from, (*f)[n]};
        }
        const auto* f = std::get_if<Ten3Field>(&in);
        if (!f) throw UsageError(o.input + ": --from " + o.from + " needs a ten3 field");
        return {from, (*f)[n]};
    };

    AnyField result = is_second_order(to) ? AnyField(Mat3Field(g)) : AnyField(Ten3Field(g));
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        const CurvatureMeasure c = convert(measure_at(n), to);
        if (auto* m = std::get_if<Mat3Field>(&result)) (*m)[n] = c.matrix();
        else std::get<Ten3Field>(result)[n] = c.tensor();
    }
    save_field(o.output, result);
    kv(out, "convert.nodes", static_cast<double>(g.node_count()));
    kv(out, "convert.from", std::string(representation_name(from)));
    kv(out, "convert.to", std::string(representation_name(to)));
    return 0;
}

void print_breakdown(std::ostream& out, const EnergyBreakdown& b) {
    kv(out, "energy.total", b.total());
    kv(out, "energy.stored", b.stored());
    kv(out, "energy.mp", b.mp);
    kv(out, "energy.curv", b.curv);
    kv(out, "energy.chiral", b.chiral);
    kv(out, "potential.total", b.load.total());
    kv(out, "potential.body_force", b.load.body_force);
    kv(out, "potential.traction", b.load.traction);
    kv(out, "potential.body_couple", b.load.body_couple);
    kv(out, "potential.surface_couple", b.load.surface_couple);
}

int cmd_energy(const Options& o, std::ostream& out) {
    const RunConfig cfg = require_config(o, true);
    const Problem prob = build_problem(cfg);
    const VectorField phi = o.phi_file.empty() ? reference_map(prob.grid) : load_field_as<VectorField>(o.phi_file);
    const RotationField r = o.rotation_file.empty() ? RotationField(prob.grid) : load_field_as<RotationField>(o.rotation_file);
    if (!(phi.grid == prob.grid) || !(r.grid == prob.grid)) throw UsageError("field grids do not match the configured grid");
    print_breakdown(out, energy_breakdown(phi, r, prob));
    return 0;
}

int cmd_minimize(const Options& o, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = require_config(o, true);
    const Problem prob = build_problem(cfg);
    MinimizeConfig mc = cfg.minimize;
    if (o.seed_given) mc.random_seed = o.seed;
    if (o.relaxed) mc.relaxed_rotations = true;
    if (!prob.boundary.has_dirichlet()) err << "warning: no Dirichlet faces; the energy may be unbounded below\n";

    const MinimizeResult res = minimize(prob, mc);

    std::filesystem::create_directories(o.out_dir);
    const std::filesystem::path dir(o.out_dir);
    save_field((dir / "phi.field").string(), res.phi);
    save_field((dir / "rotation.field").string(), res.rotation);
    {
        std::ofstream trace(dir / "trace.csv");
        if (!trace) throw UsageError("cannot write " + (dir / "trace.csv").string());
        write_trace_csv(trace, res);
    }

    kv(out, "minimize.status", std::string(status_name(res.status)));
    kv(out, "minimize.iterations", static_cast<double>(res.iterations));
    kv(out, "minimize.grad_norm", res.grad_norm());
    kv(out, "minimize.max_orthogonality_defect", res.max_orthogonality_defect);
    kv(out, "minimize.relaxed", mc.relaxed_rotations ? "true" : "false");
    print_breakdown(out, energy_breakdown(res.phi, res.rotation, prob));
    switch (res.status) {
        case MinimizeStatus::Converged: return 0;
        case MinimizeStatus::MaxIterations: return 2;
        case MinimizeStatus::LineSearchFailure: return 3;
    }
    return 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cosserat curvature identities, material screening and energy minimization", "cosserat"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--config", o.config, "run configuration (section.key = value)");
    app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
        o.seed = s;
        o.seed_given = true;
    }, "random seed");
    app.add_option("--threads", o.threads, "maximum worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out_dir, "output directory");
    app.add_flag("--relaxed", o.relaxed, "leave rotations free on Dirichlet faces");

    auto* ids = app.add_subcommand("identities", "randomized curvature identity checks");
    ids->add_option("--samples", o.samples, "random samples per identity");
    ids->add_option("--grid-n", o.grid_n, "nodes per axis for field checks");

    app.add_subcommand("check", "material definiteness screening");

    auto* conv = app.add_subcommand("convert", "convert a curvature field between representations");
    conv->add_option("input", o.input, "input field file")->required()->check(CLI::ExistingFile);
    conv->add_option("output", o.output, "output field file")->required();
    conv->add_option("--from", o.from, "frak|ktilde|gamma|dislocation|torsion")->required();
    conv->add_option("--to", o.to, "frak|ktilde|gamma|dislocation|torsion")->required();

    auto* en = app.add_subcommand("energy", "evaluate the total energy of a state");
    en->add_option("--phi", o.phi_file, "deformation field (default: reference map)")->check(CLI::ExistingFile);
    en->add_option("--rotation", o.rotation_file, "rotation field (default: identity)")->check(CLI::ExistingFile);

    app.add_subcommand("minimize", "minimize the total energy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    if (o.threads > 0) set_max_threads(o.threads);

    try {
        if (ids->parsed()) return cmd_identities(o, out, err);
        if (conv->parsed()) return cmd_convert(o, out);
        if (en->parsed()) return cmd_energy(o, out);
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "check") return cmd_check(o, out);
        if (name == "minimize") return cmd_minimize(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: unknown command\n";
    return 1;
}

}  // namespace cosserat::cli
