#include "cosserat/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cosserat/parallel.hpp"

namespace cosserat {

void MinimizeConfig::validate() const {
    if (max_iterations <= 0) throw std::invalid_argument("minimize.max_iterations must be positive");
    if (!(grad_tolerance > 0.0)) throw std::invalid_argument("minimize.grad_tolerance must be positive");
    if (!(initial_step > 0.0)) throw std::invalid_argument("minimize.initial_step must be positive");
    if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw std::invalid_argument("minimize.armijo_c must lie in (0, 1)");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
        throw std::invalid_argument("minimize.backtrack_factor must lie in (0, 1)");
    if (max_backtracks <= 0) throw std::invalid_argument("minimize.max_backtracks must be positive");
    if (!(initial_perturbation >= 0.0)) throw std::invalid_argument("minimize.initial_perturbation must be non-negative");
    if (!(max_rotation_step > 0.0)) throw std::invalid_argument("minimize.max_rotation_step must be positive");
}

std::string_view status_name(MinimizeStatus s) {
    switch (s) {
        case MinimizeStatus::Converged: return "Converged";
        case MinimizeStatus::MaxIterations: return "MaxIterations";
        case MinimizeStatus::LineSearchFailure: return "LineSearchFailure";
    }
    return "?";
}

namespace {

struct FreeMask {
    std::vector<char> phi;
    std::vector<char> rot;
};

FreeMask free_mask(const Problem& prob, bool relaxed) {
    const std::size_t count = prob.grid.node_count();
    FreeMask m{std::vector<char>(count), std::vector<char>(count)};
    for (std::size_t n = 0; n < count; ++n) {
        const bool d = prob.boundary.is_dirichlet(prob.grid, n);
        m.phi[n] = !d;
        m.rot[n] = relaxed || !d;
    }
    return m;
}

// Per-node pieces of the adjoint: W = w_n R_n P_n scatters into phi through the
// gradient stencil, Z[a] = w_n (R_n Q_n) : eps(., a, .) into R through the curl
// stencil along axis a, and `local` is the direct dependence on R_n.
struct NodeAdjoint {
    Mat3 w_rp;
    std::array<Mat3, 3> z;
    Mat3 local;
};

Gradient assemble(const DiscreteFunctional& fun, const VectorField& phi, const RotationField& r, const FreeMask& mask) {
    const Problem& prob = fun.problem();
    const Grid& g = prob.grid;
    const std::size_t count = g.node_count();
    const auto& vol_w = fun.volume_weights();
    const auto& surf_w = fun.traction_weights();
    const Ten3& e = eps();

    std::vector<NodeAdjoint> adj(count);
    parallel_for(count, [&](std::size_t n) {
        const NodeState s = fun.node_state(phi, r, n);
        const EnergyDerivative d = w_derivative(s.E, s.K, prob.material);
        const Mat3& rn = r[n].matrix();
        const double w = vol_w[n];
        NodeAdjoint& a = adj[n];
        a.w_rp = w * (rn * d.dE);
        const Mat3 y = w * (rn * d.dK);
        for (int ax = 0; ax < 3; ++ax) {
            Mat3 z;
            for (int i = 0; i < 3; ++i)
                for (int q = 0; q < 3; ++q) {
                    double acc = 0.0;
                    for (int j = 0; j < 3; ++j) acc += y(i, j) * e(j, ax, q);
                    z(i, q) = acc;
                }
            a.z[ax] = z;
        }
        a.local = w * (s.F * transpose(d.dE) + s.curl * transpose(d.dK));
    });

    std::vector<Vec3> gphi(count);
    std::vector<Mat3> grot(count);
    for (std::size_t n = 0; n < count; ++n) {
        const NodeAdjoint& a = adj[n];
        for (int ax = 0; ax < 3; ++ax) {
            const Stencil st = derivative_stencil(g, n, ax);
            const Vec3 col = a.w_rp.column(ax);
            for (int q = 0; q < st.size; ++q) {
                const std::size_t m = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + st.offsets[q]);
                gphi[m] += st.weights[q] * col;
                grot[m] += st.weights[q] * a.z[ax];
            }
        }
        grot[n] += a.local;
    }

    const LoadSet& l = prob.loads;
    Gradient out{std::vector<Vec3>(count), std::vector<Vec3>(count)};
    for (std::size_t n = 0; n < count; ++n) {
        const Vec3 gp = gphi[n] - vol_w[n] * l.body_force[n] - surf_w[n] * l.traction[n];
        const Mat3 gr = grot[n] - vol_w[n] * l.body_couple[n] - surf_w[n] * l.surface_couple[n];
        if (mask.phi[n]) out.phi[n] = gp;
        if (mask.rot[n]) out.omega[n] = 2.0 * axl(skew(transpose(r[n].matrix()) * gr));
    }
    return out;
}

void require_finite_state(const VectorField& phi, const RotationField& r) {
    for (std::size_t n = 0; n < phi.size(); ++n) {
        for (double x : phi[n].c)
            if (!std::isfinite(x)) throw std::domain_error("gradient: non-finite deformation");
        for (double x : r[n].matrix().c)
            if (!std::isfinite(x)) throw std::domain_error("gradient: non-finite rotation");
    }
}

double squared_metric_norm(const Gradient& g, const std::vector<double>& w) {
    std::vector<double> t(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) t[n] = (norm_sq(g.phi[n]) + norm_sq(g.omega[n])) / w[n];
    return ordered_sum(t);
}

}  // namespace

Gradient gradient(const VectorField& phi, const RotationField& r, const Problem& prob, bool relaxed) {
    if (!(phi.grid == prob.grid) || !(r.grid == prob.grid)) throw std::invalid_argument("gradient: grid mismatch");
    require_finite_state(phi, r);
    const DiscreteFunctional fun(prob);
    return assemble(fun, phi, r, free_mask(prob, relaxed));
}

double gradient_norm(const Gradient& g, const std::vector<double>& volume_weights) {
    return std::sqrt(squared_metric_norm(g, volume_weights));
}

std::pair<VectorField, RotationField> default_initial_guess(const Problem& prob, bool relaxed) {
    const Grid& g = prob.grid;
    VectorField phi = reference_map(g);
    RotationField r(g);
    std::vector<Face> faces;
    for (Face f : kAllFaces)
        if (prob.boundary[f] == BoundaryTag::Dirichlet) faces.push_back(f);
    if (faces.empty()) return {std::move(phi), std::move(r)};

    for (std::size_t n = 0; n < g.node_count(); ++n) {
        const NodeIndex idx = g.ijk(n);
        const Vec3 x = g.position(n);
        Vec3 phi_acc;
        Mat3 rot_acc;
        double w_acc = 0.0;
        bool exact = false;
        for (Face f : faces) {
            const int ax = face_axis(f);
            NodeIndex p = idx;
            (ax == 0 ? p.i : ax == 1 ? p.j : p.k) = face_is_max(f) ? g.count(ax) - 1 : 0;
            const std::size_t pn = g.index(p);
            // blend displacements so that phi_0 data extends to phi_0
            const Vec3 pd = prob.dirichlet.phi[pn].value_or(g.position(pn)) - g.position(pn);
            const Mat3 rd = prob.dirichlet.rotation[pn] ? prob.dirichlet.rotation[pn]->matrix() : Mat3::identity();
            const double dist = std::abs(x[ax] - g.position(pn)[ax]);
            if (dist == 0.0) {
                phi_acc = pd;
                rot_acc = rd;
                w_acc = 1.0;
                exact = true;
                break;
            }
            phi_acc += (1.0 / dist) * pd;
            rot_acc += (1.0 / dist) * rd;
            w_acc += 1.0 / dist;
        }
        phi[n] = x + (1.0 / w_acc) * phi_acc;
        if (exact) {
            r[n] = Rotation::unchecked(rot_acc);
            continue;
        }
        try {
            r[n] = polar_rotation((1.0 / w_acc) * rot_acc);
        } catch (const std::domain_error&) {
            r[n] = Rotation();
        }
    }
    return enforce_admissible(std::move(phi), std::move(r), prob, relaxed);
}

MinimizeResult minimize(const Problem& prob, const MinimizeConfig& cfg,
                        const std::optional<std::pair<VectorField, RotationField>>& initial) {
    cfg.validate();
    const bool relaxed = cfg.relaxed_rotations;
    prob.validate(relaxed);

    auto start = initial ? *initial : default_initial_guess(prob, relaxed);
    VectorField phi = std::move(start.first);
    RotationField r = std::move(start.second);
    if (!(phi.grid == prob.grid) || !(r.grid == prob.grid)) throw std::invalid_argument("minimize: initial guess on a different grid");
    const FreeMask mask = free_mask(prob, relaxed);
    const std::size_t count = prob.grid.node_count();

    if (cfg.initial_perturbation > 0.0) {
        std::mt19937_64 rng(cfg.random_seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::size_t n = 0; n < count; ++n) {
            const Vec3 dp{{u(rng), u(rng), u(rng)}};
            const Vec3 dr{{u(rng), u(rng), u(rng)}};
            if (mask.phi[n]) phi[n] += cfg.initial_perturbation * dp;
            if (mask.rot[n]) r[n] = r[n] * exp_so3(cfg.initial_perturbation * dr);
        }
    }
    std::tie(phi, r) = enforce_admissible(std::move(phi), std::move(r), prob, relaxed);
    require_finite_state(phi, r);

    const DiscreteFunctional fun(prob);
    const auto& w = fun.volume_weights();

    MinimizeResult res(prob.grid);
    auto track_orthogonality = [&](const RotationField& rf) {
        for (const Rotation& q : rf.values) res.max_orthogonality_defect = std::max(res.max_orthogonality_defect, orthogonality_defect(q.matrix()));
    };
    track_orthogonality(r);

    double energy = fun.energy(phi, r);
    Gradient grad = assemble(fun, phi, r, mask);
    double gsq = squared_metric_norm(grad, w);
    res.energy_trace.push_back(energy);
    res.grad_norm_trace.push_back(std::sqrt(gsq));
    res.step_trace.push_back(0.0);

    double trial = cfg.initial_step;
    std::vector<Vec3> dphi(count), drot(count);
    res.status = MinimizeStatus::MaxIterations;

    for (int it = 1;; ++it) {
        if (std::sqrt(gsq) <= cfg.grad_tolerance) {
            res.status = MinimizeStatus::Converged;
            break;
        }
        if (it > cfg.max_iterations) break;

        double max_rot = 0.0;
        for (std::size_t n = 0; n < count; ++n) {
            dphi[n] = (-1.0 / w[n]) * grad.phi[n];
            drot[n] = (-1.0 / w[n]) * grad.omega[n];
            max_rot = std::max(max_rot, norm(drot[n]));
        }
        double t = trial;
        if (max_rot * t > cfg.max_rotation_step) t = cfg.max_rotation_step / max_rot;

        VectorField phi_c(prob.grid);
        RotationField r_c(prob.grid);
        double energy_c = 0.0;
        bool accepted = false;
        for (int b = 0; b <= cfg.max_backtracks; ++b) {
            for (std::size_t n = 0; n < count; ++n) {
                phi_c[n] = mask.phi[n] ? phi[n] + t * dphi[n] : phi[n];
                r_c[n] = mask.rot[n] ? r[n] * exp_so3(t * drot[n]) : r[n];
            }
            bool finite = true;
            try {
                energy_c = fun.energy(phi_c, r_c);
            } catch (const std::domain_error&) {
                finite = false;
            }
            if (finite && energy_c <= energy - cfg.armijo_c * t * gsq) {
                accepted = true;
                break;
            }
            t *= cfg.backtrack_factor;
        }
        if (!accepted) {
            res.status = MinimizeStatus::LineSearchFailure;
            break;
        }

        Gradient grad_c = assemble(fun, phi_c, r_c, mask);
        // Barzilai-Borwein trial step for the next line search, in the metric
        // that defines the descent direction.
        std::vector<double> ss(count), sy(count);
        for (std::size_t n = 0; n < count; ++n) {
            ss[n] = t * t * w[n] * (norm_sq(dphi[n]) + norm_sq(drot[n]));
            sy[n] = t * (dot(dphi[n], grad_c.phi[n] - grad.phi[n]) + dot(drot[n], grad_c.omega[n] - grad.omega[n]));
        }
        const double s_s = ordered_sum(ss), s_y = ordered_sum(sy);
        trial = (s_y > 0.0 && std::isfinite(s_s / s_y)) ? s_s / s_y : cfg.initial_step;

        phi = std::move(phi_c);
        r = std::move(r_c);
        grad = std::move(grad_c);
        energy = energy_c;
        gsq = squared_metric_norm(grad, w);
        track_orthogonality(r);
        res.iterations = it;
        res.energy_trace.push_back(energy);
        res.grad_norm_trace.push_back(std::sqrt(gsq));
        res.step_trace.push_back(t);
    }
    res.phi = std::move(phi);
    res.rotation = std::move(r);
    return res;
}

double fd_gradient_check(const Problem& prob, const VectorField& phi, const RotationField& r, int n_components,
                         std::uint64_t seed, bool relaxed) {
    const FreeMask mask = free_mask(prob, relaxed);
    struct Component {
        std::size_t node;
        bool rotation;
        int axis;
    };
    std::vector<Component> comps;
    for (std::size_t n = 0; n < prob.grid.node_count(); ++n)
        for (int a = 0; a < 3; ++a) {
            if (mask.phi[n]) comps.push_back({n, false, a});
            if (mask.rot[n]) comps.push_back({n, true, a});
        }
    if (comps.empty() || n_components <= 0) return 0.0;

    std::mt19937_64 rng(seed);
    std::shuffle(comps.begin(), comps.end(), rng);
    comps.resize(std::min<std::size_t>(comps.size(), static_cast<std::size_t>(n_components)));

    const DiscreteFunctional fun(prob);
    const Gradient g = assemble(fun, phi, r, mask);
    // fourth-order central differences; the quartic curvature energy has large
    // third derivatives that swamp the two-point rule
    constexpr double h = 3e-4;
    auto central = [](const std::function<double(double)>& f) {
        return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
    };
    double worst = 0.0;
    for (const Component& c : comps) {
        double analytic, fd;
        if (c.rotation) {
            fd = central([&](double t) {
                RotationField rt = r;
                rt[c.node] = r[c.node] * exp_so3(t * Vec3::unit(c.axis));
                return fun.energy(phi, rt);
            });
            analytic = g.omega[c.node][c.axis];
        } else {
            fd = central([&](double t) {
                VectorField pt = phi;
                pt[c.node][c.axis] += t;
                return fun.energy(pt, r);
            });
            analytic = g.phi[c.node][c.axis];
        }
        const double scale = std::max(std::abs(analytic), std::abs(fd));
        const double err = scale < 1e-10 ? std::abs(analytic - fd) : std::abs(analytic - fd) / scale;
        worst = std::max(worst, err);
    }
    return worst;
}

void write_trace_csv(std::ostream& out, const MinimizeResult& result) {
    out << "iter,energy,grad_norm,step\n";
    const auto old = out.precision(17);
    for (std::size_t i = 0; i < result.energy_trace.size(); ++i)
        out << i << ',' << result.energy_trace[i] << ',' << result.grad_norm_trace[i] << ',' << result.step_trace[i] << '\n';
    out.precision(old);
}

}  // namespace cosserat
