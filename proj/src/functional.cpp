#include "cosserat/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cosserat/parallel.hpp"

namespace cosserat {

bool LoadSet::on_grid(const Grid& g) const {
    return body_force.grid == g && traction.grid == g && body_couple.grid == g && surface_couple.grid == g;
}

DirichletData DirichletData::from_fields(const VectorField& phi, const RotationField& r, const BoundaryPartition& boundary) {
    if (!(phi.grid == r.grid)) throw std::invalid_argument("DirichletData: fields on different grids");
    DirichletData d(phi.grid);
    for (std::size_t n = 0; n < phi.size(); ++n) {
        if (!boundary.is_dirichlet(phi.grid, n)) continue;
        d.phi[n] = phi[n];
        d.rotation[n] = r[n];
    }
    return d;
}

void Problem::validate(bool relaxed) const {
    const DefinitenessReport report = check_definiteness(material);
    if (!report.definite) {
        std::string failed;
        for (const auto& c : report.conditions)
            if (!c.satisfied) failed += (failed.empty() ? "" : ", ") + c.expression;
        throw std::invalid_argument("material parameters violate: " + failed);
    }
    if (!loads.on_grid(grid)) throw std::invalid_argument("loads are defined on a different grid");
    if (dirichlet.phi.size() != grid.node_count() || dirichlet.rotation.size() != grid.node_count())
        throw std::invalid_argument("Dirichlet data sized for a different grid");
    for (std::size_t n = 0; n < grid.node_count(); ++n) {
        if (!boundary.is_dirichlet(grid, n)) continue;
        if (!dirichlet.phi[n]) throw std::invalid_argument("missing deformation data on Dirichlet node " + std::to_string(n));
        if (!relaxed && !dirichlet.rotation[n])
            throw std::invalid_argument("missing rotation data on Dirichlet node " + std::to_string(n));
    }
}

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

template <class T>
void require_finite(const std::vector<T>& values, const char* what) {
    for (const T& v : values)
        for (double x : v.c)
            if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " contains non-finite values");
}

void require_finite(const std::vector<Rotation>& values, const char* what) {
    for (const Rotation& r : values)
        for (double x : r.matrix().c)
            if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " contains non-finite values");
}

LoadPotential potential_with_weights(const VectorField& phi, const RotationField& r, const LoadSet& loads,
                                     const std::vector<double>& vol_w, const std::vector<double>& surf_w) {
    const Grid& g = phi.grid;
    const std::size_t count = g.node_count();
    std::vector<double> tf(count), tn(count), tm(count), tmc(count);
    for (std::size_t n = 0; n < count; ++n) {
        const Vec3 u = phi[n] - g.position(n);
        tf[n] = vol_w[n] * dot(loads.body_force[n], u);
        tm[n] = vol_w[n] * dot(loads.body_couple[n], r[n].matrix());
        tn[n] = surf_w[n] * dot(loads.traction[n], u);
        tmc[n] = surf_w[n] * dot(loads.surface_couple[n], r[n].matrix());
    }
    LoadPotential p;
    p.body_force = ordered_sum(tf);
    p.traction = ordered_sum(tn);
    p.body_couple = ordered_sum(tm);
    p.surface_couple = ordered_sum(tmc);
    return p;
}

}  // namespace

LoadPotential potential_parts(const VectorField& phi, const RotationField& r, const LoadSet& loads, const BoundaryPartition& boundary) {
    require_same_grid(phi.grid, r.grid, "potential_pi");
    if (!loads.on_grid(phi.grid)) throw std::invalid_argument("potential_pi: loads on a different grid");
    return potential_with_weights(phi, r, loads, volume_weights(phi.grid), surface_weights(phi.grid, boundary, BoundaryTag::Traction));
}

double potential_pi(const VectorField& phi, const RotationField& r, const LoadSet& loads, const BoundaryPartition& boundary) {
    return potential_parts(phi, r, loads, boundary).total();
}

DiscreteFunctional::DiscreteFunctional(const Problem& problem)
    : problem_(&problem),
      vol_w_(cosserat::volume_weights(problem.grid)),
      surf_w_(surface_weights(problem.grid, problem.boundary, BoundaryTag::Traction)),
      reference_(reference_map(problem.grid)) {}

NodeState DiscreteFunctional::node_state(const VectorField& phi, const RotationField& r, std::size_t n) const {
    const Grid& g = problem_->grid;
    NodeState s;
    for (int j = 0; j < 3; ++j) {
        const Vec3 d = partial_at<Vec3>(g, n, j, [&](std::size_t m) { return phi[m]; });
        for (int i = 0; i < 3; ++i) s.F(i, j) = d[i];
    }
    const Mat3 rt = transpose(r[n].matrix());
    s.E = rt * s.F - Mat3::identity();
    s.curl = curl_rotation_at(r, n);
    s.K = rt * s.curl;
    return s;
}

EnergyBreakdown DiscreteFunctional::evaluate(const VectorField& phi, const RotationField& r) const {
    const Problem& p = *problem_;
    require_same_grid(phi.grid, p.grid, "total_energy");
    require_same_grid(r.grid, p.grid, "total_energy");
    require_finite(phi.values, "deformation field");
    require_finite(r.values, "rotation field");

    const std::size_t count = p.grid.node_count();
    std::vector<double> mp(count), curv(count), chiral(count);
    parallel_for(count, [&](std::size_t n) {
        const NodeState s = node_state(phi, r, n);
        const EnergyParts w = w_parts(s.E, s.K, p.material);
        mp[n] = vol_w_[n] * w.mp;
        curv[n] = vol_w_[n] * w.curv;
        chiral[n] = vol_w_[n] * w.chiral;
    });
    EnergyBreakdown b;
    b.mp = ordered_sum(mp);
    b.curv = ordered_sum(curv);
    b.chiral = ordered_sum(chiral);
    b.load = potential_with_weights(phi, r, p.loads, vol_w_, surf_w_);
    if (!std::isfinite(b.total())) throw std::domain_error("total_energy: non-finite energy");
    return b;
}

EnergyBreakdown energy_breakdown(const VectorField& phi, const RotationField& r, const Problem& problem) {
    return DiscreteFunctional(problem).evaluate(phi, r);
}

double total_energy(const VectorField& phi, const RotationField& r, const Problem& problem) {
    return energy_breakdown(phi, r, problem).total();
}

std::pair<VectorField, RotationField> enforce_admissible(VectorField phi, RotationField r, const Problem& problem, bool relaxed) {
    require_same_grid(phi.grid, problem.grid, "enforce_admissible");
    require_same_grid(r.grid, problem.grid, "enforce_admissible");
    for (std::size_t n = 0; n < problem.grid.node_count(); ++n) {
        if (!problem.boundary.is_dirichlet(problem.grid, n)) continue;
        const auto& pd = problem.dirichlet.phi[n];
        if (!pd) throw std::invalid_argument("enforce_admissible: missing deformation data on Dirichlet node " + std::to_string(n));
        phi[n] = *pd;
        if (relaxed) continue;
        const auto& rd = problem.dirichlet.rotation[n];
        if (!rd) throw std::invalid_argument("enforce_admissible: missing rotation data on Dirichlet node " + std::to_string(n));
        r[n] = *rd;
    }
    return {std::move(phi), std::move(r)};
}

double admissibility_defect(const VectorField& phi, const RotationField& r, const Problem& problem, bool relaxed) {
    double d = 0.0;
    for (std::size_t n = 0; n < problem.grid.node_count(); ++n) {
        if (!problem.boundary.is_dirichlet(problem.grid, n)) continue;
        if (problem.dirichlet.phi[n]) d = std::max(d, norm(phi[n] - *problem.dirichlet.phi[n]));
        if (!relaxed && problem.dirichlet.rotation[n]) d = std::max(d, max_abs(r[n].matrix() - problem.dirichlet.rotation[n]->matrix()));
    }
    return d;
}

}  // namespace cosserat
