#pragma once

// External loads, the discrete problem and its total energy
//   I(phi, R) = sum_n w_n W(E_n, K_n) - Pi(phi, R)
// with trapezoidal nodal quadrature shared by the stored energy and the loads.

#include <optional>
#include <utility>
#include <vector>

#include "cosserat/fields.hpp"
#include "cosserat/materials.hpp"

namespace cosserat {

struct LoadSet {
    VectorField body_force;   // f, per unit volume
    VectorField traction;     // N, used on traction faces only
    Mat3Field body_couple;    // M, paired with R
    Mat3Field surface_couple; // M_c, used on traction faces only

    explicit LoadSet(const Grid& g) : body_force(g), traction(g), body_couple(g), surface_couple(g) {}
    bool on_grid(const Grid& g) const;
};

/// Prescribed deformation and rotation per node; only Dirichlet nodes are read.
struct DirichletData {
    std::vector<std::optional<Vec3>> phi;
    std::vector<std::optional<Rotation>> rotation;

    explicit DirichletData(const Grid& g) : phi(g.node_count()), rotation(g.node_count()) {}
    /// Copies the field values at the Dirichlet nodes of `boundary`.
    static DirichletData from_fields(const VectorField& phi, const RotationField& r, const BoundaryPartition& boundary);
};

struct Problem {
    Grid grid;
    BoundaryPartition boundary;
    MaterialParams material;
    LoadSet loads;
    DirichletData dirichlet;

    Problem(const Grid& g, const BoundaryPartition& b, const MaterialParams& m)
        : grid(g), boundary(b), material(m), loads(g), dirichlet(g) {}

    /// Throws std::invalid_argument if the material is not definite, a load
    /// lives on another grid, or a Dirichlet node lacks data (rotation data is
    /// only required when `relaxed` is false).
    void validate(bool relaxed = false) const;
};

struct LoadPotential {
    double body_force = 0.0;      // int <f, u> dV
    double traction = 0.0;        // int_s <N, u> dS
    double body_couple = 0.0;     // int <M, R> dV
    double surface_couple = 0.0;  // int_s <M_c, R> dS
    double total() const { return body_force + traction + body_couple + surface_couple; }
};

/// u = phi - x. Throws std::invalid_argument on grid mismatch.
LoadPotential potential_parts(const VectorField& phi, const RotationField& r, const LoadSet& loads, const BoundaryPartition& boundary);
double potential_pi(const VectorField& phi, const RotationField& r, const LoadSet& loads, const BoundaryPartition& boundary);

struct EnergyBreakdown {
    double mp = 0.0;
    double curv = 0.0;
    double chiral = 0.0;
    LoadPotential load;
    double stored() const { return mp + curv + chiral; }
    double total() const { return stored() - load.total(); }
};

/// Per-node quantities entering the stored energy.
struct NodeState {
    Mat3 F;     // Grad phi
    Mat3 E;     // R^T F - id
    Mat3 curl;  // Curl R
    Mat3 K;     // R^T Curl R
};

/// Precomputed weights for repeated evaluation of I on one problem.
class DiscreteFunctional {
public:
    explicit DiscreteFunctional(const Problem& problem);

    const Problem& problem() const { return *problem_; }
    const std::vector<double>& volume_weights() const { return vol_w_; }
    const std::vector<double>& traction_weights() const { return surf_w_; }

    NodeState node_state(const VectorField& phi, const RotationField& r, std::size_t n) const;
    /// Throws std::invalid_argument on grid mismatch, std::domain_error on non-finite fields.
    EnergyBreakdown evaluate(const VectorField& phi, const RotationField& r) const;
    double energy(const VectorField& phi, const RotationField& r) const { return evaluate(phi, r).total(); }

private:
    const Problem* problem_;
    std::vector<double> vol_w_;
    std::vector<double> surf_w_;
    VectorField reference_;
};

EnergyBreakdown energy_breakdown(const VectorField& phi, const RotationField& r, const Problem& problem);
double total_energy(const VectorField& phi, const RotationField& r, const Problem& problem);

/// Overwrites phi (and R unless relaxed) with the Dirichlet data on Dirichlet
/// nodes. Throws std::invalid_argument when a Dirichlet node lacks data.
std::pair<VectorField, RotationField> enforce_admissible(VectorField phi, RotationField r, const Problem& problem, bool relaxed);

/// max |phi - phi_d| and (unless relaxed) max ||R - R_d|| over Dirichlet nodes.
double admissibility_defect(const VectorField& phi, const RotationField& r, const Problem& problem, bool relaxed);

}  // namespace cosserat
