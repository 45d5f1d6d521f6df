#pragma once

// Steepest descent on the discrete functional I over nodal (phi, R) with
// Armijo backtracking. Rotations move along R <- R exp(anti(t d)), so every
// iterate stays on SO(3).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "cosserat/functional.hpp"

namespace cosserat {

struct MinimizeConfig {
    int max_iterations = 20000;
    double grad_tolerance = 1e-6;
    double initial_step = 1.0;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    int max_backtracks = 60;
    bool relaxed_rotations = false;
    std::uint64_t random_seed = 0;
    /// Amplitude of a seeded random perturbation of the free nodes of the
    /// initial guess; 0 leaves it untouched.
    double initial_perturbation = 0.0;
    /// Cap on the rotation angle of a single nodal update.
    double max_rotation_step = 0.5;

    /// Throws std::invalid_argument on non-positive counts or steps, or
    /// armijo_c / backtrack_factor outside (0, 1).
    void validate() const;
};

enum class MinimizeStatus { Converged, MaxIterations, LineSearchFailure };
std::string_view status_name(MinimizeStatus s);

struct MinimizeResult {
    VectorField phi;
    RotationField rotation;
    std::vector<double> energy_trace;     // entry 0 is the initial guess
    std::vector<double> grad_norm_trace;
    std::vector<double> step_trace;       // accepted step, 0 for entry 0
    MinimizeStatus status = MinimizeStatus::MaxIterations;
    int iterations = 0;
    double max_orthogonality_defect = 0.0;  // over all iterates

    explicit MinimizeResult(const Grid& g) : phi(g), rotation(g) {}
    double energy() const { return energy_trace.back(); }
    double grad_norm() const { return grad_norm_trace.back(); }
};

/// Gradient of I with respect to nodal phi and to right-trivialized rotation
/// tangents (R exp(eps anti(w))). Constrained components are zero.
struct Gradient {
    std::vector<Vec3> phi;
    std::vector<Vec3> omega;
};

/// Throws std::domain_error on non-finite fields.
Gradient gradient(const VectorField& phi, const RotationField& r, const Problem& prob, bool relaxed = false);

/// sqrt(sum_n |g_n|^2 / w_n): the L2 norm of the nodal gradient density.
double gradient_norm(const Gradient& g, const std::vector<double>& volume_weights);

/// phi: phi_0 plus the inverse-distance blend of the displacement data on the
/// Dirichlet faces (linear between two opposite faces). R: polar factor
/// of the same blend of the rotation data, identity where none is given.
std::pair<VectorField, RotationField> default_initial_guess(const Problem& prob, bool relaxed = false);

/// Throws std::invalid_argument if the problem or the config is invalid.
MinimizeResult minimize(const Problem& prob, const MinimizeConfig& cfg,
                        const std::optional<std::pair<VectorField, RotationField>>& initial = std::nullopt);

/// Worst mismatch between gradient() and fourth-order central differences of I over
/// `n_components` randomly chosen free components. Relative error, except
/// absolute when both sides are below 1e-10.
double fd_gradient_check(const Problem& prob, const VectorField& phi, const RotationField& r, int n_components,
                         std::uint64_t seed, bool relaxed = false);

/// CSV with header `iter,energy,grad_norm,step`.
void write_trace_csv(std::ostream& out, const MinimizeResult& result);

}  // namespace cosserat
