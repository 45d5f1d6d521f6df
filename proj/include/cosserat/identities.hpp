#pragma once

// Randomized checks of the curvature identities: Nye's formula, closure of
// the conversion table, norm/trace relations and finite-difference
// consistency on smooth rotation fields.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cosserat/fields.hpp"

namespace cosserat {

/// R(x) = exp(anti(v(x))) with v(x) = a + B x + sum_q c_q sin(<k_q, x> + psi_q),
/// whose gradient is known in closed form.
class SmoothRotationField {
public:
    static SmoothRotationField random(std::mt19937_64& rng, double amplitude = 1.0);
    /// Constant-rate twist exp(rate x_direction anti(e_axis)).
    static SmoothRotationField twist(double rate, int axis = 2, int direction = 0);

    Vec3 v(const Vec3& x) const;
    /// Column k is d v / d x_k.
    Mat3 dv(const Vec3& x) const;
    Rotation rotation(const Vec3& x) const { return exp_so3(v(x)); }
    /// (Grad R)_ijk = R_ij,k, exact.
    Ten3 gradient(const Vec3& x) const;
    /// Wryness axl(R^T R_,k) (x) e_k, exact.
    Mat3 gamma(const Vec3& x) const;
    RotationField sample(const Grid& g) const;

private:
    Vec3 a_;
    Mat3 b_;
    std::vector<Vec3> c_, k_;
    std::vector<double> psi_;
};

struct IdentityResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Field-based checks (unit cube, grid_n nodes per axis) use the tolerance
/// kFieldConstant * h^2; the fields from SmoothRotationField::random sit at
/// about a quarter of it.
inline constexpr double kFieldConstant = 4.0;

std::vector<IdentityResult> run_identity_suite(std::uint64_t seed, int n_samples = 200, int grid_n = 9);

}  // namespace cosserat
