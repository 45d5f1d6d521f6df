#pragma once

// Strain and curvature measures of a Cosserat state (phi, R).
//
//   U = R^T F,  E = U - id
//   frak    = R^T Grad R                 (third order, slices R^T R_,k)
//   ktilde  = frak with slots 2,3 swapped
//   gamma   = axl(R^T R_,k) (x) e_k       (wryness)
//   disloc  = R^T Curl R                 (dislocation density)
//   torsion = ktilde - frak

#include <vector>

#include "cosserat/fields.hpp"

namespace cosserat {

struct StrainState {
    Mat3 F;
    Mat3 U;
    Mat3 E;
};

struct CurvatureState {
    Ten3 frak;
    Ten3 ktilde;
    Mat3 gamma;
    Mat3 dislocation;
    Ten3 torsion;
};

StrainState strain(const Rotation& r, const Mat3& f);

/// Pointwise measures from a rotation and its gradient (Grad R)_ijk = R_ij,k.
/// `frak` keeps the raw slices; `gamma` takes axl of their skew projection.
Ten3 frak_from_gradient(const Rotation& r, const Ten3& grad);
Mat3 gamma_from_frak(const Ten3& frak);
Mat3 dislocation_from_gradient(const Rotation& r, const Ten3& grad);
CurvatureState curvature_from_gradient(const Rotation& r, const Ten3& grad);

Ten3 curvature_frak(const RotationField& r, std::size_t node);
Ten3 curvature_ktilde(const RotationField& r, std::size_t node);
Mat3 curvature_gamma(const RotationField& r, std::size_t node);
Mat3 curvature_dislocation(const RotationField& r, std::size_t node);
Ten3 curvature_torsion(const RotationField& r, std::size_t node);

/// Thrown when the discrete slices R^T R_,k are too far from skew, which means
/// the grid does not resolve the rotation field.
class GridTooCoarse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KinematicState {
    std::vector<StrainState> strain;
    std::vector<CurvatureState> curvature;
    /// max over nodes of slice_skew_defect(frak).
    double max_skew_defect = 0.0;
};

/// Throws std::invalid_argument on grid mismatch.
KinematicState full_state(const VectorField& phi, const RotationField& r);

/// Throws GridTooCoarse if state.max_skew_defect > tol.
void require_resolved(const KinematicState& state, double tol = 1e-6);

}  // namespace cosserat
