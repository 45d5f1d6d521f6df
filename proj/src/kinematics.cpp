#include "cosserat/kinematics.hpp"

#include <algorithm>
#include <string>

#include "cosserat/parallel.hpp"

namespace cosserat {

StrainState strain(const Rotation& r, const Mat3& f) {
    StrainState s;
    s.F = f;
    s.U = transpose(r.matrix()) * f;
    s.E = s.U - Mat3::identity();
    return s;
}

Ten3 frak_from_gradient(const Rotation& r, const Ten3& grad) {
    const Mat3 rt = transpose(r.matrix());
    Ten3 k;
    for (int s = 0; s < 3; ++s) k.set_slice(s, rt * grad.slice(s));
    return k;
}

Mat3 gamma_from_frak(const Ten3& frak) {
    Mat3 g;
    for (int k = 0; k < 3; ++k) {
        const Vec3 a = axl(skew(frak.slice(k)));
        for (int i = 0; i < 3; ++i) g(i, k) = a[i];
    }
    return g;
}

Mat3 dislocation_from_gradient(const Rotation& r, const Ten3& grad) {
    return transpose(r.matrix()) * curl_from_gradient(grad);
}

CurvatureState curvature_from_gradient(const Rotation& r, const Ten3& grad) {
    CurvatureState c;
    c.frak = frak_from_gradient(r, grad);
    c.ktilde = ten3_transpose(c.frak, TransposePair::J_K);
    c.gamma = gamma_from_frak(c.frak);
    c.dislocation = dislocation_from_gradient(r, grad);
    c.torsion = c.ktilde - c.frak;
    return c;
}

Ten3 curvature_frak(const RotationField& r, std::size_t node) { return frak_from_gradient(r[node], grad_rotation_at(r, node)); }

Ten3 curvature_ktilde(const RotationField& r, std::size_t node) {
    return ten3_transpose(curvature_frak(r, node), TransposePair::J_K);
}

Mat3 curvature_gamma(const RotationField& r, std::size_t node) { return gamma_from_frak(curvature_frak(r, node)); }

Mat3 curvature_dislocation(const RotationField& r, std::size_t node) {
    return dislocation_from_gradient(r[node], grad_rotation_at(r, node));
}

Ten3 curvature_torsion(const RotationField& r, std::size_t node) {
    const Ten3 k = curvature_frak(r, node);
    return ten3_transpose(k, TransposePair::J_K) - k;
}

KinematicState full_state(const VectorField& phi, const RotationField& r) {
    if (!(phi.grid == r.grid)) throw std::invalid_argument("full_state: deformation and rotation fields live on different grids");
    const Grid& g = r.grid;
    const Mat3Field F = grad_vector(phi);
    KinematicState st;
    st.strain.resize(g.node_count());
    st.curvature.resize(g.node_count());
    std::vector<double> defect(g.node_count());
    parallel_for(g.node_count(), [&](std::size_t n) {
        st.strain[n] = strain(r[n], F[n]);
        st.curvature[n] = curvature_from_gradient(r[n], grad_rotation_at(r, n));
        defect[n] = slice_skew_defect(st.curvature[n].frak);
    });
    for (double d : defect) st.max_skew_defect = std::max(st.max_skew_defect, d);
    return st;
}

void require_resolved(const KinematicState& state, double tol) {
    if (state.max_skew_defect > tol)
        throw GridTooCoarse("curvature slices deviate from skew-symmetry by " + std::to_string(state.max_skew_defect) +
                            " (> " + std::to_string(tol) + "); refine the grid");
}

}  // namespace cosserat
