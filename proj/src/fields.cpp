#include "cosserat/fields.hpp"

#include "cosserat/parallel.hpp"

namespace cosserat {

Grid::Grid(const Vec3& origin, const Vec3& extent, const std::array<int, 3>& counts)
    : origin_(origin), extent_(extent), n_(counts) {
    for (int a = 0; a < 3; ++a) {
        if (n_[a] < 2) throw std::invalid_argument("Grid: need at least 2 nodes per axis");
        if (!(extent_[a] > 0.0) || !std::isfinite(extent_[a])) throw std::invalid_argument("Grid: extents must be positive");
        if (!std::isfinite(origin_[a])) throw std::invalid_argument("Grid: origin must be finite");
        h_[a] = extent_[a] / (n_[a] - 1);
    }
}

NodeIndex Grid::ijk(std::size_t idx) const {
    NodeIndex n;
    n.i = static_cast<int>(idx % n_[0]);
    idx /= n_[0];
    n.j = static_cast<int>(idx % n_[1]);
    n.k = static_cast<int>(idx / n_[1]);
    return n;
}

Vec3 Grid::position(std::size_t idx) const {
    const NodeIndex n = ijk(idx);
    // Land exactly on the far face instead of accumulating h.
    auto coord = [&](int a, int i) { return i == n_[a] - 1 ? origin_[a] + extent_[a] : origin_[a] + i * h_[a]; };
    return {{coord(0, n.i), coord(1, n.j), coord(2, n.k)}};
}

bool Grid::on_boundary(std::size_t idx) const {
    const NodeIndex n = ijk(idx);
    for (int a = 0; a < 3; ++a)
        if (n[a] == 0 || n[a] == n_[a] - 1) return true;
    return false;
}

std::ptrdiff_t Grid::stride(int axis) const {
    if (axis == 0) return 1;
    if (axis == 1) return n_[0];
    return static_cast<std::ptrdiff_t>(n_[0]) * n_[1];
}

VectorField reference_map(const Grid& grid) {
    VectorField f(grid);
    for (std::size_t n = 0; n < grid.node_count(); ++n) f[n] = grid.position(n);
    return f;
}

Stencil derivative_stencil(const Grid& grid, std::size_t node, int axis) {
    const int pos = grid.ijk(node)[axis];
    const int n = grid.count(axis);
    const double h = grid.spacing(axis);
    const std::ptrdiff_t s = grid.stride(axis);
    Stencil st;
    if (n == 2) {
        st.size = 2;
        st.offsets = {pos == 0 ? 0 : -s, pos == 0 ? s : 0, 0};
        st.weights = {-1.0 / h, 1.0 / h, 0.0};
    } else if (pos == 0) {
        st.size = 3;
        st.offsets = {0, s, 2 * s};
        st.weights = {-1.5 / h, 2.0 / h, -0.5 / h};
    } else if (pos == n - 1) {
        st.size = 3;
        st.offsets = {0, -s, -2 * s};
        st.weights = {1.5 / h, -2.0 / h, 0.5 / h};
    } else {
        st.size = 2;
        st.offsets = {-s, s, 0};
        st.weights = {-0.5 / h, 0.5 / h, 0.0};
    }
    return st;
}

Mat3Field grad_vector(const VectorField& phi) {
    const Grid& g = phi.grid;
    Mat3Field out(g);
    parallel_for(g.node_count(), [&](std::size_t n) {
        Mat3 f;
        for (int j = 0; j < 3; ++j) {
            const Vec3 d = partial_at<Vec3>(g, n, j, [&](std::size_t m) { return phi[m]; });
            for (int i = 0; i < 3; ++i) f(i, j) = d[i];
        }
        out[n] = f;
    });
    return out;
}

namespace {

template <class Get>
Ten3 matrix_gradient_at(const Grid& g, std::size_t n, Get&& get) {
    Ten3 t;
    for (int k = 0; k < 3; ++k) t.set_slice(k, partial_at<Mat3>(g, n, k, get));
    return t;
}

}  // namespace

Ten3 grad_rotation_at(const RotationField& r, std::size_t node) {
    return matrix_gradient_at(r.grid, node, [&](std::size_t m) -> const Mat3& { return r[m].matrix(); });
}

Ten3Field grad_rotation(const RotationField& r) {
    Ten3Field out(r.grid);
    parallel_for(r.grid.node_count(), [&](std::size_t n) { out[n] = grad_rotation_at(r, n); });
    return out;
}

Ten3Field grad_matrix(const Mat3Field& t) {
    Ten3Field out(t.grid);
    parallel_for(t.grid.node_count(), [&](std::size_t n) {
        out[n] = matrix_gradient_at(t.grid, n, [&](std::size_t m) -> const Mat3& { return t[m]; });
    });
    return out;
}

Mat3 curl_from_gradient(const Ten3& grad) {
    const Ten3& e = eps();
    Mat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int r = 0; r < 3; ++r)
                for (int q = 0; q < 3; ++q) s += e(j, r, q) * grad(i, q, r);
            c(i, j) = s;
        }
    return c;
}

Mat3 curl_rotation_at(const RotationField& r, std::size_t node) { return curl_from_gradient(grad_rotation_at(r, node)); }

Mat3Field curl_matrix(const Mat3Field& t) {
    Mat3Field out(t.grid);
    parallel_for(t.grid.node_count(), [&](std::size_t n) {
        out[n] = curl_from_gradient(matrix_gradient_at(t.grid, n, [&](std::size_t m) -> const Mat3& { return t[m]; }));
    });
    return out;
}

bool node_on_face(const Grid& grid, std::size_t node, Face f) {
    const int a = face_axis(f);
    const int pos = grid.ijk(node)[a];
    return face_is_max(f) ? pos == grid.count(a) - 1 : pos == 0;
}

const char* face_name(Face f) {
    static constexpr const char* names[] = {"x0", "x1", "y0", "y1", "z0", "z1"};
    return names[static_cast<int>(f)];
}

bool BoundaryPartition::has_dirichlet() const {
    for (BoundaryTag t : faces)
        if (t == BoundaryTag::Dirichlet) return true;
    return false;
}

std::optional<BoundaryTag> BoundaryPartition::node_tag(const Grid& grid, std::size_t node) const {
    std::optional<BoundaryTag> tag;
    for (Face f : kAllFaces) {
        if (!node_on_face(grid, node, f)) continue;
        if ((*this)[f] == BoundaryTag::Dirichlet) return BoundaryTag::Dirichlet;
        tag = BoundaryTag::Traction;
    }
    return tag;
}

namespace {

double trapezoid_weight(const Grid& g, int axis, int pos) {
    const double h = g.spacing(axis);
    return (pos == 0 || pos == g.count(axis) - 1) ? 0.5 * h : h;
}

}  // namespace

std::vector<double> volume_weights(const Grid& grid) {
    std::vector<double> w(grid.node_count());
    for (std::size_t n = 0; n < w.size(); ++n) {
        const NodeIndex ix = grid.ijk(n);
        w[n] = trapezoid_weight(grid, 0, ix.i) * trapezoid_weight(grid, 1, ix.j) * trapezoid_weight(grid, 2, ix.k);
    }
    return w;
}

std::vector<double> surface_weights(const Grid& grid, const BoundaryPartition& partition, BoundaryTag tag) {
    std::vector<double> w(grid.node_count(), 0.0);
    for (Face f : kAllFaces) {
        if (partition[f] != tag) continue;
        const int a = face_axis(f);
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        for (std::size_t n = 0; n < w.size(); ++n) {
            if (!node_on_face(grid, n, f)) continue;
            const NodeIndex ix = grid.ijk(n);
            w[n] += trapezoid_weight(grid, b, ix[b]) * trapezoid_weight(grid, c, ix[c]);
        }
    }
    return w;
}

double integrate_volume(const ScalarField& s) {
    const std::vector<double> w = volume_weights(s.grid);
    std::vector<double> terms(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) terms[n] = w[n] * s[n];
    return ordered_sum(terms);
}

double integrate_surface(const ScalarField& s, const BoundaryPartition& partition, BoundaryTag tag) {
    const std::vector<double> w = surface_weights(s.grid, partition, tag);
    std::vector<double> terms(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) terms[n] = w[n] * s[n];
    return ordered_sum(terms);
}

}  // namespace cosserat
