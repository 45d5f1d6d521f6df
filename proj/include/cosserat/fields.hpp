#pragma once

// Structured tensor-product grid on a box, nodal fields, second-order finite
// difference operators and trapezoidal quadrature.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cosserat/tensor.hpp"

namespace cosserat {

struct NodeIndex {
    int i = 0, j = 0, k = 0;
    int operator[](int axis) const { return axis == 0 ? i : (axis == 1 ? j : k); }
};

class Grid {
public:
    /// Throws std::invalid_argument unless every count >= 2 and every extent > 0.
    Grid(const Vec3& origin, const Vec3& extent, const std::array<int, 3>& counts);
    static Grid unit_cube(int n) { return Grid({}, {{1.0, 1.0, 1.0}}, {n, n, n}); }

    const Vec3& origin() const { return origin_; }
    const Vec3& extent() const { return extent_; }
    const std::array<int, 3>& counts() const { return n_; }
    int count(int axis) const { return n_[axis]; }
    double spacing(int axis) const { return h_[axis]; }
    std::size_t node_count() const { return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2]; }

    /// x-fastest ordering.
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_[0]) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(n_[1]) * k);
    }
    std::size_t index(const NodeIndex& n) const { return index(n.i, n.j, n.k); }
    NodeIndex ijk(std::size_t idx) const;
    Vec3 position(std::size_t idx) const;
    bool on_boundary(std::size_t idx) const;
    /// Offset in the flat index for one step along `axis`.
    std::ptrdiff_t stride(int axis) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Vec3 origin_;
    Vec3 extent_;
    std::array<int, 3> n_;
    std::array<double, 3> h_;
};

template <class T>
struct NodalField {
    Grid grid;
    std::vector<T> values;

    explicit NodalField(const Grid& g, const T& fill = T{}) : grid(g), values(g.node_count(), fill) {}
    NodalField(const Grid& g, std::vector<T> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.node_count()) throw std::invalid_argument("NodalField: node count does not match grid");
    }
    T& operator[](std::size_t i) { return values[i]; }
    const T& operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

using ScalarField = NodalField<double>;
using VectorField = NodalField<Vec3>;
using Mat3Field = NodalField<Mat3>;
using Ten3Field = NodalField<Ten3>;
using RotationField = NodalField<Rotation>;

template <class T>
NodalField<T> sample(const Grid& grid, const std::function<T(const Vec3&)>& fn) {
    NodalField<T> f(grid);
    for (std::size_t n = 0; n < grid.node_count(); ++n) f[n] = fn(grid.position(n));
    return f;
}

/// The reference placement phi_0(x) = x.
VectorField reference_map(const Grid& grid);

/// Weights of the one-dimensional derivative stencil at a node along one axis:
/// central differences inside, second-order one-sided at the ends (first order
/// when the axis has only two nodes).
struct Stencil {
    std::array<std::ptrdiff_t, 3> offsets{};  // flat index offsets
    std::array<double, 3> weights{};
    int size = 0;
};
Stencil derivative_stencil(const Grid& grid, std::size_t node, int axis);

/// d/dx_axis of a nodal quantity at one node; `get(idx)` returns the value.
template <class T, class Get>
T partial_at(const Grid& grid, std::size_t node, int axis, Get&& get) {
    const Stencil s = derivative_stencil(grid, node, axis);
    T r{};
    for (int q = 0; q < s.size; ++q) r += s.weights[q] * get(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(node) + s.offsets[q]));
    return r;
}

/// F_ij = d phi_i / d x_j.
Mat3Field grad_vector(const VectorField& phi);
/// (Grad R)_ijk = d R_ij / d x_k.
Ten3Field grad_rotation(const RotationField& r);
Ten3Field grad_matrix(const Mat3Field& t);
Ten3 grad_rotation_at(const RotationField& r, std::size_t node);

/// Row-wise curl: (Curl T)_ij = eps_jrs d T_is / d x_r.
Mat3Field curl_matrix(const Mat3Field& t);
Mat3 curl_rotation_at(const RotationField& r, std::size_t node);
/// Curl from the nodal gradient T_ij,k.
Mat3 curl_from_gradient(const Ten3& grad);

enum class Face { XMin, XMax, YMin, YMax, ZMin, ZMax };
inline constexpr std::array<Face, 6> kAllFaces{Face::XMin, Face::XMax, Face::YMin, Face::YMax, Face::ZMin, Face::ZMax};
inline int face_axis(Face f) { return static_cast<int>(f) / 2; }
inline bool face_is_max(Face f) { return static_cast<int>(f) % 2 == 1; }
bool node_on_face(const Grid& grid, std::size_t node, Face f);
const char* face_name(Face f);  // x0, x1, y0, y1, z0, z1

enum class BoundaryTag { Dirichlet, Traction };

/// Tags are assigned per box face and expanded to nodes; a node on both a
/// Dirichlet and a traction face is Dirichlet.
struct BoundaryPartition {
    std::array<BoundaryTag, 6> faces{BoundaryTag::Traction, BoundaryTag::Traction, BoundaryTag::Traction,
                                     BoundaryTag::Traction, BoundaryTag::Traction, BoundaryTag::Traction};

    BoundaryTag& operator[](Face f) { return faces[static_cast<int>(f)]; }
    BoundaryTag operator[](Face f) const { return faces[static_cast<int>(f)]; }
    bool has_dirichlet() const;
    /// Empty for interior nodes.
    std::optional<BoundaryTag> node_tag(const Grid& grid, std::size_t node) const;
    bool is_dirichlet(const Grid& grid, std::size_t node) const { return node_tag(grid, node) == BoundaryTag::Dirichlet; }
};

/// Trapezoidal product weights (halved on faces, quartered on edges, ...).
std::vector<double> volume_weights(const Grid& grid);
/// Per-node weights of the 2D trapezoidal rule summed over all faces carrying
/// `tag`; an edge node shared by two such faces collects both contributions.
std::vector<double> surface_weights(const Grid& grid, const BoundaryPartition& partition, BoundaryTag tag);
double integrate_volume(const ScalarField& s);
double integrate_surface(const ScalarField& s, const BoundaryPartition& partition, BoundaryTag tag);

}  // namespace cosserat
