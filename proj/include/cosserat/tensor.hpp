#pragma once

// Fixed-size tensor algebra in three dimensions: vectors, second order
// tensors (row-major 3x3) and third order tensors (3x3x3, index (i,j,k)).

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosserat {

struct Vec3 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    static constexpr Vec3 unit(std::size_t i) {
        Vec3 v;
        v.c[i] = 1.0;
        return v;
    }

    Vec3& operator+=(const Vec3& o) {
        for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        for (std::size_t i = 0; i < 3; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec3& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct Mat3 {
    std::array<double, 9> c{};

    constexpr double& operator()(std::size_t i, std::size_t j) { return c[3 * i + j]; }
    constexpr double operator()(std::size_t i, std::size_t j) const { return c[3 * i + j]; }

    static constexpr Mat3 identity() {
        Mat3 m;
        m.c[0] = m.c[4] = m.c[8] = 1.0;
        return m;
    }
    static constexpr Mat3 diag(double a, double b, double d) {
        Mat3 m;
        m.c[0] = a;
        m.c[4] = b;
        m.c[8] = d;
        return m;
    }
    static Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& d) {
        Mat3 m;
        for (std::size_t i = 0; i < 3; ++i) {
            m(i, 0) = a[i];
            m(i, 1) = b[i];
            m(i, 2) = d[i];
        }
        return m;
    }
    Vec3 column(std::size_t j) const { return {{(*this)(0, j), (*this)(1, j), (*this)(2, j)}}; }
    Vec3 row(std::size_t i) const { return {{(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}}; }

    Mat3& operator+=(const Mat3& o) {
        for (std::size_t i = 0; i < 9; ++i) c[i] += o.c[i];
        return *this;
    }
    Mat3& operator-=(const Mat3& o) {
        for (std::size_t i = 0; i < 9; ++i) c[i] -= o.c[i];
        return *this;
    }
    Mat3& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend bool operator==(const Mat3&, const Mat3&) = default;
};

struct Ten3 {
    std::array<double, 27> c{};

    constexpr double& operator()(std::size_t i, std::size_t j, std::size_t k) { return c[9 * i + 3 * j + k]; }
    constexpr double operator()(std::size_t i, std::size_t j, std::size_t k) const { return c[9 * i + 3 * j + k]; }

    /// Second order tensor T(:,:,k).
    Mat3 slice(std::size_t k) const;
    void set_slice(std::size_t k, const Mat3& m);

    Ten3& operator+=(const Ten3& o) {
        for (std::size_t i = 0; i < 27; ++i) c[i] += o.c[i];
        return *this;
    }
    Ten3& operator-=(const Ten3& o) {
        for (std::size_t i = 0; i < 27; ++i) c[i] -= o.c[i];
        return *this;
    }
    Ten3& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend bool operator==(const Ten3&, const Ten3&) = default;
};

// Arithmetic. Defined inline so the compiler can unroll them in the field loops.
inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(Vec3 a) { return a *= -1.0; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
inline Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
inline Mat3 operator-(Mat3 a) { return a *= -1.0; }
inline Mat3 operator*(double s, Mat3 a) { return a *= s; }
inline Mat3 operator*(Mat3 a, double s) { return a *= s; }
inline Ten3 operator+(Ten3 a, const Ten3& b) { return a += b; }
inline Ten3 operator-(Ten3 a, const Ten3& b) { return a -= b; }
inline Ten3 operator-(Ten3 a) { return a *= -1.0; }
inline Ten3 operator*(double s, Ten3 a) { return a *= s; }
inline Ten3 operator*(Ten3 a, double s) { return a *= s; }

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}
inline Vec3 operator*(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i) r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
    return r;
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Frobenius inner product.
inline double dot(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) s += a.c[i] * b.c[i];
    return s;
}
inline double dot(const Ten3& a, const Ten3& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 27; ++i) s += a.c[i] * b.c[i];
    return s;
}
inline double norm_sq(const Vec3& a) { return dot(a, a); }
inline double norm_sq(const Mat3& a) { return dot(a, a); }
inline double norm_sq(const Ten3& a) { return dot(a, a); }
inline double norm(const Mat3& a) { return std::sqrt(norm_sq(a)); }
inline double norm(const Ten3& a) { return std::sqrt(norm_sq(a)); }
double max_abs(const Mat3& a);
double max_abs(const Ten3& a);

Mat3 outer(const Vec3& a, const Vec3& b);
Mat3 transpose(const Mat3& m);
double trace(const Mat3& m);
double det(const Mat3& m);
/// Throws std::domain_error when |det| is below 1e-300.
Mat3 inverse(const Mat3& m);

Mat3 sym(const Mat3& m);
Mat3 skew(const Mat3& m);
/// M - (tr M / 3) id.
Mat3 dev(const Mat3& m);
inline Mat3 dev_sym(const Mat3& m) { return dev(sym(m)); }

/// Absolute tolerance on ||sym S||_max accepted by axl().
inline constexpr double kSkewTolerance = 1e-10;

/// Axial vector: anti(axl(S)) = S, i.e. S v = axl(S) x v.
/// Throws std::invalid_argument if S is not skew to `tol` (max-norm of sym S).
Vec3 axl(const Mat3& s, double tol = kSkewTolerance);
/// Skew matrix with anti(w) v = w x v.
Mat3 anti(const Vec3& w);

/// (A:B)_ij = A_irs B_rsj.
Mat3 ddot(const Ten3& a, const Ten3& b);
/// (A:M)_i = A_irs M_rs.
Vec3 ddot(const Ten3& a, const Mat3& m);

/// (M x v)_ij = M_ik (e_k x v)_j, from (a (x) b) x c = a (x) (b x c).
Mat3 mat_cross_vec(const Mat3& m, const Vec3& v);
/// (T x v)_ijk, acting on the last slot: (a (x) b (x) c) x v = a (x) b (x) (c x v).
Ten3 ten3_cross_vec(const Ten3& t, const Vec3& v);
/// Alternator, epsilon_123 = +1.
const Ten3& eps();
/// (eps G)_ijk = eps_ijs G_sk.
Ten3 eps_times_mat(const Mat3& g);
/// (K eps)_ijk = K_is eps_sjk.
Ten3 mat_times_eps(const Mat3& k);

enum class TransposePair { J_K, I_K, I_J };  // 2.3, 1.3, 1.2

/// Exchanges two index slots: J_K gives T_ikj, I_K gives T_kji, I_J gives T_jik.
Ten3 ten3_transpose(const Ten3& t, TransposePair pair);

/// max |sym(T(:,:,k))| over the three slices.
double slice_skew_defect(const Ten3& t);

/// Proper orthogonal tensor. Construct through from_matrix() to validate,
/// or unchecked() when the caller guarantees orthogonality (e.g. exp_so3 output).
class Rotation {
public:
    static constexpr double kTolerance = 1e-12;

    Rotation() : m_(Mat3::identity()) {}
    /// Throws std::invalid_argument if ||R^T R - id||_max or |det R - 1| exceeds tol.
    static Rotation from_matrix(const Mat3& m, double tol = kTolerance);
    static Rotation unchecked(const Mat3& m) { return Rotation(m); }

    const Mat3& matrix() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    Rotation transposed() const { return Rotation(transpose(m_)); }

    friend Rotation operator*(const Rotation& a, const Rotation& b) { return Rotation(a.m_ * b.m_); }
    friend bool operator==(const Rotation&, const Rotation&) = default;

private:
    explicit Rotation(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

/// max(||R^T R - id||_max, |det R - 1|).
double orthogonality_defect(const Mat3& r);

/// Rodrigues formula for exp(anti(w)).
Rotation exp_so3(const Vec3& w);
/// Inverse of exp_so3 with |log R| = rotation angle. Throws std::domain_error
/// for angles >= pi - 1e-6, where the branch is ambiguous.
Vec3 log_so3(const Rotation& r);
/// Right Jacobian of the exponential: exp(w)^T d/dt exp(w + t v) = anti(J(w) v).
Mat3 dexp_so3_right(const Vec3& w);

/// Orthogonal factor of F = R U (U symmetric positive definite), via scaled
/// Newton iteration X <- (X + X^{-T}) / 2. Throws std::domain_error if det F <= 0.
Rotation polar_rotation(const Mat3& f);

std::string to_string(const Mat3& m);

}  // namespace cosserat
