#include "cosserat/tensor.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>

namespace cosserat {

Mat3 Ten3::slice(std::size_t k) const {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(i, j, k);
    return m;
}

void Ten3::set_slice(std::size_t k, const Mat3& m) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) (*this)(i, j, k) = m(i, j);
}

double max_abs(const Mat3& a) {
    double r = 0.0;
    for (double x : a.c) r = std::max(r, std::abs(x));
    return r;
}

double max_abs(const Ten3& a) {
    double r = 0.0;
    for (double x : a.c) r = std::max(r, std::abs(x));
    return r;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
    return m;
}

Mat3 transpose(const Mat3& m) {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(j, i);
    return t;
}

double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

double det(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 inverse(const Mat3& m) {
    const double d = det(m);
    if (std::abs(d) < 1e-300) throw std::domain_error("inverse: singular matrix");
    Mat3 r;
    r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return (1.0 / d) * r;
}

Mat3 sym(const Mat3& m) { return 0.5 * (m + transpose(m)); }
Mat3 skew(const Mat3& m) { return 0.5 * (m - transpose(m)); }

Mat3 dev(const Mat3& m) {
    Mat3 r = m;
    const double t = trace(m) / 3.0;
    r(0, 0) -= t;
    r(1, 1) -= t;
    r(2, 2) -= t;
    return r;
}

Vec3 axl(const Mat3& s, double tol) {
    const double defect = max_abs(sym(s));
    if (defect > tol) throw std::invalid_argument("axl: matrix is not skew-symmetric (|sym| = " + std::to_string(defect) + ")");
    return {{s(2, 1), s(0, 2), s(1, 0)}};
}

Mat3 anti(const Vec3& w) {
    Mat3 m;
    m(0, 1) = -w[2];
    m(0, 2) = w[1];
    m(1, 0) = w[2];
    m(1, 2) = -w[0];
    m(2, 0) = -w[1];
    m(2, 1) = w[0];
    return m;
}

Mat3 ddot(const Ten3& a, const Ten3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = 0; q < 3; ++q) s += a(i, p, q) * b(p, q, j);
            r(i, j) = s;
        }
    return r;
}

Vec3 ddot(const Ten3& a, const Mat3& m) {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i) {
        double s = 0.0;
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t q = 0; q < 3; ++q) s += a(i, p, q) * m(p, q);
        r[i] = s;
    }
    return r;
}

Mat3 mat_cross_vec(const Mat3& m, const Vec3& v) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec3 row = cross(m.row(i), v);
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = row[j];
    }
    return r;
}

Ten3 ten3_cross_vec(const Ten3& t, const Vec3& v) {
    Ten3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const Vec3 last{{t(i, j, 0), t(i, j, 1), t(i, j, 2)}};
            const Vec3 x = cross(last, v);
            for (std::size_t k = 0; k < 3; ++k) r(i, j, k) = x[k];
        }
    return r;
}

const Ten3& eps() {
    static const Ten3 e = [] {
        Ten3 t;
        t(0, 1, 2) = t(1, 2, 0) = t(2, 0, 1) = 1.0;
        t(0, 2, 1) = t(2, 1, 0) = t(1, 0, 2) = -1.0;
        return t;
    }();
    return e;
}

Ten3 eps_times_mat(const Mat3& g) {
    const Ten3& e = eps();
    Ten3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                double s = 0.0;
                for (std::size_t q = 0; q < 3; ++q) s += e(i, j, q) * g(q, k);
                r(i, j, k) = s;
            }
    return r;
}

Ten3 mat_times_eps(const Mat3& k) {
    const Ten3& e = eps();
    Ten3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t l = 0; l < 3; ++l) {
                double s = 0.0;
                for (std::size_t q = 0; q < 3; ++q) s += k(i, q) * e(q, j, l);
                r(i, j, l) = s;
            }
    return r;
}

Ten3 ten3_transpose(const Ten3& t, TransposePair pair) {
    Ten3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                switch (pair) {
                    case TransposePair::J_K: r(i, j, k) = t(i, k, j); break;
                    case TransposePair::I_K: r(i, j, k) = t(k, j, i); break;
                    case TransposePair::I_J: r(i, j, k) = t(j, i, k); break;
                }
            }
    return r;
}

double slice_skew_defect(const Ten3& t) {
    double d = 0.0;
    for (std::size_t k = 0; k < 3; ++k) d = std::max(d, max_abs(sym(t.slice(k))));
    return d;
}

double orthogonality_defect(const Mat3& r) {
    return std::max(max_abs(transpose(r) * r - Mat3::identity()), std::abs(det(r) - 1.0));
}

Rotation Rotation::from_matrix(const Mat3& m, double tol) {
    for (double x : m.c)
        if (!std::isfinite(x)) throw std::invalid_argument("Rotation: non-finite entry");
    const double d = orthogonality_defect(m);
    if (d > tol) throw std::invalid_argument("Rotation: matrix is not in SO(3) (defect " + std::to_string(d) + ")");
    return Rotation(m);
}

Rotation exp_so3(const Vec3& w) {
    const double t2 = norm_sq(w);
    const double t = std::sqrt(t2);
    double a, b;  // sin(t)/t, (1 - cos t)/t^2
    if (t < 1e-4) {
        a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
        a = std::sin(t) / t;
        b = (1.0 - std::cos(t)) / t2;
    }
    const Mat3 k = anti(w);
    return Rotation::unchecked(Mat3::identity() + a * k + b * (k * k));
}

Vec3 log_so3(const Rotation& r) {
    const Mat3& m = r.matrix();
    const Vec3 v{{0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))}};
    const double s = norm(v);  // sin(angle)
    const double c = 0.5 * (trace(m) - 1.0);
    const double angle = std::atan2(s, c);
    if (angle >= std::numbers::pi - 1e-6) throw std::domain_error("log_so3: rotation angle too close to pi");
    double f;  // angle / sin(angle)
    if (angle < 1e-4) {
        const double a2 = angle * angle;
        f = 1.0 + a2 / 6.0 + 7.0 * a2 * a2 / 360.0;
    } else {
        f = angle / s;
    }
    return f * v;
}

Mat3 dexp_so3_right(const Vec3& w) {
    const double t2 = norm_sq(w);
    const double t = std::sqrt(t2);
    double b, c;  // (1 - cos t)/t^2, (t - sin t)/t^3
    if (t < 1e-3) {
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
        c = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
    } else {
        b = (1.0 - std::cos(t)) / t2;
        c = (t - std::sin(t)) / (t2 * t);
    }
    const Mat3 k = anti(w);
    return Mat3::identity() - b * k + c * (k * k);
}

Rotation polar_rotation(const Mat3& f) {
    const double d0 = det(f);
    if (!(d0 > 0.0)) throw std::domain_error("polar_rotation: det F <= 0");
    Mat3 x = f;
    for (int it = 0; it < 100; ++it) {
        const double d = det(x);
        // Determinant scaling speeds up the early iterations; it tends to 1 near convergence.
        const double zeta = std::pow(d, -1.0 / 3.0);
        const Mat3 next = 0.5 * (zeta * x + (1.0 / zeta) * transpose(inverse(x)));
        const double change = max_abs(next - x);
        x = next;
        if (change < 1e-15) break;
    }
    // Two unscaled steps to settle on the orthogonal fixed point.
    x = 0.5 * (x + transpose(inverse(x)));
    x = 0.5 * (x + transpose(inverse(x)));
    return Rotation::unchecked(x);
}

std::string to_string(const Mat3& m) {
    std::string s = "[";
    char buf[64];
    for (std::size_t i = 0; i < 3; ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < 3; ++j) {
            std::snprintf(buf, sizeof buf, j ? " %.6g" : "%.6g", m(i, j));
            s += buf;
        }
    }
    return s + "]";
}

}  // namespace cosserat
