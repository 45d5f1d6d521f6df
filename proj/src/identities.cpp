#include "cosserat/identities.hpp"

#include <algorithm>
#include <cmath>

#include "cosserat/curvature_atlas.hpp"
#include "cosserat/kinematics.hpp"

namespace cosserat {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec3 random_vec(std::mt19937_64& rng, double s) { return {{uniform(rng, -s, s), uniform(rng, -s, s), uniform(rng, -s, s)}}; }

Mat3 random_mat(std::mt19937_64& rng, double s) {
    Mat3 m;
    for (double& x : m.c) x = uniform(rng, -s, s);
    return m;
}

Rotation random_rotation(std::mt19937_64& rng) {
    Vec3 w = random_vec(rng, 1.0);
    const double n = norm(w);
    if (n > 0.0) w = (uniform(rng, 0.0, 3.0) / n) * w;
    return exp_so3(w);
}

// Ten3 built from a Mat3 per slice.
Ten3 from_slices(const std::array<Mat3, 3>& s) {
    Ten3 t;
    for (int k = 0; k < 3; ++k) t.set_slice(k, s[k]);
    return t;
}

struct Tracker {
    std::vector<IdentityResult> results;
    IdentityResult& get(const std::string& name, double tol) {
        for (auto& r : results)
            if (r.name == name) return r;
        results.push_back({name, 0.0, tol, true});
        return results.back();
    }
    void record(const std::string& name, double err, double tol) {
        IdentityResult& r = get(name, tol);
        r.max_error = std::max(r.max_error, std::isfinite(err) ? err : INFINITY);
    }
    std::vector<IdentityResult> finish() {
        for (auto& r : results) r.passed = r.max_error <= r.tolerance;
        return std::move(results);
    }
};

constexpr double kAnalyticTol = 1e-12;
constexpr double kNyeTol = 1e-13;

}  // namespace

SmoothRotationField SmoothRotationField::random(std::mt19937_64& rng, double amplitude) {
    SmoothRotationField f;
    f.a_ = random_vec(rng, 0.5 * amplitude);
    f.b_ = random_mat(rng, 0.6 * amplitude);
    for (int q = 0; q < 2; ++q) {
        f.c_.push_back(random_vec(rng, 0.3 * amplitude));
        f.k_.push_back(random_vec(rng, 2.0));
        f.psi_.push_back(uniform(rng, 0.0, 6.283185307179586));
    }
    return f;
}

SmoothRotationField SmoothRotationField::twist(double rate, int axis, int direction) {
    SmoothRotationField f;
    f.b_(axis, direction) = rate;
    return f;
}

Vec3 SmoothRotationField::v(const Vec3& x) const {
    Vec3 r = a_ + b_ * x;
    for (std::size_t q = 0; q < c_.size(); ++q) r += std::sin(dot(k_[q], x) + psi_[q]) * c_[q];
    return r;
}

Mat3 SmoothRotationField::dv(const Vec3& x) const {
    Mat3 d = b_;
    for (std::size_t q = 0; q < c_.size(); ++q) d += std::cos(dot(k_[q], x) + psi_[q]) * outer(c_[q], k_[q]);
    return d;
}

Mat3 SmoothRotationField::gamma(const Vec3& x) const { return dexp_so3_right(v(x)) * dv(x); }

Ten3 SmoothRotationField::gradient(const Vec3& x) const {
    const Mat3 r = rotation(x).matrix();
    const Mat3 g = gamma(x);
    return from_slices({r * anti(g.column(0)), r * anti(g.column(1)), r * anti(g.column(2))});
}

RotationField SmoothRotationField::sample(const Grid& g) const {
    RotationField f(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) f[n] = rotation(g.position(n));
    return f;
}

std::vector<IdentityResult> run_identity_suite(std::uint64_t seed, int n_samples, int grid_n) {
    std::mt19937_64 rng(seed);
    Tracker t;
    using R = Representation;

    for (int s = 0; s < n_samples; ++s) {
        const Mat3 gamma = random_mat(rng, 1.0);
        const Mat3 disl = random_mat(rng, 1.0);
        t.record("nye.roundtrip", std::max(max_abs(nye_inverse(nye_forward(gamma)) - gamma), max_abs(nye_forward(nye_inverse(disl)) - disl)), kNyeTol);

        // One consistent curvature state in all five representations.
        const CurvatureMeasure base(R::Gamma, gamma);
        std::array<CurvatureMeasure, 5> all{convert(base, R::Frak), convert(base, R::KTilde), base, convert(base, R::Dislocation),
                                            convert(base, R::Torsion)};
        for (const CurvatureMeasure& from : all)
            for (const CurvatureMeasure& target : all) {
                if (from.representation() == target.representation()) continue;
                const std::string name = "table." + std::string(representation_name(from.representation())) + "_to_" +
                                         std::string(representation_name(target.representation()));
                t.record(name, max_difference(convert(from, target.representation()), target), kAnalyticTol);
            }
        CurvatureMeasure cyc = base;
        for (R r : {R::Frak, R::KTilde, R::Torsion, R::Dislocation, R::Gamma}) cyc = convert(cyc, r);
        t.record("table.cycle", max_difference(cyc, base), kAnalyticTol);
        t.record("table.gamma_to_ktilde_via_dislocation", max_abs(atlas::gamma_to_ktilde_via_dislocation(gamma) - all[1].tensor()), kAnalyticTol);

        // Exact-tensor norm and trace relations.
        const Rotation q = random_rotation(rng);
        const Ten3 grad = from_slices({q.matrix() * anti(gamma.column(0)), q.matrix() * anti(gamma.column(1)), q.matrix() * anti(gamma.column(2))});
        const Ten3 frak = frak_from_gradient(q, grad);
        const Mat3 k = dislocation_from_gradient(q, grad);
        const double g2 = norm_sq(gamma), tr = trace(gamma);
        const double scale = std::max(1.0, g2);
        t.record("norm.gamma_frak", std::abs(g2 - 0.5 * norm_sq(frak)) / scale, kAnalyticTol);
        t.record("norm.gamma_grad", std::abs(g2 - 0.5 * norm_sq(grad)) / scale, kAnalyticTol);
        t.record("norm.dislocation", std::abs(norm_sq(k) - (g2 + tr * tr)) / scale, kAnalyticTol);
        t.record("trace.dislocation", std::abs(trace(k) - 2.0 * tr), kAnalyticTol);
        t.record("skew.dislocation", max_abs(skew(k) - skew(gamma)), kAnalyticTol);
        t.record("devsym.dislocation", max_abs(dev_sym(k) + dev_sym(gamma)), kAnalyticTol);
        t.record("kinematics.gamma", max_abs(gamma_from_frak(frak) - gamma), kAnalyticTol);
        t.record("kinematics.dislocation", max_abs(k - nye_forward(gamma)), kAnalyticTol);
    }

    // Smooth fields: exact pointwise identities and second-order consistency
    // of the discrete measures.
    const Grid grid = Grid::unit_cube(grid_n);
    const double h = grid.spacing(0);
    const double field_tol = kFieldConstant * h * h;
    const int n_fields = std::max(1, n_samples / 20);
    for (int s = 0; s <= n_fields; ++s) {
        const SmoothRotationField f = s < n_fields ? SmoothRotationField::random(rng) : SmoothRotationField::twist(0.7);
        const std::string tag = s < n_fields ? "field." : "twist.";
        const RotationField r = f.sample(grid);
        for (std::size_t n = 0; n < grid.node_count(); ++n) {
            const Vec3 x = grid.position(n);
            const Rotation rx = f.rotation(x);
            const Ten3 grad = f.gradient(x);
            const Mat3 gamma = f.gamma(x);
            if (s < n_fields) t.record("field.nye_exact", max_abs(dislocation_from_gradient(rx, grad) - nye_forward(gamma)), kAnalyticTol);

            const Mat3 g_fd = curvature_gamma(r, n);
            const Mat3 k_fd = curvature_dislocation(r, n);
            t.record(tag + "nye_fd", max_abs(k_fd - nye_forward(g_fd)), field_tol);
            t.record(tag + "gamma_fd", max_abs(g_fd - gamma), field_tol);
            t.record(tag + "dislocation_fd", max_abs(k_fd - nye_forward(gamma)), field_tol);
            t.record(tag + "skew_defect", slice_skew_defect(curvature_frak(r, n)), field_tol);
        }
    }
    return t.finish();
}

}  // namespace cosserat
