#include "cosserat/materials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cosserat {

double w_mp(const Mat3& e, const IsotropicModuli& m) {
    const double t = trace(e);
    return m.mu * norm_sq(dev_sym(e)) + m.mu_c * norm_sq(skew(e)) + 0.5 * m.kappa * t * t;
}

double b_quadratic(const Mat3& k, double a1, double a2, double a3) {
    const double t = trace(k);
    return a1 * norm_sq(dev_sym(k)) + a2 * norm_sq(skew(k)) + a3 * t * t;
}

namespace {

// mu L^p B^{p/2}; the p = 2 case avoids pow for exactness.
double curvature_power(double b, double mu, double L, double p) {
    if (p == 2.0) return mu * L * L * b;
    return mu * std::pow(L, p) * std::pow(std::max(b, 0.0), 0.5 * p);
}

double chiral_form(const Mat3& e, const Mat3& k, double mu, double L, const ChiralParams& ch) {
    return 2.0 * mu * L *
           (std::sqrt(ch.beta1) * dot(dev_sym(e), dev_sym(k)) + std::sqrt(ch.beta2) * dot(skew(e), skew(k)) +
            std::sqrt(ch.beta3) * trace(e) * trace(k));
}

}  // namespace

double w_curv(const Mat3& k, const CurvatureParams& c, double mu) {
    return curvature_power(b_quadratic(k, c.a1, c.a2, c.a3), mu, c.L_c, c.p);
}

double w_curv_gamma(const Mat3& gamma, const GammaCurvatureParams& g, double L_c, double p, double mu) {
    return curvature_power(b_quadratic(gamma, g.b1, g.b2, g.b3), mu, L_c, p);
}

double w_chiral(const Mat3& e, const Mat3& k, const IsotropicModuli& m, const CurvatureParams& c, const ChiralParams& ch) {
    if (c.p != 2.0) throw std::invalid_argument("w_chiral: chiral coupling is only defined for p = 2");
    return chiral_form(e, k, m.mu, c.L_c, ch);
}

EnergyParts w_parts(const Mat3& e, const Mat3& k, const MaterialParams& p) {
    EnergyParts parts;
    parts.mp = w_mp(e, p.moduli);
    parts.curv = w_curv(k, p.curvature, p.moduli.mu);
    if (!p.chiral.is_zero()) parts.chiral = w_chiral(e, k, p.moduli, p.curvature, p.chiral);
    return parts;
}

double w_total(const Mat3& e, const Mat3& k, const MaterialParams& p) { return w_parts(e, k, p).total(); }

EnergyDerivative w_derivative(const Mat3& e, const Mat3& k, const MaterialParams& p) {
    const IsotropicModuli& m = p.moduli;
    const CurvatureParams& c = p.curvature;
    EnergyDerivative d;

    const Mat3 id = Mat3::identity();
    d.dE = 2.0 * m.mu * dev_sym(e) + 2.0 * m.mu_c * skew(e) + (m.kappa * trace(e)) * id;

    const Mat3 db = 2.0 * c.a1 * dev_sym(k) + 2.0 * c.a2 * skew(k) + (2.0 * c.a3 * trace(k)) * id;
    if (c.p == 2.0) {
        d.dK = (m.mu * c.L_c * c.L_c) * db;
    } else {
        const double b = b_quadratic(k, c.a1, c.a2, c.a3);
        d.dK = b > 0.0 ? (m.mu * std::pow(c.L_c, c.p) * 0.5 * c.p * std::pow(b, 0.5 * c.p - 1.0)) * db : Mat3{};
    }

    if (!p.chiral.is_zero()) {
        if (c.p != 2.0) throw std::invalid_argument("w_derivative: chiral coupling is only defined for p = 2");
        const ChiralParams& ch = p.chiral;
        const double s = 2.0 * m.mu * c.L_c;
        const double r1 = std::sqrt(ch.beta1), r2 = std::sqrt(ch.beta2), r3 = std::sqrt(ch.beta3);
        d.dE += s * (r1 * dev_sym(k) + r2 * skew(k) + (r3 * trace(k)) * id);
        d.dK += s * (r1 * dev_sym(e) + r2 * skew(e) + (r3 * trace(e)) * id);
    }
    return d;
}

double w_linearized(const Mat3& grad_u, const Mat3& a, const Mat3& curl_a, const MaterialParams& p) {
    if (max_abs(sym(a)) > kSkewTolerance) throw std::invalid_argument("w_linearized: infinitesimal microrotation must be skew");
    if (p.curvature.p != 2.0) throw std::invalid_argument("w_linearized: the quadratic energy requires p = 2");
    const Mat3 rel = grad_u - a;
    const CurvatureParams& c = p.curvature;
    double w = w_mp(rel, p.moduli) + p.moduli.mu * c.L_c * c.L_c * b_quadratic(curl_a, c.a1, c.a2, c.a3);
    if (!p.chiral.is_zero()) w += chiral_form(rel, curl_a, p.moduli.mu, c.L_c, p.chiral);
    return w;
}

double coupling_skew(const Mat3& u, double mu_c) { return mu_c * norm_sq(skew(u - Mat3::identity())); }

double coupling_polar(const Mat3& u, double mu_c) {
    return mu_c * norm_sq(polar_rotation(u).matrix() - Mat3::identity());
}

double coupling_geodesic(const Mat3& u, double mu_c) {
    // ||anti(w)||^2 = 2 |w|^2
    return 2.0 * mu_c * norm_sq(log_so3(polar_rotation(u)));
}

const DefinitenessCondition* DefinitenessReport::find(const std::string& key) const {
    for (const auto& c : conditions)
        if (c.key == key) return &c;
    return nullptr;
}

DefinitenessReport check_definiteness(const MaterialParams& p) {
    const IsotropicModuli& m = p.moduli;
    const CurvatureParams& c = p.curvature;
    const ChiralParams& ch = p.chiral;
    DefinitenessReport r;

    auto strict = [&](std::string key, std::string expr, double margin) {
        r.conditions.push_back({std::move(key), std::move(expr), margin > 0.0, margin});
    };
    auto weak = [&](std::string key, std::string expr, double margin) {
        r.conditions.push_back({std::move(key), std::move(expr), margin >= 0.0, margin});
    };
    // a > (x/y) beta with the ratio guarded against y <= 0.
    auto ratio_margin = [](double a, double x, double y, double beta) {
        if (beta == 0.0) return a;
        if (!(y > 0.0)) return -std::numeric_limits<double>::infinity();
        return a - x / y * beta;
    };

    strict("mu_positive", "mu > 0", m.mu);
    strict("kappa_positive", "kappa > 0", m.kappa);
    strict("mu_c_positive", "mu_c > 0", m.mu_c);
    weak("p_at_least_2", "p >= 2", c.p - 2.0);
    strict("L_c_positive", "L_c > 0", c.L_c);
    strict("a1_gt_beta1", "a1 > beta1", c.a1 - ch.beta1);
    weak("beta1_nonnegative", "beta1 >= 0", ch.beta1);
    strict("a2_gt_mu_over_mu_c_beta2", "a2 > (mu/mu_c) beta2", ratio_margin(c.a2, m.mu, m.mu_c, ch.beta2));
    weak("beta2_nonnegative", "beta2 >= 0", ch.beta2);
    strict("a3_gt_2mu_over_kappa_beta3", "a3 > (2 mu/kappa) beta3", ratio_margin(c.a3, 2.0 * m.mu, m.kappa, ch.beta3));
    weak("beta3_nonnegative", "beta3 >= 0", ch.beta3);
    if (!ch.is_zero()) strict("chiral_requires_p_2", "p = 2 when chiral", c.p == 2.0 ? 1.0 : -std::abs(c.p - 2.0));

    r.definite = std::all_of(r.conditions.begin(), r.conditions.end(), [](const auto& cond) { return cond.satisfied; });
    return r;
}

CoercivityConstants coercivity_constants(const IsotropicModuli& m, const CurvatureParams& c) {
    CoercivityConstants k;
    k.c1 = std::min({c.a1, c.a2, 3.0 * c.a3});
    k.c2 = std::min({m.mu, m.mu_c, 1.5 * m.kappa});
    k.c3 = m.mu * std::pow(c.L_c, c.p) * std::pow(k.c1, 0.5 * c.p);
    return k;
}

std::optional<std::pair<Mat3, Mat3>> find_negative_energy_witness(const MaterialParams& p) {
    if (p.curvature.p != 2.0) return std::nullopt;
    const double r2 = std::sqrt(0.5);
    const double r3 = std::sqrt(1.0 / 3.0);
    Mat3 dev_dir, skew_dir;
    dev_dir(0, 1) = dev_dir(1, 0) = r2;
    skew_dir(0, 1) = r2;
    skew_dir(1, 0) = -r2;
    const std::array<Mat3, 3> dirs{dev_dir, skew_dir, r3 * Mat3::identity()};

    for (const Mat3& d : dirs) {
        // Restriction of the quadratic energy to (x d, y d), by polarization.
        const double m11 = w_total(d, Mat3{}, p);
        const double m22 = w_total(Mat3{}, d, p);
        const double m12 = 0.5 * (w_total(d, d, p) - m11 - m22);
        // Smallest eigenpair of [[m11, m12], [m12, m22]].
        const double mean = 0.5 * (m11 + m22);
        const double rad = std::hypot(0.5 * (m11 - m22), m12);
        const double lambda = mean - rad;
        double x = m12, y = lambda - m11;
        if (std::hypot(x, y) < 1e-300) {
            x = lambda - m22;
            y = m12;
        }
        if (std::hypot(x, y) < 1e-300) {
            x = (m11 <= m22) ? 1.0 : 0.0;
            y = 1.0 - x;
        }
        const double n = std::hypot(x, y);
        const Mat3 e = (x / n) * d;
        const Mat3 k = (y / n) * d;
        if (w_total(e, k, p) < 0.0) return std::make_pair(e, k);
    }
    return std::nullopt;
}

}  // namespace cosserat
