#pragma once

// Isotropic and chiral Cosserat energy densities in the strain E = R^T F - id
// and the dislocation density K = R^T Curl R, with derivatives and
// definiteness/coercivity diagnostics.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosserat/tensor.hpp"

namespace cosserat {

struct IsotropicModuli {
    double mu = 1.0;     // shear modulus
    double kappa = 1.0;  // bulk modulus
    double mu_c = 1.0;   // Cosserat couple modulus
};

struct CurvatureParams {
    double a1 = 1.0, a2 = 1.0, a3 = 1.0;
    double L_c = 1.0;  // internal length
    double p = 2.0;    // curvature exponent, >= 2
};

struct ChiralParams {
    double beta1 = 0.0, beta2 = 0.0, beta3 = 0.0;
    bool is_zero() const { return beta1 == 0.0 && beta2 == 0.0 && beta3 == 0.0; }
};

/// Coefficients of the curvature energy written in the wryness tensor.
struct GammaCurvatureParams {
    double b1 = 1.0, b2 = 1.0, b3 = 4.0;
    static GammaCurvatureParams from(const CurvatureParams& c) { return {c.a1, c.a2, 4.0 * c.a3}; }
};

struct MaterialParams {
    IsotropicModuli moduli;
    CurvatureParams curvature;
    ChiralParams chiral;
};

/// mu ||dev sym E||^2 + mu_c ||skew E||^2 + kappa/2 (tr E)^2
double w_mp(const Mat3& e, const IsotropicModuli& m);
/// a1 ||dev sym K||^2 + a2 ||skew K||^2 + a3 (tr K)^2
double b_quadratic(const Mat3& k, double a1, double a2, double a3);
/// mu L_c^p B(K)^{p/2}
double w_curv(const Mat3& k, const CurvatureParams& c, double mu);
/// mu L_c^p (b1 ||dev sym G||^2 + b2 ||skew G||^2 + b3 (tr G)^2)^{p/2}
double w_curv_gamma(const Mat3& gamma, const GammaCurvatureParams& g, double L_c, double p, double mu);
/// 2 mu L_c (sqrt(b1) <dev sym E, dev sym K> + sqrt(b2) <skew E, skew K> + sqrt(b3) tr E tr K).
/// Only defined for p = 2; throws std::invalid_argument otherwise.
double w_chiral(const Mat3& e, const Mat3& k, const IsotropicModuli& m, const CurvatureParams& c, const ChiralParams& ch);

struct EnergyParts {
    double mp = 0.0;
    double curv = 0.0;
    double chiral = 0.0;
    double total() const { return mp + curv + chiral; }
};

/// The chiral part is skipped (and p unrestricted) when all betas vanish.
EnergyParts w_parts(const Mat3& e, const Mat3& k, const MaterialParams& p);
double w_total(const Mat3& e, const Mat3& k, const MaterialParams& p);

struct EnergyDerivative {
    Mat3 dE;  // dW/dE
    Mat3 dK;  // dW/dK
};
/// Analytic derivative of w_total. For p > 2 the curvature part is 0 at B(K) = 0.
EnergyDerivative w_derivative(const Mat3& e, const Mat3& k, const MaterialParams& p);
inline Mat3 dw_dE(const Mat3& e, const Mat3& k, const MaterialParams& p) { return w_derivative(e, k, p).dE; }
inline Mat3 dw_dK(const Mat3& e, const Mat3& k, const MaterialParams& p) { return w_derivative(e, k, p).dK; }

/// Small-strain energy in the displacement gradient, the infinitesimal
/// microrotation A (skew) and Curl A. Throws std::invalid_argument if A is not skew.
double w_linearized(const Mat3& grad_u, const Mat3& a, const Mat3& curl_a, const MaterialParams& p);

/// Rotational couplings of U = R^T F:
///   skew:     mu_c ||skew(U - id)||^2
///   polar:    mu_c ||polar(U) - id||^2
///   geodesic: mu_c ||log polar(U)||^2 (Frobenius norm of the skew logarithm)
/// polar and geodesic throw std::domain_error if det U <= 0; geodesic also
/// when the rotation angle of polar(U) reaches pi - 1e-6.
double coupling_skew(const Mat3& u, double mu_c);
double coupling_polar(const Mat3& u, double mu_c);
double coupling_geodesic(const Mat3& u, double mu_c);

struct DefinitenessCondition {
    std::string key;         // machine-readable name
    std::string expression;  // human-readable inequality
    bool satisfied = false;
    double margin = 0.0;  // lhs - rhs
};

struct DefinitenessReport {
    bool definite = false;
    std::vector<DefinitenessCondition> conditions;
    const DefinitenessCondition* find(const std::string& key) const;
};

/// Conditions for pointwise uniform positive definiteness of w_total. Never
/// throws; invalid parameters give failing entries.
DefinitenessReport check_definiteness(const MaterialParams& p);

struct CoercivityConstants {
    double c1 = 0.0;  // B(K) >= c1 ||K||^2
    double c2 = 0.0;  // W_mp(E) >= c2 ||E||^2
    double c3 = 0.0;  // W_curv(K) >= c3 ||K||^p
};
CoercivityConstants coercivity_constants(const IsotropicModuli& m, const CurvatureParams& c);

/// For p = 2: searches each strain/curvature coupling block (dev sym, skew,
/// spherical) for the direction minimizing w_total and returns it if the
/// energy there is negative.
std::optional<std::pair<Mat3, Mat3>> find_negative_energy_witness(const MaterialParams& p);

}  // namespace cosserat
