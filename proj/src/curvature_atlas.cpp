#include "cosserat/curvature_atlas.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosserat {

std::string_view representation_name(Representation r) {
    switch (r) {
        case Representation::Frak: return "frak";
        case Representation::KTilde: return "ktilde";
        case Representation::Gamma: return "gamma";
        case Representation::Dislocation: return "dislocation";
        case Representation::Torsion: return "torsion";
    }
    return "?";
}

std::optional<Representation> parse_representation(std::string_view name) {
    for (Representation r : kAllRepresentations)
        if (representation_name(r) == name) return r;
    return std::nullopt;
}

bool is_second_order(Representation r) { return r == Representation::Gamma || r == Representation::Dislocation; }

namespace {

template <class P>
void require_finite(const P& p) {
    for (double x : p.c)
        if (!std::isfinite(x)) throw std::invalid_argument("CurvatureMeasure: non-finite payload");
}

Mat3 with_trace_shift(const Mat3& m, double shift) {
    Mat3 r = m;
    r(0, 0) += shift;
    r(1, 1) += shift;
    r(2, 2) += shift;
    return r;
}

}  // namespace

CurvatureMeasure::CurvatureMeasure(Representation rep, const Mat3& m) : rep_(rep), payload_(m) {
    if (!is_second_order(rep)) throw std::invalid_argument("CurvatureMeasure: third order representation given a matrix");
    require_finite(m);
}

CurvatureMeasure::CurvatureMeasure(Representation rep, const Ten3& t) : rep_(rep), payload_(t) {
    if (is_second_order(rep)) throw std::invalid_argument("CurvatureMeasure: second order representation given a third order tensor");
    require_finite(t);
}

CurvatureMeasure CurvatureMeasure::zero(Representation rep) {
    return is_second_order(rep) ? CurvatureMeasure(rep, Mat3{}) : CurvatureMeasure(rep, Ten3{});
}

double max_difference(const CurvatureMeasure& a, const CurvatureMeasure& b) {
    if (a.representation() != b.representation()) throw std::invalid_argument("max_difference: representations differ");
    return a.has_matrix() ? max_abs(a.matrix() - b.matrix()) : max_abs(a.tensor() - b.tensor());
}

Mat3 nye_forward(const Mat3& gamma) { return with_trace_shift(-transpose(gamma), trace(gamma)); }

Mat3 nye_inverse(const Mat3& dislocation) { return with_trace_shift(-transpose(dislocation), 0.5 * trace(dislocation)); }

namespace atlas {

using TP = TransposePair;

Ten3 frak_to_ktilde(const Ten3& frak) { return ten3_transpose(frak, TP::J_K); }
Mat3 frak_to_gamma(const Ten3& frak) {
    const Mat3 ke = ddot(frak, eps());
    return with_trace_shift(transpose(ke), -0.5 * trace(ke));
}
Mat3 frak_to_dislocation(const Ten3& frak) { return -ddot(frak, eps()); }
Ten3 frak_to_torsion(const Ten3& frak) { return ten3_transpose(frak, TP::J_K) - frak; }

Ten3 ktilde_to_frak(const Ten3& kt) { return ten3_transpose(kt, TP::J_K); }
Mat3 ktilde_to_gamma(const Ten3& kt) {
    const Mat3 ke = ddot(ten3_transpose(kt, TP::J_K), eps());
    return with_trace_shift(transpose(ke), -0.5 * trace(ke));
}
Mat3 ktilde_to_dislocation(const Ten3& kt) { return -ddot(ten3_transpose(kt, TP::J_K), eps()); }
Ten3 ktilde_to_torsion(const Ten3& kt) { return kt - ten3_transpose(kt, TP::J_K); }

Ten3 gamma_to_frak(const Mat3& g) { return -eps_times_mat(g); }
Ten3 gamma_to_ktilde(const Mat3& g) {
    return -mat_times_eps(transpose(g)) - eps_times_mat(g) + trace(g) * eps();
}
Mat3 gamma_to_dislocation(const Mat3& g) { return nye_forward(g); }
Ten3 gamma_to_torsion(const Mat3& g) { return -mat_times_eps(transpose(g)) + trace(g) * eps(); }

Ten3 dislocation_to_frak(const Mat3& k) { return eps_times_mat(transpose(k)) - (0.5 * trace(k)) * eps(); }
Ten3 dislocation_to_ktilde(const Mat3& k) {
    return mat_times_eps(k) + eps_times_mat(transpose(k)) - (0.5 * trace(k)) * eps();
}
Mat3 dislocation_to_gamma(const Mat3& k) { return nye_inverse(k); }
Ten3 dislocation_to_torsion(const Mat3& k) { return mat_times_eps(k); }

Ten3 torsion_to_frak(const Ten3& t) {
    return 0.5 * (ten3_transpose(t, TP::I_J) - t - ten3_transpose(t, TP::I_K));
}
Ten3 torsion_to_ktilde(const Ten3& t) {
    return 0.5 * (t + ten3_transpose(t, TP::I_J) - ten3_transpose(t, TP::I_K));
}
Mat3 torsion_to_gamma(const Ten3& t) {
    const Mat3 te = ddot(t, eps());
    return with_trace_shift(-0.5 * transpose(te), 0.25 * trace(te));
}
Mat3 torsion_to_dislocation(const Ten3& t) { return 0.5 * ddot(t, eps()); }

Ten3 gamma_to_ktilde_via_dislocation(const Mat3& g) { return dislocation_to_ktilde(nye_forward(g)); }

}  // namespace atlas

CurvatureMeasure convert(const CurvatureMeasure& c, Representation to) {
    using R = Representation;
    const R from = c.representation();
    if (from == to) return c;
    switch (from) {
        case R::Frak: {
            const Ten3& x = c.tensor();
            switch (to) {
                case R::KTilde: return {to, atlas::frak_to_ktilde(x)};
                case R::Gamma: return {to, atlas::frak_to_gamma(x)};
                case R::Dislocation: return {to, atlas::frak_to_dislocation(x)};
                case R::Torsion: return {to, atlas::frak_to_torsion(x)};
                default: break;
            }
            break;
        }
        case R::KTilde: {
            const Ten3& x = c.tensor();
            switch (to) {
                case R::Frak: return {to, atlas::ktilde_to_frak(x)};
                case R::Gamma: return {to, atlas::ktilde_to_gamma(x)};
                case R::Dislocation: return {to, atlas::ktilde_to_dislocation(x)};
                case R::Torsion: return {to, atlas::ktilde_to_torsion(x)};
                default: break;
            }
            break;
        }
        case R::Gamma: {
            const Mat3& x = c.matrix();
            switch (to) {
                case R::Frak: return {to, atlas::gamma_to_frak(x)};
                case R::KTilde: return {to, atlas::gamma_to_ktilde(x)};
                case R::Dislocation: return {to, atlas::gamma_to_dislocation(x)};
                case R::Torsion: return {to, atlas::gamma_to_torsion(x)};
                default: break;
            }
            break;
        }
        case R::Dislocation: {
            const Mat3& x = c.matrix();
            switch (to) {
                case R::Frak: return {to, atlas::dislocation_to_frak(x)};
                case R::KTilde: return {to, atlas::dislocation_to_ktilde(x)};
                case R::Gamma: return {to, atlas::dislocation_to_gamma(x)};
                case R::Torsion: return {to, atlas::dislocation_to_torsion(x)};
                default: break;
            }
            break;
        }
        case R::Torsion: {
            const Ten3& x = c.tensor();
            switch (to) {
                case R::Frak: return {to, atlas::torsion_to_frak(x)};
                case R::KTilde: return {to, atlas::torsion_to_ktilde(x)};
                case R::Gamma: return {to, atlas::torsion_to_gamma(x)};
                case R::Dislocation: return {to, atlas::torsion_to_dislocation(x)};
                default: break;
            }
            break;
        }
    }
    throw std::logic_error("convert: unhandled representation pair");
}

}  // namespace cosserat
