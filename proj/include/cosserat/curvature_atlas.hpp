#pragma once

// Closed-form conversions among the five curvature measures.

#include <array>
#include <optional>
#include <string_view>
#include <variant>

#include "cosserat/tensor.hpp"

namespace cosserat {

enum class Representation { Frak, KTilde, Gamma, Dislocation, Torsion };

inline constexpr std::array<Representation, 5> kAllRepresentations{
    Representation::Frak, Representation::KTilde, Representation::Gamma, Representation::Dislocation, Representation::Torsion};

/// frak, ktilde, gamma, dislocation, torsion.
std::string_view representation_name(Representation r);
std::optional<Representation> parse_representation(std::string_view name);
/// Gamma and Dislocation are second order; the others third order.
bool is_second_order(Representation r);

class CurvatureMeasure {
public:
    /// Throws std::invalid_argument if the payload order does not match the
    /// representation or an entry is not finite.
    CurvatureMeasure(Representation rep, const Mat3& m);
    CurvatureMeasure(Representation rep, const Ten3& t);

    static CurvatureMeasure zero(Representation rep);

    Representation representation() const { return rep_; }
    const Mat3& matrix() const { return std::get<Mat3>(payload_); }
    const Ten3& tensor() const { return std::get<Ten3>(payload_); }
    bool has_matrix() const { return std::holds_alternative<Mat3>(payload_); }

    friend bool operator==(const CurvatureMeasure&, const CurvatureMeasure&) = default;

private:
    Representation rep_;
    std::variant<Mat3, Ten3> payload_;
};

/// Largest absolute difference between payloads of the same representation.
double max_difference(const CurvatureMeasure& a, const CurvatureMeasure& b);

/// Nye's formula: K = -Gamma^T + (tr Gamma) id.
Mat3 nye_forward(const Mat3& gamma);
/// Gamma = -K^T + (tr K / 2) id.
Mat3 nye_inverse(const Mat3& dislocation);

/// Applies the table entry from c's representation to `to`; identity when equal.
CurvatureMeasure convert(const CurvatureMeasure& c, Representation to);

namespace atlas {
// The twenty table entries, named source_to_target.
Ten3 frak_to_ktilde(const Ten3& frak);
Mat3 frak_to_gamma(const Ten3& frak);
Mat3 frak_to_dislocation(const Ten3& frak);
Ten3 frak_to_torsion(const Ten3& frak);

Ten3 ktilde_to_frak(const Ten3& kt);
Mat3 ktilde_to_gamma(const Ten3& kt);
Mat3 ktilde_to_dislocation(const Ten3& kt);
Ten3 ktilde_to_torsion(const Ten3& kt);

Ten3 gamma_to_frak(const Mat3& g);
Ten3 gamma_to_ktilde(const Mat3& g);
Mat3 gamma_to_dislocation(const Mat3& g);
Ten3 gamma_to_torsion(const Mat3& g);

Ten3 dislocation_to_frak(const Mat3& k);
Ten3 dislocation_to_ktilde(const Mat3& k);
Mat3 dislocation_to_gamma(const Mat3& k);
Ten3 dislocation_to_torsion(const Mat3& k);

Ten3 torsion_to_frak(const Ten3& t);
Ten3 torsion_to_ktilde(const Ten3& t);
Mat3 torsion_to_gamma(const Ten3& t);
Mat3 torsion_to_dislocation(const Ten3& t);

/// Second route for gamma -> ktilde through the dislocation density:
/// K eps + eps K^T - (tr K / 2) eps with K = nye_forward(gamma).
Ten3 gamma_to_ktilde_via_dislocation(const Mat3& g);
}  // namespace atlas

}  // namespace cosserat
