#pragma once

// "COSSERAT-FIELD v1" text files:
//
//   COSSERAT-FIELD v1
//   grid n1 n2 n3
//   box ox oy oz ex ey ez
//   kind vector|rotation|mat3|ten3
//   <one line per node, x-fastest, components row-major, 17 significant digits>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "cosserat/fields.hpp"

namespace cosserat {

class FieldFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using AnyField = std::variant<VectorField, RotationField, Mat3Field, Ten3Field>;

void write_field(std::ostream& out, const VectorField& f);
void write_field(std::ostream& out, const RotationField& f);
void write_field(std::ostream& out, const Mat3Field& f);
void write_field(std::ostream& out, const Ten3Field& f);
void write_field(std::ostream& out, const AnyField& f);

/// Throws FieldFormatError on malformed input; rotation rows must pass the
/// Rotation invariants at `rotation_tol`.
AnyField read_field(std::istream& in, double rotation_tol = 1e-10);

void save_field(const std::string& path, const AnyField& f);
AnyField load_field(const std::string& path, double rotation_tol = 1e-10);

/// load_field() that also checks the kind.
template <class F>
F load_field_as(const std::string& path) {
    AnyField any = load_field(path);
    if (auto* f = std::get_if<F>(&any)) return std::move(*f);
    throw FieldFormatError(path + ": unexpected field kind");
}

const Grid& grid_of(const AnyField& f);

}  // namespace cosserat
