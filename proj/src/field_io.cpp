#include "cosserat/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cosserat {

namespace {

constexpr const char* kMagic = "COSSERAT-FIELD v1";

void write_header(std::ostream& out, const Grid& g, const char* kind) {
    char buf[512];
    out << kMagic << '\n';
    out << "grid " << g.count(0) << ' ' << g.count(1) << ' ' << g.count(2) << '\n';
    std::snprintf(buf, sizeof buf, "box %.17g %.17g %.17g %.17g %.17g %.17g\n", g.origin()[0], g.origin()[1], g.origin()[2],
                  g.extent()[0], g.extent()[1], g.extent()[2]);
    out << buf << "kind " << kind << '\n';
}

template <std::size_t N>
void write_row(std::ostream& out, const std::array<double, N>& c) {
    char buf[32];
    for (std::size_t i = 0; i < N; ++i) {
        std::snprintf(buf, sizeof buf, i ? " %.17g" : "%.17g", c[i]);
        out << buf;
    }
    out << '\n';
}

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return line;
    }
    throw FieldFormatError(std::string("field file truncated: expected ") + what);
}

template <std::size_t N>
std::array<double, N> read_row(std::istream& in, std::size_t node) {
    std::istringstream ls(next_line(in, "node values"));
    std::array<double, N> c{};
    for (std::size_t i = 0; i < N; ++i)
        if (!(ls >> c[i])) throw FieldFormatError("node " + std::to_string(node) + ": expected " + std::to_string(N) + " components");
    std::string extra;
    if (ls >> extra) throw FieldFormatError("node " + std::to_string(node) + ": too many components");
    return c;
}

}  // namespace

void write_field(std::ostream& out, const VectorField& f) {
    write_header(out, f.grid, "vector");
    for (const Vec3& v : f.values) write_row(out, v.c);
}

void write_field(std::ostream& out, const RotationField& f) {
    write_header(out, f.grid, "rotation");
    for (const Rotation& r : f.values) write_row(out, r.matrix().c);
}

void write_field(std::ostream& out, const Mat3Field& f) {
    write_header(out, f.grid, "mat3");
    for (const Mat3& m : f.values) write_row(out, m.c);
}

void write_field(std::ostream& out, const Ten3Field& f) {
    write_header(out, f.grid, "ten3");
    for (const Ten3& t : f.values) write_row(out, t.c);
}

void write_field(std::ostream& out, const AnyField& f) {
    std::visit([&](const auto& x) { write_field(out, x); }, f);
}

AnyField read_field(std::istream& in, double rotation_tol) {
    if (next_line(in, "header") != kMagic) throw FieldFormatError("missing COSSERAT-FIELD v1 header");

    std::istringstream gl(next_line(in, "grid line"));
    std::string tag;
    std::array<int, 3> n{};
    if (!(gl >> tag >> n[0] >> n[1] >> n[2]) || tag != "grid") throw FieldFormatError("malformed grid line");

    std::istringstream bl(next_line(in, "box line"));
    Vec3 o, e;
    if (!(bl >> tag >> o[0] >> o[1] >> o[2] >> e[0] >> e[1] >> e[2]) || tag != "box") throw FieldFormatError("malformed box line");

    std::istringstream kl(next_line(in, "kind line"));
    std::string kind;
    if (!(kl >> tag >> kind) || tag != "kind") throw FieldFormatError("malformed kind line");

    Grid grid = [&] {
        try {
            return Grid(o, e, n);
        } catch (const std::invalid_argument& ex) {
            throw FieldFormatError(ex.what());
        }
    }();
    const std::size_t count = grid.node_count();

    if (kind == "vector") {
        VectorField f(grid);
        for (std::size_t i = 0; i < count; ++i) f[i].c = read_row<3>(in, i);
        return f;
    }
    if (kind == "rotation") {
        RotationField f(grid);
        for (std::size_t i = 0; i < count; ++i) {
            Mat3 m;
            m.c = read_row<9>(in, i);
            try {
                f[i] = Rotation::from_matrix(m, rotation_tol);
            } catch (const std::invalid_argument& ex) {
                throw FieldFormatError("node " + std::to_string(i) + ": " + ex.what());
            }
        }
        return f;
    }
    if (kind == "mat3") {
        Mat3Field f(grid);
        for (std::size_t i = 0; i < count; ++i) f[i].c = read_row<9>(in, i);
        return f;
    }
    if (kind == "ten3") {
        Ten3Field f(grid);
        for (std::size_t i = 0; i < count; ++i) f[i].c = read_row<27>(in, i);
        return f;
    }
    throw FieldFormatError("unknown field kind '" + kind + "'");
}

void save_field(const std::string& path, const AnyField& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_field(out, f);
    if (!out) throw std::runtime_error("write failed: " + path);
}

AnyField load_field(const std::string& path, double rotation_tol) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_field(in, rotation_tol);
    } catch (const FieldFormatError& ex) {
        throw FieldFormatError(path + ": " + ex.what());
    }
}

const Grid& grid_of(const AnyField& f) {
    return std::visit([](const auto& x) -> const Grid& { return x.grid; }, f);
}

}  // namespace cosserat
