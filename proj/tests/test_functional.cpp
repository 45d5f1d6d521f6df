#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cosserat/functional.hpp"
#include "test_support.hpp"

using namespace cosserat;
using namespace testing_support;

namespace {

BoundaryPartition clamped_x() {
    BoundaryPartition b;
    b[Face::XMin] = BoundaryTag::Dirichlet;
    b[Face::XMax] = BoundaryTag::Dirichlet;
    return b;
}

Problem identity_problem(int n, const BoundaryPartition& b = clamped_x()) {
    const Grid g = Grid::unit_cube(n);
    Problem p(g, b, MaterialParams{});
    p.dirichlet = DirichletData::from_fields(reference_map(g), RotationField(g), b);
    return p;
}

VectorField perturbed(const Grid& g, Rng& rng, double s) {
    VectorField phi = reference_map(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) phi[n] += s * rng.vec();
    return phi;
}

RotationField random_rotations(const Grid& g, Rng& rng, double s) {
    return AnalyticRotation::random(rng, s).sample(g);
}

// Trapezoid weights by tensor product, built independently.
double trapezoid_weight(const Grid& g, std::size_t n) {
    const NodeIndex ijk = g.ijk(n);
    const std::array<int, 3> idx{ijk.i, ijk.j, ijk.k};
    double w = 1.0;
    for (int a = 0; a < 3; ++a) {
        const double h = g.spacing(a);
        w *= (idx[a] == 0 || idx[a] == g.count(a) - 1) ? 0.5 * h : h;
    }
    return w;
}

}  // namespace

TEST_CASE("load potential examples") {
    const Grid g = Grid::unit_cube(6);
    const BoundaryPartition b = clamped_x();
    Rng rng(61);
    LoadSet zero(g);
    CHECK(potential_pi(perturbed(g, rng, 0.3), random_rotations(g, rng, 1.0), zero, b) == 0.0);

    LoadSet f(g);
    VectorField phi = reference_map(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        f.body_force[n] = Vec3::unit(2);
        phi[n] += Vec3::unit(2);
    }
    CHECK(potential_pi(phi, RotationField(g), f, b) == doctest::Approx(1.0).epsilon(1e-14));

    LoadSet m(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) m.body_couple[n] = Mat3::identity();
    CHECK(potential_pi(reference_map(g), RotationField(g), m, b) == doctest::Approx(3.0).epsilon(1e-14));
    const LoadPotential parts = potential_parts(reference_map(g), RotationField(g), m, b);
    CHECK(parts.body_couple == doctest::Approx(3.0));
    CHECK(parts.body_force == 0.0);
    CHECK(parts.traction == 0.0);
    CHECK(parts.surface_couple == 0.0);

    CHECK_THROWS_AS(potential_pi(reference_map(Grid::unit_cube(5)), RotationField(g), m, b), std::invalid_argument);
}

TEST_CASE("surface loads act on traction faces only") {
    const Grid g = Grid::unit_cube(5);
    const BoundaryPartition b = clamped_x();
    LoadSet l(g);
    VectorField phi = reference_map(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        l.traction[n] = Vec3::unit(0);
        l.surface_couple[n] = Mat3::identity();
        phi[n] += Vec3::unit(0);
    }
    // four unit traction faces; the two x faces are clamped
    const LoadPotential p = potential_parts(phi, RotationField(g), l, b);
    CHECK(p.traction == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(p.surface_couple == doctest::Approx(12.0).epsilon(1e-13));
    CHECK(p.body_force == 0.0);
}

TEST_CASE("load potential is linear and matches an independent quadrature") {
    const Grid g({0.2, -0.1, 0.0}, {{1.5, 1.0, 0.7}}, {5, 4, 6});
    BoundaryPartition b;
    b[Face::YMin] = BoundaryTag::Dirichlet;
    Rng rng(62);
    LoadSet l(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        l.body_force[n] = rng.vec();
        l.body_couple[n] = rng.mat();
        l.traction[n] = rng.vec();
        l.surface_couple[n] = rng.mat();
    }
    const VectorField x = reference_map(g);
    const VectorField phi1 = perturbed(g, rng, 0.2), phi2 = perturbed(g, rng, 0.2);
    const RotationField r = random_rotations(g, rng, 1.0);

    double body = 0.0, couple = 0.0;
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        const double w = trapezoid_weight(g, n);
        body += w * dot(l.body_force[n], phi1[n] - x[n]);
        couple += w * dot(l.body_couple[n], r[n].matrix());
    }
    const LoadPotential p1 = potential_parts(phi1, r, l, b);
    CHECK(p1.body_force == doctest::Approx(body).epsilon(1e-12));
    CHECK(p1.body_couple == doctest::Approx(couple).epsilon(1e-12));

    // affine in u
    VectorField mix(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) mix[n] = x[n] + 0.3 * (phi1[n] - x[n]) + 0.7 * (phi2[n] - x[n]);
    const LoadPotential p2 = potential_parts(phi2, r, l, b);
    const LoadPotential pm = potential_parts(mix, r, l, b);
    CHECK(pm.body_force == doctest::Approx(0.3 * p1.body_force + 0.7 * p2.body_force).epsilon(1e-12));
    CHECK(pm.traction == doctest::Approx(0.3 * p1.traction + 0.7 * p2.traction).epsilon(1e-12));

    // Cauchy-Schwarz bound by the load norms
    double fu = 0.0, ff = 0.0, uu = 0.0, mm = 0.0;
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        const double w = trapezoid_weight(g, n);
        ff += w * norm_sq(l.body_force[n]);
        uu += w * norm_sq(phi1[n] - x[n]);
        mm += w * norm(l.body_couple[n]);
        fu += w * dot(l.body_force[n], phi1[n] - x[n]);
    }
    CHECK(std::abs(p1.body_force) <= std::sqrt(ff * uu) + 1e-12);
    CHECK(std::abs(p1.body_couple) <= std::sqrt(3.0) * mm + 1e-12);
}

TEST_CASE("total energy") {
    Problem p = identity_problem(6);
    const Grid& g = p.grid;
    CHECK(std::abs(total_energy(reference_map(g), RotationField(g), p)) < 1e-28);

    const Mat3 q = axis_angle(Vec3{{1, 2, -0.5}}, 0.6);
    const RotationField rq(g, Rotation::from_matrix(q));
    const EnergyBreakdown e = energy_breakdown(reference_map(g), rq, p);
    CHECK(e.curv < 1e-24);
    CHECK(e.mp == doctest::Approx(w_mp(transposed(q) - Mat3::identity(), p.material.moduli)).epsilon(1e-12));
    CHECK(e.total() > 0.0);

    Rng rng(63);
    const VectorField phi = perturbed(g, rng, 0.1);
    const RotationField r = random_rotations(g, rng, 0.8);
    const Mat3 o = rng.rotation();
    VectorField ophi(g);
    RotationField orot(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        ophi[n] = o * phi[n];
        orot[n] = Rotation::from_matrix(o * r[n].matrix());
    }
    const double i0 = total_energy(phi, r, p);
    CHECK(std::abs(total_energy(ophi, orot, p) - i0) <= 1e-10 * i0);

    // independent assembly with the library's node states
    const DiscreteFunctional fn(p);
    double stored = 0.0;
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        const NodeState s = fn.node_state(phi, r, n);
        CHECK(max_diff(s.E, mul(transposed(r[n].matrix()), s.F) - Mat3::identity()) < 1e-14);
        CHECK(max_diff(s.K, mul(transposed(r[n].matrix()), s.curl)) < 1e-14);
        stored += trapezoid_weight(g, n) * w_total(s.E, s.K, p.material);
    }
    CHECK(fn.evaluate(phi, r).stored() == doctest::Approx(stored).epsilon(1e-12));

    VectorField bad = phi;
    bad[3][1] = std::nan("");
    CHECK_THROWS_AS(total_energy(bad, r, p), std::domain_error);
    CHECK_THROWS_AS(total_energy(reference_map(Grid::unit_cube(5)), r, p), std::invalid_argument);
}

TEST_CASE("loads enter with a minus sign") {
    Problem p = identity_problem(5);
    const Grid& g = p.grid;
    for (std::size_t n = 0; n < g.node_count(); ++n) p.loads.body_force[n] = Vec3::unit(1);
    VectorField phi = reference_map(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) phi[n] += 0.01 * Vec3::unit(1);
    const EnergyBreakdown e = energy_breakdown(phi, RotationField(g), p);
    CHECK(e.load.body_force == doctest::Approx(0.01));
    CHECK(e.total() == doctest::Approx(e.stored() - 0.01));
}

TEST_CASE("energy grows quadratically away from the Dirichlet data") {
    Problem p = identity_problem(6);
    const Grid& g = p.grid;
    Rng rng(64);
    for (std::size_t n = 0; n < g.node_count(); ++n) p.loads.body_force[n] = rng.vec();
    for (int t = 0; t < 10; ++t) {
        VectorField dir(g);
        for (std::size_t n = 0; n < g.node_count(); ++n)
            if (!p.boundary.is_dirichlet(g, n)) dir[n] = rng.vec();
        auto energy = [&](double s) {
            VectorField phi = reference_map(g);
            for (std::size_t n = 0; n < g.node_count(); ++n) phi[n] += s * dir[n];
            return total_energy(phi, RotationField(g), p);
        };
        const double i1 = energy(1.0), i2 = energy(2.0), i4 = energy(4.0);
        const double k1 = (i4 - 2.0 * i2 + energy(0.0)) / 8.0;
        CHECK(k1 > 0.0);
        CHECK(i4 > i2);
        CHECK(i2 > i1);
    }
}

TEST_CASE("admissible projection") {
    Problem p = identity_problem(5);
    const Grid& g = p.grid;
    Rng rng(65);
    auto [phi0, r0] = enforce_admissible(reference_map(g), RotationField(g), p, false);
    CHECK(admissibility_defect(phi0, r0, p, false) == 0.0);
    CHECK(max_diff(phi0[7], reference_map(g)[7]) == 0.0);

    const VectorField phi = perturbed(g, rng, 0.2);
    const RotationField r = random_rotations(g, rng, 1.0);
    CHECK(admissibility_defect(phi, r, p, false) > 0.0);
    auto [phi1, r1] = enforce_admissible(phi, r, p, false);
    CHECK(admissibility_defect(phi1, r1, p, false) == 0.0);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        if (p.boundary.is_dirichlet(g, n)) continue;
        CHECK(max_diff(phi1[n], phi[n]) == 0.0);
        CHECK(max_diff(r1[n].matrix(), r[n].matrix()) == 0.0);
    }

    auto [phi2, r2] = enforce_admissible(phi, r, p, true);
    CHECK(admissibility_defect(phi2, r2, p, true) == 0.0);
    CHECK(admissibility_defect(phi2, r2, p, false) > 0.0);
    for (std::size_t n = 0; n < g.node_count(); ++n) CHECK(max_diff(r2[n].matrix(), r[n].matrix()) == 0.0);

    Problem missing = p;
    missing.dirichlet = DirichletData(g);
    CHECK_THROWS_AS(enforce_admissible(phi, r, missing, false), std::invalid_argument);
}

TEST_CASE("problem validation") {
    Problem p = identity_problem(4);
    CHECK_NOTHROW(p.validate());
    Problem q = p;
    q.material.chiral.beta1 = 2.0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = p;
    q.loads = LoadSet(Grid::unit_cube(5));
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = p;
    for (auto& r : q.dirichlet.rotation) r.reset();
    CHECK_THROWS_AS(q.validate(false), std::invalid_argument);
    CHECK_NOTHROW(q.validate(true));
    try {
        Problem c = p;
        c.material.chiral.beta1 = 2.0;
        c.validate();
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("a1 > beta1") != std::string::npos);
    }
}
