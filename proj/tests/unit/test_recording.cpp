#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hoe/errors.hpp"
#include "hoe/recording.hpp"
#include "oracles.hpp"

using namespace hoe;
using std::numbers::pi;

namespace {
const Wavelength L500 = Wavelength::from_nm(500);
const double K500 = 2 * pi / 0.5;
const double D65 = 65 * pi / 180;
Wave w_axis() { return Wave::plane({0, 0, 1}, L500); }
Wave w_tilt() { return Wave::plane({std::sin(D65), 0, std::cos(D65)}, L500); }
const PolarGrid kGrid{6, 12, 10};
}  // namespace

TEST_CASE("grids") {
    const auto polar = grid_footprints(PolarGrid{3, 8, 9});
    CHECK(polar.size() == 1 + 3 * 8);
    CHECK(polar[0].s() == 0);
    CHECK(polar[1].s() == doctest::Approx(3));
    CHECK(polar.back().s() == doctest::Approx(9));
    const auto cart = grid_footprints(CartesianGrid{5, 2});
    for (const auto& p : cart) CHECK(p.s() <= 2 + 1e-12);
    CHECK(cart.size() < 25);
    CHECK(grid_radius(CartesianGrid{5, 2}) == doctest::Approx(2));
}

TEST_CASE("plane-wave recording on a plane") {
    const auto field = record(w_axis(), w_tilt(), SurfaceProfile::planar(10), kGrid);
    const Vec3 expected = Vec3{std::sin(D65), 0, std::cos(D65) - 1} * K500;
    CHECK(expected.norm() == doctest::Approx(K500 * std::sqrt(2 - 2 * std::cos(D65))));
    CHECK(expected.norm() == doctest::Approx(13.504).epsilon(1e-4));
    for (const auto& s : field.samples()) {
        CHECK((s.grating_vector() - expected).norm() <= 1e-12 * K500);
        CHECK(std::abs(s.magnitude() - s.coords().norm()) <= 1e-12 * s.magnitude());
    }
    CHECK(grating_period(expected) == doctest::Approx(0.4653).epsilon(1e-4));
    CHECK(grating_period({2 * pi, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(grating_period({0, 0, 0}), ZeroGrating);
}

TEST_CASE("identical waves give a degenerate field") {
    const auto field = record(w_tilt(), w_tilt(), SurfaceProfile::planar(10), kGrid);
    for (const auto& s : field.samples()) {
        CHECK(s.degenerate());
        CHECK(s.magnitude() == 0);
    }
}

TEST_CASE("plane-wave recording on a sphere keeps the world vectors equal") {
    const auto flat = record(w_axis(), w_tilt(), SurfaceProfile::planar(10), kGrid);
    const auto cap = record(w_axis(), w_tilt(), SurfaceProfile::sphere_cap(50, 10), kGrid);
    const Vec3 kg0 = flat[0].grating_vector();
    bool coords_differ = false;
    for (std::size_t i = 0; i < cap.size(); ++i) {
        CHECK((cap[i].grating_vector() - kg0).norm() <= 1e-12 * K500);
        const auto& a = cap[i].coords();
        const auto& b = flat[i].coords();
        if (std::hypot(a.g1 - b.g1, a.g2 - b.g2, a.g3 - b.g3) > 1e-6) coords_differ = true;
        CHECK((cap[i].position() - evaluate(cap.carrier(), cap[i].footprint().to_xy())).norm() <=
              1e-10);
    }
    CHECK(coords_differ);
}

TEST_CASE("|kg| never exceeds 2k") {
    const auto field = record(Wave::diverging({3, 0, -20}, L500), Wave::converging({-5, 2, 40}, L500),
                              SurfaceProfile::sphere_cap(50, 10), kGrid);
    for (const auto& s : field.samples()) CHECK(s.magnitude() <= 2 * K500 * (1 + 1e-15));
    const auto counter = record(w_axis(), Wave::plane({0, 0, -1}, L500), SurfaceProfile::planar(5),
                                PolarGrid{2, 4, 5});
    CHECK(counter[3].magnitude() == doctest::Approx(2 * K500).epsilon(1e-15));
}

TEST_CASE("recording errors") {
    CHECK_THROWS_AS(record(w_axis(), Wave::plane({0, 0, 1}, Wavelength::from_nm(600)),
                           SurfaceProfile::planar(10), kGrid),
                    WavelengthMismatch);
    CHECK_THROWS_AS(record(w_axis(), w_tilt(), SurfaceProfile::planar(5), kGrid), DomainError);
    // Source on the carrier.
    try {
        (void)record(Wave::diverging({0, 0, 0}, L500), w_tilt(), SurfaceProfile::planar(10), kGrid);
        FAIL("expected SingularPoint");
    } catch (const Error& e) {
        CHECK(e.kind() == "SingularPoint");
    }
}

TEST_CASE("field invariants are enforced") {
    const auto field = record(w_axis(), w_tilt(), SurfaceProfile::planar(10), kGrid);
    std::vector<GratingSample> dup{field[1], field[1]};
    CHECK_THROWS_AS(GratingVectorField(field.carrier(), dup, kGrid, L500), InvalidArgument);
    const auto& s = field[2];
    std::vector<GratingSample> moved{
        GratingSample(s.footprint(), s.position() + Vec3{0, 0, 1e-6}, s.frame(), s.coords())};
    CHECK_THROWS_AS(GratingVectorField(field.carrier(), moved, kGrid, L500), InvalidArgument);
}

TEST_CASE("isosurface oracle on generated ellipsoid points") {
    const Vec3 f1{0, 0, 0}, f2{0, 0, 10};
    const Wave d = Wave::diverging(f1, L500);
    const Wave c = Wave::converging(f2, L500);
    const BraggIsosurfaceSpec spec(f1, f2, 20);
    const auto pts = oracle::ellipsoid_points(f1, f2, 20, 9, 12);
    const auto report = check_isosurface(d, c, spec, pts);
    CHECK(report.passed());
    CHECK(report.max_argument_deviation <= 1e-9);
    CHECK(report.max_collinearity_residual <= 1e-9);

    const Vec3 example{std::sqrt(75.0), 0, 5};
    CHECK(check_isosurface(d, c, spec, std::vector<Vec3>{example, Vec3{0, 0, -5}}).passed());
    CHECK_THROWS_AS(check_isosurface(d, c, spec, std::vector<Vec3>{Vec3{0, 0, -8}}),
                    PointNotOnEllipsoid);
    CHECK_THROWS_AS(BraggIsosurfaceSpec(f1, f2, 9), InvalidArgument);

    // Tilted foci, with the kg direction checked against the oracle normal too.
    const Vec3 g1{-40, 0, -30}, g2{0, 0, 50};
    const double sum = (g2 - g1).norm() + 7;
    const auto tilted = oracle::ellipsoid_points(g1, g2, sum, 7, 10);
    const Wave dd = Wave::diverging(g1, L500), cc = Wave::converging(g2, L500);
    CHECK(check_isosurface(dd, cc, BraggIsosurfaceSpec(g1, g2, sum), tilted).passed());
    for (const Vec3& r : tilted) {
        const Vec3 kg = local_wavevector(cc, r) - local_wavevector(dd, r);
        const Vec3 normal = (r - g1).normalized() + (r - g2).normalized();
        CHECK(kg.dot(normal) < 0);
        CHECK(kg.cross(normal).norm() <= 1e-9 * kg.norm() * normal.norm());
    }
}

TEST_CASE("plane-wave fringe period from a three-point fit") {
    const Wave w1 = w_axis();
    const Wave w2 = w_tilt();
    const Vec3 kg = local_wavevector(w2, {}) - local_wavevector(w1, {});
    const Vec3 u = kg.normalized();
    const double period_um = grating_period(kg);
    const double h_um = 0.11;
    for (double x_um : {0.013, 0.057, 0.2}) {
        auto I = [&](double x) { return interference_intensity(w1, w2, u * (x * 1e-3)); };
        const double w = oracle::three_point_frequency(I(x_um - h_um), I(x_um), I(x_um + h_um), 2.0,
                                                       h_um);
        CHECK(std::abs(2 * pi / w - period_um) <= 1e-10);
    }
}
