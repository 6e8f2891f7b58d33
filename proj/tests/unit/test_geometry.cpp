#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hoe/errors.hpp"
#include "hoe/geometry.hpp"
#include "hoe/surfaces.hpp"
#include "oracles.hpp"

using namespace hoe;
using std::numbers::pi;

namespace {


bool near(const Vec3& a, const Vec3& b, double tol) { return (a - b).norm() <= tol; }

double triple(const Frame& f) { return f.t().dot(f.b().cross(f.n())); }

void check_orthonormal(const Frame& f) {
    CHECK(std::abs(f.t().norm() - 1) <= 1e-12);
    CHECK(std::abs(f.b().norm() - 1) <= 1e-12);
    CHECK(std::abs(f.n().norm() - 1) <= 1e-12);
    CHECK(std::abs(f.t().dot(f.b())) <= 1e-12);
    CHECK(std::abs(f.t().dot(f.n())) <= 1e-12);
    CHECK(std::abs(f.b().dot(f.n())) <= 1e-12);
}

}  // namespace

TEST_CASE("Vec3 rejects non-finite components") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Vec3(nan, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(Vec3(0, inf, 0), InvalidArgument);
    CHECK_THROWS_AS((Vec3{0, 0, 0}.normalized()), InvalidArgument);
    CHECK(Vec3{1, 2, 3}.cross(Vec3{4, 5, 6}) == Vec3{-3, 6, -3});
}

TEST_CASE("PolarPoint wraps the azimuth and refuses negative radius") {
    CHECK(PolarPoint(1, -pi / 2).phi() == doctest::Approx(1.5 * pi));
    CHECK(PolarPoint(1, 2 * pi).phi() == 0.0);
    CHECK(PolarPoint(1, 5 * pi).phi() == doctest::Approx(pi));
    CHECK_THROWS_AS(PolarPoint(-1, 0), InvalidArgument);
    const PolarPoint p = PolarPoint::from_xy({-3, 4});
    CHECK(p.s() == doctest::Approx(5));
    CHECK(std::abs(p.to_xy().x + 3) < 1e-14);
    CHECK(std::abs(p.to_xy().y - 4) < 1e-14);
}

TEST_CASE("flat frames are axis aligned") {
    const auto plane = SurfaceProfile::planar(20);
    const Frame f0 = build_frame(plane, {5, 0});
    CHECK(near(f0.t(), {1, 0, 0}, 1e-15));
    CHECK(near(f0.b(), {0, 1, 0}, 1e-15));
    CHECK(near(f0.n(), {0, 0, -1}, 1e-15));

    const Frame f1 = build_frame(plane, {5, pi / 2});
    CHECK(near(f1.t(), {0, 1, 0}, 1e-15));
    CHECK(near(f1.b(), {-1, 0, 0}, 1e-15));
    CHECK(near(f1.n(), {0, 0, -1}, 1e-15));
}

TEST_CASE("sphere-cap frame at s = 10 matches the analytic derivative and finite differences") {
    const double R = 50;
    const auto cap = SurfaceProfile::sphere_cap(R, 25);
    const Frame f = build_frame(cap, {10, 0});
    // Analytic: slope 10 / sqrt(2400); t = (sqrt(2400), 0, 10) / 50.
    const Vec3 t_exact{std::sqrt(2400.0) / 50, 0, 0.2};
    const Vec3 n_exact{0.2, 0, -std::sqrt(2400.0) / 50};
    CHECK(near(f.t(), t_exact, 1e-15));
    CHECK(near(f.n(), n_exact, 1e-15));
    CHECK(near(f.b(), t_exact.cross(n_exact), 1e-15));
    CHECK(f.t().x() == doctest::Approx(0.9798).epsilon(1e-4));

    auto h = [R](double s) { return R - std::sqrt(R * R - s * s); };
    const Vec3 t_fd = oracle::fd_tangent(h, 10, 0);
    CHECK(near(f.t(), t_fd, 1e-9));
}

TEST_CASE("frames are orthonormal and left-handed everywhere") {
    const auto cap = SurfaceProfile::sphere_cap(30, 20);
    for (double s : {0.0, 1e-9, 0.5, 7.0, 19.9, 20.0}) {
        for (double phi : {0.0, 0.3, 2.0, 4.5, 6.2}) {
            const Frame f = build_frame(cap, {s, phi});
            check_orthonormal(f);
            CHECK(std::abs(triple(f) + 1) <= 1e-12);
            CHECK(near(f.b(), f.t().cross(f.n()), 0.0));
        }
    }
}

TEST_CASE("vertex frame is the radial limit") {
    const auto cap = SurfaceProfile::sphere_cap(50, 10);
    for (double phi : {0.0, 1.0, 3.0}) {
        const Frame v = build_frame(cap, {0, phi});
        const Frame close = build_frame(cap, {1e-7, phi});
        CHECK(near(v.t(), close.t(), 1e-8));
        CHECK(near(v.n(), close.n(), 1e-8));
        CHECK(near(v.t(), {std::cos(phi), std::sin(phi), 0}, 1e-15));
    }
}

TEST_CASE("build_frame errors") {
    const auto cap = SurfaceProfile::sphere_cap(50, 10);
    CHECK_THROWS_AS(build_frame(cap, {10.5, 0}), DomainError);
    // A non-finite slope never gets past profile validation.
    CHECK_THROWS_AS(SurfaceProfile::custom_convex([](double s) { return s * s; },
                                                  [](double s) { return s == 1.0 ? INFINITY : 2 * s; },
                                                  1.0),
                    InvalidArgument);
}

TEST_CASE("decompose and recompose examples") {
    const Frame flat = build_frame(SurfaceProfile::planar(10), {5, 0});
    CHECK(frame_decompose({0, 0, -1}, flat) == FrameCoords{0, 0, 1});
    CHECK(frame_decompose({3, 4, 0}, flat) == FrameCoords{3, 4, 0});
    CHECK(frame_decompose(flat.t(), flat) == FrameCoords{1, 0, 0});
    CHECK(frame_recompose({0, 0, 0}, flat) == Vec3{0, 0, 0});
    CHECK(frame_recompose({1, 0, 0}, flat) == Vec3{1, 0, 0});

    const Frame f = build_frame(SurfaceProfile::sphere_cap(50, 25), {10, 0});
    const Vec3 v = Vec3{0.9063, 0, -0.5774} * 11.81;
    const Vec3 back = frame_recompose(frame_decompose(v, f), f);
    CHECK((back - v).norm() <= 1e-12 * v.norm());
    CHECK(std::abs(frame_decompose(v, f).norm() - v.norm()) <= 1e-12 * v.norm());
}

TEST_CASE("random round trips and rotational equivariance") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0, 1);
    const auto cap = SurfaceProfile::sphere_cap(40, 30);
    for (int i = 0; i < 2000; ++i) {
        const PolarPoint p(30 * U(rng), 2 * pi * U(rng));
        const Frame f = build_frame(cap, p);
        const Vec3 v = oracle::random_unit(rng) * (20 * U(rng));
        const Vec3 back = frame_recompose(frame_decompose(v, f), f);
        CHECK((back - v).norm() <= 1e-12 * std::max(1.0, v.norm()));

        const double delta = 2 * pi * U(rng);
        const Frame g = build_frame(cap, PolarPoint(p.s(), p.phi() + delta));
        CHECK(near(g.t(), rotate_z(f.t(), delta), 1e-10));
        CHECK(near(g.b(), rotate_z(f.b(), delta), 1e-10));
        CHECK(near(g.n(), rotate_z(f.n(), delta), 1e-10));
    }
}

TEST_CASE("Frame::from_tangent_normal rejects non-orthogonal input") {
    CHECK_THROWS_AS(Frame::from_tangent_normal({1, 0, 0}, {1, 0, 1}), DegenerateFrame);
    CHECK_THROWS_AS(Frame::from_tangent_normal({0, 0, 2}, {1, 0, 0}), DegenerateFrame);
    const Frame f = Frame::from_tangent_normal({0, 0, 1}, {1, 0, 0});
    CHECK(near(f.b(), Vec3{0, 0, 1}.cross(Vec3{1, 0, 0}), 0.0));
}
