#include "hoe/geometry.hpp"

#include <cmath>

#include "hoe/surfaces.hpp"

namespace hoe {

Vec3 Vec3::normalized() const {
    const double len = norm();
    if (len == 0.0) {
        throw InvalidArgument("Vec3::normalized: zero vector");
    }
    return *this / len;
}

double wrap_angle(double phi) {
    if (!std::isfinite(phi)) {
        throw InvalidArgument("wrap_angle: non-finite angle");
    }
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod of a value just below 0 can round up to exactly 2 pi
    if (w >= kTwoPi) w = 0.0;
    return w;
}

Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z()};
}

PolarPoint::PolarPoint(double s, double phi) {
    if (!std::isfinite(s) || s < 0.0) {
        throw InvalidArgument("PolarPoint: radius must be finite and >= 0");
    }
    s_ = s;
    phi_ = wrap_angle(phi);
}

PolarPoint PolarPoint::from_xy(const Vec2& xy) {
    const double s = xy.norm();
    return {s, s == 0.0 ? 0.0 : std::atan2(xy.y, xy.x)};
}

Frame Frame::from_tangent_normal(const Vec3& t, const Vec3& n, double tol) {
    if (std::abs(t.norm() - 1.0) > tol || std::abs(n.norm() - 1.0) > tol ||
        std::abs(t.dot(n)) > tol) {
        throw DegenerateFrame("Frame: t and n must be orthonormal");
    }
    return {t, t.cross(n), n};
}

Frame build_frame(const SurfaceProfile& profile, const PolarPoint& p) {
    if (!profile.contains(p.s())) {
        throw DomainError("build_frame: s = " + std::to_string(p.s()) + " outside profile domain");
    }
    const double slope = profile.slope(p.s());
    if (!std::isfinite(slope)) {
        throw DegenerateFrame("build_frame: non-finite slope at s = " + std::to_string(p.s()));
    }
    const double c = std::cos(p.phi());
    const double s = std::sin(p.phi());
    // d/ds c_phi(s) = (cos phi, sin phi, h'(s)); grad h = h'(s) (cos phi, sin phi)
    const double len = std::hypot(1.0, slope);
    const Vec3 t{c / len, s / len, slope / len};
    const Vec3 n{slope * c / len, slope * s / len, -1.0 / len};
    return Frame::from_tangent_normal(t, n);
}

}  // namespace hoe
