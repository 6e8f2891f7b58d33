#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "hoe/errors.hpp"

namespace hoe {

/// Unit conventions used across the library:
///   positions and distances  -> millimeters
///   wavevectors              -> rad/um
///   wavelengths (input)      -> nanometers
namespace units {
inline constexpr double kMicronsPerMillimeter = 1000.0;
inline constexpr double kNanometersPerMicron = 1000.0;

constexpr double mm_to_um(double mm) { return mm * kMicronsPerMillimeter; }
constexpr double nm_to_um(double nm) { return nm / kNanometersPerMicron; }
}  // namespace units

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Cartesian 3-vector. Components are always finite.
class Vec3 {
public:
    constexpr Vec3() = default;
    constexpr Vec3(double x, double y, double z) : x_(x), y_(y), z_(z) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw InvalidArgument("Vec3: non-finite component");
        }
    }

    [[nodiscard]] constexpr double x() const noexcept { return x_; }
    [[nodiscard]] constexpr double y() const noexcept { return y_; }
    [[nodiscard]] constexpr double z() const noexcept { return z_; }

    [[nodiscard]] constexpr double dot(const Vec3& o) const noexcept {
        return x_ * o.x_ + y_ * o.y_ + z_ * o.z_;
    }
    [[nodiscard]] constexpr Vec3 cross(const Vec3& o) const {
        return {y_ * o.z_ - z_ * o.y_, z_ * o.x_ - x_ * o.z_, x_ * o.y_ - y_ * o.x_};
    }
    [[nodiscard]] double norm() const noexcept { return std::hypot(x_, y_, z_); }
    [[nodiscard]] constexpr double norm_squared() const noexcept { return dot(*this); }

    /// Throws InvalidArgument for the zero vector.
    [[nodiscard]] Vec3 normalized() const;

    constexpr Vec3 operator-() const { return {-x_, -y_, -z_}; }
    constexpr Vec3& operator+=(const Vec3& o) { return *this = *this + o; }
    constexpr Vec3& operator-=(const Vec3& o) { return *this = *this - o; }

    friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a.x_ + b.x_, a.y_ + b.y_, a.z_ + b.z_};
    }
    friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.x_ - b.x_, a.y_ - b.y_, a.z_ - b.z_};
    }
    friend constexpr Vec3 operator*(double s, const Vec3& v) { return {s * v.x_, s * v.y_, s * v.z_}; }
    friend constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }
    friend constexpr Vec3 operator/(const Vec3& v, double s) { return {v.x_ / s, v.y_ / s, v.z_ / s}; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    [[nodiscard]] double norm() const noexcept { return std::hypot(x, y); }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

/// Polar coordinates in the (x, y) parameter plane.
class PolarPoint {
public:
    PolarPoint() = default;
    /// Wraps `phi` into [0, 2pi). Throws InvalidArgument for s < 0 or non-finite input.
    PolarPoint(double s, double phi);

    static PolarPoint from_xy(const Vec2& xy);

    [[nodiscard]] double s() const noexcept { return s_; }
    [[nodiscard]] double phi() const noexcept { return phi_; }
    [[nodiscard]] Vec2 to_xy() const noexcept {
        return {s_ * std::cos(phi_), s_ * std::sin(phi_)};
    }

    friend bool operator==(const PolarPoint&, const PolarPoint&) = default;

private:
    double s_ = 0.0;
    double phi_ = 0.0;
};

/// Coordinates (g1, g2, g3) of a vector in a Frame.
struct FrameCoords {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;

    [[nodiscard]] double norm() const noexcept { return std::hypot(g1, g2, g3); }
    [[nodiscard]] FrameCoords scaled(double f) const noexcept { return {f * g1, f * g2, f * g3}; }
    friend constexpr bool operator==(const FrameCoords&, const FrameCoords&) = default;
};

/// Orthonormal local frame {t, b, n} with b = t x n. With n the graph normal
/// (dh/dx, dh/dy, -1)/|.| the triple is left-handed: t . (b x n) = -1.
class Frame {
public:
    /// Builds {t, t x n, n} from unit, mutually orthogonal t and n.
    /// Throws DegenerateFrame when the inputs violate that within `tol`.
    static Frame from_tangent_normal(const Vec3& t, const Vec3& n, double tol = 1e-12);

    [[nodiscard]] const Vec3& t() const noexcept { return t_; }
    [[nodiscard]] const Vec3& b() const noexcept { return b_; }
    [[nodiscard]] const Vec3& n() const noexcept { return n_; }

    [[nodiscard]] FrameCoords decompose(const Vec3& v) const noexcept {
        return {v.dot(t_), v.dot(b_), v.dot(n_)};
    }
    [[nodiscard]] Vec3 recompose(const FrameCoords& c) const {
        return c.g1 * t_ + c.g2 * b_ + c.g3 * n_;
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    Frame(const Vec3& t, const Vec3& b, const Vec3& n) : t_(t), b_(b), n_(n) {}

    Vec3 t_;
    Vec3 b_;
    Vec3 n_;
};

class SurfaceProfile;

/// Moving frame of the radial curve c_phi(s) = (s e^{i phi}, h(s)) at `p`:
/// t is the normalized curve tangent, n the normalized (dh/dx, dh/dy, -1),
/// b = t x n. At s = 0 the limit along phi is used.
/// Throws DomainError outside the profile domain and DegenerateFrame for a
/// non-finite slope.
[[nodiscard]] Frame build_frame(const SurfaceProfile& profile, const PolarPoint& p);

[[nodiscard]] inline FrameCoords frame_decompose(const Vec3& v, const Frame& f) noexcept {
    return f.decompose(v);
}
[[nodiscard]] inline Vec3 frame_recompose(const FrameCoords& c, const Frame& f) {
    return f.recompose(c);
}

/// Wraps an angle into [0, 2pi).
[[nodiscard]] double wrap_angle(double phi);

/// Rotation of `v` about the z-axis by `angle`.
[[nodiscard]] Vec3 rotate_z(const Vec3& v, double angle);

}  // namespace hoe
