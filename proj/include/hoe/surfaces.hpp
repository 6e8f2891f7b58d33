#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "hoe/geometry.hpp"

namespace hoe {

enum class ProfileKind { planar, sphere_cap, custom_convex };

/// Rotationally symmetric, convex, nonnegative graph z = h(s), s = |(x, y)|,
/// defined on the disc s <= domain_radius.
class SurfaceProfile {
public:
    using RadialFunction = std::function<double(double)>;

    static SurfaceProfile planar(double domain_radius_mm);

    /// Spherical cap h(s) = R - sqrt(R^2 - s^2) with its vertex at the origin
    /// and the sphere center at (0, 0, R). Requires domain_radius < R.
    static SurfaceProfile sphere_cap(double radius_mm, double domain_radius_mm);

    /// User supplied profile. Without `slope`, central differences with step
    /// 1e-4 * domain_radius are used. The profile is sampled on construction
    /// and rejected (InvalidArgument) if it is not convex and nonnegative or if
    /// the supplied slope disagrees with finite differences.
    static SurfaceProfile custom_convex(RadialFunction height, std::optional<RadialFunction> slope,
                                        double domain_radius_mm);

    [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
    [[nodiscard]] double domain_radius() const noexcept { return domain_radius_; }
    /// Sphere radius for sphere caps, nullopt otherwise.
    [[nodiscard]] std::optional<double> sphere_radius() const noexcept;

    [[nodiscard]] bool contains(double s) const noexcept;

    /// h(s) and dh/ds. Both throw DomainError outside [0, domain_radius].
    [[nodiscard]] double height(double s) const;
    [[nodiscard]] double slope(double s) const;

private:
    SurfaceProfile(ProfileKind kind, double domain_radius, double sphere_radius,
                   RadialFunction height, RadialFunction slope);

    void check_domain(double s) const;

    ProfileKind kind_;
    double domain_radius_;
    double sphere_radius_;
    RadialFunction height_;
    RadialFunction slope_;
};

/// Graph point (x, y, h(|xy|)). Throws DomainError outside the domain.
[[nodiscard]] Vec3 evaluate(const SurfaceProfile& profile, const Vec2& xy);

/// Either a central projection through C = (0, 0, center_z) or the
/// orthogonal projection along z (the center at infinity).
class Projection {
public:
    static Projection orthogonal() noexcept { return Projection{}; }
    /// Throws InvalidArgument unless center_z is finite and positive.
    static Projection central(double center_z_mm);

    [[nodiscard]] bool is_orthogonal() const noexcept { return !center_z_; }
    [[nodiscard]] std::optional<double> center_z() const noexcept { return center_z_; }

    friend bool operator==(const Projection&, const Projection&) = default;

private:
    std::optional<double> center_z_;
};

/// Maps the plane point p = (x, y, 0) onto the graph. The orthogonal
/// projection lifts p vertically; a central projection returns the unique
/// intersection of the segment C-p with the graph.
/// Throws NoIntersection if the segment misses the graph inside the domain
/// and DomainError if an orthogonal lift leaves the domain.
[[nodiscard]] Vec3 project(const Projection& proj, const SurfaceProfile& profile, const Vec3& p);

/// Inverse of `project`: extends the ray C -> q down to z = 0.
/// Throws NotOnSurface if q is farther than 1e-9 mm from the graph,
/// DomainError outside the domain and NoPreimage if the ray never reaches
/// the plane.
[[nodiscard]] Vec3 inverse_project(const Projection& proj, const SurfaceProfile& profile,
                                   const Vec3& q);

/// Radius of the plane disc mapped onto the whole profile domain.
/// Throws NoPreimage when the rim of the profile has no preimage.
[[nodiscard]] double preimage_radius(const Projection& proj, const SurfaceProfile& profile);

struct BijectivityReport {
    bool bijective = true;
    std::size_t points_checked = 0;
    std::optional<std::string> first_violation;
};

/// Numerical bijectivity scan over `samples` graph points on each of eight
/// radial lines: every point needs a preimage, preimage radii must increase
/// strictly along each line, and re-projection must return the point.
[[nodiscard]] BijectivityReport check_bijective(const Projection& proj,
                                                const SurfaceProfile& profile,
                                                std::size_t samples);

/// Thick lens in air, meniscus convention (both radii positive).
struct LensSpec {
    double n = 1.5;
    double r1_mm = 0.0;
    double r2_mm = 0.0;
    double thickness_mm = 0.0;
};

/// 1/f = (n-1) (1/R1 - 1/R2 + (n-1) d / (n R1 R2)), in 1/mm.
[[nodiscard]] double lensmaker_power(const LensSpec& spec);

/// Focal length in mm; +infinity when the lens has zero power.
[[nodiscard]] double lensmaker_focal(const LensSpec& spec);

}  // namespace hoe
