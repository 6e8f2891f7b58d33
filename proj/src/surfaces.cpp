#include "hoe/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hoe {

namespace {

// Slack on the domain boundary for points produced by root finding.
constexpr double kDomainSlack = 1e-12;
constexpr double kOnSurfaceTolerance = 1e-9;
constexpr int kValidationSamples = 256;

double central_difference(const SurfaceProfile::RadialFunction& h, double s, double step,
                          double domain) {
    // h is even in s, so a negative left point folds back onto |s - step|.
    if (s + step <= domain) {
        return (h(s + step) - h(std::abs(s - step))) / (2.0 * step);
    }
    return (h(s) - h(s - step)) / step;
}

}  // namespace

SurfaceProfile::SurfaceProfile(ProfileKind kind, double domain_radius, double sphere_radius,
                               RadialFunction height, RadialFunction slope)
    : kind_(kind),
      domain_radius_(domain_radius),
      sphere_radius_(sphere_radius),
      height_(std::move(height)),
      slope_(std::move(slope)) {}

SurfaceProfile SurfaceProfile::planar(double domain_radius_mm) {
    if (!std::isfinite(domain_radius_mm) || domain_radius_mm <= 0.0) {
        throw InvalidArgument("planar profile: domain radius must be positive");
    }
    return {ProfileKind::planar, domain_radius_mm, 0.0, [](double) { return 0.0; },
            [](double) { return 0.0; }};
}

SurfaceProfile SurfaceProfile::sphere_cap(double radius_mm, double domain_radius_mm) {
    if (!std::isfinite(radius_mm) || radius_mm <= 0.0) {
        throw InvalidArgument("sphere cap: radius must be positive");
    }
    if (!std::isfinite(domain_radius_mm) || domain_radius_mm <= 0.0 ||
        domain_radius_mm >= radius_mm) {
        throw InvalidArgument("sphere cap: domain radius must lie in (0, R)");
    }
    const double r = radius_mm;
    // R - sqrt(R^2 - s^2) written as s^2 / (R + sqrt(R^2 - s^2)) to avoid cancellation
    auto height = [r](double s) { return s * s / (r + std::sqrt((r - s) * (r + s))); };
    auto slope = [r](double s) { return s / std::sqrt((r - s) * (r + s)); };
    return {ProfileKind::sphere_cap, domain_radius_mm, r, height, slope};
}

SurfaceProfile SurfaceProfile::custom_convex(RadialFunction height,
                                             std::optional<RadialFunction> slope,
                                             double domain_radius_mm) {
    if (!height) {
        throw InvalidArgument("custom profile: missing height function");
    }
    if (!std::isfinite(domain_radius_mm) || domain_radius_mm <= 0.0) {
        throw InvalidArgument("custom profile: domain radius must be positive");
    }
    const double domain = domain_radius_mm;
    const double step = 1e-4 * domain;
    RadialFunction slope_fn;
    if (slope && *slope) {
        slope_fn = *slope;
    } else {
        slope_fn = [height, step, domain](double s) {
            return central_difference(height, s, step, domain);
        };
    }

    const double ds = domain / kValidationSamples;
    for (int i = 0; i <= kValidationSamples; ++i) {
        const double s = ds * i;
        const double h = height(s);
        const double dh = slope_fn(s);
        if (!std::isfinite(h) || !std::isfinite(dh)) {
            throw InvalidArgument("custom profile: non-finite value at s = " + std::to_string(s));
        }
        if (h < -kDomainSlack) {
            throw InvalidArgument("custom profile: negative height at s = " + std::to_string(s));
        }
        if (slope && *slope) {
            const double fd = central_difference(height, s, step, domain);
            if (std::abs(dh - fd) > 1e-6 * std::max(1.0, std::abs(fd))) {
                throw InvalidArgument("custom profile: slope inconsistent with height at s = " +
                                      std::to_string(s));
            }
        }
        if (i > 0 && i < kValidationSamples) {
            const double second = height(s + ds) - 2.0 * h + height(s - ds);
            if (second < -1e-9) {
                throw InvalidArgument("custom profile: not convex near s = " + std::to_string(s));
            }
        }
    }
    return {ProfileKind::custom_convex, domain, 0.0, std::move(height), std::move(slope_fn)};
}

std::optional<double> SurfaceProfile::sphere_radius() const noexcept {
    if (kind_ == ProfileKind::sphere_cap) return sphere_radius_;
    return std::nullopt;
}

bool SurfaceProfile::contains(double s) const noexcept {
    return s >= 0.0 && s <= domain_radius_ + kDomainSlack;
}

void SurfaceProfile::check_domain(double s) const {
    if (!contains(s)) {
        throw DomainError("profile: s = " + std::to_string(s) + " outside domain radius " +
                          std::to_string(domain_radius_));
    }
}

double SurfaceProfile::height(double s) const {
    check_domain(s);
    return height_(std::min(s, domain_radius_));
}

double SurfaceProfile::slope(double s) const {
    check_domain(s);
    return slope_(std::min(s, domain_radius_));
}

Vec3 evaluate(const SurfaceProfile& profile, const Vec2& xy) {
    return {xy.x, xy.y, profile.height(xy.norm())};
}

Projection Projection::central(double center_z_mm) {
    if (!std::isfinite(center_z_mm) || center_z_mm <= 0.0) {
        throw InvalidArgument("central projection: center must lie above the plane (z > 0)");
    }
    Projection p;
    p.center_z_ = center_z_mm;
    return p;
}

namespace {

// Solves u * cz = h((1 - u) rho) for u in [u_lo, 1]: the point p + u (C - p)
// of the segment from p = (x, y, 0) to C = (0, 0, cz) lying on the graph.
// f(u) = u cz - h((1 - u) rho) is strictly increasing.
double solve_segment_parameter(const SurfaceProfile& profile, double cz, double rho) {
    const double domain = profile.domain_radius();
    auto f = [&](double u) { return u * cz - profile.height((1.0 - u) * rho); };
    auto df = [&](double u) { return cz + rho * profile.slope((1.0 - u) * rho); };

    double lo = rho > domain ? 1.0 - domain / rho : 0.0;
    double hi = 1.0;
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_hi <= 0.0) {
        throw NoIntersection("project: center of projection is not above the surface vertex");
    }
    if (f_lo > 0.0) {
        // Points that map exactly onto the rim land here with a rounding-level residual.
        if (f_lo <= 1e-12 * std::max(1.0, cz)) return lo;
        throw NoIntersection("project: segment passes above the surface rim (rho = " +
                             std::to_string(rho) + ")");
    }
    if (f_lo == 0.0) return lo;

    double u = lo;
    for (int iter = 0; iter < 200; ++iter) {
        double next = u - f(u) / df(u);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double fn = f(next);
        if (fn == 0.0) return next;
        if (fn < 0.0) {
            lo = next;
            f_lo = fn;
        } else {
            hi = next;
        }
        u = next;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;
    }
    // The bracket has collapsed; return the end with the smaller residual.
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace

Vec3 project(const Projection& proj, const SurfaceProfile& profile, const Vec3& p) {
    if (p.z() != 0.0) {
        throw InvalidArgument("project: point must lie in the plane z = 0");
    }
    const double rho = std::hypot(p.x(), p.y());
    if (proj.is_orthogonal()) {
        return {p.x(), p.y(), profile.height(rho)};
    }
    const double cz = *proj.center_z();
    if (rho == 0.0) {
        if (cz <= profile.height(0.0)) {
            throw NoIntersection("project: center of projection is not above the surface vertex");
        }
        return {0.0, 0.0, profile.height(0.0)};
    }
    const double u = solve_segment_parameter(profile, cz, rho);
    const double scale = 1.0 - u;
    const double s = std::min(scale * rho, profile.domain_radius());
    return {scale * p.x(), scale * p.y(), profile.height(s)};
}

Vec3 inverse_project(const Projection& proj, const SurfaceProfile& profile, const Vec3& q) {
    const double s = std::hypot(q.x(), q.y());
    const double h = profile.height(s);
    if (std::abs(q.z() - h) > kOnSurfaceTolerance) {
        throw NotOnSurface("inverse_project: point is " + std::to_string(q.z() - h) +
                           " mm off the surface");
    }
    if (proj.is_orthogonal()) {
        return {q.x(), q.y(), 0.0};
    }
    const double cz = *proj.center_z();
    const double drop = cz - q.z();
    if (drop <= 0.0) {
        throw NoPreimage("inverse_project: ray from the center does not reach the plane");
    }
    const double tau = cz / drop;
    return {tau * q.x(), tau * q.y(), 0.0};
}

double preimage_radius(const Projection& proj, const SurfaceProfile& profile) {
    const double rim = profile.domain_radius();
    const Vec3 edge = inverse_project(proj, profile, {rim, 0.0, profile.height(rim)});
    return edge.x();
}

BijectivityReport check_bijective(const Projection& proj, const SurfaceProfile& profile,
                                  std::size_t samples) {
    constexpr int kSpokes = 8;
    BijectivityReport report;
    if (samples == 0) return report;

    const double rim = profile.domain_radius();
    auto fail = [&report](std::string msg) {
        report.bijective = false;
        report.first_violation = std::move(msg);
        return report;
    };

    for (int j = 0; j < kSpokes; ++j) {
        const double phi = kTwoPi * j / kSpokes;
        const double c = std::cos(phi);
        const double sn = std::sin(phi);
        double previous = -1.0;
        for (std::size_t i = 0; i < samples; ++i) {
            const double s = samples == 1 ? rim : rim * static_cast<double>(i) /
                                                      static_cast<double>(samples - 1);
            const Vec3 q{s * c, s * sn, profile.height(s)};
            ++report.points_checked;
            Vec3 pre;
            try {
                pre = inverse_project(proj, profile, q);
            } catch (const Error& e) {
                return fail("no preimage for surface point at s = " + std::to_string(s) +
                            ", phi = " + std::to_string(phi) + ": " + e.what());
            }
            const double radius = std::hypot(pre.x(), pre.y());
            if (radius <= previous) {
                return fail("preimage radius not increasing at s = " + std::to_string(s) +
                            ", phi = " + std::to_string(phi));
            }
            previous = radius;
            Vec3 back;
            try {
                back = project(proj, profile, pre);
            } catch (const Error& e) {
                return fail("re-projection failed at s = " + std::to_string(s) + ": " + e.what());
            }
            if ((back - q).norm() > 1e-10 * std::max(1.0, q.norm())) {
                return fail("re-projection does not return to s = " + std::to_string(s));
            }
        }
    }
    return report;
}

double lensmaker_power(const LensSpec& spec) {
    if (!(spec.n > 1.0) || !(spec.r1_mm > 0.0) || !(spec.r2_mm > 0.0) ||
        !(spec.thickness_mm >= 0.0)) {
        throw InvalidArgument("lensmaker: need n > 1, R1, R2 > 0 and d >= 0");
    }
    const double n = spec.n;
    return (n - 1.0) * (1.0 / spec.r1_mm - 1.0 / spec.r2_mm +
                        (n - 1.0) * spec.thickness_mm / (n * spec.r1_mm * spec.r2_mm));
}

double lensmaker_focal(const LensSpec& spec) {
    const double power = lensmaker_power(spec);
    if (power == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / power;
}

}  // namespace hoe
