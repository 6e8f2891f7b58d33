#include "hoe/tracing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hoe/parallel.hpp"

namespace hoe {

Ray::Ray(const Vec3& origin, const Vec3& direction, double weight)
    : origin_(origin), direction_(direction.normalized()), weight_(weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw InvalidArgument("ray weight must lie in [0, 1]");
    }
}

TraceResult trace_field(const GratingVectorField& field, const Wave& probe, ClosureMode mode,
                        const EfficiencyModel& efficiency) {
    const auto samples = field.samples();
    auto results = parallel_map(samples.size(), [&](std::size_t i) {
        return diffract_sample(samples[i], probe, mode, efficiency);
    });

    TraceResult out;
    out.samples.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        const DiffractionResult& r = results[i];
        switch (r.status) {
            case DiffractionStatus::propagating:
                out.rays.emplace_back(samples[i].position(), r.kd, r.eta);
                out.ray_sample_index.push_back(i);
                break;
            case DiffractionStatus::pass_through:
                out.pass_through.push_back(i);
                break;
            case DiffractionStatus::evanescent:
                out.evanescent.push_back(i);
                break;
        }
        out.samples.push_back({i, r});
    }
    return out;
}

namespace {

// Rays closer than this to parallel with the detector plane are flagged.
constexpr double kParallelTolerance = 1e-15;

}  // namespace

std::vector<PlaneHit> intersect_plane(std::span<const Ray> rays, double z0) {
    std::vector<PlaneHit> hits;
    hits.reserve(rays.size());
    for (const Ray& ray : rays) {
        const double dz = ray.direction().z();
        if (std::abs(dz) < kParallelTolerance) {
            hits.push_back({HitStatus::parallel, {}});
            continue;
        }
        const double t = (z0 - ray.origin().z()) / dz;
        if (t <= 0.0) {
            hits.push_back({HitStatus::behind, {}});
            continue;
        }
        hits.push_back({HitStatus::hit,
                        {ray.origin().x() + t * ray.direction().x(),
                         ray.origin().y() + t * ray.direction().y()}});
    }
    return hits;
}

SpotReport spot_at(std::span<const Ray> rays, double z0) {
    const std::vector<PlaneHit> hits = intersect_plane(rays, z0);
    double weight = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (hits[i].status != HitStatus::hit) {
            throw InvalidArgument("spot_at: ray " + std::to_string(i) +
                                  " does not reach the plane z = " + std::to_string(z0));
        }
        const double w = rays[i].weight();
        weight += w;
        cx += w * hits[i].point.x;
        cy += w * hits[i].point.y;
    }
    if (weight <= 0.0) {
        throw EmptyBundle("spot_at: no ray with positive weight");
    }
    cx /= weight;
    cy /= weight;
    double vx = 0.0;
    double vy = 0.0;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        const double w = rays[i].weight();
        const double dx = hits[i].point.x - cx;
        const double dy = hits[i].point.y - cy;
        vx += w * dx * dx;
        vy += w * dy * dy;
    }
    vx /= weight;
    vy /= weight;
    return {z0, {cx, cy}, std::sqrt(vx), std::sqrt(vy), std::sqrt(vx + vy)};
}

namespace {

struct Minimum {
    std::size_t index = 0;
    bool bracketed = false;
};

template <typename Get>
Minimum find_minimum(const std::vector<SpotReport>& spots, Get get) {
    Minimum m;
    double best = get(spots.front());
    double largest = best;
    for (std::size_t i = 1; i < spots.size(); ++i) {
        const double v = get(spots[i]);
        largest = std::max(largest, v);
        if (v < best) {
            best = v;
            m.index = i;
        }
    }
    // a flat curve shows only rounding noise; demand a real dip on both sides
    const double margin = 1e-9 * largest + 1e-15;
    m.bracketed = m.index > 0 && m.index + 1 < spots.size() &&
                  get(spots.front()) - best > margin && get(spots.back()) - best > margin;
    return m;
}

}  // namespace

std::vector<SpotReport> scan_planes(std::span<const Ray> rays, double z_min, double z_max,
                                    int n_planes) {
    if (rays.size() < 2) {
        throw EmptyBundle("focal scan: need at least two rays");
    }
    if (!(std::isfinite(z_min) && std::isfinite(z_max) && z_max > z_min) || n_planes < 3) {
        throw InvalidArgument("focal scan: need z_max > z_min and at least three planes");
    }
    const double spacing = (z_max - z_min) / (n_planes - 1);
    std::vector<SpotReport> spots;
    spots.reserve(static_cast<std::size_t>(n_planes));
    for (int i = 0; i < n_planes; ++i) {
        const double z = i + 1 == n_planes ? z_max : z_min + spacing * i;
        spots.push_back(spot_at(rays, z));
    }
    return spots;
}

FocalScan focal_scan(std::span<const Ray> rays, double z_min, double z_max, int n_planes) {
    FocalScan scan;
    scan.spots = scan_planes(rays, z_min, z_max, n_planes);
    scan.spacing = (z_max - z_min) / (n_planes - 1);
    const Minimum mx = find_minimum(scan.spots, [](const SpotReport& s) { return s.rms_x; });
    const Minimum my = find_minimum(scan.spots, [](const SpotReport& s) { return s.rms_y; });
    const Minimum mt = find_minimum(scan.spots, [](const SpotReport& s) { return s.rms_total; });
    scan.z_best_x = scan.spots[mx.index].z;
    scan.z_best_y = scan.spots[my.index].z;
    scan.z_best_total = scan.spots[mt.index].z;
    scan.astigmatism = std::abs(scan.z_best_x - scan.z_best_y);
    scan.bracketed = mx.bracketed && my.bracketed && mt.bracketed;
    if (!mt.bracketed) {
        throw NoMinimumInRange("focal_scan: rms spot size has no minimum inside [" +
                               std::to_string(z_min) + ", " + std::to_string(z_max) + "]");
    }
    return scan;
}

}  // namespace hoe
