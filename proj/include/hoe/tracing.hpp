#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hoe/diffraction.hpp"
#include "hoe/geometry.hpp"
#include "hoe/recording.hpp"

namespace hoe {

class Ray {
public:
    /// Normalizes `direction`; weight must lie in [0, 1].
    Ray(const Vec3& origin, const Vec3& direction, double weight = 1.0);

    [[nodiscard]] const Vec3& origin() const noexcept { return origin_; }
    [[nodiscard]] const Vec3& direction() const noexcept { return direction_; }
    [[nodiscard]] double weight() const noexcept { return weight_; }

private:
    Vec3 origin_;
    Vec3 direction_;
    double weight_;
};

struct SampleTrace {
    std::size_t sample_index = 0;
    DiffractionResult result;
};

struct TraceResult {
    /// One entry per field sample, in sample order.
    std::vector<SampleTrace> samples;
    /// Rays of propagating samples, in sample order.
    std::vector<Ray> rays;
    std::vector<std::size_t> ray_sample_index;
    std::vector<std::size_t> pass_through;
    std::vector<std::size_t> evanescent;
};

/// Diffracts `probe` at every sample and turns propagating results into rays
/// starting at the sample position along kd / |kd|, weighted by eta.
[[nodiscard]] TraceResult trace_field(const GratingVectorField& field, const Wave& probe,
                                      ClosureMode mode,
                                      const EfficiencyModel& efficiency = unit_efficiency);

enum class HitStatus { hit, parallel, behind };

struct PlaneHit {
    HitStatus status = HitStatus::hit;
    Vec2 point;
};

/// Forward intersection of every ray with the plane z = z0.
[[nodiscard]] std::vector<PlaneHit> intersect_plane(std::span<const Ray> rays, double z0);

struct SpotReport {
    double z = 0.0;
    Vec2 centroid;
    double rms_x = 0.0;
    double rms_y = 0.0;
    double rms_total = 0.0;
};

/// Weighted centroid and rms spread of the bundle on z = z0. Throws
/// EmptyBundle if no ray hits the plane with positive weight and
/// InvalidArgument if any ray is parallel to or ends before the plane.
[[nodiscard]] SpotReport spot_at(std::span<const Ray> rays, double z0);

struct FocalScan {
    std::vector<SpotReport> spots;
    double spacing = 0.0;
    double z_best_x = 0.0;
    double z_best_y = 0.0;
    double z_best_total = 0.0;
    /// |z_best_x - z_best_y|.
    double astigmatism = 0.0;
    /// Every minimum lies strictly inside the scan and below both ends.
    bool bracketed = false;
};

/// Spot reports on n_planes equally spaced planes in [z_min, z_max], without
/// any minimum search.
[[nodiscard]] std::vector<SpotReport> scan_planes(std::span<const Ray> rays, double z_min,
                                                  double z_max, int n_planes);

/// Spot reports on n_planes equally spaced planes in [z_min, z_max].
/// Throws EmptyBundle for fewer than two rays, InvalidArgument for a bad
/// range and NoMinimumInRange when a minimum sits at an end of the scan
/// (which includes a constant rms).
[[nodiscard]] FocalScan focal_scan(std::span<const Ray> rays, double z_min, double z_max,
                                   int n_planes);

}  // namespace hoe
