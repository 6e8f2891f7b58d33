#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hoe/geometry.hpp"
#include "hoe/surfaces.hpp"
#include "hoe/waves.hpp"

namespace hoe {

/// Vertex sample plus `rings` x `spokes` samples at s = radius * i / rings,
/// phi = 2 pi j / spokes. Sample order: vertex, then ring-major.
struct PolarGrid {
    int rings = 10;
    int spokes = 24;
    double radius_mm = 10.0;
    friend bool operator==(const PolarGrid&, const PolarGrid&) = default;
};

/// n x n lattice over [-half_width, half_width]^2, clipped to the disc of
/// radius half_width. Row-major in y then x.
struct CartesianGrid {
    int n = 21;
    double half_width_mm = 10.0;
    friend bool operator==(const CartesianGrid&, const CartesianGrid&) = default;
};

using SamplingGrid = std::variant<PolarGrid, CartesianGrid>;

/// Plane footprints of a grid in its canonical order.
[[nodiscard]] std::vector<PolarPoint> grid_footprints(const SamplingGrid& grid);
/// Outer radius covered by the grid.
[[nodiscard]] double grid_radius(const SamplingGrid& grid);

/// Grating vectors with |kg| at or below this (rad/um) are treated as absent.
inline constexpr double kDegenerateGrating = 1e-12;

/// One point of an HOE microstructure: kg stored in the local frame.
class GratingSample {
public:
    GratingSample(const PolarPoint& footprint, const Vec3& position, const Frame& frame,
                  const FrameCoords& coords);

    [[nodiscard]] const PolarPoint& footprint() const noexcept { return footprint_; }
    [[nodiscard]] const Vec3& position() const noexcept { return position_; }
    [[nodiscard]] const Frame& frame() const noexcept { return frame_; }
    [[nodiscard]] const FrameCoords& coords() const noexcept { return coords_; }
    [[nodiscard]] double magnitude() const noexcept { return magnitude_; }

    /// kg in world coordinates.
    [[nodiscard]] Vec3 grating_vector() const { return frame_.recompose(coords_); }
    [[nodiscard]] bool degenerate() const noexcept { return magnitude_ <= kDegenerateGrating; }

private:
    PolarPoint footprint_;
    Vec3 position_;
    Frame frame_;
    FrameCoords coords_;
    double magnitude_;
};

/// HOE model: carrier surface plus sampled grating vectors.
///
/// `grid` records how the planar parameter domain was originally sampled and
/// `mapping` the projection that carried the samples onto this carrier (if
/// any); footprints are the actual sample locations.
class GratingVectorField {
public:
    /// Throws DomainError for samples outside the carrier, InvalidArgument for
    /// duplicate footprints or positions off the carrier by more than 1e-10 mm.
    GratingVectorField(SurfaceProfile carrier, std::vector<GratingSample> samples,
                       SamplingGrid grid, Wavelength wavelength,
                       std::optional<Projection> mapping = std::nullopt);

    [[nodiscard]] const SurfaceProfile& carrier() const noexcept { return carrier_; }
    [[nodiscard]] std::span<const GratingSample> samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const GratingSample& operator[](std::size_t i) const { return samples_.at(i); }
    [[nodiscard]] const SamplingGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const Wavelength& wavelength() const noexcept { return wavelength_; }
    [[nodiscard]] const std::optional<Projection>& mapping() const noexcept { return mapping_; }

private:
    SurfaceProfile carrier_;
    std::vector<GratingSample> samples_;
    SamplingGrid grid_;
    Wavelength wavelength_;
    std::optional<Projection> mapping_;
};

/// Records the interference of w1 and w2 on `carrier`: kg = k2 - k1 at every
/// grid footprint, stored in the moving frame of the carrier.
/// Throws WavelengthMismatch, DomainError (grid outside carrier) and
/// SampleError wrapping SingularPoint.
[[nodiscard]] GratingVectorField record(const Wave& w1, const Wave& w2,
                                        const SurfaceProfile& carrier, const SamplingGrid& grid);

/// Bragg plane spacing 2 pi / |kg| in um. Throws ZeroGrating.
[[nodiscard]] double grating_period(const Vec3& kg);

/// Ellipsoid of revolution |r - f1| + |r - f2| = distance_sum.
class BraggIsosurfaceSpec {
public:
    /// Throws InvalidArgument unless distance_sum > |f1 - f2|.
    BraggIsosurfaceSpec(const Vec3& focus1, const Vec3& focus2, double distance_sum_mm);

    [[nodiscard]] const Vec3& focus1() const noexcept { return f1_; }
    [[nodiscard]] const Vec3& focus2() const noexcept { return f2_; }
    [[nodiscard]] double distance_sum() const noexcept { return sum_; }

private:
    Vec3 f1_;
    Vec3 f2_;
    double sum_;
};

struct IsosurfaceReport {
    std::vector<double> cosine_arguments;
    double max_argument_deviation = 0.0;
    double max_collinearity_residual = 0.0;
    bool constant_argument = true;
    bool collinear = true;

    [[nodiscard]] bool passed() const noexcept { return constant_argument && collinear; }
};

/// For a diverging w1 (focus r1) and converging w2 (focus r2), checks on each
/// probe point of the ellipsoid that the interference cosine argument is the
/// same (within 1e-9 rad) and that kg(r) is parallel to the ellipsoid normal
/// u1 + u2 (|kg x n_hat| / |kg| within 1e-9).
/// Throws PointNotOnEllipsoid and InvalidArgument (wave kinds or foci).
[[nodiscard]] IsosurfaceReport check_isosurface(const Wave& w1, const Wave& w2,
                                                const BraggIsosurfaceSpec& spec,
                                                std::span<const Vec3> probes);

}  // namespace hoe
