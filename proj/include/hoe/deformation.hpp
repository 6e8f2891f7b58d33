#pragma once

#include <functional>

#include "hoe/recording.hpp"
#include "hoe/surfaces.hpp"

namespace hoe {

/// Carries a planar field onto `target` through `proj`: every sample moves to
/// its image point and keeps its frame coordinates, now read in the target's
/// moving frame. Lengths of kg are preserved exactly.
/// Throws InvalidArgument for a non-planar source and SampleError wrapping
/// NoIntersection / DomainError.
[[nodiscard]] GratingVectorField induce_forward(const GratingVectorField& source,
                                                const SurfaceProfile& target,
                                                const Projection& proj);

/// Pulls a field on a curved carrier back to the plane disc mapped onto that
/// carrier, copying frame coordinates. induce_forward of the result under the
/// same projection reproduces `target`.
/// Throws NoPreimage / DomainError (wrapped in SampleError per sample).
[[nodiscard]] GratingVectorField induce_inverse(const GratingVectorField& target,
                                                const Projection& proj);

using ScaleFunction = std::function<double(const GratingSample&)>;

/// Multiplies every kg by factor(sample); positions and frames are kept.
/// Throws NonPositiveFactor for factors <= 0 or non-finite.
[[nodiscard]] GratingVectorField rescale(const GratingVectorField& field,
                                         const ScaleFunction& factor);

/// Field that diffracts `probe` into `desired` under plain k-vector closure:
/// kg(r) = k_desired(r) - k_probe(r) on `carrier`.
[[nodiscard]] GratingVectorField design_target_field(const Wave& probe, const Wave& desired,
                                                     const SurfaceProfile& carrier,
                                                     const SamplingGrid& grid);

/// Re-samples a field whose samples form a polar lattice (vertex, then rings of
/// a common spoke set, as produced by a PolarGrid and any projection) onto
/// `grid`, interpolating frame coordinates bilinearly in (s, phi).
/// Throws InvalidArgument if the field is not a polar lattice and DomainError
/// if `grid` reaches beyond the outermost ring.
[[nodiscard]] GratingVectorField resample_polar(const GratingVectorField& field,
                                                const PolarGrid& grid);

}  // namespace hoe
