#include "hoe/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hoe/parallel.hpp"

namespace hoe {

GratingVectorField induce_forward(const GratingVectorField& source, const SurfaceProfile& target,
                                  const Projection& proj) {
    if (source.carrier().kind() != ProfileKind::planar) {
        throw InvalidArgument("induce_forward: source field must live on a planar carrier");
    }
    const auto in = source.samples();
    auto samples = parallel_map(in.size(), [&](std::size_t i) {
        const GratingSample& src = in[i];
        const Vec3 q = project(proj, target, src.position());
        // central projections act radially, so the azimuth carries over unchanged
        const double s = std::min(std::hypot(q.x(), q.y()), target.domain_radius());
        const PolarPoint footprint{s, src.footprint().phi()};
        return GratingSample(footprint, q, build_frame(target, footprint), src.coords());
    });
    return {target, std::move(samples), source.grid(), source.wavelength(), proj};
}

GratingVectorField induce_inverse(const GratingVectorField& target, const Projection& proj) {
    const SurfaceProfile& carrier = target.carrier();
    const auto in = target.samples();
    auto preimages = parallel_map(in.size(), [&](std::size_t i) {
        return inverse_project(proj, carrier, in[i].position());
    });

    double plane_radius = 0.0;
    try {
        plane_radius = preimage_radius(proj, carrier);
    } catch (const NoPreimage&) {
        // rim unreachable: the plane domain is the disc covering the samples
    }
    for (const Vec3& p : preimages) {
        plane_radius = std::max(plane_radius, std::hypot(p.x(), p.y()));
    }
    if (plane_radius <= 0.0) plane_radius = carrier.domain_radius();
    const SurfaceProfile plane = SurfaceProfile::planar(plane_radius);

    auto samples = parallel_map(in.size(), [&](std::size_t i) {
        const Vec3& p = preimages[i];
        const PolarPoint footprint{std::hypot(p.x(), p.y()), in[i].footprint().phi()};
        return GratingSample(footprint, p, build_frame(plane, footprint), in[i].coords());
    });
    return {plane, std::move(samples), target.grid(), target.wavelength(), proj};
}

GratingVectorField rescale(const GratingVectorField& field, const ScaleFunction& factor) {
    const auto in = field.samples();
    std::vector<GratingSample> samples;
    samples.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double f = factor(in[i]);
        if (!std::isfinite(f) || f <= 0.0) {
            throw NonPositiveFactor("rescale: factor " + std::to_string(f) + " at sample " +
                                    std::to_string(i));
        }
        samples.emplace_back(in[i].footprint(), in[i].position(), in[i].frame(),
                             in[i].coords().scaled(f));
    }
    return {field.carrier(), std::move(samples), field.grid(), field.wavelength(), field.mapping()};
}

GratingVectorField design_target_field(const Wave& probe, const Wave& desired,
                                       const SurfaceProfile& carrier, const SamplingGrid& grid) {
    // kg = k_desired - k_probe is exactly a recording with (probe, desired)
    return record(probe, desired, carrier, grid);
}

namespace {

struct PolarLattice {
    int rings = 0;
    int spokes = 0;
    std::vector<double> radii;  // radii[0] = 0 (vertex), then one per ring
};

PolarLattice detect_lattice(const GratingVectorField& field) {
    const auto* grid = std::get_if<PolarGrid>(&field.grid());
    if (grid == nullptr) {
        throw InvalidArgument("resample_polar: field was not sampled on a polar grid");
    }
    PolarLattice lat{grid->rings, grid->spokes, {0.0}};
    const auto samples = field.samples();
    if (samples.size() != 1 + static_cast<std::size_t>(lat.rings) * lat.spokes ||
        samples[0].footprint().s() != 0.0) {
        throw InvalidArgument("resample_polar: samples do not form a polar lattice");
    }
    for (int i = 0; i < lat.rings; ++i) {
        const double radius = samples[1 + static_cast<std::size_t>(i) * lat.spokes].footprint().s();
        for (int j = 0; j < lat.spokes; ++j) {
            const auto& fp = samples[1 + static_cast<std::size_t>(i) * lat.spokes + j].footprint();
            const double expected_phi = kTwoPi * j / lat.spokes;
            if (std::abs(fp.s() - radius) > 1e-9 * std::max(1.0, radius) ||
                std::abs(fp.phi() - expected_phi) > 1e-12) {
                throw InvalidArgument("resample_polar: samples do not form a polar lattice");
            }
        }
        if (radius <= lat.radii.back()) {
            throw InvalidArgument("resample_polar: ring radii are not increasing");
        }
        lat.radii.push_back(radius);
    }
    return lat;
}

}  // namespace

GratingVectorField resample_polar(const GratingVectorField& field, const PolarGrid& grid) {
    const PolarLattice lat = detect_lattice(field);
    const SurfaceProfile& carrier = field.carrier();
    if (grid.radius_mm > lat.radii.back() + 1e-12) {
        throw DomainError("resample_polar: grid extends beyond the outermost ring");
    }
    const auto in = field.samples();
    const Vec3 vertex_kg = in[0].grating_vector();
    const double dphi = kTwoPi / lat.spokes;

    // frame coordinates of lattice node (ring, spoke); ring 0 is the vertex,
    // read in the limit frame of that spoke
    auto node = [&](int ring, int spoke) -> FrameCoords {
        if (ring == 0) {
            return build_frame(carrier, PolarPoint{0.0, spoke * dphi}).decompose(vertex_kg);
        }
        return in[1 + static_cast<std::size_t>(ring - 1) * lat.spokes + spoke].coords();
    };
    auto lerp = [](const FrameCoords& a, const FrameCoords& b, double w) {
        return FrameCoords{a.g1 + w * (b.g1 - a.g1), a.g2 + w * (b.g2 - a.g2),
                           a.g3 + w * (b.g3 - a.g3)};
    };

    const std::vector<PolarPoint> footprints = grid_footprints(grid);
    auto samples = parallel_map(footprints.size(), [&](std::size_t k) {
        const PolarPoint& fp = footprints[k];
        const Frame frame = build_frame(carrier, fp);
        const Vec3 position = evaluate(carrier, fp.to_xy());
        if (fp.s() == 0.0) {
            return GratingSample(fp, position, frame, frame.decompose(vertex_kg));
        }
        const double s = std::min(fp.s(), lat.radii.back());
        const auto upper = std::upper_bound(lat.radii.begin(), lat.radii.end(), s);
        const int ring_hi = std::min<int>(static_cast<int>(upper - lat.radii.begin()), lat.rings);
        const int ring_lo = ring_hi - 1;
        const double ws = (s - lat.radii[ring_lo]) / (lat.radii[ring_hi] - lat.radii[ring_lo]);

        const double t = fp.phi() / dphi;
        const int spoke_lo = std::min(static_cast<int>(std::floor(t)), lat.spokes - 1);
        const int spoke_hi = (spoke_lo + 1) % lat.spokes;
        const double wp = t - spoke_lo;

        const FrameCoords inner = lerp(node(ring_lo, spoke_lo), node(ring_lo, spoke_hi), wp);
        const FrameCoords outer = lerp(node(ring_hi, spoke_lo), node(ring_hi, spoke_hi), wp);
        return GratingSample(fp, position, frame, lerp(inner, outer, ws));
    });
    return {carrier, std::move(samples), grid, field.wavelength()};
}

}  // namespace hoe
