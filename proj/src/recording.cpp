#include "hoe/recording.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hoe/parallel.hpp"

namespace hoe {

namespace {

void validate_grid(const PolarGrid& g) {
    if (g.rings < 1 || g.spokes < 1 || !std::isfinite(g.radius_mm) || g.radius_mm <= 0.0) {
        throw InvalidArgument("polar grid: need rings >= 1, spokes >= 1, radius > 0");
    }
}

void validate_grid(const CartesianGrid& g) {
    if (g.n < 1 || !std::isfinite(g.half_width_mm) || g.half_width_mm <= 0.0) {
        throw InvalidArgument("cartesian grid: need n >= 1, half width > 0");
    }
}

}  // namespace

std::vector<PolarPoint> grid_footprints(const SamplingGrid& grid) {
    std::vector<PolarPoint> out;
    if (const auto* polar = std::get_if<PolarGrid>(&grid)) {
        validate_grid(*polar);
        out.reserve(1 + static_cast<std::size_t>(polar->rings) * polar->spokes);
        out.emplace_back(0.0, 0.0);
        for (int i = 1; i <= polar->rings; ++i) {
            const double s = polar->radius_mm * i / polar->rings;
            for (int j = 0; j < polar->spokes; ++j) {
                out.emplace_back(s, kTwoPi * j / polar->spokes);
            }
        }
        return out;
    }
    const auto& cart = std::get<CartesianGrid>(grid);
    validate_grid(cart);
    const double w = cart.half_width_mm;
    for (int iy = 0; iy < cart.n; ++iy) {
        const double y = cart.n == 1 ? 0.0 : -w + 2.0 * w * iy / (cart.n - 1);
        for (int ix = 0; ix < cart.n; ++ix) {
            const double x = cart.n == 1 ? 0.0 : -w + 2.0 * w * ix / (cart.n - 1);
            if (std::hypot(x, y) <= w) {
                out.push_back(PolarPoint::from_xy({x, y}));
            }
        }
    }
    return out;
}

double grid_radius(const SamplingGrid& grid) {
    if (const auto* polar = std::get_if<PolarGrid>(&grid)) return polar->radius_mm;
    return std::get<CartesianGrid>(grid).half_width_mm;
}

GratingSample::GratingSample(const PolarPoint& footprint, const Vec3& position,
                             const Frame& frame, const FrameCoords& coords)
    : footprint_(footprint),
      position_(position),
      frame_(frame),
      coords_(coords),
      magnitude_(coords.norm()) {
    if (!std::isfinite(coords.g1) || !std::isfinite(coords.g2) || !std::isfinite(coords.g3)) {
        throw InvalidArgument("grating sample: non-finite frame coordinates");
    }
}

GratingVectorField::GratingVectorField(SurfaceProfile carrier, std::vector<GratingSample> samples,
                                       SamplingGrid grid, Wavelength wavelength,
                                       std::optional<Projection> mapping)
    : carrier_(std::move(carrier)),
      samples_(std::move(samples)),
      grid_(grid),
      wavelength_(wavelength),
      mapping_(mapping) {
    std::vector<std::tuple<double, double, std::size_t>> keys;
    keys.reserve(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& sample = samples_[i];
        const PolarPoint& fp = sample.footprint();
        if (!carrier_.contains(fp.s())) {
            throw DomainError("field: sample " + std::to_string(i) + " outside carrier domain");
        }
        const Vec2 xy = fp.to_xy();
        const Vec3 expected = evaluate(carrier_, xy);
        if ((expected - sample.position()).norm() > 1e-10) {
            throw InvalidArgument("field: sample " + std::to_string(i) +
                                  " position does not match its footprint");
        }
        // the vertex is the same point for every azimuth
        keys.emplace_back(fp.s() == 0.0 ? 0.0 : xy.x, fp.s() == 0.0 ? 0.0 : xy.y, i);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (std::get<0>(keys[i]) == std::get<0>(keys[i - 1]) &&
            std::get<1>(keys[i]) == std::get<1>(keys[i - 1])) {
            throw InvalidArgument("field: samples " + std::to_string(std::get<2>(keys[i - 1])) +
                                  " and " + std::to_string(std::get<2>(keys[i])) +
                                  " share a footprint");
        }
    }
}

GratingVectorField record(const Wave& w1, const Wave& w2, const SurfaceProfile& carrier,
                          const SamplingGrid& grid) {
    if (!w1.wavelength().matches(w2.wavelength())) {
        throw WavelengthMismatch("record: recording waves have different wavelengths");
    }
    if (grid_radius(grid) > carrier.domain_radius()) {
        throw DomainError("record: grid radius exceeds carrier domain");
    }
    const std::vector<PolarPoint> footprints = grid_footprints(grid);
    auto samples = parallel_map(footprints.size(), [&](std::size_t i) {
        const PolarPoint& fp = footprints[i];
        const Vec3 position = evaluate(carrier, fp.to_xy());
        const Frame frame = build_frame(carrier, fp);
        const Vec3 kg = local_wavevector(w2, position) - local_wavevector(w1, position);
        return GratingSample(fp, position, frame, frame.decompose(kg));
    });
    return {carrier, std::move(samples), grid, w1.wavelength()};
}

double grating_period(const Vec3& kg) {
    const double len = kg.norm();
    if (len <= kDegenerateGrating) {
        throw ZeroGrating("grating_period: zero grating vector");
    }
    return kTwoPi / len;
}

BraggIsosurfaceSpec::BraggIsosurfaceSpec(const Vec3& focus1, const Vec3& focus2,
                                         double distance_sum_mm)
    : f1_(focus1), f2_(focus2), sum_(distance_sum_mm) {
    if (!std::isfinite(distance_sum_mm) || distance_sum_mm <= (focus1 - focus2).norm()) {
        throw InvalidArgument("isosurface: distance sum must exceed the focal distance");
    }
}

IsosurfaceReport check_isosurface(const Wave& w1, const Wave& w2, const BraggIsosurfaceSpec& spec,
                                  std::span<const Vec3> probes) {
    if (w1.kind() != WaveKind::diverging || w2.kind() != WaveKind::converging) {
        throw InvalidArgument("check_isosurface: need a diverging w1 and a converging w2");
    }
    if (w1.point() != spec.focus1() || w2.point() != spec.focus2()) {
        throw InvalidArgument("check_isosurface: foci do not match the wave points");
    }
    constexpr double kTolerance = 1e-9;
    IsosurfaceReport report;
    report.cosine_arguments.reserve(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const Vec3& r = probes[i];
        const Vec3 d1 = r - spec.focus1();
        const Vec3 d2 = r - spec.focus2();
        const double sum = d1.norm() + d2.norm();
        if (std::abs(sum - spec.distance_sum()) > kTolerance * spec.distance_sum()) {
            throw PointNotOnEllipsoid("check_isosurface: probe " + std::to_string(i) +
                                      " has distance sum " + std::to_string(sum));
        }
        // cos(phi2 - phi1) = cos(k (|r - r1| + |r - r2|))
        const double argument = -interference_phase(w1, w2, r);
        report.cosine_arguments.push_back(argument);
        const double deviation = std::abs(argument - report.cosine_arguments.front());
        report.max_argument_deviation = std::max(report.max_argument_deviation, deviation);

        const Vec3 kg = local_wavevector(w2, r) - local_wavevector(w1, r);
        const Vec3 normal = (d1.normalized() + d2.normalized()).normalized();
        const double residual = kg.cross(normal).norm() / kg.norm();
        report.max_collinearity_residual = std::max(report.max_collinearity_residual, residual);
    }
    report.constant_argument = report.max_argument_deviation <= kTolerance;
    report.collinear = report.max_collinearity_residual <= kTolerance;
    return report;
}

}  // namespace hoe
