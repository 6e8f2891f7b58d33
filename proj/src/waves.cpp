#include "hoe/waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hoe {

namespace {

constexpr double kSingularRadius = 1e-9;  // mm

double distance_checked(const Wave& w, const Vec3& r) {
    const double d = (r - w.point()).norm();
    if (d <= kSingularRadius) {
        throw SingularPoint("wave evaluated at its point source");
    }
    return d;
}

void require_same_wavelength(const Wave& w1, const Wave& w2) {
    if (!w1.wavelength().matches(w2.wavelength())) {
        throw WavelengthMismatch("waves have different wavelengths (" +
                                 std::to_string(w1.wavelength().nm()) + " nm vs " +
                                 std::to_string(w2.wavelength().nm()) + " nm)");
    }
}

}  // namespace

Wavelength Wavelength::from_nm(double lambda_nm) {
    if (!std::isfinite(lambda_nm) || lambda_nm <= 0.0) {
        throw InvalidArgument("wavelength must be finite and positive");
    }
    return Wavelength{lambda_nm};
}

bool Wavelength::matches(const Wavelength& other) const noexcept {
    return std::abs(nm_ - other.nm_) <= 1e-12 * std::max(nm_, other.nm_);
}

Wave::Wave(WaveKind kind, const Vec3& v, Wavelength lambda, double amplitude)
    : kind_(kind), vec_(v), lambda_(lambda), amplitude_(amplitude) {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
        throw InvalidArgument("wave amplitude must be finite and >= 0");
    }
}

Wave Wave::plane(const Vec3& direction, Wavelength lambda, double amplitude) {
    if (std::abs(direction.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("plane wave direction must be a unit vector");
    }
    return {WaveKind::plane, direction, lambda, amplitude};
}

Wave Wave::diverging(const Vec3& origin_mm, Wavelength lambda, double amplitude) {
    return {WaveKind::diverging, origin_mm, lambda, amplitude};
}

Wave Wave::converging(const Vec3& target_mm, Wavelength lambda, double amplitude) {
    return {WaveKind::converging, target_mm, lambda, amplitude};
}

Vec3 local_wavevector(const Wave& w, const Vec3& r) {
    const double k = w.wavelength().wavenumber();
    switch (w.kind()) {
        case WaveKind::plane:
            return k * w.direction();
        case WaveKind::diverging: {
            const double d = distance_checked(w, r);
            return (k / d) * (r - w.point());
        }
        case WaveKind::converging: {
            const double d = distance_checked(w, r);
            return (k / d) * (w.point() - r);
        }
    }
    return {};
}

double local_amplitude(const Wave& w, const Vec3& r) {
    if (w.kind() == WaveKind::plane) {
        return w.amplitude();
    }
    return w.amplitude() / (std::numbers::pi * distance_checked(w, r));
}

double local_phase(const Wave& w, const Vec3& r) {
    const double k = w.wavelength().wavenumber();
    switch (w.kind()) {
        case WaveKind::plane:
            return k * units::mm_to_um(w.direction().dot(r));
        case WaveKind::diverging:
            return k * units::mm_to_um(distance_checked(w, r));
        case WaveKind::converging:
            return -k * units::mm_to_um(distance_checked(w, r));
    }
    return 0.0;
}

double interference_phase(const Wave& w1, const Wave& w2, const Vec3& r) {
    require_same_wavelength(w1, w2);
    return local_phase(w2, r) - local_phase(w1, r);
}

double interference_intensity(const Wave& w1, const Wave& w2, const Vec3& r) {
    const double phase = interference_phase(w1, w2, r);
    const double a1 = local_amplitude(w1, r);
    const double a2 = local_amplitude(w2, r);
    return a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * std::cos(phase);
}

}  // namespace hoe
