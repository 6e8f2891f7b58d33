#pragma once

#include "hoe/geometry.hpp"

namespace hoe {

class Wavelength {
public:
    /// Throws InvalidArgument unless lambda is finite and positive.
    static Wavelength from_nm(double lambda_nm);

    [[nodiscard]] double nm() const noexcept { return nm_; }
    [[nodiscard]] double um() const noexcept { return units::nm_to_um(nm_); }
    /// k = 2 pi / lambda in rad/um.
    [[nodiscard]] double wavenumber() const noexcept { return kTwoPi / um(); }

    /// Equal within 1e-12 relative.
    [[nodiscard]] bool matches(const Wavelength& other) const noexcept;

    friend bool operator==(const Wavelength&, const Wavelength&) = default;

private:
    explicit Wavelength(double nm) : nm_(nm) {}
    double nm_ = 0.0;
};

enum class WaveKind { plane, diverging, converging };

/// Monochromatic scalar wave. Plane waves carry a unit propagation direction;
/// spherical waves diverge from or converge to a point.
class Wave {
public:
    /// `direction` must be a unit vector within 1e-12.
    static Wave plane(const Vec3& direction, Wavelength lambda, double amplitude = 1.0);
    static Wave diverging(const Vec3& origin_mm, Wavelength lambda, double amplitude = 1.0);
    static Wave converging(const Vec3& target_mm, Wavelength lambda, double amplitude = 1.0);

    [[nodiscard]] WaveKind kind() const noexcept { return kind_; }
    /// Direction for plane waves, source/target point for spherical waves.
    [[nodiscard]] const Vec3& direction() const noexcept { return vec_; }
    [[nodiscard]] const Vec3& point() const noexcept { return vec_; }
    [[nodiscard]] const Wavelength& wavelength() const noexcept { return lambda_; }
    [[nodiscard]] double amplitude() const noexcept { return amplitude_; }

private:
    Wave(WaveKind kind, const Vec3& v, Wavelength lambda, double amplitude);

    WaveKind kind_;
    Vec3 vec_;
    Wavelength lambda_;
    double amplitude_;
};

/// Local wavevector (rad/um) at r (mm); its length is always 2 pi / lambda.
/// Throws SingularPoint within 1e-9 mm of a spherical wave's point.
[[nodiscard]] Vec3 local_wavevector(const Wave& w, const Vec3& r);

/// A0 for plane waves, A0 / (pi |r - r0|) for spherical waves (r in mm).
[[nodiscard]] double local_amplitude(const Wave& w, const Vec3& r);

/// Phase in rad: k.r for plane waves, +k|r - r0| diverging, -k|r - r0| converging.
[[nodiscard]] double local_phase(const Wave& w, const Vec3& r);

/// phase(w2, r) - phase(w1, r), the argument of the interference cosine.
/// Throws WavelengthMismatch.
[[nodiscard]] double interference_phase(const Wave& w1, const Wave& w2, const Vec3& r);

/// |A1|^2 + |A2|^2 + 2 A1 A2 cos(phase difference). Throws WavelengthMismatch.
[[nodiscard]] double interference_intensity(const Wave& w1, const Wave& w2, const Vec3& r);

}  // namespace hoe
